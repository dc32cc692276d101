#ifndef TREELAB_GRAPH_HPP
#define TREELAB_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace treelab {

using VertexId = int;
using EdgeId = int;

struct Edge {
    VertexId u;
    VertexId v;
};

// Finite multigraph with dense vertex and edge ids.  Parallel edges are
// allowed, self-loops are not.  Immutable after construction.
class Graph {
  public:
    Graph(int n_vertices, std::vector<Edge> edges);

    int n_vertices() const { return n_vertices_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::vector<Edge>& edges() const { return edges_; }

    // Incident (neighbor, edge id) pairs; parallel edges appear once per copy.
    const std::vector<std::pair<VertexId, EdgeId>>& adjacency(VertexId v) const {
        return adjacency_.at(static_cast<std::size_t>(v));
    }

    int degree(VertexId v) const { return static_cast<int>(adjacency(v).size()); }

    // Number of parallel edges between u and v.
    int multiplicity(VertexId u, VertexId v) const;

    bool is_simple() const;
    // Common degree if the graph is regular, -1 otherwise.
    int regular_degree() const;

    VertexId other_endpoint(EdgeId e, VertexId v) const {
        const Edge& ed = edge(e);
        return ed.u == v ? ed.v : ed.u;
    }

  private:
    int n_vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency_;
};

// ---- generators ------------------------------------------------------------

Graph complete_graph(int n);
Graph complete_bipartite(int n);
Graph cycle_graph(int n);
Graph petersen_graph();

struct LpsGadget {
    Graph graph;
    // The two designated non-adjacent vertex pairs, each carrying three
    // parallel edges; edge ids of each bundle.
    std::vector<EdgeId> bundle_a;
    std::vector<EdgeId> bundle_b;
};

// K4 with two vertex-disjoint edges each replaced by a bundle of three
// parallel edges (10 edges total, all degrees 5).
LpsGadget lps_gadget();

struct SharpnessBlock {
    Graph graph;
    VertexId port;
};

// Dense one-port block on q = d+2 vertices: K_q minus the two port edges
// {o,a}, {o,b} and minus a fixed perfect matching on the remaining q-3
// vertices.  Requires odd d >= 5.  The matching pairs the non-{o,a,b}
// vertices in ascending id order, which makes the construction reproducible.
SharpnessBlock sharpness_block(int d);

struct SharpnessGraph {
    Graph graph;
    VertexId center;
    std::vector<VertexId> ports;
    std::vector<EdgeId> bridge_edges;
};

// d disjoint copies of the block attached to a fresh central vertex through
// their ports; simple, connected, d-regular on 1 + d(d+2) vertices.
SharpnessGraph sharpness_graph(int d);

// Simple connected d-regular graph via the configuration model with
// rejection; deterministic for a fixed (n, d, seed).  Throws after
// 10*n*d failed attempts.
Graph random_regular(int n, int d, std::uint64_t seed);

// ---- structural queries ----------------------------------------------------

bool is_connected(const Graph& g);
int component_count(const Graph& g, std::span<const EdgeId> subset);
bool is_forest(const Graph& g, std::span<const EdgeId> subset);
std::vector<EdgeId> bridges(const Graph& g);

// ---- serialization ---------------------------------------------------------

// Line format: "n m" header, then one "u v" line per edge (0-indexed,
// parallel edges repeated).
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

// ---- graph spec mini-language ----------------------------------------------

struct NamedGraph {
    std::string name;
    Graph graph;
};

// complete:n | bipartite:n | cycle:n | regular:n:d:seed | sharpness:d |
// petersen | lps | file:path
NamedGraph graph_from_spec(const std::string& spec);

}  // namespace treelab

#endif
