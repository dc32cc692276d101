#include "treelab/graph.hpp"

#include "treelab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "treelab/rng.hpp"

namespace treelab {

Graph::Graph(int n_vertices, std::vector<Edge> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)) {
    if (n_vertices_ < 1) throw std::invalid_argument("Graph: need at least one vertex");
    adjacency_.resize(static_cast<std::size_t>(n_vertices_));
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
        const Edge& ed = edges_[static_cast<std::size_t>(e)];
        if (ed.u < 0 || ed.u >= n_vertices_ || ed.v < 0 || ed.v >= n_vertices_)
            throw std::invalid_argument("Graph: endpoint out of range");
        if (ed.u == ed.v) throw std::invalid_argument("Graph: self-loops are not allowed");
        adjacency_[static_cast<std::size_t>(ed.u)].emplace_back(ed.v, e);
        adjacency_[static_cast<std::size_t>(ed.v)].emplace_back(ed.u, e);
    }
}

int Graph::multiplicity(VertexId u, VertexId v) const {
    int count = 0;
    for (const auto& [w, e] : adjacency(u))
        if (w == v) ++count;
    return count;
}

bool Graph::is_simple() const {
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Edge& ed : edges_) {
        auto key = std::minmax(ed.u, ed.v);
        if (!seen.insert(key).second) return false;
    }
    return true;
}

int Graph::regular_degree() const {
    const int d = degree(0);
    for (VertexId v = 1; v < n_vertices_; ++v)
        if (degree(v) != d) return -1;
    return d;
}

// ---- generators ------------------------------------------------------------

Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete_graph: n >= 1 required");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

Graph complete_bipartite(int n) {
    if (n < 1) throw std::invalid_argument("complete_bipartite: n >= 1 required");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = 0; v < n; ++v) edges.push_back({u, n + v});
    return Graph(2 * n, std::move(edges));
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: n >= 3 required");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
    return Graph(n, std::move(edges));
}

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (VertexId i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5});
    for (VertexId i = 0; i < 5; ++i) edges.push_back({i, i + 5});
    for (VertexId i = 0; i < 5; ++i) edges.push_back({5 + i, 5 + (i + 2) % 5});
    return Graph(10, std::move(edges));
}

LpsGadget lps_gadget() {
    // K4 on {0,1,2,3}; the disjoint pairs {0,1} and {2,3} carry three
    // parallel edges each, the remaining four edges are single.
    std::vector<Edge> edges;
    std::vector<EdgeId> bundle_a, bundle_b;
    for (int k = 0; k < 3; ++k) {
        bundle_a.push_back(static_cast<EdgeId>(edges.size()));
        edges.push_back({0, 1});
    }
    for (int k = 0; k < 3; ++k) {
        bundle_b.push_back(static_cast<EdgeId>(edges.size()));
        edges.push_back({2, 3});
    }
    edges.push_back({0, 2});
    edges.push_back({0, 3});
    edges.push_back({1, 2});
    edges.push_back({1, 3});
    return LpsGadget{Graph(4, std::move(edges)), std::move(bundle_a), std::move(bundle_b)};
}

SharpnessBlock sharpness_block(int d) {
    if (d < 5 || d % 2 == 0)
        throw std::invalid_argument("sharpness_block: odd d >= 5 required");
    const int q = d + 2;
    // Vertices: 0 = o (port), 1 = a, 2 = b, 3..q-1 are matched in
    // consecutive pairs (3,4), (5,6), ...
    std::set<std::pair<VertexId, VertexId>> deleted;
    deleted.insert({0, 1});
    deleted.insert({0, 2});
    for (VertexId w = 3; w + 1 < q; w += 2) deleted.insert({w, w + 1});

    std::vector<Edge> edges;
    for (VertexId u = 0; u < q; ++u)
        for (VertexId v = u + 1; v < q; ++v)
            if (!deleted.count({u, v})) edges.push_back({u, v});

    Graph g(q, std::move(edges));
    if (g.degree(0) != d - 1) throw std::logic_error("sharpness_block: port degree mismatch");
    for (VertexId v = 1; v < q; ++v)
        if (g.degree(v) != d) throw std::logic_error("sharpness_block: interior degree mismatch");
    if (!is_connected(g)) throw std::logic_error("sharpness_block: block is disconnected");
    return SharpnessBlock{std::move(g), 0};
}

SharpnessGraph sharpness_graph(int d) {
    const SharpnessBlock block = sharpness_block(d);
    const int q = d + 2;
    const int n = 1 + d * q;
    const VertexId center = 0;
    std::vector<Edge> edges;
    std::vector<VertexId> ports;
    std::vector<EdgeId> bridge_ids;
    for (int copy = 0; copy < d; ++copy) {
        const VertexId base = 1 + copy * q;
        const VertexId port = base + block.port;
        ports.push_back(port);
        bridge_ids.push_back(static_cast<EdgeId>(edges.size()));
        edges.push_back({center, port});
        for (const Edge& ed : block.graph.edges())
            edges.push_back({base + ed.u, base + ed.v});
    }
    Graph g(n, std::move(edges));
    if (g.regular_degree() != d) throw std::logic_error("sharpness_graph: not d-regular");
    if (!is_connected(g)) throw std::logic_error("sharpness_graph: disconnected");
    return SharpnessGraph{std::move(g), center, std::move(ports), std::move(bridge_ids)};
}

Graph random_regular(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 1 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
        throw std::invalid_argument("random_regular: need d < n and n*d even");
    Rng rng(seed);
    // The chance one pairing is simple is about exp(-(d^2-1)/4) regardless of
    // n, so a pure 10*n*d budget starves d >= 6; add enough attempts to make
    // the failure probability ~exp(-200).
    const long long max_attempts =
        10LL * n * d +
        static_cast<long long>(200.0 * std::exp((static_cast<double>(d) * d - 1.0) / 4.0));
    std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < d; ++k) stubs[static_cast<std::size_t>(v) * d + k] = v;

    for (long long attempt = 0; attempt < max_attempts; ++attempt) {
        // Fisher-Yates pairing of stubs.
        for (std::size_t i = stubs.size() - 1; i > 0; --i) {
            const std::size_t j = rng.next_below(i + 1);
            std::swap(stubs[i], stubs[j]);
        }
        std::set<std::pair<int, int>> seen;
        std::vector<Edge> edges;
        edges.reserve(stubs.size() / 2);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            const int u = stubs[i], v = stubs[i + 1];
            if (u == v) { ok = false; break; }
            auto key = std::minmax(u, v);
            if (!seen.insert(key).second) { ok = false; break; }
            edges.push_back({u, v});
        }
        if (!ok) continue;
        Graph g(n, std::move(edges));
        if (!is_connected(g)) continue;
        return g;
    }
    throw ResourceCapError("random_regular: retry cap exceeded (10*n*d rejections)");
}

// ---- structural queries ----------------------------------------------------

namespace {

struct UnionFindLocal {
    std::vector<int> parent;
    std::vector<int> size;
    explicit UnionFindLocal(int n) : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[static_cast<std::size_t>(a)] < size[static_cast<std::size_t>(b)]) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
        size[static_cast<std::size_t>(a)] += size[static_cast<std::size_t>(b)];
        return true;
    }
};

}  // namespace

bool is_connected(const Graph& g) {
    UnionFindLocal uf(g.n_vertices());
    int components = g.n_vertices();
    for (const Edge& ed : g.edges())
        if (uf.unite(ed.u, ed.v)) --components;
    return components == 1;
}

int component_count(const Graph& g, std::span<const EdgeId> subset) {
    UnionFindLocal uf(g.n_vertices());
    int components = g.n_vertices();
    for (EdgeId e : subset) {
        const Edge& ed = g.edge(e);
        if (uf.unite(ed.u, ed.v)) --components;
    }
    return components;
}

bool is_forest(const Graph& g, std::span<const EdgeId> subset) {
    UnionFindLocal uf(g.n_vertices());
    for (EdgeId e : subset) {
        const Edge& ed = g.edge(e);
        if (!uf.unite(ed.u, ed.v)) return false;
    }
    return true;
}

std::vector<EdgeId> bridges(const Graph& g) {
    // Iterative DFS lowpoint computation; parallel edges make a pair
    // non-bridging because only the specific traversed edge is excluded.
    const int n = g.n_vertices();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<EdgeId> result;
    int timer = 0;

    struct Frame {
        VertexId v;
        EdgeId entry_edge;
        std::size_t next;
    };

    for (VertexId root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> stack;
        stack.push_back({root, -1, 0});
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        while (!stack.empty()) {
            Frame& frame = stack.back();
            const auto& adj = g.adjacency(frame.v);
            if (frame.next < adj.size()) {
                const auto [w, e] = adj[frame.next++];
                if (e == frame.entry_edge) continue;
                if (disc[static_cast<std::size_t>(w)] == -1) {
                    disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                    stack.push_back({w, e, 0});
                } else {
                    low[static_cast<std::size_t>(frame.v)] =
                        std::min(low[static_cast<std::size_t>(frame.v)], disc[static_cast<std::size_t>(w)]);
                }
            } else {
                const Frame done = frame;
                stack.pop_back();
                if (!stack.empty()) {
                    Frame& parent = stack.back();
                    low[static_cast<std::size_t>(parent.v)] =
                        std::min(low[static_cast<std::size_t>(parent.v)], low[static_cast<std::size_t>(done.v)]);
                    if (low[static_cast<std::size_t>(done.v)] > disc[static_cast<std::size_t>(parent.v)])
                        result.push_back(done.entry_edge);
                }
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

// ---- serialization ---------------------------------------------------------

Graph read_graph(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("read_graph: bad header");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) throw std::runtime_error("read_graph: truncated edge list");
        edges.push_back({u, v});
    }
    return Graph(n, std::move(edges));
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.n_vertices() << ' ' << g.n_edges() << '\n';
    for (const Edge& ed : g.edges()) out << ed.u << ' ' << ed.v << '\n';
}

// ---- graph spec mini-language ----------------------------------------------

namespace {

std::vector<std::string> split_colon(const std::string& s) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream stream(s);
    while (std::getline(stream, token, ':')) parts.push_back(token);
    return parts;
}

}  // namespace

NamedGraph graph_from_spec(const std::string& spec) {
    const auto parts = split_colon(spec);
    if (parts.empty()) throw std::invalid_argument("graph spec is empty");
    const std::string& kind = parts[0];
    try {
        if (kind == "complete" && parts.size() == 2)
            return {spec, complete_graph(std::stoi(parts[1]))};
        if (kind == "bipartite" && parts.size() == 2)
            return {spec, complete_bipartite(std::stoi(parts[1]))};
        if (kind == "cycle" && parts.size() == 2)
            return {spec, cycle_graph(std::stoi(parts[1]))};
        if (kind == "regular" && parts.size() == 4)
            return {spec, random_regular(std::stoi(parts[1]), std::stoi(parts[2]),
                                         std::stoull(parts[3]))};
        if (kind == "sharpness" && parts.size() == 2)
            return {spec, sharpness_graph(std::stoi(parts[1])).graph};
        if (kind == "petersen" && parts.size() == 1) return {spec, petersen_graph()};
        if (kind == "lps" && parts.size() == 1) return {spec, lps_gadget().graph};
        if (kind == "file" && parts.size() >= 2) {
            // Re-join in case the path contains colons.
            std::string path = spec.substr(5);
            std::ifstream in(path);
            if (!in) throw std::runtime_error("cannot open graph file: " + path);
            return {spec, read_graph(in)};
        }
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed graph spec: " + spec);
    }
    throw std::invalid_argument("unknown graph spec: " + spec);
}

}  // namespace treelab
