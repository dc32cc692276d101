// treelab — command-line laboratory for spanning-tree correlations.
//
// Every subcommand emits a provenance header (tool, version, seed, config
// hash) and is byte-for-byte reproducible for a fixed command line.

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "treelab/acceptance.hpp"
#include "treelab/errors.hpp"
#include "treelab/graph.hpp"
#include "treelab/laplacian.hpp"
#include "treelab/mst.hpp"
#include "treelab/polytope.hpp"
#include "treelab/pwit.hpp"
#include "treelab/ust.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

// Deterministic ordered JSON emission; floats carry 17 significant digits.
class JsonWriter {
  public:
    JsonWriter& field(const std::string& key, const std::string& value) {
        prefix(key);
        out_ << '"' << escape(value) << '"';
        return *this;
    }
    JsonWriter& field(const std::string& key, const char* value) {
        return field(key, std::string(value));
    }
    JsonWriter& field(const std::string& key, double value) {
        prefix(key);
        out_ << format_double(value);
        return *this;
    }
    JsonWriter& field(const std::string& key, bool value) {
        prefix(key);
        out_ << (value ? "true" : "false");
        return *this;
    }
    JsonWriter& field(const std::string& key, long long value) {
        prefix(key);
        out_ << value;
        return *this;
    }
    JsonWriter& field(const std::string& key, std::uint64_t value) {
        prefix(key);
        out_ << value;
        return *this;
    }
    JsonWriter& field(const std::string& key, int value) {
        return field(key, static_cast<long long>(value));
    }
    JsonWriter& field_array(const std::string& key, const std::vector<double>& values) {
        prefix(key);
        out_ << '[';
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_double(values[i]);
        }
        out_ << ']';
        return *this;
    }
    JsonWriter& field_array(const std::string& key, const std::vector<int>& values) {
        prefix(key);
        out_ << '[';
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << values[i];
        }
        out_ << ']';
        return *this;
    }
    std::string str() const { return "{" + out_.str() + "}"; }

  private:
    static std::string escape(const std::string& raw) {
        std::string out;
        for (char c : raw) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        return out;
    }
    void prefix(const std::string& key) {
        if (!first_) out_ << ',';
        first_ = false;
        out_ << '"' << escape(key) << "\":";
    }
    std::ostringstream out_;
    bool first_ = true;
};

struct Options {
    std::string graph_spec;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::uint64_t samples = 100000;
    int threads = 0;
    std::string format = "json";
    std::string config;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TREELAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
        }
    }
    return 1;
}

void emit(const Options&, JsonWriter& body) { std::cout << body.str() << "\n"; }

JsonWriter provenance(const Options& opt) {
    JsonWriter w;
    w.field("tool", "treelab");
    w.field("version", kVersion);
    w.field("seed", opt.seed);
    w.field("config", opt.config);
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, fnv1a(opt.config));
    w.field("config_hash", std::string(hash));
    return w;
}

int cmd_ust_moments(const Options& opt) {
    const treelab::NamedGraph named = treelab::graph_from_spec(opt.graph_spec);
    const treelab::LaplacianSystem sys(named.graph);
    const treelab::SecondMomentReport report = treelab::exact_mean_sq_degree(sys, opt.threads);
    JsonWriter w = provenance(opt);
    w.field("graph", named.name);
    w.field("n", report.n);
    w.field("d", report.d);
    w.field("mean_sq_degree", report.mean_sq_degree);
    w.field("p1", report.p1_adjacent);
    w.field("upper_bound", report.upper_bound_value);
    w.field("gap_to_6", 6.0 - report.mean_sq_degree);
    w.field("identity_residual", report.identity_residual);
    emit(opt, w);
    return 0;
}

int cmd_ust_pair(const Options& opt, int e, int f) {
    const treelab::NamedGraph named = treelab::graph_from_spec(opt.graph_spec);
    const treelab::LaplacianSystem sys(named.graph);
    const double p_pair = sys.pair_probability_ust(e, f);
    const double p_e = sys.edge_probability_ust(e);
    const double p_f = sys.edge_probability_ust(f);
    JsonWriter w = provenance(opt);
    w.field("graph", named.name);
    w.field("e", e);
    w.field("f", f);
    w.field("p_pair", p_pair);
    w.field("p_e", p_e);
    w.field("p_f", p_f);
    w.field("product", p_e * p_f);
    w.field("pnc_margin", p_pair - p_e * p_f);
    emit(opt, w);
    return 0;
}

int cmd_ust_resistances(const Options& opt) {
    const treelab::NamedGraph named = treelab::graph_from_spec(opt.graph_spec);
    const treelab::LaplacianSystem sys(named.graph);
    std::cout << "# treelab " << kVersion << " config=" << opt.config << "\n";
    std::cout << "edge_id,u,v,reff\n";
    for (treelab::EdgeId e = 0; e < named.graph.n_edges(); ++e) {
        const treelab::Edge& ed = named.graph.edge(e);
        std::cout << e << ',' << ed.u << ',' << ed.v << ','
                  << format_double(sys.edge_probability_ust(e)) << '\n';
    }
    return 0;
}

int cmd_ust_identity(const Options& opt) {
    const treelab::NamedGraph named = treelab::graph_from_spec(opt.graph_spec);
    if (named.graph.n_edges() > 2000)
        throw treelab::ResourceCapError("identity-check: pair table capped at 2000 edges");
    const treelab::LaplacianSystem sys(named.graph);
    const treelab::IdentityResiduals residuals = treelab::second_moment_identity_check(sys);
    JsonWriter w = provenance(opt);
    w.field("graph", named.name);
    w.field("adjacent_residual", residuals.adjacent);
    w.field("nonadjacent_residual", residuals.non_adjacent);
    emit(opt, w);
    return 0;
}

int cmd_mst_exact(const Options& opt, const std::vector<int>& pair) {
    const treelab::NamedGraph named = treelab::graph_from_spec(opt.graph_spec);
    std::vector<std::pair<treelab::EdgeId, treelab::EdgeId>> designated;
    if (pair.size() == 2) designated.push_back({pair[0], pair[1]});
    const int m = named.graph.n_edges();
    if (m > 16)
        throw treelab::ResourceCapError(
            "mst exact: ordering oracle capped at 16 edges (stratified above 12)");
    // Full enumeration up to 12 edges; 13..16 fall back to the stratified
    // ordering sampler and are labelled approximate.
    const treelab::OrderingOracleResult oracle =
        m <= 12 ? treelab::exact_ordering_oracle(named.graph, designated, opt.threads)
                : treelab::stratified_ordering_oracle(
                      named.graph,
                      std::max<std::uint64_t>(1, opt.samples / static_cast<std::uint64_t>(m)),
                      opt.seed, designated, opt.threads);
    JsonWriter w = provenance(opt);
    w.field("graph", named.name);
    w.field("n", oracle.n);
    w.field("m", oracle.m);
    w.field("orderings", static_cast<std::uint64_t>(oracle.orderings));
    w.field("exact", oracle.exact);
    w.field("p0_edge0", oracle.edge_probability(0).to_string());
    w.field("mean_sq_degree", oracle.mean_sq_degree().to_string());
    w.field("mean_sq_degree_value", oracle.mean_sq_degree().to_double());
    if (named.name.rfind("complete:", 0) == 0) {
        w.field("p1_identity", oracle.p1_from_identity().to_string());
        w.field("p2_identity", oracle.p2_from_identity().to_string());
    }
    if (!designated.empty()) {
        const treelab::Rational p_pair = oracle.designated_probability(0);
        const treelab::Rational product = oracle.edge_probability(designated[0].first) *
                                          oracle.edge_probability(designated[0].second);
        w.field("pair_probability", p_pair.to_string());
        w.field("pair_product", product.to_string());
        w.field("pair_margin", (p_pair - product).to_string());
        w.field("pnc_violated", p_pair > product);
    }
    emit(opt, w);
    return 0;
}

int cmd_mst_mc(const Options& opt, const std::vector<int>& pair) {
    const treelab::NamedGraph named = treelab::graph_from_spec(opt.graph_spec);
    std::optional<std::pair<treelab::EdgeId, treelab::EdgeId>> adjacent;
    if (pair.size() == 2) adjacent = std::pair{pair[0], pair[1]};
    const treelab::McMstReport report =
        treelab::mc_mst_moments(named.graph, opt.samples, opt.seed, opt.threads, adjacent);
    JsonWriter w = provenance(opt);
    w.field("graph", named.name);
    w.field("samples", report.n_samples);
    w.field("tie_redraws", report.tie_redraws);
    w.field("mean_sq_degree", report.mean_sq_degree.estimate);
    w.field("mean_sq_degree_stderr", report.mean_sq_degree.standard_error);
    w.field("adjacent_e", report.adjacent_pair.first);
    w.field("adjacent_f", report.adjacent_pair.second);
    w.field("p1_adjacent", report.p1_adjacent.estimate);
    w.field("p1_adjacent_stderr", report.p1_adjacent.standard_error);
    w.field("nonadjacent_e", report.nonadjacent_pair.first);
    w.field("nonadjacent_f", report.nonadjacent_pair.second);
    w.field("p2_nonadjacent", report.p2_nonadjacent.estimate);
    w.field("p2_nonadjacent_stderr", report.p2_nonadjacent.standard_error);
    if (!report.p0_estimate.empty()) {
        w.field("p0_edge0", report.p0_estimate.front());
        w.field("p0_edge0_stderr", report.p0_stderr.front());
    }
    // p-NC verdicts with confidence intervals for both designated pairs.
    if (report.adjacent_pair.first >= 0) {
        const treelab::PncVerdict v = treelab::pnc_verdict_mc(
            named.graph, report.adjacent_pair.first, report.adjacent_pair.second, opt.samples,
            opt.seed ^ 0x51ULL, opt.threads);
        w.field("adjacent_margin", v.margin);
        w.field("adjacent_margin_stderr", v.margin_stderr);
        w.field("adjacent_verdict", v.verdict);
    }
    if (report.nonadjacent_pair.first >= 0) {
        const treelab::PncVerdict v = treelab::pnc_verdict_mc(
            named.graph, report.nonadjacent_pair.first, report.nonadjacent_pair.second,
            opt.samples, opt.seed ^ 0x52ULL, opt.threads);
        w.field("nonadjacent_margin", v.margin);
        w.field("nonadjacent_margin_stderr", v.margin_stderr);
        w.field("nonadjacent_verdict", v.verdict);
    }
    emit(opt, w);
    return 0;
}

// Exploratory: largest pair-over-product ratio across a small-graph corpus,
// by exact ordering enumeration.  Data for the uniform-constant question; no
// acceptance semantics attached.
int cmd_mst_ratio_scan(const Options& opt) {
    struct Entry {
        std::string name;
        treelab::Graph graph;
    };
    std::vector<Entry> corpus;
    corpus.push_back({"lps", treelab::lps_gadget().graph});
    corpus.push_back({"complete:4", treelab::complete_graph(4)});
    corpus.push_back({"complete:5", treelab::complete_graph(5)});
    for (int n = 3; n <= 6; ++n)
        corpus.push_back({"cycle:" + std::to_string(n), treelab::cycle_graph(n)});
    corpus.push_back({"bipartite:2", treelab::complete_bipartite(2)});
    corpus.push_back({"bipartite:3", treelab::complete_bipartite(3)});
    corpus.push_back({"regular:6:3", treelab::random_regular(6, 3, opt.seed)});

    double global_max = 0;
    std::string global_arg;
    JsonWriter w = provenance(opt);
    std::vector<double> ratios;
    std::string names;
    for (const Entry& entry : corpus) {
        const treelab::OrderingOracleResult oracle =
            treelab::exact_ordering_oracle(entry.graph, {}, opt.threads);
        double best = 0;
        int best_e = -1, best_f = -1;
        for (treelab::EdgeId e = 0; e < entry.graph.n_edges(); ++e)
            for (treelab::EdgeId f = e + 1; f < entry.graph.n_edges(); ++f) {
                const double pe = oracle.edge_probability(e).to_double();
                const double pf = oracle.edge_probability(f).to_double();
                if (pe <= 0 || pf <= 0) continue;
                const double ratio = oracle.pair_probability(e, f).to_double() / (pe * pf);
                if (ratio > best) {
                    best = ratio;
                    best_e = e;
                    best_f = f;
                }
            }
        ratios.push_back(best);
        names += (names.empty() ? "" : ",") + entry.name;
        if (best > global_max) {
            global_max = best;
            global_arg = entry.name + " pair (" + std::to_string(best_e) + "," +
                         std::to_string(best_f) + ")";
        }
    }
    w.field("graphs", names);
    w.field_array("max_ratio", ratios);
    w.field("global_max_ratio", global_max);
    w.field("global_argmax", global_arg);
    w.field("note", "exploratory scan; no uniform constant is claimed");
    emit(opt, w);
    return 0;
}

// Exploratory: Monte Carlo degree second moment of the minimum tree on
// complete graphs as n grows, next to the limit-object constant.
int cmd_mst_trend(const Options& opt, int nmin, int nmax, int nstep) {
    if (nmin < 4 || nstep < 1 || nmax < nmin)
        throw std::invalid_argument("trend: need 4 <= nmin <= nmax and nstep >= 1");
    const double limit = 10.0 - 4.0 * treelab::zeta3();
    std::cout << "# treelab " << kVersion << " config=" << opt.config << "\n";
    std::cout << "n,mean_sq_degree,stderr,limit_second_moment\n";
    for (int n = nmin; n <= nmax; n += nstep) {
        const treelab::McMstReport report = treelab::mc_mst_moments(
            treelab::complete_graph(n), opt.samples, opt.seed + static_cast<std::uint64_t>(n),
            opt.threads);
        std::cout << n << ',' << format_double(report.mean_sq_degree.estimate) << ','
                  << format_double(report.mean_sq_degree.standard_error) << ','
                  << format_double(limit) << '\n';
    }
    return 0;
}

int cmd_mst_lps(const Options& opt) {
    const treelab::LpsGadget gadget = treelab::lps_gadget();
    const treelab::PncVerdict verdict = treelab::pnc_verdict_exact(
        gadget.graph, gadget.bundle_a.front(), gadget.bundle_b.front(), opt.threads);
    JsonWriter w = provenance(opt);
    w.field("graph", "lps");
    w.field("m", gadget.graph.n_edges());
    w.field("bundle_edge_e", gadget.bundle_a.front());
    w.field("bundle_edge_f", gadget.bundle_b.front());
    w.field("p_pair", verdict.p_pair_rat.to_string());
    w.field("p_e", verdict.p_e_rat.to_string());
    w.field("p_f", verdict.p_f_rat.to_string());
    w.field("margin", verdict.margin_rat.to_string());
    w.field("margin_value", verdict.margin);
    w.field("pnc_violated", verdict.margin_rat > treelab::Rational(0));
    w.field("verdict", verdict.verdict);
    emit(opt, w);
    return 0;
}

int cmd_pwit_moment(const Options& opt) {
    const treelab::PwitMomentReport mc =
        treelab::mc_root_degree_moments(opt.samples, opt.seed, opt.threads);
    const treelab::MomentIntegrals integrals = treelab::moment_integrals();
    JsonWriter w = provenance(opt);
    w.field("target", "E_N2");
    w.field("mc_estimate", mc.second_moment.estimate);
    w.field("stderr", mc.second_moment.standard_error);
    w.field("n_samples", mc.second_moment.n_samples);
    w.field("first_moment", mc.first_moment.estimate);
    w.field("quadrature_value", 5.0 + integrals.combo);
    w.field("q_integral_value", 5.0 + integrals.q_integral);
    w.field("series_value", integrals.e_n2);
    w.field("truncation_events", mc.truncation_events);
    w.field("truncation_mass", mc.discarded_mass_total);
    emit(opt, w);
    return 0;
}

int cmd_pwit_theta(const Options& opt, double lambda) {
    JsonWriter w = provenance(opt);
    w.field("lambda", lambda);
    if (lambda <= 1.0) {
        w.field("theta", 0.0);
        w.field("subcritical", true);
    } else {
        const treelab::ThetaTable table;
        const treelab::ThetaTable::Point p = table.eval(lambda);
        w.field("theta", p.theta);
        w.field("q", p.q);
        w.field("theta_prime", p.theta_prime);
        w.field("alpha", p.alpha);
        w.field("beta", p.beta);
        w.field("fixed_point_residual",
                std::abs(1.0 - p.theta - std::exp(-lambda * p.theta)));
    }
    emit(opt, w);
    return 0;
}

int cmd_sharpness_sweep(const Options& opt, int dmin, int dmax) {
    if (dmin < 5 || dmin % 2 == 0 || dmax < dmin)
        throw std::invalid_argument("sweep: need odd dmin >= 5 and dmax >= dmin");
    std::vector<int> degrees;
    for (int d = dmin; d <= dmax; d += 2) degrees.push_back(d);
    const auto rows = treelab::sharpness_sweep(degrees, opt.threads);
    if (opt.format == "csv") {
        std::cout << "# treelab " << kVersion << " config=" << opt.config << "\n";
        std::cout << "d,q,block_avg_deg_sq,port_expected_degree,m_value,upper_bound,gap_to_6\n";
        for (const auto& row : rows)
            std::cout << row.d << ',' << row.q << ',' << format_double(row.block_avg_deg_sq)
                      << ',' << format_double(row.port_expected_degree) << ','
                      << format_double(row.m_value) << ',' << format_double(row.upper_bound)
                      << ',' << format_double(row.gap_to_6) << '\n';
        return 0;
    }
    JsonWriter w = provenance(opt);
    std::vector<int> ds;
    std::vector<double> m_values, bounds, gaps, block_avgs;
    for (const auto& row : rows) {
        ds.push_back(row.d);
        m_values.push_back(row.m_value);
        bounds.push_back(row.upper_bound);
        gaps.push_back(row.gap_to_6);
        block_avgs.push_back(row.block_avg_deg_sq);
    }
    w.field_array("d", ds);
    w.field_array("m_value", m_values);
    w.field_array("upper_bound", bounds);
    w.field_array("gap_to_6", gaps);
    w.field_array("block_avg_deg_sq", block_avgs);
    emit(opt, w);
    return 0;
}

int cmd_polytope_alpha(const Options& opt) {
    const treelab::NamedGraph named = treelab::graph_from_spec(opt.graph_spec);
    const treelab::LaplacianSystem sys(named.graph);
    const treelab::AlphaMembershipReport report =
        treelab::alpha_membership_check(sys, opt.threads);
    JsonWriter w = provenance(opt);
    w.field("graph", named.name);
    w.field("n", report.n);
    w.field("d", report.d);
    w.field("alpha_nonneg", report.alpha_nonneg);
    w.field("min_alpha", report.min_alpha);
    w.field("member", report.membership.member);
    w.field("exact", report.membership.exact);
    w.field("worst_violation", report.membership.worst_violation);
    w.field("reff_rank_ok", report.reff_rank_ok);
    if (!report.membership.member)
        w.field_array("violated_set", std::vector<int>(report.membership.worst_set.begin(),
                                                       report.membership.worst_set.end()));
    emit(opt, w);
    return report.membership.member ? 0 : 1;
}

int cmd_verify_all(const Options& opt) {
    const auto results = treelab::run_acceptance(opt.seed, opt.threads);
    const bool ok = treelab::report_acceptance(results);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"treelab — exact and Monte Carlo spanning-tree correlation laboratory"};
    app.require_subcommand(1);

    Options opt;
    opt.seed = default_seed();
    {
        // Canonical config: the worker count never affects results, so it is
        // excluded from the provenance string and hash.
        std::ostringstream config;
        bool first = true;
        for (int i = 1; i < argc; ++i) {
            if (std::string(argv[i]) == "--threads") {
                ++i;
                continue;
            }
            config << (first ? "" : " ") << argv[i];
            first = false;
        }
        opt.config = config.str();
    }

    auto add_common = [&](CLI::App* cmd, bool graph, bool sampling) {
        if (graph) cmd->add_option("--graph", opt.graph_spec, "graph spec")->required();
        if (sampling) {
            cmd->add_option("--samples", opt.samples, "sample count");
            cmd->add_option("--seed", opt.seed, "master seed (default: TREELAB_SEED or 1)");
        }
        cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
        cmd->add_option("--format", opt.format, "output format: json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    int pair_e = -1, pair_f = -1;
    double lambda = 2.0;
    int dmin = 5, dmax = 41;
    std::vector<int> designated_pair;

    CLI::App* ust = app.add_subcommand("ust", "uniform spanning tree analytics");
    CLI::App* ust_moments = ust->add_subcommand("moments", "exact mean squared degree");
    add_common(ust_moments, true, false);
    CLI::App* ust_pair = ust->add_subcommand("pair", "transfer-current pair probability");
    add_common(ust_pair, true, false);
    ust_pair->add_option("--e", pair_e, "first edge id")->required();
    ust_pair->add_option("--f", pair_f, "second edge id")->required();
    CLI::App* ust_identity = ust->add_subcommand("identity-check", "ordered-pair identities");
    add_common(ust_identity, true, false);
    CLI::App* ust_resist = ust->add_subcommand("resistances", "per-edge resistance CSV dump");
    add_common(ust_resist, true, false);

    CLI::App* mst = app.add_subcommand("mst", "minimum spanning tree lab");
    CLI::App* mst_exact = mst->add_subcommand("exact", "ordering-enumeration oracle");
    add_common(mst_exact, true, true);  // sampling options feed the 13..16-edge fallback
    mst_exact->add_option("--pair", designated_pair, "edge pair e f")->expected(2);
    CLI::App* mst_mc = mst->add_subcommand("mc", "Monte Carlo estimators");
    add_common(mst_mc, true, true);
    mst_mc->add_option("--pair", designated_pair, "adjacent pair e f")->expected(2);
    CLI::App* mst_lps = mst->add_subcommand("lps", "parallel-bundle counterexample");
    add_common(mst_lps, false, false);
    CLI::App* mst_ratio = mst->add_subcommand("ratio-scan", "exploratory pair/product maxima");
    add_common(mst_ratio, false, true);
    int trend_nmin = 10, trend_nmax = 100, trend_nstep = 10;
    CLI::App* mst_trend = mst->add_subcommand("trend", "exploratory second-moment trend (CSV)");
    add_common(mst_trend, false, true);
    mst_trend->add_option("--nmin", trend_nmin, "smallest complete-graph order");
    mst_trend->add_option("--nmax", trend_nmax, "largest complete-graph order");
    mst_trend->add_option("--nstep", trend_nstep, "order increment");

    CLI::App* pwit = app.add_subcommand("pwit", "limit-tree root degree");
    CLI::App* pwit_moment = pwit->add_subcommand("moment", "E[N^2] Monte Carlo + integrals");
    add_common(pwit_moment, false, true);
    CLI::App* pwit_theta = pwit->add_subcommand("theta", "survival probability at a point");
    add_common(pwit_theta, false, false);
    pwit_theta->add_option("--lambda", lambda, "branching mean")->required();

    CLI::App* sharp = app.add_subcommand("sharpness", "dense-block family");
    CLI::App* sharp_sweep = sharp->add_subcommand("sweep", "mean squared degree vs degree");
    add_common(sharp_sweep, false, false);
    sharp_sweep->add_option("--dmin", dmin, "smallest odd degree");
    sharp_sweep->add_option("--dmax", dmax, "largest degree");

    CLI::App* polytope = app.add_subcommand("polytope", "forest polytope checks");
    CLI::App* polytope_alpha = polytope->add_subcommand("alpha-check", "Edmonds membership");
    add_common(polytope_alpha, true, false);

    CLI::App* verify = app.add_subcommand("verify", "regression battery");
    CLI::App* verify_all = verify->add_subcommand("all", "run every criterion");
    add_common(verify_all, false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        const bool csv_capable =
            sharp_sweep->parsed() || ust_resist->parsed() || mst_trend->parsed();
        if (opt.format == "csv" && !csv_capable)
            throw std::invalid_argument("csv output is only available for sweep/trend/resistance dumps");
        if (ust_moments->parsed()) return cmd_ust_moments(opt);
        if (ust_pair->parsed()) return cmd_ust_pair(opt, pair_e, pair_f);
        if (ust_identity->parsed()) return cmd_ust_identity(opt);
        if (ust_resist->parsed()) return cmd_ust_resistances(opt);
        if (mst_exact->parsed()) return cmd_mst_exact(opt, designated_pair);
        if (mst_mc->parsed()) return cmd_mst_mc(opt, designated_pair);
        if (mst_lps->parsed()) return cmd_mst_lps(opt);
        if (mst_ratio->parsed()) return cmd_mst_ratio_scan(opt);
        if (mst_trend->parsed()) return cmd_mst_trend(opt, trend_nmin, trend_nmax, trend_nstep);
        if (pwit_moment->parsed()) return cmd_pwit_moment(opt);
        if (pwit_theta->parsed()) return cmd_pwit_theta(opt, lambda);
        if (sharp_sweep->parsed()) return cmd_sharpness_sweep(opt, dmin, dmax);
        if (polytope_alpha->parsed()) return cmd_polytope_alpha(opt);
        if (verify_all->parsed()) return cmd_verify_all(opt);
    } catch (const treelab::ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "usage error: no subcommand\n";
    return 2;
}
