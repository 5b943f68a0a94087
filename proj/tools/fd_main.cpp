// Command-line front end: one binary exposing the distance computations
// (fd ...), free-space export (fsd ...), gadget generation (gadget ...), and
// oracle comparisons (oracle ...). Copies named fsd/gadget/oracle dispatch on
// argv[0] so each group also works as its own command.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdmc/constant.hpp"
#include "fdmc/dynamic.hpp"
#include "fdmc/gadget.hpp"
#include "fdmc/identity.hpp"
#include "fdmc/mesh_io.hpp"
#include "fdmc/oracles.hpp"
#include "fdmc/svg.hpp"

using nlohmann::json;
using namespace fdmc;

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

ConnConfig parse_conn(const std::string& arg) {
    if (arg == "exact" || arg.empty()) return ConnConfig::exact();
    if (arg.rfind("sampled:", 0) == 0) {
        int res = std::stoi(arg.substr(8));
        if (res < 2) throw CLI::ValidationError("--conn", "resolution must be >= 2");
        return ConnConfig::sampled(res);
    }
    throw CLI::ValidationError("--conn", "expected exact or sampled:N");
}

/// One invocation's configuration: norm, tolerance, graph and connectivity
/// modes, seed, and input/output paths. Validated before any computation.
struct RunConfig {
    std::string a_path, b_path;
    std::string pi_path, tau_path;
    std::string norm = "l2";
    double tolerance = 1e-6;
    std::string graph = "reduced";
    std::string conn = "exact";
    std::uint64_t seed = 0;

    NormKind norm_kind() const { return parse_norm(norm); }
    GraphMode graph_mode() const {
        if (graph == "full") return GraphMode::FullR;
        if (graph == "reduced") return GraphMode::ReducedE;
        throw CLI::ValidationError("--graph", "expected full or reduced");
    }
    ConnConfig conn_config() const { return parse_conn(conn); }

    void validate() const {
        if (tolerance <= 0) throw CLI::ValidationError("--tol", "tolerance must be positive");
        norm_kind();
        graph_mode();
        conn_config();
        for (const std::string* p : {&a_path, &b_path, &pi_path, &tau_path}) {
            if (p->empty()) continue;
            std::ifstream probe(*p);
            if (!probe) throw CLI::ValidationError("paths", "cannot open " + *p);
        }
    }
};

void add_mesh_args(CLI::App* cmd, RunConfig& m, bool with_maps = false) {
    cmd->add_option("--a", m.a_path, "mesh A (json)")->required();
    cmd->add_option("--b", m.b_path, "mesh B (json)")->required();
    cmd->add_option("--norm", m.norm, "norm: l1|l2|linf");
    if (with_maps) {
        cmd->add_option("--pi", m.pi_path, "positional reparameterization (json)");
        cmd->add_option("--tau", m.tau_path, "timestamp reparameterization (json)");
    }
}

std::vector<bool> parse_assignment(const std::string& s) {
    std::vector<bool> out;
    for (char c : s) {
        if (c == '1')
            out.push_back(true);
        else if (c == '0')
            out.push_back(false);
        else if (c != ',' && c != ' ')
            throw std::invalid_argument("assignment must be a comma list of 0/1");
    }
    return out;
}

// the FD_THREADS cap; all computations here are single-threaded, so any
// positive cap is honored trivially
int thread_cap() {
    const char* v = std::getenv("FD_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n > 0 ? n : 1;
}

json witness_json(const MatchingWitness& w) {
    json bps = json::array();
    for (auto& [x, y] : w.pi.breakpoints) bps.push_back(json::array({x, y}));
    return json{{"breakpoints", std::move(bps)}};
}

int run_fd(CLI::App& app, int argc, char** argv);

int cmd_ii(const RunConfig& m) {
    m.validate();
    QuadMesh a = load_mesh(m.a_path), b = load_mesh(m.b_path);
    NormKind norm = m.norm_kind();
    json out;
    if (!m.pi_path.empty() || !m.tau_path.empty()) {
        Reparameterization pi = m.pi_path.empty() ? Reparameterization::linear(a.P, b.P)
                                                  : load_reparam(m.pi_path);
        Reparameterization tau = m.tau_path.empty() ? Reparameterization::linear(a.T, b.T)
                                                    : load_reparam(m.tau_path);
        AlignedPair ap = align_meshes(a, b, pi, tau);
        auto r = frechet_identity(ap.a, ap.b, norm);
        out = {{"distance", r.distance}, {"argmax", {r.argmax_p, r.argmax_t}}};
    } else {
        auto r = frechet_identity(a, b, norm);
        out = {{"distance", r.distance}, {"argmax", {r.argmax_p, r.argmax_t}}};
    }
    std::cout << out.dump() << "\n";
    return kExitAccept;
}

int cmd_ic(const RunConfig& m, double eps, bool exact, bool has_eps) {
    m.validate();
    double tol = m.tolerance;
    QuadMesh a = load_mesh(m.a_path), b = load_mesh(m.b_path);
    NormKind norm = m.norm_kind();
    json out;
    if (has_eps) {
        auto d = decide_ic(a, b, eps, norm);
        out["accept"] = d.accepted;
        if (d.witness) out["witness"] = witness_json(*d.witness);
    } else if (exact) {
        out["distance"] = compute_ic(a, b, norm, ComputeModeIC::critical());
        out["mode"] = "critical";
    } else {
        out["distance"] = compute_ic(a, b, norm, ComputeModeIC::bisect(tol));
        out["mode"] = "bisect";
        out["tol"] = tol;
    }
    std::cout << out.dump() << "\n";
    return kExitAccept;
}

int cmd_id(const RunConfig& m, double eps, bool has_eps, bool stats,
           const std::string& dump_graph) {
    m.validate();
    double tol = m.tolerance;
    QuadMesh a = load_mesh(m.a_path), b = load_mesh(m.b_path);
    NormKind norm = m.norm_kind();
    GraphMode mode = m.graph_mode();
    ConnConfig cc = m.conn_config();
    json out;
    if (!has_eps) {
        out["distance"] = compute_id(a, b, norm, tol, mode, cc);
        out["tol"] = tol;
    }
    if (has_eps || !dump_graph.empty() || stats) {
        double e = has_eps ? eps : out["distance"].get<double>();
        auto obs = extract_obstacles(a, b, e, norm, cc);
        ObstacleGraph g = (mode == GraphMode::FullR) ? relation_R(*obs) : reduced_edges_E(*obs);
        if (has_eps) out["accept"] = !g.d_reaches_u();
        if (stats) {
            out["stats"] = {{"leftmost_queries", g.stats.leftmost_queries},
                            {"frontier_queries", g.stats.frontier_queries},
                            {"edges_geometry", g.stats.edges_geometry},
                            {"edges_grid", g.stats.edges_grid},
                            {"edges_pareto", g.stats.edges_pareto},
                            {"edges_boundary", g.stats.edges_boundary}};
        }
        if (!dump_graph.empty()) {
            json verts = json::array();
            for (const Obstacle& ob : obs->all()) {
                json v = {{"grid", {ob.gx, ob.gy, ob.gt}}, {"dummy", ob.dummy}};
                if (!ob.dummy) {
                    v["tmin"] = ob.tmin;
                    v["tmax"] = ob.tmax;
                }
                verts.push_back(std::move(v));
            }
            verts.push_back(json{{"boundary", "d"}});
            verts.push_back(json{{"boundary", "u"}});
            json edges = json::array();
            for (int v = 0; v < int(g.out.size()); ++v)
                for (int w : g.out[v]) edges.push_back(json::array({v, w}));
            save_json(json{{"vertices", std::move(verts)}, {"edges", std::move(edges)}},
                      dump_graph);
        }
    }
    std::cout << out.dump() << "\n";
    return kExitAccept;
}

int cmd_decide(const RunConfig& m, const std::string& cls, double eps) {
    m.validate();
    QuadMesh a = load_mesh(m.a_path), b = load_mesh(m.b_path);
    NormKind norm = m.norm_kind();
    bool accept;
    if (cls == "ii") {
        accept = frechet_identity(a, b, norm).distance <= eps;
    } else if (cls == "ic") {
        accept = decide_ic(a, b, eps, norm).accepted;
    } else if (cls == "id") {
        accept = decide_id(a, b, eps, norm, m.graph_mode(), m.conn_config());
    } else {
        throw CLI::ValidationError("--class", "expected ii, ic or id");
    }
    std::cout << json{{"accept", accept}}.dump() << "\n";
    return accept ? kExitAccept : kExitReject;
}

int cmd_fsd_export(const RunConfig& m, const std::string& cls, double eps,
                   const std::string& slice, const std::string& out_path, int res) {
    m.validate();
    if (res < 2) throw CLI::ValidationError("--res", "resolution must be >= 2");
    QuadMesh a = load_mesh(m.a_path), b = load_mesh(m.b_path);
    NormKind norm = m.norm_kind();
    std::string svg_text;
    if (cls == "ic") {
        auto d = decide_ic(a, b, eps, norm);
        svg_text = svg::render_fsd_ic(a, b, eps, norm, res, d.witness);
    } else if (cls == "id") {
        if (slice.rfind("t=", 0) != 0)
            throw CLI::ValidationError("--slice", "expected t=<value>");
        double t = std::stod(slice.substr(2));
        svg_text = svg::render_fsd_id_slice(a, b, eps, norm, t, res);
    } else {
        throw CLI::ValidationError("--class", "expected ic or id");
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + out_path + " for writing");
    out << svg_text;
    return kExitAccept;
}

int cmd_gadget_gen(const std::string& cnf, const std::string& cls, const std::string& out_a,
                   const std::string& out_b, const std::string& out_features) {
    gadget::CnfFormula f = gadget::load_dimacs(cnf);
    gadget::GadgetInstance inst =
        (cls == "dd") ? gadget::gadget_dd(f) : gadget::gadget_cc(f);
    auto audit = gadget::audit_gaps(inst);
    if (!audit.pass) {
        for (const auto& msg : audit.failures) std::cerr << "audit: " << msg << "\n";
        return kExitNumeric;
    }
    save_mesh(inst.a, out_a);
    save_mesh(inst.b, out_b);
    if (!out_features.empty()) save_json(inst.features.to_json(), out_features);
    std::cout << json{{"n", inst.formula.n},
                      {"m", int(inst.formula.clauses.size())},
                      {"Pa", inst.a.P},
                      {"Ta", inst.a.T},
                      {"Pb", inst.b.P},
                      {"Tb", inst.b.T},
                      {"audit", "pass"}}
                     .dump()
              << "\n";
    return kExitAccept;
}

int cmd_gadget_verify(const std::string& cnf, const std::string& cls,
                      const std::string& assignment_str) {
    gadget::CnfFormula f = gadget::load_dimacs(cnf);
    gadget::GadgetInstance inst =
        (cls == "dd") ? gadget::gadget_dd(f) : gadget::gadget_cc(f);
    std::vector<bool> assignment = parse_assignment(assignment_str);
    MatchingWitness w = gadget::witness_matching(inst, assignment);
    std::cout << json{{"bound", *w.verified_bound},
                      {"satisfies", f.satisfies(assignment)}}
                     .dump()
              << "\n";
    return kExitAccept;
}

int cmd_oracle_compare(const std::string& cls, int trials, std::uint64_t seed) {
    std::mt19937 rng(seed);
    oracle::SamplingPlan plan(16, seed);
    int agree = 0, skipped = 0;
    auto rnd_mesh = [&](int P, int T, int dim) {
        QuadMesh m(P, T, dim);
        std::uniform_real_distribution<double> ud(-2, 2);
        for (auto& v : m.verts)
            for (auto& c : v) c = ud(rng);
        return m;
    };
    for (int trial = 0; trial < trials; ++trial) {
        if (cls == "ii") {
            QuadMesh a = rnd_mesh(3, 2, 2), b = rnd_mesh(3, 2, 2);
            double d = frechet_identity(a, b, NormKind::L2).distance;
            double s = oracle::sampled_sup(a, b, MatchingWitness::identity(), NormKind::L2, plan);
            if (d >= s - 1e-9 && d <= s + 0.5) ++agree;
        } else if (cls == "ic" || cls == "id") {
            QuadMesh a = rnd_mesh(2, 2, 1), b = rnd_mesh(2, 2, 1);
            double star = (cls == "ic")
                              ? compute_ic(a, b, NormKind::L2, ComputeModeIC::bisect(1e-6))
                              : compute_id(a, b, NormKind::L2, 1e-6);
            double margin = 0.25 * std::max(star, 0.2);
            double eps = (trial % 2 == 0) ? star + margin : star - margin;
            if (eps <= 0) {
                ++skipped;
                continue;
            }
            bool primary, ref;
            if (cls == "ic") {
                primary = decide_ic(a, b, eps, NormKind::L2).accepted;
                ref = oracle::grid_dp_ic(a, b, eps, NormKind::L2, plan);
            } else {
                primary = decide_id(a, b, eps, NormKind::L2);
                ref = oracle::full_R_reachability(a, b, eps, NormKind::L2,
                                                  oracle::SamplingPlan(10, seed));
            }
            if (primary == ref) ++agree;
        } else {
            throw CLI::ValidationError("--class", "expected ii, ic or id");
        }
    }
    std::cout << json{{"class", cls}, {"trials", trials}, {"agree", agree}, {"skipped", skipped}}
                     .dump()
              << "\n";
    return kExitAccept;
}

int dispatch(int argc, char** argv) {
    (void)thread_cap();
    std::string prog = argv[0];
    auto base = prog.find_last_of('/');
    std::string name = (base == std::string::npos) ? prog : prog.substr(base + 1);

    // group tokens may come from argv[0] (fsd/gadget/oracle copies) or argv[1]
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string group;
    if (name == "fsd" || name == "gadget" || name == "oracle")
        group = name;
    else if (!args.empty() && (args[0] == "fsd" || args[0] == "gadget" || args[0] == "oracle")) {
        group = args[0];
        args.erase(args.begin());
    }

    CLI::App app{"restricted Fréchet distances between moving curves"};
    app.require_subcommand(1);

    // fd group
    RunConfig m_ii, m_ic, m_id, m_dec, m_fsd;
    double eps_ic = 0, eps_id = 0, eps_dec = 0, eps_fsd = 0;
    bool exact_ic = false, stats_id = false;
    std::string dump_id;
    std::string cls_dec = "ic";
    std::string cls_fsd = "ic", slice_fsd, out_fsd;
    int res_fsd = 16;
    std::string cnf_gen, cls_gen = "cc", out_a_gen, out_b_gen, out_feat_gen;
    std::string cnf_ver, cls_ver = "cc", assign_ver;
    std::string cls_cmp = "ii";
    int trials_cmp = 100;
    std::uint64_t seed_cmp = 7;

    if (group.empty()) {
        auto* ii = app.add_subcommand("ii", "identity / predefined PL matching distance");
        add_mesh_args(ii, m_ii, true);

        auto* ic = app.add_subcommand("ic", "synchronous-constant matching distance");
        add_mesh_args(ic, m_ic);
        ic->add_option("--eps", eps_ic, "decide at this eps");
        ic->add_option("--tol", m_ic.tolerance, "bisection tolerance");
        ic->add_flag("--exact", exact_ic, "exact critical-value mode (l2/linf)");

        auto* id = app.add_subcommand("id", "synchronous-dynamic matching distance");
        add_mesh_args(id, m_id);
        id->add_option("--eps", eps_id, "decide at this eps");
        id->add_option("--tol", m_id.tolerance, "bisection tolerance");
        id->add_option("--graph", m_id.graph, "full|reduced");
        id->add_option("--conn", m_id.conn, "exact|sampled:N");
        id->add_flag("--stats", stats_id, "print pareto query counters");
        id->add_option("--dump-graph", dump_id, "write the obstacle graph (json)");

        auto* dec = app.add_subcommand("decide", "decision with exit code 0/1");
        add_mesh_args(dec, m_dec);
        dec->add_option("--class", cls_dec, "ii|ic|id")->required();
        dec->add_option("--eps", eps_dec, "threshold")->required();
        dec->add_option("--graph", m_dec.graph, "full|reduced");
        dec->add_option("--conn", m_dec.conn, "exact|sampled:N");
    }
    if (group.empty() || group == "fsd") {
        auto* exp = app.add_subcommand("export", "render a free-space diagram as svg");
        add_mesh_args(exp, m_fsd);
        exp->add_option("--class", cls_fsd, "ic|id")->required();
        exp->add_option("--eps", eps_fsd, "eps")->required();
        exp->add_option("--slice", slice_fsd, "t=<value> (id only)");
        exp->add_option("--out", out_fsd, "output svg path")->required();
        exp->add_option("--res", res_fsd, "samples per cell axis");
    }
    if (group.empty() || group == "gadget") {
        auto* gen = app.add_subcommand("gen", "generate a 3-SAT gadget instance");
        gen->add_option("--cnf", cnf_gen, "dimacs cnf input")->required();
        gen->add_option("--class", cls_gen, "cc|dd");
        gen->add_option("--out-a", out_a_gen, "mesh A output")->required();
        gen->add_option("--out-b", out_b_gen, "mesh B output")->required();
        gen->add_option("--features", out_feat_gen, "feature map output");

        auto* ver = app.add_subcommand("verify", "verify a witness matching bound");
        ver->add_option("--cnf", cnf_ver, "dimacs cnf input")->required();
        ver->add_option("--class", cls_ver, "cc|dd");
        ver->add_option("--assignment", assign_ver, "comma list of 0/1")->required();
    }
    if (group.empty() || group == "oracle") {
        auto* cmp = app.add_subcommand("compare", "primary vs oracle agreement stats");
        cmp->add_option("--class", cls_cmp, "ii|ic|id");
        cmp->add_option("--trials", trials_cmp, "number of random instances");
        cmp->add_option("--seed", seed_cmp, "rng seed");
    }

    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (auto& s : args) cargs.push_back(s.c_str());
    try {
        app.parse(int(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitAccept : kExitUsage;
    }

    if (app.got_subcommand("ii")) return cmd_ii(m_ii);
    if (app.got_subcommand("ic")) {
        auto* sc = app.get_subcommand("ic");
        return cmd_ic(m_ic, eps_ic, exact_ic, sc->count("--eps") > 0);
    }
    if (app.got_subcommand("id")) {
        auto* sc = app.get_subcommand("id");
        return cmd_id(m_id, eps_id, sc->count("--eps") > 0, stats_id, dump_id);
    }
    if (app.got_subcommand("decide"))
        return cmd_decide(m_dec, cls_dec, eps_dec);
    if (app.got_subcommand("export"))
        return cmd_fsd_export(m_fsd, cls_fsd, eps_fsd, slice_fsd, out_fsd, res_fsd);
    if (app.got_subcommand("gen"))
        return cmd_gadget_gen(cnf_gen, cls_gen, out_a_gen, out_b_gen, out_feat_gen);
    if (app.got_subcommand("verify")) return cmd_gadget_verify(cnf_ver, cls_ver, assign_ver);
    if (app.got_subcommand("compare")) return cmd_oracle_compare(cls_cmp, trials_cmp, seed_cmp);
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << " bracket [" << e.bracket_lo << ", "
                  << e.bracket_hi << "]\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
