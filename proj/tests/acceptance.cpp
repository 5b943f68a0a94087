// Acceptance suite: one check per criterion, each printing a PASS/FAIL line.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "fdmc/cellgeom.hpp"
#include "fdmc/constant.hpp"
#include "fdmc/dynamic.hpp"
#include "fdmc/gadget.hpp"
#include "fdmc/identity.hpp"
#include "fdmc/mesh_io.hpp"
#include "fdmc/oracles.hpp"
#include "fdmc/pareto.hpp"
#include "test_support.hpp"

using namespace fdmc;
using namespace fdmc::testsupport;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

// disagreement cases get archived so they can be replayed as fixtures
void archive_disagreement(const std::string& name, const QuadMesh& a, const QuadMesh& b,
                          double eps, const std::string& note) {
    nlohmann::json j{{"a", mesh_to_json(a)}, {"b", mesh_to_json(b)}, {"eps", eps},
                     {"norm", "l2"},         {"expect_accept", nullptr}, {"note", note}};
    std::string path = "acceptance_fixture_" + name + ".json";
    save_json(j, path);
    std::fprintf(stderr, "disagreement archived: %s\n", path.c_str());
}

double lipschitz(const QuadMesh& a, NormKind k) {
    double L = 0;
    for (int t = 0; t <= a.T; ++t)
        for (int p = 0; p < a.P; ++p)
            L = std::max(L, distance(a.vertex(p + 1, t), a.vertex(p, t), k));
    for (int t = 0; t < a.T; ++t)
        for (int p = 0; p <= a.P; ++p)
            L = std::max(L, distance(a.vertex(p, t + 1), a.vertex(p, t), k));
    return L;
}

// --- criterion 1: identity correctness ------------------------------------
void criterion1() {
    auto t0 = Clock::now();
    std::mt19937 rng(1001);
    bool ok = true;
    std::string why;
    const int res = 64;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        int P = 1 + int(rng() % 6), T = int(rng() % 7), dim = 1 + int(rng() % 3);
        QuadMesh a = random_mesh(rng, P, T, dim);
        QuadMesh b = random_mesh(rng, P, T, dim);
        NormKind k = std::array{NormKind::L1, NormKind::L2, NormKind::Linf}[trial % 3];
        auto r = frechet_identity(a, b, k);
        double sup = 0;
        for (int j = 0; j <= std::max(T * res, 0); ++j)
            for (int i = 0; i <= P * res; ++i) {
                double p = double(i) / res, t = double(j) / res;
                sup = std::max(sup, distance(eval_mesh(a, p, t), eval_mesh(b, p, t), k));
            }
        double margin = 2.0 * (lipschitz(a, k) + lipschitz(b, k)) / res;
        if (r.distance < sup - 1e-9) {
            ok = false;
            why = "vertex max below sampled sup";
        }
        if (r.distance > sup + margin) {
            ok = false;
            why = "vertex max exceeds sampled sup by more than the Lipschitz margin";
        }
        double attained = distance(a.vertex(r.argmax_p, r.argmax_t),
                                   b.vertex(r.argmax_p, r.argmax_t), k);
        if (std::fabs(attained - r.distance) > 1e-12) {
            ok = false;
            why = "witness vertex does not attain the distance";
        }
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (ok && secs >= 1.0) {
        ok = false;
        why = "runtime >= 1 s";
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "(50 meshes, all norms, %.2f s)%s", secs,
                  why.empty() ? "" : (" " + why).c_str());
    report(1, ok, buf);
}

// --- criterion 2: constant-matching decision vs grid-DP oracle -------------
void criterion2() {
    std::mt19937 rng(1002);
    oracle::SamplingPlan plan(16);
    int agree = 0, total = 0;
    for (int trial = 0; trial < 30; ++trial) {
        int P = 1 + int(rng() % 4), Q = 1 + int(rng() % 4), T = int(rng() % 4);
        QuadMesh a = random_mesh(rng, P, T, 2);
        QuadMesh b = random_mesh(rng, Q, T, 2);
        double star = compute_ic(a, b, NormKind::L2, ComputeModeIC::bisect(1e-9));
        double margin =
            2.0 * (lipschitz(a, NormKind::L2) + lipschitz(b, NormKind::L2)) / plan.resolution;
        for (double eps : {star + 1.5 * margin + 1e-6, star - 1.5 * margin - 1e-6}) {
            if (eps <= 0) continue;
            ++total;
            bool primary = decide_ic(a, b, eps, NormKind::L2).accepted;
            bool ref = oracle::grid_dp_ic(a, b, eps, NormKind::L2, plan);
            if (primary == ref)
                ++agree;
            else
                archive_disagreement("ic_trial" + std::to_string(trial), a, b, eps,
                                     "decide_ic vs grid_dp_ic");
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "(decide_ic vs grid DP: %d/%d agree)", agree, total);
    report(2, agree == total, buf);
}

// --- criterion 3: static reduction against the classic oracle --------------
void criterion3() {
    std::mt19937 rng(1003);
    bool ok = true;
    double worst = 0;
    for (int trial = 0; trial < 30; ++trial) {
        int P = 1 + int(rng() % 4), Q = 1 + int(rng() % 4);
        QuadMesh a = random_mesh(rng, P, 0, 2);
        QuadMesh b = random_mesh(rng, Q, 0, 2);
        double v = compute_ic(a, b, NormKind::L2, ComputeModeIC::bisect(1e-8));
        std::vector<Vec> pa, pb;
        for (int p = 0; p <= a.P; ++p) pa.push_back(a.vertex(p, 0));
        for (int p = 0; p <= b.P; ++p) pb.push_back(b.vertex(p, 0));
        double lo = 0, hi = 32;
        for (int it = 0; it < 45; ++it) {
            double mid = 0.5 * (lo + hi);
            if (oracle::classic_frechet(pa, pb, mid, NormKind::L2))
                hi = mid;
            else
                lo = mid;
        }
        worst = std::max(worst, std::fabs(v - hi));
        if (std::fabs(v - hi) > 1e-6) ok = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "(30 polyline pairs, worst gap %.2e)", worst);
    report(3, ok, buf);
}

// --- criterion 4: reachability equivalence of E and R ----------------------
void criterion4() {
    auto t0 = Clock::now();
    std::mt19937 rng(1004);
    int checked = 0, equal = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int P = 1 + int(rng() % 4), Q = 1 + int(rng() % 4), T = 1 + int(rng() % 4);
        int dim = 1 + int(rng() % 2);
        QuadMesh a = random_mesh(rng, P, T, dim);
        QuadMesh b = random_mesh(rng, Q, T, dim);
        double up = frechet_pl(a, b, Reparameterization::linear(a.P, b.P),
                               Reparameterization::identity(a.T), NormKind::L2);
        for (double f : {0.15, 0.35, 0.55, 0.75, 0.95}) {
            auto obs = extract_obstacles(a, b, f * up, NormKind::L2);
            bool full = relation_R(*obs).d_reaches_u();
            bool red = reduced_edges_E(*obs).d_reaches_u();
            ++checked;
            if (full == red)
                ++equal;
            else
                archive_disagreement("reach_trial" + std::to_string(trial), a, b, f * up,
                                     "reduced E vs full R reachability");
        }
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool ok = (equal == checked) && secs < 60.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%d/%d equal, %.1f s)", equal, checked, secs);
    report(4, ok, buf);
}

// --- criterion 5: class nesting and monotone acceptance --------------------
void criterion5() {
    std::mt19937 rng(1005);
    bool ok = true;
    std::string why;
    const double tol = 1e-5;
    for (int trial = 0; trial < 10 && ok; ++trial) {
        int P = 1 + int(rng() % 3), T = 1 + int(rng() % 2);
        QuadMesh a = random_mesh(rng, P, T, 1 + int(rng() % 2));
        QuadMesh b = random_mesh(rng, P, T, a.dim);
        double vid = compute_id(a, b, NormKind::L2, tol);
        double vic = compute_ic(a, b, NormKind::L2, ComputeModeIC::bisect(tol));
        double vii = frechet_identity(a, b, NormKind::L2).distance;
        if (!(vid <= vic + 2 * tol)) {
            ok = false;
            why = "compute_id > compute_ic + 2 tol";
        }
        if (!(vic <= vii + 2 * tol)) {
            ok = false;
            why = "compute_ic > frechet_identity + 2 tol";
        }
        bool prev = false;
        for (int i = 0; i <= 10; ++i) {
            bool acc = decide_id(a, b, vii * i / 10.0 + 1e-9, NormKind::L2);
            if (prev && !acc) {
                ok = false;
                why = "acceptance not monotone in eps";
            }
            prev = prev || acc;
        }
    }
    report(5, ok, why.empty() ? "(10 instances, nesting + monotonicity)" : "(" + why + ")");
}

// --- criterion 6: pareto index vs naive scans -------------------------------
void criterion6() {
    std::mt19937 rng(1006);
    std::uniform_real_distribution<double> ud(0, 10);
    int bad = 0;
    long long queries = 0;
    for (int rep = 0; rep < 20; ++rep) {
        int n = 1 + int(rng() % 30), m = 1 + int(rng() % 30);
        std::vector<std::vector<double>> vals(n, std::vector<double>(m));
        for (auto& row : vals)
            for (auto& v : row) v = ud(rng);
        ThresholdMatrix tm(vals);
        for (int q = 0; q < 250; ++q) {
            int row = int(rng() % n);
            int x0 = int(rng() % m), x1 = x0 + int(rng() % (m - x0));
            double thr = ud(rng);
            ++queries;
            int naive = -1;
            for (int x = x0; x <= x1 && naive < 0; ++x)
                if (vals[row][x] <= thr) naive = x;
            if (tm.leftmost_leq(row, x0, x1, thr) != naive) ++bad;
        }
        for (int q = 0; q < 250; ++q) {
            int x0 = int(rng() % m), x1 = x0 + int(rng() % (m - x0));
            int y0 = int(rng() % n), y1 = y0 + int(rng() % (n - y0));
            double thr = ud(rng);
            ++queries;
            auto res = tm.pareto_frontier({x0, y0, x1, y1, thr});
            // antichain
            for (auto& p : res.points)
                for (auto& r : res.points)
                    if (p != r && r.first <= p.first && r.second <= p.second) ++bad;
            // coverage
            for (int y = y0; y <= y1; ++y)
                for (int x = x0; x <= x1; ++x)
                    if (vals[y][x] <= thr) {
                        bool covered = false;
                        for (auto& p : res.points)
                            if (p.first <= x && p.second <= y) covered = true;
                        if (!covered) ++bad;
                    }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%lld queries, %d mismatches)", queries, bad);
    report(6, bad == 0, buf);
}

// --- criterion 7: gadget gap ------------------------------------------------
void criterion7() {
    std::mt19937 rng(1007);
    bool ok = true;
    std::string why;
    int sat_done = 0;
    double worst_sat = 0;
    while (sat_done < 20 && ok) {
        int n = 2 + int(rng() % 3), m = 1 + int(rng() % 3);
        gadget::CnfFormula f;
        f.n = n;
        for (int c = 0; c < m; ++c) {
            std::array<int, 3> lits{};
            for (int k = 0; k < 3; ++k) {
                int v = 1 + int(rng() % n);
                lits[k] = (rng() % 2) ? v : -v;
            }
            f.clauses.push_back(lits);
        }
        std::vector<bool> assignment;
        if (!gadget::solve_exhaustive(f, assignment)) continue;
        ++sat_done;
        gadget::GadgetInstance inst = gadget::gadget_cc(f);
        if (!gadget::audit_gaps(inst).pass) {
            ok = false;
            why = "feature-gap audit failed";
            break;
        }
        MatchingWitness w = gadget::witness_matching(inst, assignment);
        worst_sat = std::max(worst_sat, *w.verified_bound);
        if (*w.verified_bound > 2.0 + 1e-9) {
            ok = false;
            why = "satisfiable witness above 2 + 1e-9";
        }
    }
    // five unsatisfiable formulas
    std::vector<gadget::CnfFormula> unsat;
    {
        gadget::CnfFormula f;
        f.n = 2;
        f.clauses = {{1, 2, 2}, {1, -2, -2}, {-1, 2, 2}, {-1, -2, -2}};
        unsat.push_back(f);
        f.clauses = {{2, 1, 1}, {2, -1, -1}, {-2, 1, 1}, {-2, -1, -1}};
        unsat.push_back(f);
        f.n = 3;
        f.clauses = {{1, 2, 3},  {1, 2, -3},  {1, -2, 3},  {1, -2, -3},
                     {-1, 2, 3}, {-1, 2, -3}, {-1, -2, 3}, {-1, -2, -3}};
        unsat.push_back(f);
        f.clauses = {{3, 1, 2},  {3, 1, -2},  {3, -1, 2},  {3, -1, -2},
                     {-3, 1, 1}, {-3, -1, 2}, {-3, -1, -2}, {-3, 1, -1}};
        unsat.push_back(f);
        f.n = 2;
        f.clauses = {{1, 1, 2}, {1, 1, -2}, {-1, -1, 2}, {-1, -1, -2}};
        unsat.push_back(f);
    }
    double floor_found = kInf;
    for (size_t u = 0; u < unsat.size() && ok; ++u) {
        std::vector<bool> dummy;
        if (gadget::solve_exhaustive(unsat[u], dummy)) {
            ok = false;
            why = "fixture formula unexpectedly satisfiable";
            break;
        }
        gadget::GadgetInstance inst = gadget::gadget_cc(unsat[u]);
        if (!gadget::audit_gaps(inst).pass) {
            ok = false;
            why = "feature-gap audit failed on unsat instance";
            break;
        }
        oracle::SamplingPlan plan(3, 1007 + u);
        auto res = oracle::random_matching_search(
            inst.a, inst.b, oracle::SearchClass::ConstantConstant, 100000, inst.norm(), plan,
            3.0 - 1e-6);
        floor_found = std::min(floor_found, res.min_exact);
        if (res.min_exact < 3.0 - 1e-6) {
            ok = false;
            why = "random search found a matching below 3 - 1e-6";
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "(20 sat witnesses <= %.6f; unsat search floor %s over 5x1e5 trials)%s",
                  worst_sat, floor_found == kInf ? ">= 3 (none below)" : "see detail",
                  why.empty() ? "" : (" " + why).c_str());
    report(7, ok, buf);
}

// --- criterion 8: connectivity cross-validation -----------------------------
void criterion8() {
    std::mt19937 rng(1008);
    const int R = 32;
    int compared = 0, disagreements = 0, skipped = 0;
    for (int trial = 0; trial < 20; ++trial) {
        int P = 1 + int(rng() % 2), Q = 1 + int(rng() % 2), T = 1 + int(rng() % 2);
        QuadMesh a = random_mesh(rng, P, T, 1 + int(rng() % 2));
        QuadMesh b = random_mesh(rng, Q, T, a.dim);
        double up = frechet_pl(a, b, Reparameterization::linear(a.P, b.P),
                               Reparameterization::identity(a.T), NormKind::L2);
        double eps = (0.25 + 0.5 * (trial % 3) / 2.0) * up;
        double margin = 2.0 * (lipschitz(a, NormKind::L2) + lipschitz(b, NormKind::L2)) / R;

        auto obs = extract_obstacles(a, b, eps, NormKind::L2);
        FreeSpace3D fs(a, b, eps, NormKind::L2);

        // membership of a point through the slice-arc structures
        auto exact_piece = [&](int cx, int cy, int ct, double xi, double ups, double th) {
            const cellgeom::CellTracks& c = fs.cell(cx, cy, ct);
            int k = c.interval_of(th);
            double w = c.events[k + 1] - c.events[k];
            double safe = std::clamp(th, c.events[k] + w / 1024, c.events[k + 1] - w / 1024);
            auto arcs = c.arcs_at(k, safe, eps, NormKind::L2);
            Interval col = c.frame.column_interval(xi, safe, eps, NormKind::L2);
            double pos;
            if (col.empty() || ups < col.lo)
                pos = xi;  // bottom stub
            else if (ups > col.hi)
                pos = 2.0 + (1.0 - xi);  // top stub
            else
                return -1;  // free at the evaluation time
            for (size_t r = 0; r < arcs.size(); ++r)
                if (arcs[r].contains(pos)) return c.piece_at(k, int(r));
            return -1;
        };
        auto exact_member = [&](const Obstacle& ob, double x, double y, double t) {
            for (auto [ci, local] : ob.pieces) {
                int ct = ci / (P * Q);
                int rem = ci % (P * Q);
                int cy = rem / P, cx = rem % P;
                if (x < cx - 1e-12 || x > cx + 1 + 1e-12 || y < cy - 1e-12 ||
                    y > cy + 1 + 1e-12 || t < ct - 1e-12 || t > ct + 1 + 1e-12)
                    continue;
                double xi = std::clamp(x - cx, 0.0, 1.0);
                double ups = std::clamp(y - cy, 0.0, 1.0);
                double th = std::clamp(t - ct, 0.0, 1.0);
                if (exact_piece(cx, cy, ct, xi, ups, th) == local) return true;
            }
            return false;
        };

        // independent lattice with per-grid-point block components
        int nx = P * R, ny = Q * R, nt = T * R;
        std::vector<char> bad(size_t(nx + 1) * (ny + 1) * (nt + 1));
        auto lidx = [&](int i, int j, int k) {
            return (size_t(k) * (ny + 1) + j) * (nx + 1) + i;
        };
        for (int k = 0; k <= nt; ++k)
            for (int j = 0; j <= ny; ++j)
                for (int i = 0; i <= nx; ++i)
                    bad[lidx(i, j, k)] =
                        distance(eval_mesh(a, double(i) / R, double(k) / R),
                                 eval_mesh(b, double(j) / R, double(k) / R), NormKind::L2) > eps;
        // per grid point, mark lattice membership by BFS within the block
        std::vector<std::vector<char>> omember(obs->all().size());
        for (const Obstacle& ob : obs->all()) {
            if (ob.dummy) continue;
            auto& mem = omember[obs->index(ob.gx, ob.gy, ob.gt)];
            mem.assign(bad.size(), 0);
            int ci = ob.gx * R, cj = ob.gy * R, ck = ob.gt * R;
            if (!bad[lidx(ci, cj, ck)]) continue;
            int ilo = std::max(0, (ob.gx - 1) * R), ihi = std::min(nx, (ob.gx + 1) * R);
            int jlo = std::max(0, (ob.gy - 1) * R), jhi = std::min(ny, (ob.gy + 1) * R);
            int klo = std::max(0, (ob.gt - 1) * R), khi = std::min(nt, (ob.gt + 1) * R);
            std::vector<std::array<int, 3>> stack{{ci, cj, ck}};
            mem[lidx(ci, cj, ck)] = 1;
            while (!stack.empty()) {
                auto [i, j, k] = stack.back();
                stack.pop_back();
                const int di[6] = {1, -1, 0, 0, 0, 0};
                const int dj[6] = {0, 0, 1, -1, 0, 0};
                const int dk[6] = {0, 0, 0, 0, 1, -1};
                for (int d = 0; d < 6; ++d) {
                    int i2 = i + di[d], j2 = j + dj[d], k2 = k + dk[d];
                    if (i2 < ilo || i2 > ihi || j2 < jlo || j2 > jhi || k2 < klo || k2 > khi)
                        continue;
                    size_t id = lidx(i2, j2, k2);
                    if (mem[id] || !bad[id]) continue;
                    mem[id] = 1;
                    stack.push_back({i2, j2, k2});
                }
            }
        }

        for (int s = 0; s < 500; ++s) {
            int i = int(rng() % (nx + 1)), j = int(rng() % (ny + 1)), k = int(rng() % (nt + 1));
            double x = double(i) / R, y = double(j) / R, t = double(k) / R;
            double d = distance(eval_mesh(a, x, t), eval_mesh(b, y, t), NormKind::L2);
            if (d <= eps + margin) {
                ++skipped;
                continue;  // not safely infeasible
            }
            for (const Obstacle& ob : obs->all()) {
                if (ob.dummy) continue;
                if (std::abs(int(std::floor(x)) - ob.gx) > 1 ||
                    std::abs(int(std::floor(y)) - ob.gy) > 1 ||
                    std::abs(int(std::floor(t)) - ob.gt) > 1)
                    continue;
                bool oracle_in = omember[obs->index(ob.gx, ob.gy, ob.gt)].empty()
                                     ? false
                                     : omember[obs->index(ob.gx, ob.gy, ob.gt)][lidx(i, j, k)];
                bool exact_in = exact_member(ob, x, y, t);
                ++compared;
                if (oracle_in != exact_in) {
                    if (disagreements == 0)
                        archive_disagreement("conn_trial" + std::to_string(trial), a, b, eps,
                                             "slice-arc vs sampled union-find membership");
                    ++disagreements;
                }
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "(%d memberships compared, %d disagreements, %d skipped)",
                  compared, disagreements, skipped);
    report(8, disagreements == 0, buf);
}

// --- criterion 9: determinism of the CLI outputs -----------------------------
void criterion9() {
#ifndef FD_BINARY
    report(9, false, "(fd binary path not configured)");
#else
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::string bin = FD_BINARY;
    std::string dir = "acceptance_tmp";
    (void)!std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
    {
        std::ofstream cnf(dir + "/f.dimacs");
        cnf << "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";
    }
    bool ok = true;
    std::string why;
    for (int round = 0; round < 2; ++round) {
        std::string sfx = std::to_string(round);
        std::string cmd = bin + " gadget gen --cnf " + dir + "/f.dimacs --class dd --out-a " +
                          dir + "/a" + sfx + ".json --out-b " + dir + "/b" + sfx +
                          ".json --features " + dir + "/ft" + sfx + ".json > /dev/null";
        if (std::system(cmd.c_str()) != 0) {
            ok = false;
            why = "gadget gen failed";
        }
        cmd = bin + " fsd export --class ic --a " + dir + "/a" + sfx + ".json --b " + dir + "/a" +
              sfx + ".json --eps 0.5 --out " + dir + "/fsd" + sfx + ".svg --res 8";
        if (std::system(cmd.c_str()) != 0) {
            ok = false;
            why = "fsd export failed";
        }
        cmd = bin + " ii --a " + dir + "/a" + sfx + ".json --b " + dir + "/b" + sfx +
              ".json --norm linf --pi " + dir + "/pi.json --tau " + dir + "/tau.json > " + dir +
              "/ii" + sfx + ".json 2>/dev/null";
        // write trivial maps first
        {
            std::ofstream pi(dir + "/pi.json");
            pi << "{\"breakpoints\":[[0,0],[7,13]]}";
            std::ofstream tau(dir + "/tau.json");
            tau << "{\"breakpoints\":[[0,0],[4,12]]}";
        }
        if (std::system(cmd.c_str()) != 0) {
            ok = false;
            why = "fd ii failed";
        }
    }
    if (ok) {
        for (const char* f : {"a", "b", "ft", "fsd", "ii"}) {
            std::string ext = (std::string(f) == "fsd") ? ".svg" : ".json";
            if (slurp(dir + "/" + f + std::string("0") + ext) !=
                slurp(dir + "/" + f + std::string("1") + ext)) {
                ok = false;
                why = std::string("outputs differ: ") + f;
            }
        }
    }
    (void)!std::system(("rm -rf " + dir).c_str());
    report(9, ok, why.empty() ? "(gadget gen + fsd export + fd ii byte-identical)" : "(" + why + ")");
#endif
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures) {
        std::printf("%d criteria FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
