#include "fdmc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fdmc::oracle {

namespace {

double pair_distance(const QuadMesh& a, const QuadMesh& b, const MatchingWitness& w, double p,
                     double t, NormKind norm, Vec& bufa, Vec& bufb) {
    auto [pb, tb] = w.map(p, t, a, b);
    pb = std::clamp(pb, 0.0, double(b.P));
    tb = std::clamp(tb, 0.0, double(b.T));
    eval_mesh_into(a, p, t, bufa.data());
    eval_mesh_into(b, pb, tb, bufb.data());
    return distance(bufa, bufb, norm);
}

}  // namespace

double sampled_sup(const QuadMesh& a, const QuadMesh& b, const MatchingWitness& w, NormKind norm,
                   const SamplingPlan& plan) {
    int np = a.P * plan.resolution;
    int nt = std::max(a.T * plan.resolution, 0);
    Vec bufa(a.dim), bufb(b.dim);
    double best = 0;
    for (int j = 0; j <= nt; ++j) {
        double t = (nt == 0) ? 0.0 : double(j) / plan.resolution;
        for (int i = 0; i <= np; ++i) {
            double p = double(i) / plan.resolution;
            best = std::max(best, pair_distance(a, b, w, p, t, norm, bufa, bufb));
        }
    }
    return best;
}

bool grid_dp_ic(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
                const SamplingPlan& plan) {
    if (a.T != b.T) throw std::invalid_argument("grid_dp_ic: meshes must share T");
    const int R = plan.resolution;
    const int nx = a.P * R, ny = b.P * R, nt = std::max(a.T * R, 1);
    Vec va(a.dim), vb(b.dim);

    auto free_at = [&](int i, int j) {
        double p = double(i) / R, q = double(j) / R;
        for (int k = 0; k <= nt; ++k) {
            double t = (a.T == 0) ? 0.0 : std::min(double(k) / R, double(a.T));
            eval_mesh_into(a, p, t, va.data());
            eval_mesh_into(b, q, t, vb.data());
            if (distance(va, vb, norm) > eps) return false;
            if (a.T == 0) break;
        }
        return true;
    };

    std::vector<char> reach(size_t(nx + 1) * (ny + 1), 0);
    auto idx = [&](int i, int j) { return size_t(j) * (nx + 1) + i; };
    if (!free_at(0, 0)) return false;
    reach[idx(0, 0)] = 1;
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            if (reach[idx(i, j)]) continue;
            bool from = (i > 0 && reach[idx(i - 1, j)]) || (j > 0 && reach[idx(i, j - 1)]) ||
                        (i > 0 && j > 0 && reach[idx(i - 1, j - 1)]);
            if (from && free_at(i, j)) reach[idx(i, j)] = 1;
        }
    }
    return reach[idx(nx, ny)] != 0;
}

namespace {

// quick union-find over int indices
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = int(i);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[x] = y;
    }
};

struct SampledObstacle {
    bool dummy = true;
    // per t-layer (global sample index), per x-column: profile of the obstacle
    // slice; -1 marks an absent column
    int t_lo = 0, t_hi = -1;
    std::vector<std::vector<int>> max_y;  // [t - t_lo][x]
    std::vector<std::vector<int>> min_y;
    bool touches_bottom = false, touches_right = false;   // d side
    bool touches_left = false, touches_top = false;       // u side
};

}  // namespace

bool full_R_reachability(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
                         const SamplingPlan& plan) {
    if (a.T != b.T) throw std::invalid_argument("full_R_reachability: meshes must share T");
    if (eps < 0) throw std::invalid_argument("full_R_reachability: negative eps");
    const int R = plan.resolution;
    const int P = a.P, Q = b.P, T = a.T;
    const int nx = P * R, ny = Q * R, nt = std::max(T * R, 0);
    Vec va(a.dim), vb(b.dim);

    // feasibility lattice
    std::vector<char> bad(size_t(nx + 1) * (ny + 1) * (nt + 1));
    auto lidx = [&](int i, int j, int k) {
        return (size_t(k) * (ny + 1) + j) * (nx + 1) + i;
    };
    for (int k = 0; k <= nt; ++k) {
        double t = (T == 0) ? 0.0 : double(k) / R;
        for (int j = 0; j <= ny; ++j) {
            double y = double(j) / R;
            eval_mesh_into(b, y, t, vb.data());
            for (int i = 0; i <= nx; ++i) {
                double x = double(i) / R;
                eval_mesh_into(a, x, t, va.data());
                bad[lidx(i, j, k)] = distance(va, vb, norm) > eps ? 1 : 0;
            }
        }
    }

    // one obstacle per integer grid point: component of the infeasible lattice
    // within the adjacent-cell block, containing the grid point
    std::vector<SampledObstacle> obstacles;
    for (int gt = 0; gt <= T; ++gt) {
        for (int gy = 0; gy <= Q; ++gy) {
            for (int gx = 0; gx <= P; ++gx) {
                SampledObstacle ob;
                int ci = gx * R, cj = gy * R, ck = (T == 0) ? 0 : gt * R;
                if (bad[lidx(ci, cj, ck)]) {
                    int ilo = std::max(0, (gx - 1) * R), ihi = std::min(nx, (gx + 1) * R);
                    int jlo = std::max(0, (gy - 1) * R), jhi = std::min(ny, (gy + 1) * R);
                    int klo = (T == 0) ? 0 : std::max(0, (gt - 1) * R);
                    int khi = (T == 0) ? 0 : std::min(nt, (gt + 1) * R);
                    int bw = ihi - ilo + 1, bh = jhi - jlo + 1, bd = khi - klo + 1;
                    auto bidx = [&](int i, int j, int k) {
                        return (size_t(k - klo) * bh + (j - jlo)) * bw + (i - ilo);
                    };
                    UnionFind uf(size_t(bw) * bh * bd);
                    for (int k = klo; k <= khi; ++k)
                        for (int j = jlo; j <= jhi; ++j)
                            for (int i = ilo; i <= ihi; ++i) {
                                if (!bad[lidx(i, j, k)]) continue;
                                if (i > ilo && bad[lidx(i - 1, j, k)])
                                    uf.unite(int(bidx(i, j, k)), int(bidx(i - 1, j, k)));
                                if (j > jlo && bad[lidx(i, j - 1, k)])
                                    uf.unite(int(bidx(i, j, k)), int(bidx(i, j - 1, k)));
                                if (k > klo && bad[lidx(i, j, k - 1)])
                                    uf.unite(int(bidx(i, j, k)), int(bidx(i, j, k - 1)));
                            }
                    int root = uf.find(int(bidx(ci, cj, ck)));
                    ob.dummy = false;
                    ob.t_lo = khi;
                    ob.t_hi = klo;
                    for (int k = klo; k <= khi; ++k)
                        for (int j = jlo; j <= jhi; ++j)
                            for (int i = ilo; i <= ihi; ++i)
                                if (bad[lidx(i, j, k)] && uf.find(int(bidx(i, j, k))) == root) {
                                    ob.t_lo = std::min(ob.t_lo, k);
                                    ob.t_hi = std::max(ob.t_hi, k);
                                }
                    ob.max_y.assign(ob.t_hi - ob.t_lo + 1,
                                    std::vector<int>(size_t(nx) + 1, -1));
                    ob.min_y.assign(ob.t_hi - ob.t_lo + 1,
                                    std::vector<int>(size_t(nx) + 1, ny + 1));
                    for (int k = klo; k <= khi; ++k)
                        for (int j = jlo; j <= jhi; ++j)
                            for (int i = ilo; i <= ihi; ++i)
                                if (bad[lidx(i, j, k)] && uf.find(int(bidx(i, j, k))) == root) {
                                    auto& mx = ob.max_y[k - ob.t_lo][i];
                                    auto& mn = ob.min_y[k - ob.t_lo][i];
                                    mx = std::max(mx, j);
                                    mn = std::min(mn, j);
                                    if (j == 0) ob.touches_bottom = true;
                                    if (j == ny) ob.touches_top = true;
                                    if (i == 0) ob.touches_left = true;
                                    if (i == nx) ob.touches_right = true;
                                }
                }
                obstacles.push_back(std::move(ob));
            }
        }
    }

    // dominance: exists common layer and columns xa <= xb with
    // max_y(a)(<=xb) >= min_y(b)(xb)
    auto related = [&](const SampledObstacle& oa, const SampledObstacle& ob) {
        if (oa.dummy || ob.dummy) return false;
        int klo = std::max(oa.t_lo, ob.t_lo), khi = std::min(oa.t_hi, ob.t_hi);
        for (int k = klo; k <= khi; ++k) {
            const auto& mxa = oa.max_y[k - oa.t_lo];
            const auto& mnb = ob.min_y[k - ob.t_lo];
            int run = -1;
            for (int i = 0; i <= nx; ++i) {
                run = std::max(run, mxa[i]);
                if (run >= 0 && mnb[i] <= ny && mnb[i] <= run) return true;
            }
        }
        return false;
    };

    int n = int(obstacles.size());
    std::vector<char> reached(n, 0);
    std::vector<int> stack;
    for (int v = 0; v < n; ++v) {
        const auto& ob = obstacles[v];
        if (!ob.dummy && (ob.touches_bottom || ob.touches_right)) {
            reached[v] = 1;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const auto& ov = obstacles[v];
        if (ov.touches_left || ov.touches_top) return false;  // d -> ... -> u: no matching
        for (int w = 0; w < n; ++w)
            if (!reached[w] && related(ov, obstacles[w])) {
                reached[w] = 1;
                stack.push_back(w);
            }
    }
    return true;
}

namespace {

// independent 1D feasibility for the classic oracle: convex function
// f(s) = ||q + s d|| restricted to [0,1]; interval found by ternary/bisection
Interval classic_interval(const Vec& q, const Vec& d, double eps, NormKind norm) {
    auto f = [&](double s) {
        double acc = 0;
        switch (norm) {
            case NormKind::L1:
                for (size_t i = 0; i < q.size(); ++i) acc += std::fabs(q[i] + s * d[i]);
                return acc;
            case NormKind::L2:
                for (size_t i = 0; i < q.size(); ++i) {
                    double w = q[i] + s * d[i];
                    acc += w * w;
                }
                return std::sqrt(acc);
            case NormKind::Linf:
                for (size_t i = 0; i < q.size(); ++i)
                    acc = std::max(acc, std::fabs(q[i] + s * d[i]));
                return acc;
        }
        return acc;
    };
    // golden-section to locate the minimizer of the convex f on [0,1]
    double lo = 0, hi = 1;
    for (int it = 0; it < 80; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (f(m1) <= f(m2))
            hi = m2;
        else
            lo = m1;
    }
    double smin = 0.5 * (lo + hi);
    if (f(smin) > eps) {
        if (f(0) <= eps) smin = 0;
        else if (f(1) <= eps) smin = 1;
        else return Interval::empty_interval();
    }
    auto cross = [&](double in, double out) {
        // bisect the crossing f = eps between f(in) <= eps and the endpoint
        if (f(out) <= eps) return out;
        double a = in, b = out;
        for (int it = 0; it < 80; ++it) {
            double m = 0.5 * (a + b);
            if (f(m) <= eps)
                a = m;
            else
                b = m;
        }
        return a;
    };
    return Interval{cross(smin, 0.0), cross(smin, 1.0)};
}

}  // namespace

bool classic_frechet(const std::vector<Vec>& a, const std::vector<Vec>& b, double eps,
                     NormKind norm) {
    if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("classic_frechet: need polylines");
    int n = int(a.size()) - 1, m = int(b.size()) - 1;
    // LF[i][j]: feasible interval on the vertical edge (vertex a_i vs segment b_j)
    auto LF = [&](int i, int j) {
        return classic_interval(sub(b[j], a[i]), sub(b[j + 1], b[j]), eps, norm);
    };
    auto BF = [&](int i, int j) {
        return classic_interval(sub(a[i], b[j]), sub(a[i + 1], a[i]), eps, norm);
    };
    std::vector<Interval> L(size_t(n + 1) * m, Interval::empty_interval());
    std::vector<Interval> B(size_t(n) * (m + 1), Interval::empty_interval());
    auto Lr = [&](int i, int j) -> Interval& { return L[size_t(j) * (n + 1) + i]; };
    auto Br = [&](int i, int j) -> Interval& { return B[size_t(j) * n + i]; };

    if (distance(a[0], b[0], norm) > eps) return false;
    Interval l0 = LF(0, 0);
    if (!l0.empty() && l0.lo <= 1e-12) Lr(0, 0) = l0;
    Interval b0 = BF(0, 0);
    if (!b0.empty() && b0.lo <= 1e-12) Br(0, 0) = b0;
    for (int j = 1; j < m; ++j) {
        Interval f = LF(0, j);
        if (!Lr(0, j - 1).empty() && Lr(0, j - 1).hi >= 1 - 1e-12 && !f.empty() && f.lo <= 1e-12)
            Lr(0, j) = f;
    }
    for (int i = 1; i < n; ++i) {
        Interval f = BF(i, 0);
        if (!Br(i - 1, 0).empty() && Br(i - 1, 0).hi >= 1 - 1e-12 && !f.empty() && f.lo <= 1e-12)
            Br(i, 0) = f;
    }
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) {
            const Interval le = Lr(i, j), be = Br(i, j);
            if (i + 1 <= n) {
                Interval f = LF(i + 1, j);
                Interval out = Interval::empty_interval();
                if (!be.empty())
                    out = f;
                else if (!le.empty())
                    out = f.intersect({le.lo, 1.0});
                if (!out.empty()) Lr(i + 1, j) = out;
            }
            if (j + 1 <= m) {
                Interval f = BF(i, j + 1);
                Interval out = Interval::empty_interval();
                if (!le.empty())
                    out = f;
                else if (!be.empty())
                    out = f.intersect({be.lo, 1.0});
                if (!out.empty()) Br(i, j + 1) = out;
            }
        }
    if (distance(a[n], b[m], norm) > eps) return false;
    bool via_right = !Lr(n, m - 1).empty() && Lr(n, m - 1).hi >= 1 - 1e-12;
    bool via_top = !Br(n - 1, m).empty() && Br(n - 1, m).hi >= 1 - 1e-12;
    return via_right || via_top;
}

namespace {

Reparameterization random_map(std::mt19937_64& rng, double in_len, double out_len) {
    std::uniform_int_distribution<int> kd(0, 6);
    std::uniform_real_distribution<double> ud(0, 1);
    int k = kd(rng);
    std::vector<double> xs{0, in_len}, ys{0, out_len};
    for (int i = 0; i < k; ++i) {
        xs.push_back(ud(rng) * in_len);
        ys.push_back(ud(rng) * out_len);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double p, double q) { return std::fabs(p - q) < 1e-9; }),
             xs.end());
    ys.resize(xs.size());
    std::sort(ys.begin(), ys.end());
    if (!ys.empty()) ys.back() = out_len;
    Reparameterization r;
    for (size_t i = 0; i < xs.size(); ++i) r.breakpoints.push_back({xs[i], ys[i]});
    r.breakpoints.front() = {0, 0};
    r.breakpoints.back() = {in_len, out_len};
    return r;
}

}  // namespace

SearchResult random_matching_search(const QuadMesh& a, const QuadMesh& b, SearchClass cls,
                                    int trials, NormKind norm, const SamplingPlan& plan,
                                    double exact_below) {
    std::mt19937_64 rng(plan.seed);
    SearchResult res;
    res.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        MatchingWitness w;
        switch (cls) {
            case SearchClass::Constant:
                w = MatchingWitness::positional(random_map(rng, a.P, b.P));
                break;
            case SearchClass::ConstantConstant:
                w = MatchingWitness::pi_tau(random_map(rng, a.P, b.P),
                                            random_map(rng, std::max(a.T, 0), std::max(b.T, 0)));
                break;
            case SearchClass::Dynamic: {
                std::vector<Reparameterization> slices;
                for (int t = 0; t <= a.T; ++t) slices.push_back(random_map(rng, a.P, b.P));
                w = MatchingWitness::per_slice(std::move(slices));
                break;
            }
        }
        double sup = sampled_sup(a, b, w, norm, plan);
        if (sup < exact_below && cls != SearchClass::Dynamic) {
            sup = w.verify_exact(a, b, norm);
            res.min_exact = std::min(res.min_exact, sup);
        }
        res.min_sup = std::min(res.min_sup, sup);
    }
    return res;
}

}  // namespace fdmc::oracle
