#include "fdmc/constant.hpp"

#include <algorithm>
#include <cmath>

namespace fdmc {

namespace {

constexpr double kBoundaryTol = 1e-12;

void check_pair(const QuadMesh& a, const QuadMesh& b) {
    a.validate();
    b.validate();
    if (a.dim != b.dim) throw std::invalid_argument("constant-matching: dimension mismatch");
    if (a.T != b.T)
        throw std::invalid_argument("constant-matching: meshes must share T (align first)");
}

// layer difference along a vertical edge: ||A(x,t) - B(y+s,t)|| = ||q + s d||
void vertical_layer(const QuadMesh& a, const QuadMesh& b, int x, int y, int t, Vec& q, Vec& d) {
    q = sub(b.vertex(y, t), a.vertex(x, t));
    d = sub(b.vertex(y + 1, t), b.vertex(y, t));
}

void horizontal_layer(const QuadMesh& a, const QuadMesh& b, int x, int y, int t, Vec& q, Vec& d) {
    q = sub(a.vertex(x, t), b.vertex(y, t));
    d = sub(a.vertex(x + 1, t), a.vertex(x, t));
}

}  // namespace

Interval boundary_interval(const QuadMesh& a, const QuadMesh& b, const EdgeId& edge, double eps,
                           NormKind norm) {
    check_pair(a, b);
    if (eps < 0) throw std::invalid_argument("boundary_interval: negative eps");
    Interval r{0.0, 1.0};
    Vec q, d;
    for (int t = 0; t <= a.T && !r.empty(); ++t) {
        if (edge.orientation == EdgeId::Orientation::Vertical) {
            if (edge.x < 0 || edge.x > a.P || edge.y < 0 || edge.y >= b.P)
                throw std::invalid_argument("boundary_interval: edge out of range");
            vertical_layer(a, b, edge.x, edge.y, t, q, d);
        } else {
            if (edge.x < 0 || edge.x >= a.P || edge.y < 0 || edge.y > b.P)
                throw std::invalid_argument("boundary_interval: edge out of range");
            horizontal_layer(a, b, edge.x, edge.y, t, q, d);
        }
        r = r.intersect(feasible_unit(q, d, eps, norm));
    }
    return r.empty() ? Interval::empty_interval() : r;
}

FreeSpace2D build_freespace_2d(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm) {
    check_pair(a, b);
    if (eps < 0) throw std::invalid_argument("build_freespace_2d: negative eps");
    FreeSpace2D fs;
    fs.Pa = a.P;
    fs.Pb = b.P;
    fs.epsilon = eps;
    fs.norm = norm;
    fs.left.assign(size_t(a.P + 1) * b.P, Interval::empty_interval());
    fs.bottom.assign(size_t(a.P) * (b.P + 1), Interval::empty_interval());
    for (int y = 0; y < b.P; ++y)
        for (int x = 0; x <= a.P; ++x)
            fs.left_edge(x, y) =
                boundary_interval(a, b, {EdgeId::Orientation::Vertical, x, y}, eps, norm);
    for (int y = 0; y <= b.P; ++y)
        for (int x = 0; x < a.P; ++x)
            fs.bottom_edge(x, y) =
                boundary_interval(a, b, {EdgeId::Orientation::Horizontal, x, y}, eps, norm);
    return fs;
}

namespace {

struct Reach {
    std::vector<Interval> left;    // reachable part of left edges
    std::vector<Interval> bottom;  // reachable part of bottom edges
    int Pa, Pb;
    const Interval& L(int x, int y) const { return left[size_t(y) * (Pa + 1) + x]; }
    const Interval& B(int x, int y) const { return bottom[size_t(y) * Pa + x]; }
    Interval& L(int x, int y) { return left[size_t(y) * (Pa + 1) + x]; }
    Interval& B(int x, int y) { return bottom[size_t(y) * Pa + x]; }
};

Reach propagate(const FreeSpace2D& fs) {
    Reach r;
    r.Pa = fs.Pa;
    r.Pb = fs.Pb;
    r.left.assign(fs.left.size(), Interval::empty_interval());
    r.bottom.assign(fs.bottom.size(), Interval::empty_interval());

    // boundary chains from the start corner
    if (fs.left_edge(0, 0).contains(0.0) || fs.left_edge(0, 0).lo <= kBoundaryTol) {
        if (!fs.left_edge(0, 0).empty() && fs.left_edge(0, 0).lo <= kBoundaryTol)
            r.L(0, 0) = fs.left_edge(0, 0);
    }
    if (!fs.bottom_edge(0, 0).empty() && fs.bottom_edge(0, 0).lo <= kBoundaryTol)
        r.B(0, 0) = fs.bottom_edge(0, 0);
    for (int y = 1; y < fs.Pb; ++y) {
        const Interval& prev = r.L(0, y - 1);
        const Interval& free = fs.left_edge(0, y);
        if (!prev.empty() && prev.hi >= 1.0 - kBoundaryTol && !free.empty() &&
            free.lo <= kBoundaryTol)
            r.L(0, y) = free;
    }
    for (int x = 1; x < fs.Pa; ++x) {
        const Interval& prev = r.B(x - 1, 0);
        const Interval& free = fs.bottom_edge(x, 0);
        if (!prev.empty() && prev.hi >= 1.0 - kBoundaryTol && !free.empty() &&
            free.lo <= kBoundaryTol)
            r.B(x, 0) = free;
    }

    // monotone propagation through cells in lexicographic order
    for (int y = 0; y < fs.Pb; ++y) {
        for (int x = 0; x < fs.Pa; ++x) {
            const Interval& le = r.L(x, y);
            const Interval& be = r.B(x, y);
            if (x + 1 <= fs.Pa) {
                Interval out = fs.left_edge(x + 1, y);
                if (!be.empty()) {
                    // entered from below: whole free interval reachable
                } else if (!le.empty()) {
                    out = out.intersect(Interval{le.lo, 1.0});
                } else {
                    out = Interval::empty_interval();
                }
                Interval merged = r.L(x + 1, y);
                if (merged.empty())
                    merged = out;
                else if (!out.empty())
                    merged = Interval{std::min(merged.lo, out.lo), std::max(merged.hi, out.hi)};
                r.L(x + 1, y) = merged;
            }
            if (y + 1 <= fs.Pb) {
                Interval out = fs.bottom_edge(x, y + 1);
                if (!le.empty()) {
                    // entered from the left boundary point (x, *): x <= any
                } else if (!be.empty()) {
                    out = out.intersect(Interval{be.lo, 1.0});
                } else {
                    out = Interval::empty_interval();
                }
                Interval merged = r.B(x, y + 1);
                if (merged.empty())
                    merged = out;
                else if (!out.empty())
                    merged = Interval{std::min(merged.lo, out.lo), std::max(merged.hi, out.hi)};
                r.B(x, y + 1) = merged;
            }
        }
    }
    return r;
}

bool goal_reached(const FreeSpace2D& fs, const Reach& r) {
    const Interval& le = r.L(fs.Pa, fs.Pb - 1);
    if (!le.empty() && le.hi >= 1.0 - kBoundaryTol) return true;
    const Interval& be = r.B(fs.Pa - 1, fs.Pb);
    return !be.empty() && be.hi >= 1.0 - kBoundaryTol;
}

// Backtrack a monotone path (list of (x,y) points, goal to start) through the
// reachable intervals. Points are emitted in reverse order.
std::vector<std::pair<double, double>> backtrack(const FreeSpace2D& fs, const Reach& r) {
    std::vector<std::pair<double, double>> pts;
    double gx = fs.Pa, gy = fs.Pb;
    pts.push_back({gx, gy});

    // current point sits on the right or top edge of cell (i, j)
    int i = fs.Pa - 1, j = fs.Pb - 1;
    bool on_right;  // else on top
    {
        const Interval& le = r.L(fs.Pa, fs.Pb - 1);
        on_right = !le.empty() && le.hi >= 1.0 - kBoundaryTol;
    }
    double cx = gx, cy = gy;
    while (true) {
        if (i == 0 && j == 0) {
            pts.push_back({0.0, 0.0});
            break;
        }
        const Interval& le = r.L(i, j);
        const Interval& be = r.B(i, j);
        bool use_left;
        if (on_right) {
            use_left = be.empty();
        } else {
            use_left = !le.empty();
        }
        if (use_left && le.empty() && !be.empty()) use_left = false;
        if (!use_left && be.empty() && !le.empty()) use_left = true;

        if (use_left) {
            double py = j + le.lo;
            if (py > cy) py = cy;  // numeric guard; monotonicity must hold
            pts.push_back({double(i), py});
            cx = i;
            cy = py;
            if (i == 0) {
                // walk down the left boundary to the origin
                for (int yy = j; yy >= 1; --yy)
                    if (double(yy) < cy) pts.push_back({0.0, double(yy)});
                pts.push_back({0.0, 0.0});
                break;
            }
            --i;
            on_right = true;
        } else {
            double px = i + be.lo;
            if (px > cx) px = cx;
            pts.push_back({px, double(j)});
            cx = px;
            cy = j;
            if (j == 0) {
                for (int xx = i; xx >= 1; --xx)
                    if (double(xx) < cx) pts.push_back({double(xx), 0.0});
                pts.push_back({0.0, 0.0});
                break;
            }
            --j;
            on_right = false;
        }
    }
    std::reverse(pts.begin(), pts.end());
    // drop consecutive duplicates
    std::vector<std::pair<double, double>> out;
    for (auto& p : pts) {
        if (out.empty() || std::fabs(p.first - out.back().first) > 0 ||
            std::fabs(p.second - out.back().second) > 0)
            out.push_back(p);
    }
    return out;
}

// Lipschitz bound of x -> max_t ||A(x,t) - B(y,t)|| : the steepest A column step.
double lipschitz_p(const QuadMesh& a, NormKind norm) {
    double L = 0;
    for (int t = 0; t <= a.T; ++t)
        for (int p = 0; p < a.P; ++p)
            L = std::max(L, distance(a.vertex(p + 1, t), a.vertex(p, t), norm));
    return L;
}

// Convert a monotone point path into a Reparameterization: vertical segments
// are tilted by a sub-eta amount so breakpoint inputs strictly increase.
Reparameterization path_to_reparam(std::vector<std::pair<double, double>> pts, double Pa,
                                   double Pb, double lip) {
    size_t m = pts.size();
    double delta = kEta / (1.0 + lip);
    double micro = std::min(delta, Pa / 2.0) / double(m + 1);
    for (size_t k = 1; k < m; ++k)
        pts[k].first = std::max(pts[k].first, pts[k - 1].first + micro);
    pts[m - 1].first = Pa;
    for (size_t k = m - 1; k-- > 0;)
        pts[k].first = std::min(pts[k].first, pts[k + 1].first - micro);
    pts[0] = {0.0, 0.0};
    pts[m - 1] = {Pa, Pb};
    Reparameterization r;
    for (auto& p : pts) r.breakpoints.push_back(p);
    r.validate();
    return r;
}

}  // namespace

DecisionIC decide_ic(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm) {
    if (eps < 0) throw std::invalid_argument("decide_ic: negative eps");
    FreeSpace2D fs = build_freespace_2d(a, b, eps, norm);
    Reach r = propagate(fs);
    DecisionIC res;
    res.accepted = goal_reached(fs, r);
    if (res.accepted) {
        auto pts = backtrack(fs, r);
        res.witness = MatchingWitness::positional(
            path_to_reparam(std::move(pts), a.P, b.P, lipschitz_p(a, norm)));
    }
    return res;
}

namespace {

double corner_bound(const QuadMesh& a, const QuadMesh& b, NormKind norm) {
    double lo = 0;
    for (int t = 0; t <= a.T; ++t) {
        lo = std::max(lo, distance(a.vertex(0, t), b.vertex(0, t), norm));
        lo = std::max(lo, distance(a.vertex(a.P, t), b.vertex(b.P, t), norm));
    }
    return lo;
}

double upper_bound_ic(const QuadMesh& a, const QuadMesh& b, NormKind norm) {
    return frechet_pl(a, b, Reparameterization::linear(a.P, b.P),
                      Reparameterization::identity(a.T), norm);
}

double bisect_ic(const QuadMesh& a, const QuadMesh& b, NormKind norm, double tol) {
    double lo = corner_bound(a, b, norm);
    if (decide_ic(a, b, lo, norm).accepted) return lo;
    double hi = std::max(upper_bound_ic(a, b, norm), lo);
    int expand = 0;
    while (!decide_ic(a, b, hi, norm).accepted) {
        hi = (hi == 0) ? 1.0 : hi * 2.0;
        if (++expand > 60) throw NumericError("compute_ic: no acceptance bracket", lo, hi);
    }
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (decide_ic(a, b, mid, norm).accepted)
            hi = mid;
        else
            lo = mid;
    }
    if (hi - lo > tol) throw NumericError("compute_ic: bisection did not converge", lo, hi);
    return hi;
}

struct LayerVec {
    Vec q, d;
};

void push_l2_candidates(const std::vector<LayerVec>& vecs, std::vector<double>& out) {
    auto value = [](const LayerVec& v, double s) {
        double acc = 0;
        for (size_t i = 0; i < v.q.size(); ++i) {
            double w = v.q[i] + s * v.d[i];
            acc += w * w;
        }
        return std::sqrt(acc);
    };
    for (size_t u = 0; u < vecs.size(); ++u) {
        const auto& v1 = vecs[u];
        // endpoints and apex of the single-layer function
        out.push_back(value(v1, 0.0));
        out.push_back(value(v1, 1.0));
        double dd = dot(v1.d, v1.d);
        if (dd > 0) {
            double sv = std::clamp(-dot(v1.q, v1.d) / dd, 0.0, 1.0);
            out.push_back(value(v1, sv));
        }
        for (size_t w = u + 1; w < vecs.size(); ++w) {
            const auto& v2 = vecs[w];
            double alpha = dot(v1.d, v1.d) - dot(v2.d, v2.d);
            double beta = 2.0 * (dot(v1.q, v1.d) - dot(v2.q, v2.d));
            double gamma = dot(v1.q, v1.q) - dot(v2.q, v2.q);
            std::vector<double> roots;
            if (std::fabs(alpha) < 1e-14) {
                if (std::fabs(beta) > 1e-14) roots.push_back(-gamma / beta);
            } else {
                double disc = beta * beta - 4 * alpha * gamma;
                if (disc >= 0) {
                    double sq = std::sqrt(disc);
                    roots.push_back((-beta - sq) / (2 * alpha));
                    roots.push_back((-beta + sq) / (2 * alpha));
                }
            }
            for (double s : roots)
                if (s >= 0.0 && s <= 1.0) out.push_back(value(v1, s));
        }
    }
}

void push_linf_candidates(const std::vector<LayerVec>& vecs, std::vector<double>& out) {
    // boundary lines eps = sigma * (q_i + s d_i); candidates at pairwise
    // intersections and at s in {0,1}
    struct Line {
        double a, b;  // eps(s) = a + b s
    };
    std::vector<Line> lines;
    for (const auto& v : vecs) {
        double e0 = norm_value(v.q, NormKind::Linf);
        Vec q1 = add(v.q, v.d);
        out.push_back(e0);
        out.push_back(norm_value(q1, NormKind::Linf));
        for (size_t i = 0; i < v.q.size(); ++i) {
            lines.push_back({v.q[i], v.d[i]});
            lines.push_back({-v.q[i], -v.d[i]});
        }
    }
    for (size_t u = 0; u < lines.size(); ++u)
        for (size_t w = u + 1; w < lines.size(); ++w) {
            double db = lines[u].b - lines[w].b;
            if (std::fabs(db) < 1e-14) continue;
            double s = (lines[w].a - lines[u].a) / db;
            if (s < 0.0 || s > 1.0) continue;
            double eps = lines[u].a + lines[u].b * s;
            if (eps >= 0.0) out.push_back(eps);
        }
}

double critical_ic(const QuadMesh& a, const QuadMesh& b, NormKind norm) {
    if (norm == NormKind::L1)
        throw std::invalid_argument("compute_ic: exact critical mode supports L2/Linf only");
    std::vector<double> cand{0.0, corner_bound(a, b, norm)};

    // vertical edges grouped by row (same y-range), horizontal by column
    for (int y = 0; y < b.P; ++y) {
        std::vector<LayerVec> vecs;
        for (int x = 0; x <= a.P; ++x)
            for (int t = 0; t <= a.T; ++t) {
                LayerVec v;
                vertical_layer(a, b, x, y, t, v.q, v.d);
                vecs.push_back(std::move(v));
            }
        if (norm == NormKind::L2)
            push_l2_candidates(vecs, cand);
        else
            push_linf_candidates(vecs, cand);
    }
    for (int x = 0; x < a.P; ++x) {
        std::vector<LayerVec> vecs;
        for (int y = 0; y <= b.P; ++y)
            for (int t = 0; t <= a.T; ++t) {
                LayerVec v;
                horizontal_layer(a, b, x, y, t, v.q, v.d);
                vecs.push_back(std::move(v));
            }
        if (norm == NormKind::L2)
            push_l2_candidates(vecs, cand);
        else
            push_linf_candidates(vecs, cand);
    }

    double floor_eps = corner_bound(a, b, norm);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end(),
                           [](double x, double y) { return std::fabs(x - y) <= 1e-12; }),
               cand.end());
    cand.erase(std::remove_if(cand.begin(), cand.end(),
                              [&](double c) { return c < floor_eps - 1e-12; }),
               cand.end());
    if (cand.empty()) cand.push_back(floor_eps);

    auto accepts = [&](double c) {
        return decide_ic(a, b, c * (1.0 + 1e-12) + 1e-300, norm).accepted;
    };
    size_t lo = 0, hi = cand.size() - 1;
    if (!accepts(cand[hi])) throw NumericError("compute_ic: candidate set misses optimum", cand[lo], cand[hi]);
    if (accepts(cand[lo])) return cand[lo];
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (accepts(cand[mid]))
            hi = mid;
        else
            lo = mid;
    }
    return cand[hi];
}

}  // namespace

double compute_ic(const QuadMesh& a, const QuadMesh& b, NormKind norm, const ComputeModeIC& mode) {
    check_pair(a, b);
    if (mode.kind == ComputeModeIC::Kind::Bisect) {
        if (mode.tol <= 0) throw std::invalid_argument("compute_ic: tol must be positive");
        return bisect_ic(a, b, norm, mode.tol);
    }
    return critical_ic(a, b, norm);
}

}  // namespace fdmc
