#include "fdmc/cellgeom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace fdmc::cellgeom {

Interval SideFn::interval(double theta, double eps, NormKind norm) const {
    Vec q, d;
    eval(theta, q, d);
    return feasible_unit(q, d, eps, norm);
}

double SideFn::min_dist(double theta, NormKind norm) const {
    Vec q, d;
    eval(theta, q, d);
    // convex in s: golden-section on [0,1]
    auto f = [&](double s) {
        Vec v(q.size());
        for (size_t i = 0; i < q.size(); ++i) v[i] = q[i] + s * d[i];
        return norm_value(v, norm);
    };
    double lo = 0, hi = 1;
    for (int it = 0; it < 60; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (f(m1) <= f(m2))
            hi = m2;
        else
            lo = m1;
    }
    return std::min({f(0.5 * (lo + hi)), f(0.0), f(1.0)});
}

Interval TEdgeFn::interval(double eps, NormKind norm) const {
    return feasible_unit(c0, sub(c1, c0), eps, norm);
}

double TEdgeFn::value(double theta, NormKind norm) const {
    return norm_value(lerp(c0, c1, theta), norm);
}

bool Arc::contains(double pos) const {
    if (full()) return true;
    double p = pos;
    if (p < lo) p += 4.0;
    return p >= lo && p <= hi;
}

double Arc::overlap(const Arc& o) const {
    if (full()) return o.length();
    if (o.full()) return length();
    double best = 0;
    for (double shift : {-4.0, 0.0, 4.0}) {
        double l = std::max(lo, o.lo + shift);
        double h = std::min(hi, o.hi + shift);
        best = std::max(best, h - l);
    }
    return best;
}

std::vector<Interval> Arc::side_coverage(int side) const {
    std::vector<Interval> out;
    for (const Cover& c : side_coverage_att(side)) out.push_back(c.iv);
    return out;
}

std::vector<Arc::Cover> Arc::side_coverage_att(int side) const {
    std::vector<Cover> out;
    double s0 = side, s1 = side + 1.0;
    bool is_full = full();
    for (double shift : {0.0, 4.0}) {
        double l = std::max(lo, s0 + shift);
        double h = std::min(hi, s1 + shift);
        if (h > l) {
            // endpoint attained unless it is the arc's own (free) end
            bool al = is_full || l > lo + 1e-13;
            bool ah = is_full || h < hi - 1e-13;
            double a = l - shift - s0, b = h - shift - s0;  // in [0,1], side direction
            if (side >= 2) {
                // top and left sides run reversed in perimeter coordinates
                out.push_back({{1.0 - b, 1.0 - a}, ah, al});
            } else {
                out.push_back({{a, b}, al, ah});
            }
        }
    }
    return out;
}

std::vector<Arc> complement_arcs(const std::array<Interval, 4>& side_free) {
    // map side free-intervals to perimeter coordinates
    std::vector<Interval> free;
    for (int s = 0; s < 4; ++s) {
        const Interval& iv = side_free[s];
        if (iv.empty()) continue;
        double a, b;
        if (s >= 2) {
            a = s + (1.0 - iv.hi);
            b = s + (1.0 - iv.lo);
        } else {
            a = s + iv.lo;
            b = s + iv.hi;
        }
        free.push_back({a, b});
    }
    if (free.empty()) return {Arc{0.0, 4.0, true}};

    std::sort(free.begin(), free.end(), [](const Interval& x, const Interval& y) {
        return x.lo < y.lo;
    });
    // merge closed intervals, with wrap-around between the last and first
    std::vector<Interval> merged;
    for (const Interval& iv : free) {
        if (!merged.empty() && iv.lo <= merged.back().hi + 1e-15) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    // wrap: an interval touching 4 merges with one starting at 0
    if (merged.size() > 1 && merged.back().hi >= 4.0 - 1e-15 &&
        merged.front().lo <= 1e-15) {
        merged.front().lo = merged.back().lo - 4.0;
        merged.pop_back();
    }
    if (merged.size() == 1 && merged[0].hi - merged[0].lo >= 4.0 - 1e-15) return {};

    std::vector<Arc> arcs;
    for (size_t i = 0; i < merged.size(); ++i) {
        double gap_lo = merged[i].hi;
        double gap_hi = (i + 1 < merged.size()) ? merged[i + 1].lo : merged[0].lo + 4.0;
        if (gap_hi - gap_lo > 1e-15) {
            double lo = std::fmod(gap_lo + 4.0, 4.0);
            arcs.push_back({lo, lo + (gap_hi - gap_lo)});
        }
    }
    std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
    return arcs;
}

void CellFrame::build(const QuadMesh& a, const QuadMesh& b, int cx_, int cy_, int ct_) {
    cx = cx_;
    cy = cy_;
    ct = ct_;
    dim = a.dim;
    int t0 = ct, t1 = std::min(ct + 1, a.T);
    auto A = [&](int p, int t) { return a.vertex(p, t); };
    auto B = [&](int p, int t) { return b.vertex(p, t); };

    // sides built from vertex differences so adjacent cells agree bit-exactly
    sides[0] = {sub(A(cx, t0), B(cy, t0)), sub(A(cx, t1), B(cy, t1)),
                sub(A(cx + 1, t0), A(cx, t0)), sub(A(cx + 1, t1), A(cx, t1))};
    sides[2] = {sub(A(cx, t0), B(cy + 1, t0)), sub(A(cx, t1), B(cy + 1, t1)),
                sub(A(cx + 1, t0), A(cx, t0)), sub(A(cx + 1, t1), A(cx, t1))};
    sides[3] = {sub(A(cx, t0), B(cy, t0)), sub(A(cx, t1), B(cy, t1)),
                sub(B(cy, t0), B(cy + 1, t0)), sub(B(cy, t1), B(cy + 1, t1))};
    sides[1] = {sub(A(cx + 1, t0), B(cy, t0)), sub(A(cx + 1, t1), B(cy, t1)),
                sub(B(cy, t0), B(cy + 1, t0)), sub(B(cy, t1), B(cy + 1, t1))};

    tedges[0] = {sub(A(cx, t0), B(cy, t0)), sub(A(cx, t1), B(cy, t1))};
    tedges[1] = {sub(A(cx + 1, t0), B(cy, t0)), sub(A(cx + 1, t1), B(cy, t1))};
    tedges[2] = {sub(A(cx + 1, t0), B(cy + 1, t0)), sub(A(cx + 1, t1), B(cy + 1, t1))};
    tedges[3] = {sub(A(cx, t0), B(cy + 1, t0)), sub(A(cx, t1), B(cy + 1, t1))};

    dy0 = sub(B(cy, t0), B(cy + 1, t0));
    dy1 = sub(B(cy, t1), B(cy + 1, t1));
}

std::array<Interval, 4> CellFrame::side_intervals(double theta, double eps, NormKind norm) const {
    return {sides[0].interval(theta, eps, norm), sides[1].interval(theta, eps, norm),
            sides[2].interval(theta, eps, norm), sides[3].interval(theta, eps, norm)};
}

Interval CellFrame::column_interval(double xi, double theta, double eps, NormKind norm) const {
    // q = D(xi, 0, theta), d = D(xi, 1, theta) - D(xi, 0, theta)
    Vec qb, db, qt, dt;
    sides[0].eval(theta, qb, db);  // bottom: q + xi*d
    Vec q(dim), d(dim);
    Vec dcol = lerp(dy0, dy1, theta);
    for (int i = 0; i < dim; ++i) {
        q[i] = qb[i] + xi * db[i];
        d[i] = dcol[i];  // dy = D(xi,1,.) - D(xi,0,.) = B(cy) - B(cy+1)
    }
    return feasible_unit(q, d, eps, norm);
}

int CellTracks::flat(int interval, int rank) const {
    int base = 0;
    for (int k = 0; k < interval; ++k) base += int(arcs[k].size());
    return base + rank;
}

int CellTracks::interval_of(double theta) const {
    int k = int(std::upper_bound(events.begin(), events.end(), theta) - events.begin()) - 1;
    return std::clamp(k, 0, int(arcs.size()) - 1);
}

std::vector<Arc> CellTracks::arcs_at(int k, double theta, double eps, NormKind norm) const {
    auto at = complement_arcs(frame.side_intervals(theta, eps, norm));
    const auto& ref = arcs[k];
    if (at.size() != ref.size()) {
        // structural slip (theta numerically at an event): use the midpoint
        double mid = 0.5 * (events[k] + events[k + 1]);
        return complement_arcs(frame.side_intervals(mid, eps, norm));
    }
    // arcs keep their circular order between events but the linearization at
    // perimeter 0 may rotate; align to the reference by best rotation
    int n = int(ref.size());
    if (n <= 1) return at;
    int best_rot = 0;
    double best = -1.0;
    for (int r = 0; r < n; ++r) {
        double tot = 0;
        for (int i = 0; i < n; ++i) tot += at[(i + r) % n].overlap(ref[i]);
        if (tot > best) {
            best = tot;
            best_rot = r;
        }
    }
    std::vector<Arc> out(n);
    for (int i = 0; i < n; ++i) out[i] = at[(i + best_rot) % n];
    return out;
}

namespace {

// roots of f on [0,1] located by sign changes on a fine grid + bisection
void scan_roots(const std::function<double(double)>& f, std::vector<double>& out, int grid) {
    double prev = f(0.0);
    for (int i = 1; i <= grid; ++i) {
        double x = double(i) / grid;
        double cur = f(x);
        if ((prev <= 0 && cur > 0) || (prev > 0 && cur <= 0)) {
            double lo = double(i - 1) / grid, hi = x;
            for (int it = 0; it < 60; ++it) {
                double m = 0.5 * (lo + hi);
                if ((f(m) <= 0) == (prev <= 0))
                    lo = m;
                else
                    hi = m;
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
}

}  // namespace

void CellTracks::build(const QuadMesh& a, const QuadMesh& b, int cx_, int cy_, int ct_, double eps,
                       NormKind norm) {
    frame.build(a, b, cx_, cy_, ct_);

    // events: t-edge interval endpoints (side endpoints crossing corners) and
    // side-interval appear/vanish thetas (roots of min-dist - eps)
    std::vector<double> ev{0.0, 1.0};
    for (const auto& te : frame.tedges) {
        Interval iv = te.interval(eps, norm);
        if (!iv.empty()) {
            if (iv.lo > 0 && iv.lo < 1) ev.push_back(iv.lo);
            if (iv.hi > 0 && iv.hi < 1) ev.push_back(iv.hi);
        }
    }
    for (const auto& sf : frame.sides) {
        auto f = [&](double th) { return sf.min_dist(th, norm) - eps; };
        scan_roots(f, ev, 48);
    }
    std::sort(ev.begin(), ev.end());
    ev.erase(std::unique(ev.begin(), ev.end(),
                         [](double x, double y) { return std::fabs(x - y) < 1e-11; }),
             ev.end());
    if (ev.front() > 0.0) ev.insert(ev.begin(), 0.0);
    ev.back() = std::max(ev.back(), 1.0);
    events = ev;

    int K = int(events.size()) - 1;
    arcs.assign(K, {});
    for (int k = 0; k < K; ++k) {
        double mid = 0.5 * (events[k] + events[k + 1]);
        arcs[k] = complement_arcs(frame.side_intervals(mid, eps, norm));
    }

    // in-cell gluing across events: positive overlap of event-adjacent arcs
    int total = 0;
    for (int k = 0; k < K; ++k) total += int(arcs[k].size());
    std::vector<int> parent(total);
    for (int i = 0; i < total; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

    for (int k = 0; k + 1 < K; ++k) {
        double width_lo = events[k + 1] - events[k];
        double width_hi = events[k + 2] - events[k + 1];
        double dlo = std::min(1e-7, width_lo / 8);
        double dhi = std::min(1e-7, width_hi / 8);
        auto below = arcs_at(k, events[k + 1] - dlo, eps, norm);
        auto above = arcs_at(k + 1, events[k + 1] + dhi, eps, norm);
        for (size_t i = 0; i < below.size(); ++i)
            for (size_t j = 0; j < above.size(); ++j)
                if (below[i].overlap(above[j]) > 1e-9)
                    unite(flat(k, int(i)), flat(k + 1, int(j)));
    }

    piece_of.assign(total, -1);
    n_pieces = 0;
    for (int i = 0; i < total; ++i) {
        int r = find(i);
        if (piece_of[r] < 0) piece_of[r] = n_pieces++;
        piece_of[i] = piece_of[r];
    }

    pieces.assign(n_pieces, {});
    int idx = 0;
    for (int k = 0; k < K; ++k) {
        for (size_t r = 0; r < arcs[k].size(); ++r, ++idx) {
            PieceInfo& pi = pieces[piece_of[idx]];
            pi.theta_lo = std::min(pi.theta_lo, events[k]);
            pi.theta_hi = std::max(pi.theta_hi, events[k + 1]);
            for (int s = 0; s < 4; ++s)
                for (const Interval& iv : arcs[k][r].side_coverage(s))
                    if (iv.length() > 1e-9) pi.covers_side[s] = true;
        }
    }
}

}  // namespace fdmc::cellgeom
