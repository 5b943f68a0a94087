#include "fdmc/geometry.hpp"

#include <algorithm>

namespace fdmc {

NormKind parse_norm(const std::string& name) {
    if (name == "l1" || name == "L1") return NormKind::L1;
    if (name == "l2" || name == "L2") return NormKind::L2;
    if (name == "linf" || name == "Linf" || name == "LINF") return NormKind::Linf;
    throw std::invalid_argument("unknown norm: " + name);
}

std::string norm_name(NormKind k) {
    switch (k) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::Linf: return "linf";
    }
    return "?";
}

double norm_value(std::span<const double> v, NormKind k) {
    double s = 0;
    switch (k) {
        case NormKind::L1:
            for (double x : v) s += std::fabs(x);
            return s;
        case NormKind::L2:
            for (double x : v) s += x * x;
            return std::sqrt(s);
        case NormKind::Linf:
            for (double x : v) s = std::max(s, std::fabs(x));
            return s;
    }
    return 0;
}

double norm_value(const Vec& v, NormKind k) {
    return norm_value(std::span<const double>(v.data(), v.size()), k);
}

double distance(const Vec& a, const Vec& b, NormKind k) {
    if (a.size() != b.size()) throw std::invalid_argument("distance: dimension mismatch");
    double s = 0;
    switch (k) {
        case NormKind::L1:
            for (size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
            return s;
        case NormKind::L2:
            for (size_t i = 0; i < a.size(); ++i) {
                double d = a[i] - b[i];
                s += d * d;
            }
            return std::sqrt(s);
        case NormKind::Linf:
            for (size_t i = 0; i < a.size(); ++i) s = std::max(s, std::fabs(a[i] - b[i]));
            return s;
    }
    return 0;
}

namespace {

Interval feasible_l2(const Vec& q, const Vec& d, double eps) {
    double a = dot(d, d);
    double b = 2.0 * dot(q, d);
    double c = dot(q, q) - eps * eps;
    if (a == 0.0) {
        return c <= 0.0 ? Interval::all() : Interval::empty_interval();
    }
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        // absorb tiny negative round-off; tangency counts as feasible
        if (disc > -1e-12 * std::max(1.0, b * b)) disc = 0.0;
        else return Interval::empty_interval();
    }
    double sq = std::sqrt(disc);
    return Interval{(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)};
}

Interval feasible_linf(const Vec& q, const Vec& d, double eps) {
    Interval r = Interval::all();
    for (size_t i = 0; i < q.size(); ++i) {
        if (d[i] == 0.0) {
            if (std::fabs(q[i]) > eps) return Interval::empty_interval();
            continue;
        }
        double lo = (-eps - q[i]) / d[i];
        double hi = (eps - q[i]) / d[i];
        if (lo > hi) std::swap(lo, hi);
        r = r.intersect(Interval{lo, hi});
        if (r.empty()) return Interval::empty_interval();
    }
    return r;
}

// g(s) = sum_i |q_i + s d_i| is convex piecewise linear; solve g <= eps.
Interval feasible_l1(const Vec& q, const Vec& d, double eps) {
    std::vector<double> bps;
    bool any_slope = false;
    for (size_t i = 0; i < q.size(); ++i) {
        if (d[i] != 0.0) {
            any_slope = true;
            bps.push_back(-q[i] / d[i]);
        }
    }
    auto g = [&](double s) {
        double v = 0;
        for (size_t i = 0; i < q.size(); ++i) v += std::fabs(q[i] + s * d[i]);
        return v;
    };
    if (!any_slope) return g(0.0) <= eps ? Interval::all() : Interval::empty_interval();
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    // locate the minimizing breakpoint
    size_t best = 0;
    double bestv = g(bps[0]);
    for (size_t i = 1; i < bps.size(); ++i) {
        double v = g(bps[i]);
        if (v < bestv) {
            bestv = v;
            best = i;
        }
    }
    if (bestv > eps) return Interval::empty_interval();

    double lo, hi;
    {
        // leftmost breakpoint still inside {g <= eps}
        size_t i = best;
        while (i > 0 && g(bps[i - 1]) <= eps) --i;
        double s1 = bps[i], v1 = g(s1);
        if (i > 0) {
            double s0 = bps[i - 1], v0 = g(s0);  // v0 > eps
            lo = s0 + (eps - v0) * (s1 - s0) / (v1 - v0);
        } else {
            double s0 = s1 - 1.0, v0 = g(s0);  // on the leftmost ray
            double slope = v1 - v0;
            if (v0 <= eps) {
                lo = (slope >= 0.0) ? -kInf : s1 + (eps - v1) / slope;
            } else {
                lo = s0 + (eps - v0) / slope;
            }
        }
    }
    {
        size_t i = best;
        while (i + 1 < bps.size() && g(bps[i + 1]) <= eps) ++i;
        double s1 = bps[i], v1 = g(s1);
        if (i + 1 < bps.size()) {
            double s2 = bps[i + 1], v2 = g(s2);  // v2 > eps
            hi = s1 + (eps - v1) * (s2 - s1) / (v2 - v1);
        } else {
            double s2 = s1 + 1.0, v2 = g(s2);  // on the rightmost ray
            double slope = v2 - v1;
            if (v2 <= eps) {
                hi = (slope <= 0.0) ? kInf : s1 + (eps - v1) / slope;
            } else {
                hi = s1 + (eps - v1) / slope;
            }
        }
    }
    return Interval{lo, hi};
}

}  // namespace

Interval feasible_line(const Vec& q, const Vec& d, double eps, NormKind k) {
    if (q.size() != d.size()) throw std::invalid_argument("feasible_line: dimension mismatch");
    if (eps < 0) return Interval::empty_interval();
    switch (k) {
        case NormKind::L2: return feasible_l2(q, d, eps);
        case NormKind::Linf: return feasible_linf(q, d, eps);
        case NormKind::L1: return feasible_l1(q, d, eps);
    }
    return Interval::empty_interval();
}

Interval feasible_unit(const Vec& q, const Vec& d, double eps, NormKind k) {
    return feasible_line(q, d, eps, k).clipped(0.0, 1.0);
}

}  // namespace fdmc
