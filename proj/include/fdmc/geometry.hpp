#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdmc {

using Vec = std::vector<double>;

constexpr double kEta = 1e-9;   // global membership tolerance
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class NormKind { L1, L2, Linf };

NormKind parse_norm(const std::string& name);
std::string norm_name(NormKind k);

double norm_value(std::span<const double> v, NormKind k);
double norm_value(const Vec& v, NormKind k);

double distance(const Vec& a, const Vec& b, NormKind k);

/// Closed interval; `empty()` intervals compare canonical (lo > hi).
struct Interval {
    double lo = 1.0;
    double hi = 0.0;

    static Interval empty_interval() { return Interval{1.0, 0.0}; }
    static Interval all() { return Interval{-kInf, kInf}; }

    bool empty() const { return lo > hi; }
    double length() const { return empty() ? 0.0 : hi - lo; }
    bool contains(double x) const { return !empty() && x >= lo && x <= hi; }

    Interval clipped(double a, double b) const {
        if (empty()) return empty_interval();
        double l = std::max(lo, a), h = std::min(hi, b);
        return l > h ? empty_interval() : Interval{l, h};
    }
    Interval intersect(const Interval& o) const {
        if (empty() || o.empty()) return empty_interval();
        double l = std::max(lo, o.lo), h = std::min(hi, o.hi);
        return l > h ? empty_interval() : Interval{l, h};
    }
    bool overlaps(const Interval& o) const { return !intersect(o).empty(); }
};

/// Solves { s in R : ||q + s*d|| <= eps } exactly for the three norms.
/// The set is convex, hence an interval (possibly empty or unbounded).
Interval feasible_line(const Vec& q, const Vec& d, double eps, NormKind k);

/// feasible_line clipped to [0,1].
Interval feasible_unit(const Vec& q, const Vec& d, double eps, NormKind k);

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline Vec lerp(const Vec& a, const Vec& b, double t) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}
inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Error carrying the best bracketing interval of a failed iteration.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo;
    double bracket_hi;
};

}  // namespace fdmc
