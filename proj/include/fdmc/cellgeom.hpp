#pragma once

#include <array>
#include <vector>

#include "fdmc/mesh.hpp"

namespace fdmc::cellgeom {

using fdmc::Interval;
using fdmc::NormKind;
using fdmc::QuadMesh;
using fdmc::Vec;

/// One side of the t-slice square of a 3D free-space cell. The difference
/// along the side is q(theta) + s * d(theta) with q, d affine in theta, so the
/// feasible set in s is an interval for every theta (slice convexity).
struct SideFn {
    Vec q0, q1, d0, d1;

    void eval(double theta, Vec& q, Vec& d) const {
        q = lerp(q0, q1, theta);
        d = lerp(d0, d1, theta);
    }
    Interval interval(double theta, double eps, NormKind norm) const;
    /// min over s in [0,1] of ||q(theta) + s d(theta)||
    double min_dist(double theta, NormKind norm) const;
};

/// Difference along a t-edge (fixed square corner): c0 + theta * (c1 - c0).
struct TEdgeFn {
    Vec c0, c1;
    Interval interval(double eps, NormKind norm) const;
    double value(double theta, NormKind norm) const;
};

/// Circular arc of the slice-square perimeter, in perimeter coordinates:
/// side 0 (bottom, ups=0) covers [0,1), side 1 (right) [1,2), side 2 (top,
/// reversed) [2,3), side 3 (left, reversed) [3,4). lo in [0,4), hi in
/// (lo, lo+4]; hi may exceed 4 for arcs crossing the origin corner.
struct Arc {
    double lo, hi;
    // set only when the slice boundary carries no free point at all; a
    // length-4 arc with is_full unset is the complement of a single free
    // point and its endpoints are feasible
    bool is_full = false;
    double length() const { return hi - lo; }
    bool full() const { return is_full; }
    bool contains(double pos) const;
    double overlap(const Arc& o) const;
    /// Portions of the arc on the given side, in the side's own parameter
    /// (0..2 intervals).
    std::vector<Interval> side_coverage(int side) const;

    /// Coverage with endpoint attainment: an endpoint cut by the arc's own
    /// end is a free point (not attained); one cut by a square corner strictly
    /// inside the arc is an obstacle point.
    struct Cover {
        Interval iv;
        bool att_lo, att_hi;
    };
    std::vector<Cover> side_coverage_att(int side) const;
};

/// Complement arcs of the slice-square boundary at a fixed theta, given the
/// four closed side free-intervals; sorted by lo.
std::vector<Arc> complement_arcs(const std::array<Interval, 4>& side_free);

/// Geometry of one free-space cell C_{cx,cy,ct}: all boundary functions are
/// built directly from vertex differences so shared faces of adjacent cells
/// are bit-identical.
struct CellFrame {
    int cx = 0, cy = 0, ct = 0;
    int dim = 0;
    // sides of the slice square: 0 bottom (param xi), 1 right (param ups),
    // 2 top (param xi), 3 left (param ups)
    std::array<SideFn, 4> sides;
    // t-edges at square corners (xi,ups) = (0,0),(1,0),(1,1),(0,1)
    std::array<TEdgeFn, 4> tedges;
    // column direction (for lc/rc profiles): D(xi,ups,theta) along ups
    Vec dy0, dy1;

    void build(const QuadMesh& a, const QuadMesh& b, int cx, int cy, int ct);
    std::array<Interval, 4> side_intervals(double theta, double eps, NormKind norm) const;
    /// free interval in ups on the column at (xi, theta)
    Interval column_interval(double xi, double theta, double eps, NormKind norm) const;
};

/// Slice-arc decomposition of one cell at a fixed eps: events, per-interval
/// arcs, and the union-find of (interval, arc) tracks into connected pieces
/// of the cell's free-space complement.
struct CellTracks {
    CellFrame frame;
    std::vector<double> events;             // cell-local, includes 0 and 1
    std::vector<std::vector<Arc>> arcs;     // arcs at each interval midpoint
    std::vector<int> piece_of;              // flat (interval, rank) -> piece id
    int n_pieces = 0;

    struct PieceInfo {
        double theta_lo = 1.0, theta_hi = 0.0;    // cell-local
        std::array<bool, 4> covers_side{};        // positive-length coverage
    };
    std::vector<PieceInfo> pieces;

    int flat(int interval, int rank) const;
    int piece_at(int interval, int rank) const { return piece_of[flat(interval, rank)]; }
    /// arcs evaluated at an arbitrary theta inside interval k (rank-aligned
    /// with arcs[k])
    std::vector<Arc> arcs_at(int k, double theta, double eps, NormKind norm) const;
    int interval_of(double theta) const;

    void build(const QuadMesh& a, const QuadMesh& b, int cx, int cy, int ct, double eps,
               NormKind norm);
};

}  // namespace fdmc::cellgeom
