#pragma once

#include <optional>

#include "fdmc/mesh.hpp"
#include "fdmc/witness.hpp"

namespace fdmc {

/// Identifies one cell-boundary segment of the 2D free space.
/// Vertical: {x} x [y, y+1] with x in [0..Pa], y in [0..Pb-1].
/// Horizontal: [x, x+1] x {y} with x in [0..Pa-1], y in [0..Pb].
struct EdgeId {
    enum class Orientation { Vertical, Horizontal };
    Orientation orientation;
    int x;
    int y;
};

/// Feasible sub-interval (in local [0,1] coordinates) of a cell boundary:
/// the intersection over integer timestamps of the per-layer feasible sets.
Interval boundary_interval(const QuadMesh& a, const QuadMesh& b, const EdgeId& edge, double eps,
                           NormKind norm);

/// 2D free-space diagram for synchronous-constant matchings: cell (i,j)
/// covers [i,i+1] x [j,j+1]; left(i,j) is the vertical edge at x=i, bottom(i,j)
/// the horizontal edge at y=j.
struct FreeSpace2D {
    int Pa = 0;
    int Pb = 0;
    double epsilon = 0;
    NormKind norm = NormKind::L2;
    std::vector<Interval> left;    // (Pa+1) * Pb
    std::vector<Interval> bottom;  // Pa * (Pb+1)

    const Interval& left_edge(int x, int y) const { return left[size_t(y) * (Pa + 1) + x]; }
    const Interval& bottom_edge(int x, int y) const { return bottom[size_t(y) * Pa + x]; }
    Interval& left_edge(int x, int y) { return left[size_t(y) * (Pa + 1) + x]; }
    Interval& bottom_edge(int x, int y) { return bottom[size_t(y) * Pa + x]; }
};

FreeSpace2D build_freespace_2d(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm);

struct DecisionIC {
    bool accepted = false;
    std::optional<MatchingWitness> witness;
};

/// Decide whether a synchronous-constant matching with sup distance <= eps
/// exists (monotone path through the 2D free space). On acceptance the
/// witness is a positional reparameterization verifying <= eps + eta.
DecisionIC decide_ic(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm);

struct ComputeModeIC {
    enum class Kind { Bisect, Critical };
    Kind kind = Kind::Bisect;
    double tol = 1e-6;

    static ComputeModeIC bisect(double tol) { return {Kind::Bisect, tol}; }
    static ComputeModeIC critical() { return {Kind::Critical, 0.0}; }
};

/// Minimal eps admitting a synchronous-constant matching. Bisect mode
/// returns a value within tol of the optimum; critical mode (L2/Linf)
/// returns the exact minimal critical value of types a/b/c.
double compute_ic(const QuadMesh& a, const QuadMesh& b, NormKind norm, const ComputeModeIC& mode);

}  // namespace fdmc
