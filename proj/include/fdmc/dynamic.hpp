#pragma once

#include <cstdint>
#include <memory>

#include "fdmc/cellgeom.hpp"
#include "fdmc/mesh.hpp"
#include "fdmc/pareto.hpp"

namespace fdmc {

/// Exact per-cell free-space features: the twelve edge intervals, the eight
/// corner membership flags, the four side functions (whose feasible interval
/// is an algebraic function of t), and the cell's structural events.
struct CellFeatures {
    std::array<Interval, 4> x_edges;  // (ups,theta) = (0,0),(0,1),(1,0),(1,1)
    std::array<Interval, 4> y_edges;  // (xi,theta)  = (0,0),(0,1),(1,0),(1,1)
    std::array<Interval, 4> t_edges;  // corners (0,0),(1,0),(1,1),(0,1)
    std::array<bool, 8> corner_free;  // (xi,ups,theta) bit order xi + 2*ups + 4*theta
    std::array<cellgeom::SideFn, 4> sides;
    std::vector<double> events;       // cell-local thetas where arcs change
};

/// Connectivity computation mode for obstacle extraction.
struct ConnConfig {
    enum class Kind { Exact, Sampled };
    Kind kind = Kind::Exact;
    int resolution = 16;      // sampled mode: lattice points per cell axis
    int extra_samples = 5;    // exact mode: dominance samples per event interval

    static ConnConfig exact() { return {}; }
    static ConnConfig sampled(int res) { return {Kind::Sampled, res, 5}; }
};

/// Obstacle anchored at a grid point: the maximal connected piece of the
/// free-space complement within the adjacent cells that contains the point.
struct Obstacle {
    int gx = 0, gy = 0, gt = 0;
    bool dummy = true;
    double tmin = 0, tmax = -1;                  // global t extent
    std::vector<std::pair<int, int>> pieces;     // (cell index, cell-local piece)
    bool face_x0 = false, face_xP = false;       // contact with domain planes
    bool face_y0 = false, face_yQ = false;
    bool touches_u() const { return face_x0 || face_yQ; }
    bool touches_d() const { return face_y0 || face_xP; }
};

/// Obstacles plus the geometric predicates the graph construction needs.
class ObstacleSet {
public:
    virtual ~ObstacleSet() = default;
    int P = 0, Q = 0, T = 0;
    const std::vector<Obstacle>& all() const { return obs_; }
    const Obstacle& at(int gx, int gy, int gt) const {
        return obs_[(size_t(gt) * (Q + 1) + gy) * (P + 1) + gx];
    }
    int index(int gx, int gy, int gt) const {
        return int((size_t(gt) * (Q + 1) + gy) * (P + 1) + gx);
    }
    /// a R b: a touches b, or some point of a lies weakly up-left of some
    /// point of b at a common time.
    virtual bool related(int a, int b) const = 0;

protected:
    std::vector<Obstacle> obs_;
};

/// 3D free space of a mesh pair at a fixed eps; owns the per-cell slice-arc
/// structures (exact mode) and the obstacle extraction.
class FreeSpace3D {
public:
    FreeSpace3D(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm);
    const QuadMesh& mesh_a() const { return a_; }
    const QuadMesh& mesh_b() const { return b_; }
    double epsilon() const { return eps_; }
    NormKind norm() const { return norm_; }
    int P() const { return a_.P; }
    int Q() const { return b_.P; }
    int T() const { return a_.T; }
    const cellgeom::CellTracks& cell(int cx, int cy, int ct) const;

private:
    QuadMesh a_, b_;  // lifted to T >= 1
    double eps_;
    NormKind norm_;
    mutable std::vector<std::unique_ptr<cellgeom::CellTracks>> cells_;
    friend class ExactObstacles;
};

CellFeatures cell_features(const FreeSpace3D& fs, int cx, int cy, int ct);

/// Extract one obstacle per grid point (dummy when the point is feasible),
/// u/d incidences, and the dominance predicate, using the configured
/// connectivity mode.
std::unique_ptr<ObstacleSet> extract_obstacles(const QuadMesh& a, const QuadMesh& b, double eps,
                                               NormKind norm,
                                               const ConnConfig& conn = ConnConfig::exact());

struct GraphStats {
    std::uint64_t leftmost_queries = 0;
    std::uint64_t frontier_queries = 0;
    std::size_t edges_geometry = 0;
    std::size_t edges_grid = 0;
    std::size_t edges_pareto = 0;
    std::size_t edges_boundary = 0;
};

struct ObstacleGraph {
    enum class Mode { FullR, ReducedE };
    Mode mode = Mode::FullR;
    int n = 0;       // obstacle nodes; d = n, u = n + 1
    int d_node = 0, u_node = 0;
    std::vector<std::vector<int>> out;
    GraphStats stats;

    bool d_reaches_u() const;
};

/// Full relation R: every related obstacle pair, oracle-grade.
ObstacleGraph relation_R(const ObstacleSet& s);

/// Reduced edge set E: same d->u reachability as R with O(P^3 T) edges
/// (grid edges through dummies plus Pareto-frontier edges per time offset).
ObstacleGraph reduced_edges_E(const ObstacleSet& s);

enum class GraphMode { FullR, ReducedE };

/// Accept iff a synchronous-dynamic matching with sup <= eps exists
/// (no d->u path in the obstacle graph).
bool decide_id(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
               GraphMode mode = GraphMode::ReducedE, const ConnConfig& conn = ConnConfig::exact());

/// Minimal eps admitting a synchronous-dynamic matching, to within tol.
double compute_id(const QuadMesh& a, const QuadMesh& b, NormKind norm, double tol,
                  GraphMode mode = GraphMode::ReducedE, const ConnConfig& conn = ConnConfig::exact());

}  // namespace fdmc
