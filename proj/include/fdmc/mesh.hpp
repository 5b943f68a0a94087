#pragma once

#include <utility>
#include <vector>

#include "fdmc/geometry.hpp"

namespace fdmc {

using Point = Vec;

/// Bilinear quadrilateral mesh over the unit-spaced grid [0,P]x[0,T].
/// Vertices are stored row-major by time then position: vertex(p, t) with
/// p in [0,P], t in [0,T].
struct QuadMesh {
    int P = 0;   // segments along the position axis (>= 1)
    int T = 0;   // segments along the time axis (>= 0)
    int dim = 0;
    std::vector<Point> verts;  // (T+1) rows of (P+1) points

    QuadMesh() = default;
    QuadMesh(int P_, int T_, int dim_);

    const Point& vertex(int p, int t) const { return verts[size_t(t) * (P + 1) + p]; }
    Point& vertex(int p, int t) { return verts[size_t(t) * (P + 1) + p]; }

    void validate() const;
    bool same_grid(const QuadMesh& o) const { return P == o.P && T == o.T && dim == o.dim; }
};

/// Bilinear interpolation at (p, t) in [0,P]x[0,T].
Point eval_mesh(const QuadMesh& m, double p, double t);
void eval_mesh_into(const QuadMesh& m, double p, double t, double* out);

/// Piecewise-linear map given by breakpoints (input, output); inputs strictly
/// increasing, outputs nondecreasing, anchored at (0,0) and (L, L').
struct Reparameterization {
    std::vector<std::pair<double, double>> breakpoints;

    static Reparameterization identity(double length);
    static Reparameterization linear(double in_len, double out_len);

    void validate() const;
    double domain_end() const { return breakpoints.back().first; }
    double codomain_end() const { return breakpoints.back().second; }
    double operator()(double x) const;
    /// Leftmost preimage of y (flat segments invert to their left endpoint).
    double invert(double y) const;
    /// Composition (this after g): x -> this(g(x)); requires codomain(g) = domain(this).
    Reparameterization after(const Reparameterization& g) const;
};

/// Insert grid lines at the given interior coordinates. The result evaluates
/// identically to the input after mapping its unit grid back through the cut
/// coordinates (see subdivision_map).
QuadMesh subdivide(const QuadMesh& m, const std::vector<double>& p_cuts,
                   const std::vector<double>& t_cuts);

/// Map from the subdivided mesh's unit grid onto the original coordinates:
/// vertex i of the new axis sits at original coordinate map(i).
Reparameterization subdivision_map(int segments, const std::vector<double>& cuts);

struct AlignedPair {
    QuadMesh a;
    QuadMesh b;
    // original-A coordinates of the aligned grid lines
    std::vector<double> p_events;
    std::vector<double> t_events;
};

/// Realign b against a under the predefined maps pi (positions, [0,Pa]->[0,Pb])
/// and tau (timestamps, [0,Ta]->[0,Tb]). Vertex (i,j) of the first output
/// corresponds to vertex (i,j) of the second under (pi, tau), and both outputs
/// evaluate pointwise identically to their sources.
AlignedPair align_meshes(const QuadMesh& a, const QuadMesh& b,
                         const Reparameterization& pi, const Reparameterization& tau);

}  // namespace fdmc
