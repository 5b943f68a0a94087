#pragma once

#include "fdmc/mesh.hpp"

namespace fdmc {

/// Vertexwise difference C = A - B of two meshes with equal grids.
/// Bilinearity makes eval(C, x) = eval(A, x) - eval(B, x) everywhere.
struct DifferenceMesh {
    QuadMesh mesh;
};

DifferenceMesh difference(const QuadMesh& a, const QuadMesh& b);

struct IdentityResult {
    double distance = 0.0;
    int argmax_p = 0;
    int argmax_t = 0;
};

/// Fréchet distance under the identity matching: the sup over the whole
/// domain equals the max over grid vertices of ||A - B||. Ties break to the
/// lexicographically smallest (t, p).
IdentityResult frechet_identity(const QuadMesh& a, const QuadMesh& b, NormKind norm);

/// Fréchet distance under a predefined piecewise-linear matching
/// mu(p,t) = (pi(p), tau(t)); equals frechet_identity on the aligned pair.
double frechet_pl(const QuadMesh& a, const QuadMesh& b, const Reparameterization& pi,
                  const Reparameterization& tau, NormKind norm);

}  // namespace fdmc
