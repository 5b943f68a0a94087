#include "fdmc/identity.hpp"

namespace fdmc {

DifferenceMesh difference(const QuadMesh& a, const QuadMesh& b) {
    a.validate();
    b.validate();
    if (!a.same_grid(b)) throw std::invalid_argument("difference: grid mismatch");
    DifferenceMesh c;
    c.mesh = QuadMesh(a.P, a.T, a.dim);
    for (int t = 0; t <= a.T; ++t)
        for (int p = 0; p <= a.P; ++p)
            c.mesh.vertex(p, t) = sub(a.vertex(p, t), b.vertex(p, t));
    return c;
}

IdentityResult frechet_identity(const QuadMesh& a, const QuadMesh& b, NormKind norm) {
    if (!a.same_grid(b)) throw std::invalid_argument("frechet_identity: grid mismatch");
    IdentityResult r;
    r.distance = -1.0;
    for (int t = 0; t <= a.T; ++t) {
        for (int p = 0; p <= a.P; ++p) {
            double d = distance(a.vertex(p, t), b.vertex(p, t), norm);
            if (d > r.distance) {
                r.distance = d;
                r.argmax_p = p;
                r.argmax_t = t;
            }
        }
    }
    return r;
}

double frechet_pl(const QuadMesh& a, const QuadMesh& b, const Reparameterization& pi,
                  const Reparameterization& tau, NormKind norm) {
    AlignedPair ap = align_meshes(a, b, pi, tau);
    return frechet_identity(ap.a, ap.b, norm).distance;
}

}  // namespace fdmc
