#include "fdmc/witness.hpp"

namespace fdmc {

MatchingWitness MatchingWitness::identity() { return MatchingWitness{}; }

MatchingWitness MatchingWitness::positional(Reparameterization pi) {
    MatchingWitness w;
    w.kind = Kind::Positional;
    w.pi = std::move(pi);
    return w;
}

MatchingWitness MatchingWitness::pi_tau(Reparameterization pi, Reparameterization tau) {
    MatchingWitness w;
    w.kind = Kind::PiTau;
    w.pi = std::move(pi);
    w.tau = std::move(tau);
    return w;
}

MatchingWitness MatchingWitness::per_slice(std::vector<Reparameterization> slices) {
    MatchingWitness w;
    w.kind = Kind::PerSlice;
    w.slices = std::move(slices);
    return w;
}

std::pair<double, double> MatchingWitness::map(double p, double t, const QuadMesh& a,
                                               const QuadMesh& b) const {
    switch (kind) {
        case Kind::Identity: return {p, t};
        case Kind::Positional: return {pi(p), t};
        case Kind::PiTau: return {pi(p), tau(t)};
        case Kind::PerSlice: {
            int j = std::min(int(t), std::max(a.T - 1, 0));
            double u = (a.T == 0) ? 0.0 : t - j;
            double lo = slices[j](p);
            double hi = slices[std::min(j + 1, a.T)](p);
            (void)b;
            return {lo + u * (hi - lo), t};
        }
    }
    return {p, t};
}

double MatchingWitness::verify_exact(const QuadMesh& a, const QuadMesh& b, NormKind norm) {
    double bound = 0;
    switch (kind) {
        case Kind::Identity:
            bound = frechet_identity(a, b, norm).distance;
            break;
        case Kind::Positional:
            bound = frechet_pl(a, b, pi, Reparameterization::identity(a.T), norm);
            break;
        case Kind::PiTau:
            bound = frechet_pl(a, b, pi, tau, norm);
            break;
        case Kind::PerSlice:
            throw std::invalid_argument("verify_exact: per-slice witnesses are sampled only");
    }
    verified_bound = bound;
    return bound;
}

}  // namespace fdmc
