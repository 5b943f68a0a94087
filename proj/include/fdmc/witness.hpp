#pragma once

#include <optional>
#include <vector>

#include "fdmc/identity.hpp"
#include "fdmc/mesh.hpp"

namespace fdmc {

/// Explicit matching with an attached verified sup-distance bound.
/// Kinds mirror the matching classes: identity, a positional map pi with
/// identity timestamps, a (pi, tau) pair, or per-timestamp positional maps
/// (linearly interpolated between integer timestamps).
struct MatchingWitness {
    enum class Kind { Identity, Positional, PiTau, PerSlice };
    Kind kind = Kind::Identity;
    Reparameterization pi;
    Reparameterization tau;
    std::vector<Reparameterization> slices;  // pi_t at t = 0..T
    std::optional<double> verified_bound;

    static MatchingWitness identity();
    static MatchingWitness positional(Reparameterization pi);
    static MatchingWitness pi_tau(Reparameterization pi, Reparameterization tau);
    static MatchingWitness per_slice(std::vector<Reparameterization> slices);

    /// Evaluate the matched B-parameters for A-parameters (p, t).
    std::pair<double, double> map(double p, double t, const QuadMesh& a, const QuadMesh& b) const;

    /// Exact sup distance for PL witnesses (identity/positional/pi-tau) via
    /// mesh alignment; per-slice witnesses have no exact route and throw.
    double verify_exact(const QuadMesh& a, const QuadMesh& b, NormKind norm);
};

}  // namespace fdmc
