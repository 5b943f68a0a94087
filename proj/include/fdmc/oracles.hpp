#pragma once

#include <cstdint>

#include "fdmc/mesh.hpp"
#include "fdmc/witness.hpp"

namespace fdmc::oracle {

struct SamplingPlan {
    int resolution = 16;  // samples per unit cell and axis
    std::uint64_t seed = 0;

    SamplingPlan() = default;
    SamplingPlan(int res, std::uint64_t s = 0) : resolution(res), seed(s) {
        if (resolution < 2) throw std::invalid_argument("SamplingPlan: resolution >= 2");
    }
};

/// Max pointwise distance over a dense sample grid; lower bound on the true
/// sup that converges as the resolution grows.
double sampled_sup(const QuadMesh& a, const QuadMesh& b, const MatchingWitness& w,
                   NormKind norm, const SamplingPlan& plan);

/// BFS over monotone moves on a dense-sampled 2D free space; agrees with
/// decide_ic away from the critical eps.
bool grid_dp_ic(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
                const SamplingPlan& plan);

/// d->u reachability over the full dominance relation R on a sampled lattice;
/// the reference comparator for the dynamic-matching module.
bool full_R_reachability(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
                         const SamplingPlan& plan);

/// Classic free-space decision for static polylines (used to validate the
/// constant-matching module at T = 0).
bool classic_frechet(const std::vector<Vec>& a, const std::vector<Vec>& b, double eps,
                     NormKind norm);

enum class SearchClass { Constant, ConstantConstant, Dynamic };

struct SearchResult {
    double min_sup = kInf;      // smallest sup found over all trials
    double min_exact = kInf;    // exact value where an exact route exists
    int trials = 0;
};

/// Randomized search over discretized monotone matchings; returns the best
/// (smallest) sup found. For PL classes, trials whose sampled sup dips below
/// `exact_below` are re-verified exactly via mesh alignment.
SearchResult random_matching_search(const QuadMesh& a, const QuadMesh& b, SearchClass cls,
                                    int trials, NormKind norm, const SamplingPlan& plan,
                                    double exact_below = -kInf);

}  // namespace fdmc::oracle
