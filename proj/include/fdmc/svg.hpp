#pragma once

#include <optional>
#include <string>

#include "fdmc/mesh.hpp"
#include "fdmc/witness.hpp"

namespace fdmc::svg {

/// 2D free-space diagram of the synchronous-constant problem (white = free)
/// with the cell grid and, when given, the witness path.
std::string render_fsd_ic(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
                          int res, const std::optional<MatchingWitness>& witness);

/// (x, y) free-space slice of the synchronous-dynamic problem at a fixed time.
std::string render_fsd_id_slice(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
                                double t, int res);

}  // namespace fdmc::svg
