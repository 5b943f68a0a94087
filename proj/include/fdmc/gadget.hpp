#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdmc/mesh.hpp"
#include "fdmc/witness.hpp"

namespace fdmc::gadget {

using fdmc::MatchingWitness;
using fdmc::QuadMesh;

struct CnfFormula {
    int n = 0;                                   // variables 1..n
    std::vector<std::array<int, 3>> clauses;     // signed literals

    void validate() const;
    bool satisfies(const std::vector<bool>& assignment) const;
    /// index of the first satisfied disjunct of clause c, or -1
    int satisfied_disjunct(int c, const std::vector<bool>& assignment) const;
};

CnfFormula parse_dimacs(const std::string& text);
CnfFormula load_dimacs(const std::string& path);

/// Exhaustive satisfiability check (test support); n <= 20.
bool solve_exhaustive(const CnfFormula& f, std::vector<bool>& assignment);

enum class GadgetClass { CC, DD };

/// Mesh layout and elevation schema of a generated instance. Column and row
/// indices address vertices of the generated meshes.
struct GadgetFeatures {
    int n = 0, m = 0;
    // columns
    int a_align = 0, b_align = 0;
    std::vector<int> a_ridge;                   // X_i
    std::vector<int> a_valley;                  // valley right of X_i (index 0: leading valley)
    std::vector<int> b_ridge_f, b_sep, b_ridge_t, b_valley;
    // rows
    std::vector<int> a_peak_row;                // per clause
    std::vector<std::array<int, 3>> b_peak_rows;
    std::vector<std::array<int, 3>> omitted_col;  // B-ridge column left unpeaked per row
    // elevations
    double valley_e = 0, ridge_e = 4, a_peak_e = 7, b_peak_e = 6;
    double sep_bg_e = 1, sep_block_e = 4;
    double a_pulse_e = 6, b_align_block_e = 4;
    double ch2_bg = 2.5, ch2_spacer = 3.0, ch2_row = 0.0;

    nlohmann::json to_json() const;
};

struct GadgetInstance {
    GadgetClass cls = GadgetClass::CC;
    CnfFormula formula;
    QuadMesh a, b;
    GadgetFeatures features;
    fdmc::NormKind norm() const {
        return cls == GadgetClass::DD ? fdmc::NormKind::Linf : fdmc::NormKind::L2;
    }
};

/// 3-SAT instance over moving curves in R^1 (synchronous-free classes):
/// satisfiable formulas admit matchings with sup <= 2, unsatisfiable ones
/// force sup >= 3.
GadgetInstance gadget_cc(const CnfFormula& f);

/// Same construction with a second coordinate; under the maximum norm a row
/// of peaks of A can only be matched into a single row of peaks of B.
GadgetInstance gadget_dd(const CnfFormula& f);

/// Explicit (pi, tau) matching realizing the intended correspondence for the
/// given assignment; the returned witness carries its exact verified bound.
MatchingWitness witness_matching(const GadgetInstance& inst, const std::vector<bool>& assignment);

struct AuditReport {
    bool pass = true;
    std::vector<std::string> failures;
};

/// Checks the elevation gaps the construction relies on, reading the meshes.
AuditReport audit_gaps(const GadgetInstance& inst);

}  // namespace fdmc::gadget
