#include "fdmc/gadget.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fdmc::gadget {

void CnfFormula::validate() const {
    if (n < 0) throw std::invalid_argument("CnfFormula: negative variable count");
    for (const auto& c : clauses)
        for (int lit : c) {
            if (lit == 0 || std::abs(lit) > n)
                throw std::invalid_argument("CnfFormula: literal out of range");
        }
}

bool CnfFormula::satisfies(const std::vector<bool>& assignment) const {
    for (size_t c = 0; c < clauses.size(); ++c)
        if (satisfied_disjunct(int(c), assignment) < 0) return false;
    return true;
}

int CnfFormula::satisfied_disjunct(int c, const std::vector<bool>& assignment) const {
    for (int k = 0; k < 3; ++k) {
        int lit = clauses[c][k];
        bool v = assignment[std::abs(lit) - 1];
        if (lit > 0 ? v : !v) return k;
    }
    return -1;
}

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CnfFormula f;
    bool header = false;
    std::vector<int> lits;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, cnf;
            int m;
            ls >> p >> cnf >> f.n >> m;
            if (cnf != "cnf") throw std::invalid_argument("dimacs: expected 'p cnf'");
            header = true;
            continue;
        }
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (lits.size() != 3)
                    throw std::invalid_argument("dimacs: clauses must have exactly 3 literals");
                f.clauses.push_back({lits[0], lits[1], lits[2]});
                lits.clear();
            } else {
                lits.push_back(lit);
            }
        }
    }
    if (!header) throw std::invalid_argument("dimacs: missing 'p cnf' header");
    if (!lits.empty()) throw std::invalid_argument("dimacs: clause not terminated by 0");
    f.validate();
    return f;
}

CnfFormula load_dimacs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_dimacs(ss.str());
}

bool solve_exhaustive(const CnfFormula& f, std::vector<bool>& assignment) {
    if (f.n > 20) throw std::invalid_argument("solve_exhaustive: n > 20");
    for (std::uint32_t mask = 0; mask < (1u << f.n); ++mask) {
        std::vector<bool> a(f.n);
        for (int i = 0; i < f.n; ++i) a[i] = (mask >> i) & 1;
        if (f.satisfies(a)) {
            assignment = a;
            return true;
        }
    }
    return false;
}

nlohmann::json GadgetFeatures::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["m"] = m;
    j["columns"] = {{"a_align", a_align},   {"b_align", b_align}, {"a_ridge", a_ridge},
                    {"a_valley", a_valley}, {"b_ridge_f", b_ridge_f}, {"b_sep", b_sep},
                    {"b_ridge_t", b_ridge_t}, {"b_valley", b_valley}};
    j["rows"] = {{"a_peak_row", a_peak_row}, {"b_peak_rows", b_peak_rows},
                 {"omitted_col", omitted_col}};
    j["elevations"] = {{"valley", valley_e},       {"ridge", ridge_e},
                       {"a_peak", a_peak_e},       {"b_peak", b_peak_e},
                       {"sep_bg", sep_bg_e},       {"sep_block", sep_block_e},
                       {"a_pulse", a_pulse_e},     {"b_align_block", b_align_block_e},
                       {"ch2_bg", ch2_bg},         {"ch2_spacer", ch2_spacer},
                       {"ch2_row", ch2_row}};
    return j;
}

namespace {

GadgetInstance build(const CnfFormula& f, GadgetClass cls) {
    f.validate();
    GadgetInstance inst;
    inst.cls = cls;
    inst.formula = f;
    GadgetFeatures& ft = inst.features;
    ft.n = f.n;
    ft.m = int(f.clauses.size());
    int dim = (cls == GadgetClass::DD) ? 2 : 1;

    if (ft.m == 0) {
        // no clause constraints: a pair of identical flat cells, identity witness
        inst.a = QuadMesh(1, 0, dim);
        inst.b = QuadMesh(1, 0, dim);
        return inst;
    }

    const int n = ft.n, m = ft.m;
    int Pa = 2 * n + 1, Pb = 4 * n + 1;
    int Ta = 2 * m, Tb = 6 * m;
    inst.a = QuadMesh(Pa, Ta, dim);
    inst.b = QuadMesh(Pb, Tb, dim);

    ft.a_align = 0;
    ft.b_align = 0;
    ft.a_valley.push_back(1);
    ft.b_valley.push_back(1);
    for (int i = 1; i <= n; ++i) {
        ft.a_ridge.push_back(2 * i);
        ft.a_valley.push_back(2 * i + 1);
        ft.b_ridge_f.push_back(4 * i - 2);
        ft.b_sep.push_back(4 * i - 1);
        ft.b_ridge_t.push_back(4 * i);
        ft.b_valley.push_back(4 * i + 1);
    }
    for (int c = 0; c < m; ++c) {
        ft.a_peak_row.push_back(2 * c + 1);
        int b0 = 6 * c;
        ft.b_peak_rows.push_back({b0 + 1, b0 + 3, b0 + 5});
        std::array<int, 3> omit{};
        for (int k = 0; k < 3; ++k) {
            int lit = f.clauses[c][k];
            int v = std::abs(lit);
            omit[k] = (lit > 0) ? ft.b_ridge_f[v - 1] : ft.b_ridge_t[v - 1];
        }
        ft.omitted_col.push_back(omit);
    }

    // channel 1 of A
    for (int t = 0; t <= Ta; ++t) {
        bool peak = (t % 2 == 1);
        for (int p = 0; p <= Pa; ++p) {
            double v;
            if (p == ft.a_align)
                v = peak ? ft.a_pulse_e : 0.0;
            else if (p % 2 == 0)
                v = peak ? ft.a_peak_e : ft.ridge_e;  // ridge columns are even >= 2
            else
                v = ft.valley_e;
            inst.a.vertex(p, t)[0] = v;
        }
    }
    // channel 1 of B: rows per clause block are [r1, sp, r2, sp, r3, bg]
    for (int t = 0; t <= Tb; ++t) {
        int rel = t % 6;  // 0: bg row (block boundary), 1/3/5: peak rows, 2/4: spacers
        bool bg = (rel == 0);
        bool peak_row = (rel % 2 == 1);
        int clause = (t - 1) / 6;
        int disjunct = peak_row ? (rel - 1) / 2 : -1;
        for (int p = 0; p <= Pb; ++p) {
            double v;
            if (p == ft.b_align)
                v = bg ? 0.0 : ft.b_align_block_e;
            else if (p % 4 == 1)
                v = ft.valley_e;  // valleys at columns 1 mod 4
            else if (p % 4 == 3)
                v = bg ? ft.sep_bg_e : ft.sep_block_e;  // separators at 3 mod 4
            else {
                // ridge columns (2 and 0 mod 4, p >= 2)
                v = ft.ridge_e;
                if (peak_row && ft.omitted_col[clause][disjunct] != p) v = ft.b_peak_e;
            }
            inst.b.vertex(p, t)[0] = v;
        }
    }
    // channel 2 (DD): row bands independent of position
    if (dim == 2) {
        for (int t = 0; t <= Ta; ++t) {
            double v = (t % 2 == 1) ? ft.ch2_row : ft.ch2_bg;
            for (int p = 0; p <= Pa; ++p) inst.a.vertex(p, t)[1] = v;
        }
        for (int t = 0; t <= Tb; ++t) {
            int rel = t % 6;
            double v = (rel == 0) ? ft.ch2_bg : (rel % 2 == 1 ? ft.ch2_row : ft.ch2_spacer);
            for (int p = 0; p <= Pb; ++p) inst.b.vertex(p, t)[1] = v;
        }
    }
    return inst;
}

}  // namespace

GadgetInstance gadget_cc(const CnfFormula& f) { return build(f, GadgetClass::CC); }
GadgetInstance gadget_dd(const CnfFormula& f) { return build(f, GadgetClass::DD); }

MatchingWitness witness_matching(const GadgetInstance& inst, const std::vector<bool>& assignment) {
    if (int(assignment.size()) != inst.formula.n)
        throw std::invalid_argument("witness_matching: assignment length mismatch");
    const GadgetFeatures& ft = inst.features;
    if (ft.m == 0) {
        MatchingWitness w = MatchingWitness::identity();
        w.verify_exact(inst.a, inst.b, inst.norm());
        return w;
    }
    const double fF = 0.70, fs = 0.72, sstar = 0.58, tilt = 1e-11;

    Reparameterization pi;
    pi.breakpoints.push_back({0.0, 0.0});
    pi.breakpoints.push_back({1.0, 1.0});
    for (int i = 1; i <= ft.n; ++i) {
        double av = 2 * i - 1;  // valley left of X_i
        if (assignment[i - 1]) {
            // X_i onto T_i; the rising ramp covers F_i and the separator
            pi.breakpoints.push_back({av + fF, double(4 * i - 2)});
            pi.breakpoints.push_back({av + fs, double(4 * i - 1)});
            pi.breakpoints.push_back({double(2 * i), double(4 * i)});
        } else {
            // X_i onto F_i; the falling ramp covers the separator and T_i
            pi.breakpoints.push_back({double(2 * i), double(4 * i - 2)});
            pi.breakpoints.push_back({2 * i + 1 - fs, double(4 * i - 1)});
            pi.breakpoints.push_back({2 * i + 1 - fF, double(4 * i)});
        }
        pi.breakpoints.push_back({double(2 * i + 1), double(4 * i + 1)});
    }
    pi.validate();

    Reparameterization tau;
    tau.breakpoints.push_back({0.0, 0.0});
    for (int c = 0; c < ft.m; ++c) {
        double a0 = 2 * c, apex = 2 * c + 1, a2 = 2 * c + 2;
        double b0 = 6 * c, b6 = 6 * c + 6;
        int r = inst.formula.satisfied_disjunct(c, assignment);
        if (r < 0) r = 0;
        double R = b0 + 2 * r + 1;
        tau.breakpoints.push_back({a0 + sstar, b0 + 0.5});
        if (R - 0.5 > b0 + 0.5 + 1e-9)
            tau.breakpoints.push_back({a0 + sstar + tilt, R - 0.5});
        tau.breakpoints.push_back({apex, R});
        if (R + 0.5 < b6 - 0.5 - 1e-9) {
            tau.breakpoints.push_back({a2 - sstar - tilt, R + 0.5});
            tau.breakpoints.push_back({a2 - sstar, b6 - 0.5});
        } else {
            tau.breakpoints.push_back({a2 - sstar, R + 0.5});
        }
        tau.breakpoints.push_back({a2, b6});
    }
    tau.validate();

    MatchingWitness w = MatchingWitness::pi_tau(std::move(pi), std::move(tau));
    w.verify_exact(inst.a, inst.b, inst.norm());
    return w;
}

namespace {

void expect(AuditReport& rep, bool ok, const std::string& what) {
    if (!ok) {
        rep.pass = false;
        rep.failures.push_back(what);
    }
}

}  // namespace

AuditReport audit_gaps(const GadgetInstance& inst) {
    AuditReport rep;
    const GadgetFeatures& ft = inst.features;
    if (ft.m == 0) return rep;
    const QuadMesh& a = inst.a;
    const QuadMesh& b = inst.b;

    for (int c = 0; c < ft.m; ++c) {
        int pa = ft.a_peak_row[c];
        for (int k = 0; k < 3; ++k) {
            int rb = ft.b_peak_rows[c][k];
            // the omitted ridge stays a plain ridge: A peaks cannot sit on it
            double apk = a.vertex(ft.a_ridge[0], pa)[0];
            double omit = b.vertex(ft.omitted_col[c][k], rb)[0];
            expect(rep, std::fabs(apk - omit) >= 3.0, "peak vs non-peak ridge gap < 3");
            // matched features pair within 2
            for (int i = 0; i < ft.n; ++i) {
                double bv = b.vertex(ft.b_ridge_f[i], rb)[0];
                if (ft.b_ridge_f[i] != ft.omitted_col[c][k])
                    expect(rep, std::fabs(apk - bv) <= 2.0, "peak vs peak gap > 2");
            }
            // clause pulses stay matched
            expect(rep, std::fabs(a.vertex(ft.a_align, pa)[0] - b.vertex(ft.b_align, rb)[0]) <= 2.0,
                   "pulse vs pulse gap > 2");
            // separator blocks the apex from crossing pairs
            expect(rep, std::fabs(apk - b.vertex(ft.b_sep[0], rb)[0]) >= 3.0,
                   "apex vs separator gap < 3");
            // valleys stay pinned away from in-block separators
            expect(rep,
                   std::fabs(a.vertex(ft.a_valley[0], pa)[0] - b.vertex(ft.b_sep[0], rb)[0]) >= 3.0,
                   "valley vs separator gap < 3");
        }
        // clause misalignment at p = 0: a pulse over background is blocked
        expect(rep, std::fabs(a.vertex(ft.a_align, pa)[0] - b.vertex(ft.b_align, 0)[0]) >= 3.0,
               "pulse vs background gap < 3");
    }
    // background gaps
    double ridge_bg = a.vertex(ft.a_ridge[0], 0)[0];
    expect(rep, std::fabs(ridge_bg - b.vertex(ft.b_sep[0], 0)[0]) == 3.0,
           "ridge vs separator background gap != 3");
    expect(rep, std::fabs(ridge_bg - b.vertex(ft.b_ridge_f[0], 0)[0]) <= 2.0,
           "ridge vs ridge background gap > 2");
    expect(rep, std::fabs(a.vertex(ft.a_valley[0], 0)[0] - b.vertex(ft.b_valley[0], 0)[0]) <= 2.0,
           "valley vs valley gap > 2");
    return rep;
}

}  // namespace fdmc::gadget
