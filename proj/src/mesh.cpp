#include "fdmc/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace fdmc {

QuadMesh::QuadMesh(int P_, int T_, int dim_) : P(P_), T(T_), dim(dim_) {
    if (P < 1 || T < 0 || dim < 1) throw std::invalid_argument("QuadMesh: bad dimensions");
    verts.assign(size_t(P + 1) * (T + 1), Point(dim, 0.0));
}

void QuadMesh::validate() const {
    if (P < 1 || T < 0 || dim < 1) throw std::invalid_argument("QuadMesh: bad dimensions");
    if (verts.size() != size_t(P + 1) * (T + 1))
        throw std::invalid_argument("QuadMesh: vertex count mismatch");
    for (const Point& v : verts) {
        if (int(v.size()) != dim) throw std::invalid_argument("QuadMesh: point dimension mismatch");
        for (double x : v)
            if (!std::isfinite(x)) throw std::invalid_argument("QuadMesh: non-finite coordinate");
    }
}

void eval_mesh_into(const QuadMesh& m, double p, double t, double* out) {
    if (p < 0 || p > m.P || t < 0 || t > m.T)
        throw std::domain_error("eval_mesh: parameters outside [0,P]x[0,T]");
    int i = std::min(int(std::floor(p)), m.P - 1);
    int j = std::min(int(std::floor(t)), std::max(m.T - 1, 0));
    double u = p - i;
    double v = (m.T == 0) ? 0.0 : t - j;
    const Point& c00 = m.vertex(i, j);
    const Point& c10 = m.vertex(i + 1, j);
    const Point& c01 = m.vertex(i, std::min(j + 1, m.T));
    const Point& c11 = m.vertex(i + 1, std::min(j + 1, m.T));
    for (int d = 0; d < m.dim; ++d) {
        out[d] = (1 - u) * (1 - v) * c00[d] + u * (1 - v) * c10[d] + (1 - u) * v * c01[d] +
                 u * v * c11[d];
    }
}

Point eval_mesh(const QuadMesh& m, double p, double t) {
    Point out(m.dim);
    eval_mesh_into(m, p, t, out.data());
    return out;
}

Reparameterization Reparameterization::identity(double length) {
    Reparameterization r;
    r.breakpoints = {{0.0, 0.0}};
    if (length > 0) r.breakpoints.push_back({length, length});
    return r;
}

Reparameterization Reparameterization::linear(double in_len, double out_len) {
    Reparameterization r;
    r.breakpoints = {{0.0, 0.0}};
    if (in_len > 0) r.breakpoints.push_back({in_len, out_len});
    return r;
}

void Reparameterization::validate() const {
    if (breakpoints.empty()) throw std::invalid_argument("Reparameterization: no breakpoints");
    if (breakpoints.front().first != 0.0 || breakpoints.front().second != 0.0)
        throw std::invalid_argument("Reparameterization: must start at (0,0)");
    for (size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i].first > breakpoints[i - 1].first))
            throw std::invalid_argument("Reparameterization: inputs must strictly increase");
        if (breakpoints[i].second < breakpoints[i - 1].second)
            throw std::invalid_argument("Reparameterization: outputs must be nondecreasing");
    }
}

double Reparameterization::operator()(double x) const {
    const auto& b = breakpoints;
    if (x <= b.front().first) return b.front().second;
    if (x >= b.back().first) return b.back().second;
    auto it = std::upper_bound(b.begin(), b.end(), x,
                               [](double v, const auto& bp) { return v < bp.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    double u = (x - lo.first) / (hi.first - lo.first);
    return lo.second + u * (hi.second - lo.second);
}

double Reparameterization::invert(double y) const {
    const auto& b = breakpoints;
    if (y <= b.front().second) return b.front().first;
    if (y >= b.back().second) {
        // leftmost preimage of the final value
        size_t i = b.size() - 1;
        while (i > 0 && b[i - 1].second >= b.back().second) --i;
        return y > b.back().second ? b.back().first : b[i].first;
    }
    for (size_t i = 1; i < b.size(); ++i) {
        if (b[i].second >= y) {
            if (b[i - 1].second == b[i].second) continue;  // flat below y
            double u = (y - b[i - 1].second) / (b[i].second - b[i - 1].second);
            return b[i - 1].first + u * (b[i].first - b[i - 1].first);
        }
    }
    return b.back().first;
}

Reparameterization Reparameterization::after(const Reparameterization& g) const {
    validate();
    g.validate();
    if (std::fabs(g.codomain_end() - domain_end()) > kEta)
        throw std::invalid_argument("compose: domain/codomain mismatch");
    std::vector<double> xs;
    for (const auto& bp : g.breakpoints) xs.push_back(bp.first);
    for (const auto& bp : breakpoints) xs.push_back(g.invert(bp.first));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) { return std::fabs(a - b) < 1e-15; }),
             xs.end());
    Reparameterization r;
    for (double x : xs) r.breakpoints.push_back({x, (*this)(g(x))});
    r.breakpoints.front() = {0.0, 0.0};
    r.validate();
    return r;
}

namespace {

// sorted union of {0..segments} and cuts; validates cut preconditions
std::vector<double> axis_coords(int segments, const std::vector<double>& cuts) {
    for (size_t i = 0; i < cuts.size(); ++i) {
        if (cuts[i] <= 0.0 || cuts[i] >= segments)
            throw std::invalid_argument("subdivide: cut outside open domain");
        if (i > 0 && cuts[i] <= cuts[i - 1])
            throw std::invalid_argument("subdivide: cuts must be sorted and duplicate-free");
        if (std::floor(cuts[i]) == cuts[i])
            continue;  // integer cut coincides with an existing grid line; handled by union
    }
    std::vector<double> xs;
    for (int i = 0; i <= segments; ++i) xs.push_back(double(i));
    xs.insert(xs.end(), cuts.begin(), cuts.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

Reparameterization subdivision_map(int segments, const std::vector<double>& cuts) {
    auto xs = axis_coords(segments, cuts);
    Reparameterization r;
    for (size_t i = 0; i < xs.size(); ++i) r.breakpoints.push_back({double(i), xs[i]});
    if (r.breakpoints.size() == 1) r.breakpoints.push_back({1.0, xs[0]});
    return r;
}

QuadMesh subdivide(const QuadMesh& m, const std::vector<double>& p_cuts,
                   const std::vector<double>& t_cuts) {
    m.validate();
    auto ps = axis_coords(m.P, p_cuts);
    auto ts = (m.T == 0) ? std::vector<double>{0.0} : axis_coords(m.T, t_cuts);
    if (m.T == 0 && !t_cuts.empty()) throw std::invalid_argument("subdivide: t cuts on T=0 mesh");
    QuadMesh out(int(ps.size()) - 1, int(ts.size()) - 1, m.dim);
    for (size_t j = 0; j < ts.size(); ++j)
        for (size_t i = 0; i < ps.size(); ++i)
            out.vertex(int(i), int(j)) = eval_mesh(m, ps[i], ts[j]);
    return out;
}

namespace {

// Event coordinates along one axis of A for aligning against B through map f:
// A's integer grid, f's breakpoints, and the preimages of B's integer grid.
std::vector<double> align_events(int seg_a, int seg_b, const Reparameterization& f) {
    std::vector<double> xs;
    for (int i = 0; i <= seg_a; ++i) xs.push_back(double(i));
    for (const auto& bp : f.breakpoints) {
        if (bp.first > 0 && bp.first < seg_a) xs.push_back(bp.first);
    }
    // per linear piece, preimages of integer outputs
    for (size_t i = 1; i < f.breakpoints.size(); ++i) {
        auto [x0, y0] = f.breakpoints[i - 1];
        auto [x1, y1] = f.breakpoints[i];
        if (y1 == y0) continue;
        int lo = int(std::ceil(y0)), hi = int(std::floor(y1));
        for (int y = lo; y <= hi; ++y) {
            if (y < 0 || y > seg_b) continue;
            double x = x0 + (double(y) - y0) * (x1 - x0) / (y1 - y0);
            if (x > 0 && x < seg_a) xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
             xs.end());
    return xs;
}

}  // namespace

AlignedPair align_meshes(const QuadMesh& a, const QuadMesh& b, const Reparameterization& pi,
                         const Reparameterization& tau) {
    a.validate();
    b.validate();
    pi.validate();
    tau.validate();
    if (a.dim != b.dim) throw std::invalid_argument("align_meshes: dimension mismatch");
    if (std::fabs(pi.domain_end() - a.P) > kEta || std::fabs(pi.codomain_end() - b.P) > kEta)
        throw std::invalid_argument("align_meshes: pi must map [0,Pa] onto [0,Pb]");
    if (a.T == 0 || b.T == 0) {
        if (!(a.T == 0 && b.T == 0) &&
            !(std::fabs(tau.domain_end() - a.T) <= kEta && std::fabs(tau.codomain_end() - b.T) <= kEta))
            throw std::invalid_argument("align_meshes: tau must map [0,Ta] onto [0,Tb]");
    } else if (std::fabs(tau.domain_end() - a.T) > kEta || std::fabs(tau.codomain_end() - b.T) > kEta) {
        throw std::invalid_argument("align_meshes: tau must map [0,Ta] onto [0,Tb]");
    }

    AlignedPair out;
    out.p_events = align_events(a.P, b.P, pi);
    out.t_events = (a.T == 0) ? std::vector<double>{0.0} : align_events(a.T, b.T, tau);

    int np = int(out.p_events.size()) - 1;
    int nt = std::max(int(out.t_events.size()) - 1, 0);
    out.a = QuadMesh(np, nt, a.dim);
    out.b = QuadMesh(np, nt, a.dim);
    for (size_t j = 0; j < out.t_events.size(); ++j) {
        double t = out.t_events[j];
        double tb = std::min(std::max(tau(t), 0.0), double(b.T));
        for (size_t i = 0; i < out.p_events.size(); ++i) {
            double p = out.p_events[i];
            double pb = std::min(std::max(pi(p), 0.0), double(b.P));
            out.a.vertex(int(i), int(j)) = eval_mesh(a, p, t);
            out.b.vertex(int(i), int(j)) = eval_mesh(b, pb, tb);
        }
    }
    return out;
}

}  // namespace fdmc
