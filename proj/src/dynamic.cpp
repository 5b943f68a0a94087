#include "fdmc/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_set>

#include "fdmc/identity.hpp"

namespace fdmc {

using cellgeom::Arc;
using cellgeom::CellTracks;

namespace {

constexpr double kTGlue = 1e-9;  // closed-overlap slack for t ranges

QuadMesh lift_time(const QuadMesh& m) {
    if (m.T >= 1) return m;
    QuadMesh out(m.P, 1, m.dim);
    for (int p = 0; p <= m.P; ++p) {
        out.vertex(p, 0) = m.vertex(p, 0);
        out.vertex(p, 1) = m.vertex(p, 0);
    }
    return out;
}

void check_pair_dyn(const QuadMesh& a, const QuadMesh& b) {
    a.validate();
    b.validate();
    if (a.dim != b.dim) throw std::invalid_argument("dynamic-matching: dimension mismatch");
    if (a.T != b.T)
        throw std::invalid_argument("dynamic-matching: meshes must share T (align first)");
}

}  // namespace

FreeSpace3D::FreeSpace3D(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm)
    : a_(lift_time(a)), b_(lift_time(b)), eps_(eps), norm_(norm) {
    check_pair_dyn(a, b);
    if (eps < 0) throw std::invalid_argument("FreeSpace3D: negative eps");
    cells_.resize(size_t(a_.P) * b_.P * a_.T);
}

const CellTracks& FreeSpace3D::cell(int cx, int cy, int ct) const {
    if (cx < 0 || cx >= a_.P || cy < 0 || cy >= b_.P || ct < 0 || ct >= a_.T)
        throw std::invalid_argument("FreeSpace3D::cell: index out of range");
    auto& slot = cells_[(size_t(ct) * b_.P + cy) * a_.P + cx];
    if (!slot) {
        slot = std::make_unique<CellTracks>();
        slot->build(a_, b_, cx, cy, ct, eps_, norm_);
    }
    return *slot;
}

CellFeatures cell_features(const FreeSpace3D& fs, int cx, int cy, int ct) {
    const CellTracks& c = fs.cell(cx, cy, ct);
    CellFeatures f;
    f.sides = c.frame.sides;
    f.events = c.events;
    double eps = fs.epsilon();
    NormKind norm = fs.norm();
    f.x_edges = {c.frame.sides[0].interval(0, eps, norm), c.frame.sides[0].interval(1, eps, norm),
                 c.frame.sides[2].interval(0, eps, norm), c.frame.sides[2].interval(1, eps, norm)};
    f.y_edges = {c.frame.sides[3].interval(0, eps, norm), c.frame.sides[3].interval(1, eps, norm),
                 c.frame.sides[1].interval(0, eps, norm), c.frame.sides[1].interval(1, eps, norm)};
    for (int i = 0; i < 4; ++i) f.t_edges[i] = c.frame.tedges[i].interval(eps, norm);
    static const int corner_of[4] = {0, 1, 3, 2};  // (xi + 2*ups) -> tedge index
    for (int theta = 0; theta < 2; ++theta)
        for (int ups = 0; ups < 2; ++ups)
            for (int xi = 0; xi < 2; ++xi) {
                int te = corner_of[xi + 2 * ups];
                f.corner_free[xi + 2 * ups + 4 * theta] =
                    c.frame.tedges[te].value(double(theta), norm) <= eps;
            }
    return f;
}

namespace {

// ---------------------------------------------------------------------------
// exact mode: obstacles from the slice-arc structures
// ---------------------------------------------------------------------------

struct Region {
    const CellTracks* cell;
    Arc arc;
    double theta_local;  // structure-safe evaluation point
    int cx, cy;
};

class ExactObstacles : public ObstacleSet {
public:
    ExactObstacles(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
                   const ConnConfig& conn)
        : fs_(a, b, eps, norm), conn_(conn) {
        P = fs_.P();
        Q = fs_.Q();
        T = fs_.T();
        build_cells();
        build_glue_pairs();
        build_obstacles();
    }

    bool related(int a, int b) const override;

    const FreeSpace3D& freespace() const { return fs_; }

private:
    FreeSpace3D fs_;
    ConnConfig conn_;
    std::vector<const CellTracks*> cells_;   // built eagerly, indexed (ct*Q + cy)*P + cx
    std::vector<int> piece_base_;            // global piece id = base[cell] + local
    std::vector<std::pair<int, int>> glue_;  // global piece id pairs
    std::unordered_set<std::uint64_t> glue_keys_;
    std::vector<std::vector<int>> ob_piece_ids_;  // sorted global ids per obstacle

    int cell_index(int cx, int cy, int ct) const { return (ct * Q + cy) * P + cx; }

    void build_cells() {
        cells_.resize(size_t(P) * Q * T);
        piece_base_.assign(cells_.size() + 1, 0);
        for (int ct = 0; ct < T; ++ct)
            for (int cy = 0; cy < Q; ++cy)
                for (int cx = 0; cx < P; ++cx) {
                    int ci = cell_index(cx, cy, ct);
                    cells_[ci] = &fs_.cell(cx, cy, ct);
                    piece_base_[ci + 1] = cells_[ci]->n_pieces;
                }
        for (size_t i = 1; i < piece_base_.size(); ++i) piece_base_[i] += piece_base_[i - 1];
    }

    void add_glue(int ci, int pa, int cj, int pb) {
        int ga = piece_base_[ci] + pa, gb = piece_base_[cj] + pb;
        if (ga > gb) std::swap(ga, gb);
        std::uint64_t key = (std::uint64_t(std::uint32_t(ga)) << 32) | std::uint32_t(gb);
        if (glue_keys_.insert(key).second) glue_.push_back({ga, gb});
    }

    void build_glue_pairs() {
        double eps = fs_.epsilon();
        NormKind norm = fs_.norm();
        // t-faces
        for (int ct = 0; ct + 1 < T; ++ct)
            for (int cy = 0; cy < Q; ++cy)
                for (int cx = 0; cx < P; ++cx) {
                    const CellTracks& lo = *cells_[cell_index(cx, cy, ct)];
                    const CellTracks& hi = *cells_[cell_index(cx, cy, ct + 1)];
                    int kl = int(lo.arcs.size()) - 1;
                    double dl = std::min(1e-7, (lo.events[kl + 1] - lo.events[kl]) / 8);
                    double dh = std::min(1e-7, (hi.events[1] - hi.events[0]) / 8);
                    auto below = lo.arcs_at(kl, 1.0 - dl, eps, norm);
                    auto above = hi.arcs_at(0, dh, eps, norm);
                    for (size_t i = 0; i < below.size(); ++i)
                        for (size_t j = 0; j < above.size(); ++j)
                            if (below[i].overlap(above[j]) > 1e-9)
                                add_glue(cell_index(cx, cy, ct), lo.piece_at(kl, int(i)),
                                         cell_index(cx, cy, ct + 1), hi.piece_at(0, int(j)));
                }
        // x-faces and y-faces share a side function; glue on side overlap
        auto side_glue = [&](const CellTracks& c1, int s1, int ci1, const CellTracks& c2, int s2,
                             int ci2) {
            std::vector<double> ev;
            ev.insert(ev.end(), c1.events.begin(), c1.events.end());
            ev.insert(ev.end(), c2.events.begin(), c2.events.end());
            std::sort(ev.begin(), ev.end());
            ev.erase(std::unique(ev.begin(), ev.end(),
                                 [](double a, double b) { return std::fabs(a - b) < 1e-11; }),
                     ev.end());
            for (size_t e = 0; e + 1 < ev.size(); ++e) {
                double mid = 0.5 * (ev[e] + ev[e + 1]);
                int k1 = c1.interval_of(mid), k2 = c2.interval_of(mid);
                auto a1 = c1.arcs_at(k1, mid, eps, norm);
                auto a2 = c2.arcs_at(k2, mid, eps, norm);
                for (size_t i = 0; i < a1.size(); ++i) {
                    auto cov1 = a1[i].side_coverage(s1);
                    if (cov1.empty()) continue;
                    for (size_t j = 0; j < a2.size(); ++j) {
                        auto cov2 = a2[j].side_coverage(s2);
                        bool hit = false;
                        for (const Interval& u : cov1)
                            for (const Interval& v : cov2)
                                if (u.intersect(v).length() > 1e-9) hit = true;
                        if (hit)
                            add_glue(ci1, c1.piece_at(k1, int(i)), ci2, c2.piece_at(k2, int(j)));
                    }
                }
            }
        };
        for (int ct = 0; ct < T; ++ct)
            for (int cy = 0; cy < Q; ++cy)
                for (int cx = 0; cx + 1 < P; ++cx)
                    side_glue(*cells_[cell_index(cx, cy, ct)], 1, cell_index(cx, cy, ct),
                              *cells_[cell_index(cx + 1, cy, ct)], 3, cell_index(cx + 1, cy, ct));
        for (int ct = 0; ct < T; ++ct)
            for (int cy = 0; cy + 1 < Q; ++cy)
                for (int cx = 0; cx < P; ++cx)
                    side_glue(*cells_[cell_index(cx, cy, ct)], 2, cell_index(cx, cy, ct),
                              *cells_[cell_index(cx, cy + 1, ct)], 0, cell_index(cx, cy + 1, ct));
    }

    // seed piece containing the grid point in one adjacent cell, via the
    // complement stub of the t-edge through the corner
    int seed_piece(const CellTracks& c, int xi, int ups, int thetac) const {
        static const int corner_of[4] = {0, 1, 3, 2};
        static const double perim[4] = {0.0, 1.0, 3.0, 2.0};  // (xi + 2*ups) -> position
        int te = corner_of[xi + 2 * ups];
        double rho = perim[xi + 2 * ups];
        int k = (thetac == 0) ? 0 : int(c.arcs.size()) - 1;
        for (size_t r = 0; r < c.arcs[k].size(); ++r)
            if (c.arcs[k][r].contains(rho)) return c.piece_at(k, int(r));
        // numerically thin stub: search every interval overlapping the stub
        Interval iv = c.frame.tedges[te].interval(fs_.epsilon(), fs_.norm());
        double lo = (thetac == 0) ? 0.0 : (iv.empty() ? 0.0 : iv.hi);
        double hi = (thetac == 0) ? (iv.empty() ? 1.0 : iv.lo) : 1.0;
        for (size_t kk = 0; kk < c.arcs.size(); ++kk) {
            if (c.events[kk + 1] <= lo || c.events[kk] >= hi) continue;
            for (size_t r = 0; r < c.arcs[kk].size(); ++r)
                if (c.arcs[kk][r].contains(rho)) return c.piece_at(int(kk), int(r));
        }
        return -1;
    }

    void build_obstacles() {
        const QuadMesh& a = fs_.mesh_a();
        const QuadMesh& b = fs_.mesh_b();
        obs_.resize(size_t(P + 1) * (Q + 1) * (T + 1));
        ob_piece_ids_.resize(obs_.size());
        for (int gt = 0; gt <= T; ++gt)
            for (int gy = 0; gy <= Q; ++gy)
                for (int gx = 0; gx <= P; ++gx) {
                    Obstacle& ob = obs_[index(gx, gy, gt)];
                    ob.gx = gx;
                    ob.gy = gy;
                    ob.gt = gt;
                    double d0 = distance(a.vertex(gx, gt), b.vertex(gy, gt), fs_.norm());
                    if (d0 <= fs_.epsilon()) continue;  // dummy
                    ob.dummy = false;
                    assemble(ob);
                }
    }

    void assemble(Obstacle& ob) {
        // block cells and their (cell, piece) nodes
        std::vector<int> block;
        for (int ct : {ob.gt - 1, ob.gt})
            for (int cy : {ob.gy - 1, ob.gy})
                for (int cx : {ob.gx - 1, ob.gx}) {
                    if (cx < 0 || cx >= P || cy < 0 || cy >= Q || ct < 0 || ct >= T) continue;
                    block.push_back(cell_index(cx, cy, ct));
                }
        std::vector<int> nodes;  // global piece ids present in the block
        for (int ci : block)
            for (int p = 0; p < cells_[ci]->n_pieces; ++p) nodes.push_back(piece_base_[ci] + p);
        std::sort(nodes.begin(), nodes.end());
        auto node_pos = [&](int gid) {
            return int(std::lower_bound(nodes.begin(), nodes.end(), gid) - nodes.begin());
        };
        std::vector<int> parent(nodes.size());
        for (size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        std::unordered_set<int> in_block(block.begin(), block.end());
        auto cell_of_gid = [&](int gid) {
            int ci = int(std::upper_bound(piece_base_.begin(), piece_base_.end(), gid) -
                         piece_base_.begin()) -
                     1;
            return ci;
        };
        for (const auto& [ga, gb] : glue_) {
            if (!in_block.count(cell_of_gid(ga)) || !in_block.count(cell_of_gid(gb))) continue;
            int x = find(node_pos(ga)), y = find(node_pos(gb));
            if (x != y) parent[x] = y;
        }
        // seeds: the corner-containing piece of each adjacent cell
        std::vector<int> seeds;
        for (int ci : block) {
            const CellTracks& c = *cells_[ci];
            int xi = ob.gx - c.frame.cx, ups = ob.gy - c.frame.cy, thetac = ob.gt - c.frame.ct;
            int p = seed_piece(c, xi, ups, thetac);
            if (p >= 0) seeds.push_back(piece_base_[ci] + p);
        }
        std::unordered_set<int> roots;
        for (int s : seeds) roots.insert(find(node_pos(s)));
        if (roots.empty()) return;

        ob.tmin = kInf;
        ob.tmax = -kInf;
        auto& ids = ob_piece_ids_[index(ob.gx, ob.gy, ob.gt)];
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (!roots.count(find(int(i)))) continue;
            int gid = nodes[i];
            int ci = cell_of_gid(gid);
            int local = gid - piece_base_[ci];
            const CellTracks& c = *cells_[ci];
            const auto& pi = c.pieces[local];
            ob.pieces.push_back({ci, local});
            ids.push_back(gid);
            ob.tmin = std::min(ob.tmin, c.frame.ct + pi.theta_lo);
            ob.tmax = std::max(ob.tmax, c.frame.ct + pi.theta_hi);
            if (pi.covers_side[3] && c.frame.cx == 0) ob.face_x0 = true;
            if (pi.covers_side[1] && c.frame.cx == P - 1) ob.face_xP = true;
            if (pi.covers_side[0] && c.frame.cy == 0) ob.face_y0 = true;
            if (pi.covers_side[2] && c.frame.cy == Q - 1) ob.face_yQ = true;
        }
        std::sort(ids.begin(), ids.end());
    }

    void regions_at(const Obstacle& ob, double theta, std::vector<Region>& out) const {
        out.clear();
        double eps = fs_.epsilon();
        NormKind norm = fs_.norm();
        for (const auto& [ci, local] : ob.pieces) {
            const CellTracks& c = *cells_[ci];
            const auto& pi = c.pieces[local];
            double tl = theta - c.frame.ct;
            if (tl < pi.theta_lo - kTGlue || tl > pi.theta_hi + kTGlue) continue;
            tl = std::clamp(tl, 0.0, 1.0);
            int k = c.interval_of(tl);
            double w = c.events[k + 1] - c.events[k];
            double safe = std::clamp(tl, c.events[k] + w / 1024, c.events[k + 1] - w / 1024);
            auto arcs = c.arcs_at(k, safe, eps, norm);
            for (size_t r = 0; r < arcs.size(); ++r)
                if (c.piece_at(k, int(r)) == local)
                    out.push_back({&c, arcs[r], safe, c.frame.cx, c.frame.cy});
        }
    }

    // staircase test at a fixed time between the union-of-arcs regions
    bool sweep(const std::vector<Region>& ra, const std::vector<Region>& rb) const;
};

bool ExactObstacles::sweep(const std::vector<Region>& ra, const std::vector<Region>& rb) const {
    double eps = fs_.epsilon();
    NormKind norm = fs_.norm();
    struct Entry {
        double x0, x1;
        bool top;  // top coverage (max/min y at the square's top/bottom rule)
        bool att_lo, att_hi;
        const Region* reg;
    };
    std::vector<Entry> ea, eb;
    std::vector<double> xs;
    auto collect = [&](const std::vector<Region>& regs, std::vector<Entry>& out) {
        for (const Region& r : regs) {
            for (int side : {0, 2}) {
                for (const Arc::Cover& c : r.arc.side_coverage_att(side)) {
                    out.push_back({r.cx + c.iv.lo, r.cx + c.iv.hi, side == 2, c.att_lo, c.att_hi,
                                   &r});
                    xs.push_back(r.cx + c.iv.lo);
                    xs.push_back(r.cx + c.iv.hi);
                }
            }
        }
    };
    collect(ra, ea);
    collect(rb, eb);
    if (ea.empty() || eb.empty()) return false;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
             xs.end());

    // suprema on the free-set boundary are not attained (those points are
    // feasible); square-boundary values are attained by obstacle points,
    // except at coverage endpoints cut by the arc's own free ends
    struct Bound {
        double v;
        bool attained;
    };
    auto positional_att = [](const Entry& e, double x) {
        if (x <= e.x0 + 1e-12) return e.att_lo;
        if (x >= e.x1 - 1e-12) return e.att_hi;
        return true;
    };
    auto maxy_a = [&](const Entry& e, double x) -> Bound {
        bool att = positional_att(e, x);
        if (e.top) return {e.reg->cy + 1.0, att};
        Interval col = e.reg->cell->frame.column_interval(x - e.reg->cx, e.reg->theta_local, eps,
                                                          norm);
        if (col.empty()) return {e.reg->cy + 1.0, att};
        return {e.reg->cy + col.lo, false};
    };
    auto miny_b = [&](const Entry& e, double x) -> Bound {
        bool att = positional_att(e, x);
        if (!e.top) return {double(e.reg->cy), att};
        Interval col = e.reg->cell->frame.column_interval(x - e.reg->cx, e.reg->theta_local, eps,
                                                          norm);
        if (col.empty()) return {double(e.reg->cy), att};
        return {e.reg->cy + col.hi, false};
    };

    Bound runmax{-kInf, false};
    for (double x : xs) {
        for (const Entry& e : ea)
            if (x >= e.x0 - 1e-12 && x <= e.x1 + 1e-12) {
                Bound m = maxy_a(e, std::clamp(x, e.x0, e.x1));
                if (m.v > runmax.v + 1e-12)
                    runmax = m;
                else if (m.v >= runmax.v - 1e-12)
                    runmax.attained = runmax.attained || m.attained;
            }
        if (runmax.v == -kInf) continue;
        for (const Entry& e : eb)
            if (x >= e.x0 - 1e-12 && x <= e.x1 + 1e-12) {
                Bound m = miny_b(e, std::clamp(x, e.x0, e.x1));
                if (runmax.v > m.v + 1e-12) return true;
                if (runmax.v >= m.v - 1e-12 && runmax.attained && m.attained) return true;
            }
    }
    return false;
}

bool ExactObstacles::related(int ia, int ib) const {
    const Obstacle& a = obs_[ia];
    const Obstacle& b = obs_[ib];
    if (a.dummy || b.dummy) return false;

    // touch: shared or glued pieces
    const auto& pa = ob_piece_ids_[ia];
    const auto& pb = ob_piece_ids_[ib];
    {
        size_t i = 0, j = 0;
        while (i < pa.size() && j < pb.size()) {
            if (pa[i] == pb[j]) return true;
            if (pa[i] < pb[j])
                ++i;
            else
                ++j;
        }
        for (int ga : pa)
            for (int gb : pb) {
                int x = std::min(ga, gb), y = std::max(ga, gb);
                std::uint64_t key = (std::uint64_t(std::uint32_t(x)) << 32) | std::uint32_t(y);
                if (glue_keys_.count(key)) return true;
            }
    }

    double wlo = std::max(a.tmin, b.tmin), whi = std::min(a.tmax, b.tmax);
    if (wlo > whi + kTGlue) return false;

    // classify member-square pairs
    bool need_geometry = false;
    for (const auto& [cia, pla] : a.pieces) {
        const CellTracks& ca = *cells_[cia];
        const auto& ia_pi = ca.pieces[pla];
        for (const auto& [cib, plb] : b.pieces) {
            const CellTracks& cb = *cells_[cib];
            const auto& ib_pi = cb.pieces[plb];
            double plo = std::max(ca.frame.ct + ia_pi.theta_lo, cb.frame.ct + ib_pi.theta_lo);
            double phi = std::min(ca.frame.ct + ia_pi.theta_hi, cb.frame.ct + ib_pi.theta_hi);
            if (plo > phi + kTGlue) continue;
            int ax = ca.frame.cx, ay = ca.frame.cy;
            int bx = cb.frame.cx, by = cb.frame.cy;
            if (ax + 1 <= bx && ay >= by + 1) return true;  // spatially free
            if (ax > bx + 1 || ay + 1 < by) continue;       // spatially impossible
            need_geometry = true;
        }
    }
    if (!need_geometry) return false;

    // sampled times: window endpoints, cell events inside, midpoints, extras
    std::vector<double> ts{wlo, whi};
    auto push_events = [&](const Obstacle& ob) {
        for (const auto& [ci, local] : ob.pieces) {
            (void)local;
            const CellTracks& c = *cells_[ci];
            for (double e : c.events) {
                double g = c.frame.ct + e;
                if (g > wlo + 1e-12 && g < whi - 1e-12) ts.push_back(g);
            }
        }
    };
    push_events(a);
    push_events(b);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](double x, double y) { return std::fabs(x - y) < 1e-12; }),
             ts.end());
    std::vector<double> samples = ts;
    int extra = std::max(conn_.extra_samples, 1);
    for (size_t i = 0; i + 1 < ts.size(); ++i)
        for (int j = 1; j <= extra; ++j)
            samples.push_back(ts[i] + (ts[i + 1] - ts[i]) * j / double(extra + 1));
    std::sort(samples.begin(), samples.end());

    std::vector<Region> ra, rb;
    for (double t : samples) {
        regions_at(a, t, ra);
        regions_at(b, t, rb);
        if (sweep(ra, rb)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// sampled mode: obstacles from a feasibility lattice (fallback path)
// ---------------------------------------------------------------------------

class SampledObstacles : public ObstacleSet {
public:
    SampledObstacles(const QuadMesh& a_in, const QuadMesh& b_in, double eps, NormKind norm,
                     const ConnConfig& conn)
        : res_(std::max(conn.resolution, 2)) {
        QuadMesh a = lift_time(a_in), b = lift_time(b_in);
        check_pair_dyn(a, b);
        if (eps < 0) throw std::invalid_argument("extract_obstacles: negative eps");
        P = a.P;
        Q = b.P;
        T = a.T;
        nx_ = P * res_;
        ny_ = Q * res_;
        nt_ = T * res_;
        bad_.assign(size_t(nx_ + 1) * (ny_ + 1) * (nt_ + 1), 0);
        Vec va(a.dim), vb(b.dim);
        for (int k = 0; k <= nt_; ++k) {
            double t = double(k) / res_;
            for (int j = 0; j <= ny_; ++j) {
                eval_mesh_into(b, double(j) / res_, t, vb.data());
                for (int i = 0; i <= nx_; ++i) {
                    eval_mesh_into(a, double(i) / res_, t, va.data());
                    bad_[lidx(i, j, k)] = distance(va, vb, norm) > eps ? 1 : 0;
                }
            }
        }
        obs_.resize(size_t(P + 1) * (Q + 1) * (T + 1));
        profiles_.resize(obs_.size());
        for (int gt = 0; gt <= T; ++gt)
            for (int gy = 0; gy <= Q; ++gy)
                for (int gx = 0; gx <= P; ++gx) assemble(gx, gy, gt);
    }

    bool related(int a, int b) const override {
        const Obstacle& oa = obs_[a];
        const Obstacle& ob = obs_[b];
        if (oa.dummy || ob.dummy) return false;
        const Prof& qa = profiles_[a];
        const Prof& qb = profiles_[b];
        int klo = std::max(qa.t_lo, qb.t_lo), khi = std::min(qa.t_hi, qb.t_hi);
        for (int k = klo; k <= khi; ++k) {
            const int* mxa = qa.maxy.data() + size_t(k - qa.t_lo) * (nx_ + 1);
            const int* mnb = qb.miny.data() + size_t(k - qb.t_lo) * (nx_ + 1);
            int run = -1;
            for (int i = 0; i <= nx_; ++i) {
                if (mxa[i] > run) run = mxa[i];
                if (run >= 0 && mnb[i] <= ny_ && mnb[i] <= run) return true;
            }
        }
        return false;
    }

private:
    int res_, nx_ = 0, ny_ = 0, nt_ = 0;
    std::vector<char> bad_;
    struct Prof {
        int t_lo = 0, t_hi = -1;
        std::vector<int> maxy, miny;  // (t_hi - t_lo + 1) x (nx + 1)
    };
    std::vector<Prof> profiles_;

    size_t lidx(int i, int j, int k) const { return (size_t(k) * (ny_ + 1) + j) * (nx_ + 1) + i; }

    void assemble(int gx, int gy, int gt) {
        Obstacle& ob = obs_[index(gx, gy, gt)];
        ob.gx = gx;
        ob.gy = gy;
        ob.gt = gt;
        int ci = gx * res_, cj = gy * res_, ck = gt * res_;
        if (!bad_[lidx(ci, cj, ck)]) return;
        ob.dummy = false;
        int ilo = std::max(0, (gx - 1) * res_), ihi = std::min(nx_, (gx + 1) * res_);
        int jlo = std::max(0, (gy - 1) * res_), jhi = std::min(ny_, (gy + 1) * res_);
        int klo = std::max(0, (gt - 1) * res_), khi = std::min(nt_, (gt + 1) * res_);
        int bw = ihi - ilo + 1, bh = jhi - jlo + 1, bd = khi - klo + 1;
        auto bidx = [&](int i, int j, int k) {
            return (size_t(k - klo) * bh + (j - jlo)) * bw + (i - ilo);
        };
        std::vector<int> parent(size_t(bw) * bh * bd);
        for (size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        auto unite = [&](size_t x, size_t y) { parent[find(int(x))] = find(int(y)); };
        for (int k = klo; k <= khi; ++k)
            for (int j = jlo; j <= jhi; ++j)
                for (int i = ilo; i <= ihi; ++i) {
                    if (!bad_[lidx(i, j, k)]) continue;
                    if (i > ilo && bad_[lidx(i - 1, j, k)]) unite(bidx(i, j, k), bidx(i - 1, j, k));
                    if (j > jlo && bad_[lidx(i, j - 1, k)]) unite(bidx(i, j, k), bidx(i, j - 1, k));
                    if (k > klo && bad_[lidx(i, j, k - 1)]) unite(bidx(i, j, k), bidx(i, j, k - 1));
                }
        int root = find(int(bidx(ci, cj, ck)));
        Prof& pr = profiles_[index(gx, gy, gt)];
        pr.t_lo = khi;
        pr.t_hi = klo;
        for (int k = klo; k <= khi; ++k)
            for (int j = jlo; j <= jhi; ++j)
                for (int i = ilo; i <= ihi; ++i)
                    if (bad_[lidx(i, j, k)] && find(int(bidx(i, j, k))) == root) {
                        pr.t_lo = std::min(pr.t_lo, k);
                        pr.t_hi = std::max(pr.t_hi, k);
                    }
        pr.maxy.assign(size_t(pr.t_hi - pr.t_lo + 1) * (nx_ + 1), -1);
        pr.miny.assign(size_t(pr.t_hi - pr.t_lo + 1) * (nx_ + 1), ny_ + 1);
        for (int k = klo; k <= khi; ++k)
            for (int j = jlo; j <= jhi; ++j)
                for (int i = ilo; i <= ihi; ++i)
                    if (bad_[lidx(i, j, k)] && find(int(bidx(i, j, k))) == root) {
                        int& mx = pr.maxy[size_t(k - pr.t_lo) * (nx_ + 1) + i];
                        int& mn = pr.miny[size_t(k - pr.t_lo) * (nx_ + 1) + i];
                        mx = std::max(mx, j);
                        mn = std::min(mn, j);
                        if (j == 0) ob.face_y0 = true;
                        if (j == ny_) ob.face_yQ = true;
                        if (i == 0) ob.face_x0 = true;
                        if (i == nx_) ob.face_xP = true;
                    }
        ob.tmin = double(pr.t_lo) / res_;
        ob.tmax = double(pr.t_hi) / res_;
    }
};

}  // namespace

std::unique_ptr<ObstacleSet> extract_obstacles(const QuadMesh& a, const QuadMesh& b, double eps,
                                               NormKind norm, const ConnConfig& conn) {
    if (conn.kind == ConnConfig::Kind::Exact)
        return std::make_unique<ExactObstacles>(a, b, eps, norm, conn);
    return std::make_unique<SampledObstacles>(a, b, eps, norm, conn);
}

bool ObstacleGraph::d_reaches_u() const {
    std::vector<char> seen(out.size(), 0);
    std::vector<int> stack{d_node};
    seen[d_node] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == u_node) return true;
        for (int w : out[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return false;
}

namespace {

void add_boundary_edges(const ObstacleSet& s, ObstacleGraph& g) {
    for (int i = 0; i < g.n; ++i) {
        const Obstacle& ob = s.all()[i];
        if (ob.dummy) continue;
        if (ob.touches_d()) {
            g.out[g.d_node].push_back(i);
            ++g.stats.edges_boundary;
        }
        if (ob.touches_u()) {
            g.out[i].push_back(g.u_node);
            ++g.stats.edges_boundary;
        }
    }
}

}  // namespace

ObstacleGraph relation_R(const ObstacleSet& s) {
    ObstacleGraph g;
    g.mode = ObstacleGraph::Mode::FullR;
    g.n = int(s.all().size());
    g.d_node = g.n;
    g.u_node = g.n + 1;
    g.out.assign(g.n + 2, {});
    add_boundary_edges(s, g);
    for (int i = 0; i < g.n; ++i) {
        const Obstacle& a = s.all()[i];
        if (a.dummy) continue;
        for (int j = 0; j < g.n; ++j) {
            if (j == i) continue;
            const Obstacle& b = s.all()[j];
            if (b.dummy) continue;
            if (std::abs(a.gt - b.gt) > 2) continue;
            if (a.tmin > b.tmax + kTGlue || b.tmin > a.tmax + kTGlue) continue;
            if (s.related(i, j)) {
                g.out[i].push_back(j);
                ++g.stats.edges_geometry;
            }
        }
    }
    return g;
}

ObstacleGraph reduced_edges_E(const ObstacleSet& s) {
    ObstacleGraph g;
    g.mode = ObstacleGraph::Mode::ReducedE;
    g.n = int(s.all().size());
    g.d_node = g.n;
    g.u_node = g.n + 1;
    g.out.assign(g.n + 2, {});
    add_boundary_edges(s, g);
    const int P = s.P, Q = s.Q, T = s.T;

    // exhaustively test pairs that may need geometry: column/row bands around a
    for (int i = 0; i < g.n; ++i) {
        const Obstacle& a = s.all()[i];
        if (a.dummy) continue;
        for (int j = 0; j < g.n; ++j) {
            if (j == i) continue;
            const Obstacle& b = s.all()[j];
            if (b.dummy) continue;
            int dx = b.gx - a.gx, dy = b.gy - a.gy, dt = b.gt - a.gt;
            if (std::abs(dt) > 2) continue;
            bool band = (dx >= -2 && dx <= 1) || (dy >= -1 && dy <= 2);
            if (!band) continue;
            if (a.tmin > b.tmax + kTGlue || b.tmin > a.tmax + kTGlue) continue;
            if (s.related(i, j)) {
                g.out[i].push_back(j);
                ++g.stats.edges_geometry;
            }
        }
    }

    // E0 grid edges (through dummies)
    for (int gt = 0; gt <= T; ++gt)
        for (int gy = 0; gy <= Q; ++gy)
            for (int gx = 0; gx <= P; ++gx) {
                int id = s.index(gx, gy, gt);
                if (gx + 1 <= P) {
                    g.out[id].push_back(s.index(gx + 1, gy, gt));
                    ++g.stats.edges_grid;
                }
                if (gy - 1 >= 0) {
                    g.out[id].push_back(s.index(gx, gy - 1, gt));
                    ++g.stats.edges_grid;
                }
            }

    // Pareto-frontier edges for i >= 2 and j >= 2, per time offset k != 0:
    // rows of the matrices run in the -y direction so upper-left dominance in
    // matrix space matches the E0-reachable quadrant
    std::vector<std::vector<std::vector<double>>> lo_vals(T + 1), hi_neg_vals(T + 1);
    for (int tau = 0; tau <= T; ++tau) {
        lo_vals[tau].assign(Q + 1, std::vector<double>(P + 1, kInf));
        hi_neg_vals[tau].assign(Q + 1, std::vector<double>(P + 1, kInf));
        for (int gy = 0; gy <= Q; ++gy)
            for (int gx = 0; gx <= P; ++gx) {
                const Obstacle& ob = s.all()[s.index(gx, gy, tau)];
                if (ob.dummy) continue;
                lo_vals[tau][Q - gy][gx] = ob.tmin;
                hi_neg_vals[tau][Q - gy][gx] = -ob.tmax;
            }
    }
    std::vector<ThresholdMatrix> lo_idx, hi_idx;
    lo_idx.reserve(T + 1);
    hi_idx.reserve(T + 1);
    for (int tau = 0; tau <= T; ++tau) {
        lo_idx.emplace_back(lo_vals[tau]);
        hi_idx.emplace_back(hi_neg_vals[tau]);
    }
    for (int i = 0; i < g.n; ++i) {
        const Obstacle& a = s.all()[i];
        if (a.dummy) continue;
        if (a.gx + 2 > P || a.gy - 2 < 0) continue;
        for (int k : {-2, -1, 1, 2}) {
            int tau = a.gt + k;
            if (tau < 0 || tau > T) continue;
            const ThresholdMatrix& m = (k > 0) ? lo_idx[tau] : hi_idx[tau];
            double thr = (k > 0) ? a.tmax + kTGlue : -(a.tmin - kTGlue);
            auto res = m.pareto_frontier({a.gx + 2, Q - (a.gy - 2), P, Q, thr});
            g.stats.leftmost_queries += m.leftmost_queries;
            g.stats.frontier_queries += m.frontier_queries;
            m.leftmost_queries = 0;
            m.frontier_queries = 0;
            for (auto [col, row] : res.points) {
                g.out[i].push_back(s.index(col, Q - row, tau));
                ++g.stats.edges_pareto;
            }
        }
    }
    return g;
}

bool decide_id(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm, GraphMode mode,
               const ConnConfig& conn) {
    if (eps < 0) throw std::invalid_argument("decide_id: negative eps");
    auto obs = extract_obstacles(a, b, eps, norm, conn);
    ObstacleGraph g =
        (mode == GraphMode::FullR) ? relation_R(*obs) : reduced_edges_E(*obs);
    return !g.d_reaches_u();
}

double compute_id(const QuadMesh& a, const QuadMesh& b, NormKind norm, double tol, GraphMode mode,
                  const ConnConfig& conn) {
    check_pair_dyn(a, b);
    if (tol <= 0) throw std::invalid_argument("compute_id: tol must be positive");
    double lo = 0;
    for (int t = 0; t <= a.T; ++t) {
        lo = std::max(lo, distance(a.vertex(0, t), b.vertex(0, t), norm));
        lo = std::max(lo, distance(a.vertex(a.P, t), b.vertex(b.P, t), norm));
    }
    if (decide_id(a, b, lo, norm, mode, conn)) return lo;
    double hi = std::max(
        lo, frechet_pl(a, b, Reparameterization::linear(a.P, b.P),
                       Reparameterization::identity(a.T), norm));
    int expand = 0;
    while (!decide_id(a, b, hi, norm, mode, conn)) {
        hi = (hi == 0) ? 1.0 : hi * 2.0;
        if (++expand > 60) throw NumericError("compute_id: no acceptance bracket", lo, hi);
    }
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (decide_id(a, b, mid, norm, mode, conn))
            hi = mid;
        else
            lo = mid;
    }
    if (hi - lo > tol) throw NumericError("compute_id: bisection did not converge", lo, hi);
    return hi;
}

}  // namespace fdmc
