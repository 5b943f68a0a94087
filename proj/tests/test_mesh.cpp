#include <doctest.h>

#include <random>

#include "fdmc/geometry.hpp"
#include "fdmc/mesh.hpp"
#include "fdmc/mesh_io.hpp"
#include "test_support.hpp"

using namespace fdmc;
using namespace fdmc::testsupport;

namespace {

QuadMesh single_quad() {
    // corners v(0,0)=0, v(1,0)=2, v(0,1)=4, v(1,1)=6
    return mesh1d({{0, 2}, {4, 6}});
}

}  // namespace

TEST_CASE("eval_mesh: bilinear midpoint and nodes") {
    QuadMesh m = single_quad();
    CHECK(eval_mesh(m, 0.5, 0.5)[0] == doctest::Approx(3.0));
    CHECK(eval_mesh(m, 0, 0)[0] == 0.0);
    CHECK(eval_mesh(m, 1, 0)[0] == 2.0);
    CHECK(eval_mesh(m, 0, 1)[0] == 4.0);
    CHECK(eval_mesh(m, 1, 1)[0] == 6.0);
    CHECK(eval_mesh(m, 0.25, 0)[0] == doctest::Approx(0.5));
    CHECK_THROWS_AS(eval_mesh(m, -0.1, 0), std::domain_error);
    CHECK_THROWS_AS(eval_mesh(m, 0, 1.5), std::domain_error);
}

TEST_CASE("eval_mesh lies in the convex hull of the cell corners") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ud(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        QuadMesh m = random_mesh(rng, 3, 2, 2);
        for (int s = 0; s < 50; ++s) {
            double p = ud(rng) * m.P, t = ud(rng) * m.T;
            int i = std::min(int(p), m.P - 1), j = std::min(int(t), m.T - 1);
            Point v = eval_mesh(m, p, t);
            // componentwise bounding box of the four corners contains the value
            for (int d = 0; d < 2; ++d) {
                double lo = kInf, hi = -kInf;
                for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
                    lo = std::min(lo, m.vertex(i + di, j + dj)[d]);
                    hi = std::max(hi, m.vertex(i + di, j + dj)[d]);
                }
                CHECK(v[d] >= lo - 1e-12);
                CHECK(v[d] <= hi + 1e-12);
            }
        }
    }
}

TEST_CASE("norm axioms on random vectors") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ud(-5, 5);
    for (NormKind k : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
        for (int trial = 0; trial < 200; ++trial) {
            Vec a(3), b(3);
            for (int d = 0; d < 3; ++d) {
                a[d] = ud(rng);
                b[d] = ud(rng);
            }
            CHECK(norm_value(a, k) >= 0.0);
            CHECK(distance(a, b, k) == doctest::Approx(distance(b, a, k)));
            CHECK(norm_value(add(a, b), k) <= norm_value(a, k) + norm_value(b, k) + 1e-12);
            double lambda = ud(rng);
            Vec la(3);
            for (int d = 0; d < 3; ++d) la[d] = lambda * a[d];
            CHECK(norm_value(la, k) == doctest::Approx(std::fabs(lambda) * norm_value(a, k)));
        }
    }
}

TEST_CASE("subdivide: no cuts is the identity") {
    QuadMesh m = single_quad();
    QuadMesh s = subdivide(m, {}, {});
    CHECK(s.P == m.P);
    CHECK(s.T == m.T);
    CHECK(s.verts == m.verts);
}

TEST_CASE("subdivide preserves the surface through the coordinate map") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ud(0, 1);

    QuadMesh m = single_quad();
    QuadMesh s = subdivide(m, {0.5}, {});
    CHECK(s.P == 2);
    CHECK(s.T == 1);
    Reparameterization pmap = subdivision_map(m.P, {0.5});
    for (int i = 0; i < 100; ++i) {
        double p = ud(rng) * s.P, t = ud(rng);
        double d = std::fabs(eval_mesh(s, p, t)[0] - eval_mesh(m, pmap(p), t)[0]);
        CHECK(d <= 1e-12);
    }

    QuadMesh r = random_mesh(rng, 3, 2, 2);
    std::vector<double> pc{0.25, 1.5, 2.875}, tc{0.125, 1.75};
    QuadMesh rs = subdivide(r, pc, tc);
    Reparameterization pm = subdivision_map(r.P, pc), tm = subdivision_map(r.T, tc);
    for (int i = 0; i < 200; ++i) {
        double p = ud(rng) * rs.P, t = ud(rng) * rs.T;
        Point v = eval_mesh(rs, p, t);
        Point w = eval_mesh(r, pm(p), tm(t));
        CHECK(distance(v, w, NormKind::Linf) <= 1e-12);
    }

    CHECK_THROWS_AS(subdivide(r, {1.5, 0.25}, {}), std::invalid_argument);
    CHECK_THROWS_AS(subdivide(r, {0.25, 0.25}, {}), std::invalid_argument);
    CHECK_THROWS_AS(subdivide(r, {3.5}, {}), std::invalid_argument);
}

TEST_CASE("reparameterization basics") {
    Reparameterization r;
    r.breakpoints = {{0, 0}, {1.5, 2.5}, {4, 4}};
    r.validate();
    CHECK(r(0) == 0.0);
    CHECK(r(1.5) == doctest::Approx(2.5));
    CHECK(r(0.75) == doctest::Approx(1.25));
    CHECK(r(4) == 4.0);
    CHECK(r.invert(2.5) == doctest::Approx(1.5));

    Reparameterization flat;
    flat.breakpoints = {{0, 0}, {1, 2}, {2, 2}, {3, 4}};
    flat.validate();
    CHECK(flat.invert(2.0) == doctest::Approx(1.0));  // left endpoint of the flat run

    Reparameterization bad;
    bad.breakpoints = {{0, 0}, {1, 2}, {1, 3}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    Reparameterization bad2;
    bad2.breakpoints = {{0, 0}, {1, 2}, {2, 1}};
    CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_CASE("align_meshes: identity maps leave equal-size meshes unchanged") {
    std::mt19937 rng(17);
    QuadMesh a = random_mesh(rng, 3, 2, 2);
    QuadMesh b = random_mesh(rng, 3, 2, 2);
    AlignedPair ap = align_meshes(a, b, Reparameterization::identity(3),
                                  Reparameterization::identity(2));
    CHECK(ap.a.verts == a.verts);
    CHECK(ap.b.verts == b.verts);
}

TEST_CASE("align_meshes: Fig-4 style tau produces the pulled-back time axis") {
    std::mt19937 rng(19);
    QuadMesh a = random_mesh(rng, 2, 4, 1);
    QuadMesh b = random_mesh(rng, 2, 4, 1);
    Reparameterization tau;
    tau.breakpoints = {{0, 0}, {1.5, 2.5}, {4, 4}};
    AlignedPair ap = align_meshes(a, b, Reparameterization::identity(2), tau);
    // union of A's integer timestamps, tau's breakpoints, and preimages of
    // B's integer timestamps
    std::vector<double> expect{0, 0.6, 1, 1.2, 1.5, 2, 1.5 + 0.5 / 0.6, 3, 4};
    std::sort(expect.begin(), expect.end());
    REQUIRE(ap.t_events.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i)
        CHECK(ap.t_events[i] == doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("align_meshes: pointwise correspondence for random monotone maps") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ud(0, 1);
    for (int trial = 0; trial < 5; ++trial) {
        QuadMesh a = random_mesh(rng, 3, 2, 2);
        QuadMesh b = random_mesh(rng, 4, 3, 2);
        Reparameterization pi = random_monotone_map(rng, 3, 4, 3);
        Reparameterization tau = random_monotone_map(rng, 2, 3, 2);
        AlignedPair ap = align_meshes(a, b, pi, tau);
        Reparameterization pm = ap.a.P > 0 ? Reparameterization() : Reparameterization();
        // coordinate maps: event index -> original A coordinate
        for (int s = 0; s < 200; ++s) {
            double ui = ud(rng) * ap.a.P, vj = ud(rng) * ap.a.T;
            int i = std::min(int(ui), ap.a.P - 1);
            int j = std::min(int(vj), std::max(ap.a.T - 1, 0));
            double pa = ap.p_events[i] + (ui - i) * (ap.p_events[i + 1] - ap.p_events[i]);
            double ta = ap.t_events[j] + (vj - j) * (ap.t_events[j + 1] - ap.t_events[j]);
            Point va = eval_mesh(ap.a, ui, vj);
            Point vb = eval_mesh(ap.b, ui, vj);
            CHECK(distance(va, eval_mesh(a, pa, ta), NormKind::Linf) <= 1e-9);
            CHECK(distance(vb, eval_mesh(b, pi(pa), tau(ta)), NormKind::Linf) <= 1e-9);
        }
    }
}

TEST_CASE("align_meshes rejects mismatched maps") {
    std::mt19937 rng(29);
    QuadMesh a = random_mesh(rng, 3, 2, 2);
    QuadMesh b = random_mesh(rng, 4, 2, 2);
    CHECK_THROWS_AS(align_meshes(a, b, Reparameterization::identity(3),
                                 Reparameterization::identity(2)),
                    std::invalid_argument);
}

TEST_CASE("mesh and reparameterization JSON round-trip bit-exactly") {
    std::mt19937 rng(31);
    QuadMesh m = random_mesh(rng, 3, 2, 3);
    auto j = mesh_to_json(m);
    QuadMesh m2 = mesh_from_json(nlohmann::json::parse(j.dump()));
    CHECK(m2.verts == m.verts);
    auto j2 = mesh_to_json(m2);
    CHECK(j.dump() == j2.dump());

    Reparameterization r = random_monotone_map(rng, 3, 4, 3);
    auto jr = reparam_to_json(r);
    Reparameterization r2 = reparam_from_json(nlohmann::json::parse(jr.dump()));
    CHECK(r2.breakpoints == r.breakpoints);
}

TEST_CASE("feasible_line matches brute force for all norms") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> ud(-2, 2);
    for (NormKind k : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
        for (int trial = 0; trial < 300; ++trial) {
            Vec q(2), d(2);
            for (int i = 0; i < 2; ++i) {
                q[i] = ud(rng);
                d[i] = (trial % 7 == 0) ? 0.0 : ud(rng);
            }
            double eps = std::fabs(ud(rng));
            Interval iv = feasible_unit(q, d, eps, k);
            for (int s = 0; s <= 40; ++s) {
                double x = s / 40.0;
                Vec v = {q[0] + x * d[0], q[1] + x * d[1]};
                bool in = norm_value(v, k) <= eps;
                if (in) {
                    CHECK(!iv.empty());
                    if (!iv.empty()) {
                        CHECK(x >= iv.lo - 1e-9);
                        CHECK(x <= iv.hi + 1e-9);
                    }
                } else if (!iv.empty()) {
                    CHECK((x < iv.lo + 1e-9 || x > iv.hi - 1e-9));
                }
            }
        }
    }
}
