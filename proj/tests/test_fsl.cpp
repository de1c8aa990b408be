#include <doctest.h>

#include <cmath>

#include "fslgeom/fsl.hpp"
#include "fslgeom/verify.hpp"

using namespace fslgeom;

TEST_CASE("doubled tetrahedron components") {
    const FslComplex x = doubled_tetrahedron(std::vector<cplx>(6, 0.0));
    const Components& c = x.components();
    REQUIRE(c.count() == 6);
    for (int l = 0; l < 6; ++l) {
        REQUIRE(c.members[l].size() == 2);
        CHECK(c.members[l][0] == EdgeRef{0, l});
        CHECK(c.members[l][1] == EdgeRef{1, l});
        CHECK(c.id[l] == l);
        CHECK(c.id[6 + l] == l);
        CHECK(c.sign[l] == -c.sign[6 + l]);
    }
}

TEST_CASE("doubled tetrahedron pulls back h and -h") {
    std::vector<cplx> h = {{0.1, 0.2}, {0.0, 0.3}, {-0.1, 0.0}, {0.05, -0.1}, {0.2, 0.1}, {0.0, -0.25}};
    const FslComplex x = doubled_tetrahedron(h);
    const Holonomy6 a = x.pullback(0), b = x.pullback(1);
    for (int l = 0; l < 6; ++l) {
        CHECK(a[l] == h[l]);
        CHECK(b[l] == -h[l]);
    }
}

TEST_CASE("self-glued block components") {
    const FslComplex x = self_glued_block({0.0, 0.0, 0.0});
    const Components& c = x.components();
    REQUIRE(c.count() == 3);
    CHECK(c.members[0] == std::vector<EdgeRef>{{0, 0}});
    CHECK(c.members[1].size() == 4);
    CHECK(c.members[2] == std::vector<EdgeRef>{{0, 3}});
    for (int e : {1, 2, 4, 5}) CHECK(c.id[e] == 1);
}

TEST_CASE("malformed gluings and holonomy counts are rejected") {
    std::vector<FaceGluing> g = doubled_tetrahedron(std::vector<cplx>(6, 0.0)).gluings();
    g[1].to = g[0].to;  // face used twice
    try {
        derive_components(2, g);
        FAIL("expected MalformedGluing");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MalformedGluing);
    }
    std::vector<FaceGluing> h = doubled_tetrahedron(std::vector<cplx>(6, 0.0)).gluings();
    h[0].edge_map[0] = {0, 2};  // edge 3 is not on face 1
    CHECK_THROWS_AS(derive_components(2, h), Error);
    try {
        doubled_tetrahedron(std::vector<cplx>(5, 0.0));
        FAIL("expected InvalidInput");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
}

TEST_CASE("zero-holonomy anchors") {
    const FslComplex c1 = self_glued_block({0.0, 0.0, 0.0});
    const FslComplex c2 = doubled_tetrahedron(std::vector<cplx>(6, 0.0));
    CHECK(std::abs(total_volume(c1) - 7.3277247534) < 1e-9);
    CHECK(std::abs(total_volume(c2) - 14.6554495068) < 1e-9);
    CHECK(std::abs(std::abs(fsl_torsion(c1)) - 32.0) < 1e-12);
    CHECK(std::abs(std::abs(fsl_torsion(c2)) - 1024.0) < 1e-10);
    CHECK(std::abs(std::abs(fsl_oneloop(c1)) - 32.0) < 1e-12);
    CHECK(std::abs(std::abs(fsl_oneloop(c2)) - 1024.0) < 1e-10);
}

TEST_CASE("doubled volume is four hyperideal volumes") {
    Rng rng(31);
    std::uniform_real_distribution<double> u(0.0, 0.3);
    for (int i = 0; i < 10; ++i) {
        std::array<double, 6> t;
        std::vector<cplx> h(6);
        for (int l = 0; l < 6; ++l) {
            t[l] = u(rng);
            h[l] = cplx(0.0, 2.0 * t[l]);
        }
        CHECK(std::abs(total_volume(doubled_tetrahedron(h)) - 4.0 * hyperideal_volume(t)) < 1e-12);
    }
}

TEST_CASE("singular Gram is reported by the torsion") {
    const cplx s(0.0, 2.0 * std::acos(1.0 / 3.0));
    try {
        fsl_torsion(self_glued_block({s, s, s}));
        FAIL("expected SingularGram");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularGram);
    }
}

TEST_CASE("meridian targets leave tau unchanged") {
    Rng rng(32);
    std::vector<cplx> h(6);
    for (auto& v : h) v = cplx(0.1, 0.05) * double(&v - h.data());
    const FslComplex x = doubled_tetrahedron(h);
    std::vector<TargetCurve> t(6);
    CHECK(std::abs(change_of_curves_factor(x, t) - 1.0) < 1e-8);
    CHECK(unit_rel_error(fsl_oneloop_with_curves(x, t), fsl_oneloop(x)) < 1e-12);
    for (auto& c : t) c.p = 2;
    CHECK(std::abs(change_of_curves_factor(x, t) - 64.0) < 1e-6);
    CHECK(unit_rel_error(fsl_oneloop_with_curves(x, t), 64.0 * fsl_oneloop(x)) < 1e-12);
}
