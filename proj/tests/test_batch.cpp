#include <doctest.h>

#include "fslgeom/batch.hpp"
#include "fslgeom/verify.hpp"

using namespace fslgeom;

TEST_CASE("serial and parallel kernels agree exactly") {
    Rng rng(51);
    std::vector<Holonomy6> s(300);
    for (auto& h : s) h = random_holonomy(rng, 0.3);
    CHECK(block_volumes(s, Exec::Serial) == block_volumes(s, Exec::Parallel));
    CHECK(explicit_residuals(s, Exec::Serial) == explicit_residuals(s, Exec::Parallel));

    const FslComplex x = doubled_tetrahedron(std::vector<cplx>(6, cplx(0.0, 0.1)));
    const auto a = sweep(x, 2, 0.0, 0.4, 33, Exec::Serial);
    const auto b = sweep(x, 2, 0.0, 0.4, 33, Exec::Parallel);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].theta == b[i].theta);
        CHECK(a[i].volume == b[i].volume);
        CHECK(a[i].tau_abs == b[i].tau_abs);
        CHECK(a[i].torsion_abs == b[i].torsion_abs);
    }
}

TEST_CASE("single-step sweep matches the direct evaluation") {
    const FslComplex x = self_glued_block({0.0, 0.0, 0.0});
    const auto r = sweep(x, 1, 0.0, 0.3, 1, Exec::Serial);
    REQUIRE(r.size() == 1);
    CHECK(r[0].theta == 0.0);
    CHECK(r[0].volume == doctest::Approx(total_volume(x)).epsilon(1e-14));
    CHECK(r[0].tau_abs == doctest::Approx(32.0).epsilon(1e-13));
    CHECK(r[0].torsion_abs == doctest::Approx(32.0).epsilon(1e-13));
}

TEST_CASE("sweep volume decreases on [0, 0.3]") {
    for (int comp = 0; comp < 3; ++comp) {
        const auto r = sweep(self_glued_block({0.0, 0.0, 0.0}), comp, 0.0, 0.3, 16, Exec::Parallel);
        for (size_t i = 1; i < r.size(); ++i) CHECK(r[i].volume < r[i - 1].volume);
    }
}

TEST_CASE("sweep rejects bad arguments") {
    const FslComplex x = self_glued_block({0.0, 0.0, 0.0});
    CHECK_THROWS_AS(sweep(x, 0, 0.0, 0.3, 0, Exec::Serial), Error);
    CHECK_THROWS_AS(sweep(x, 3, 0.0, 0.3, 4, Exec::Serial), Error);
}
