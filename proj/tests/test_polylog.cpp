#include <doctest.h>
#include <gsl/gsl_sf_dilog.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fslgeom/polylog.hpp"

using namespace fslgeom;

namespace {

cplx gsl_li2(cplx z) {
    gsl_sf_result re, im;
    gsl_sf_complex_dilog_xy_e(z.real(), z.imag(), &re, &im);
    return {re.val, im.val};
}

}  // namespace

// GSL itself drifts to ~2e-13 near |z| = 1, so it gets a looser bound than
// the frozen high-precision values below.
TEST_CASE("li2 matches GSL across all evaluation regions") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const cplx z(u(rng), u(rng));
        if (std::abs(z.imag()) < 1e-6) continue;
        worst = std::max(worst, std::abs(li2(z) - gsl_li2(z)) / std::max(1.0, std::abs(gsl_li2(z))));
    }
    CHECK(worst < 5e-13);
    std::uniform_real_distribution<double> small(-1.2, 1.2);
    worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const cplx z(small(rng), small(rng));
        worst = std::max(worst, std::abs(li2(z) - gsl_li2(z)) / std::max(1.0, std::abs(gsl_li2(z))));
    }
    CHECK(worst < 5e-13);
}

TEST_CASE("li2 frozen high-precision values") {
    const struct {
        cplx z, v;
    } cases[] = {
        {{0.3, 0.4}, {0.266596866742740415889, 0.461362891819108994282}},
        {{-2.0, 0.5}, {-1.450137721074450581601, 0.273572612604905514535}},
        {{0.9, 0.1}, {1.264186732338753978079, 0.243735679981014051690}},
        {{5.0, -3.0}, {0.033260008208192192025, -4.681667372380451990523}},
        {{0.5, 0.866}, {0.274168979168422755423, 1.014918567556667443680}},
        {{0.71983291194746268, 0.66508455459012583}, {0.605907936114752044969, 0.946466629046524365346}},
    };
    for (const auto& c : cases) CHECK(std::abs(li2(c.z) - c.v) < 1e-14);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(std::abs(li2(1.0) - pi2 / 6.0) < 1e-15);
    CHECK(std::abs(li2(-1.0) + pi2 / 12.0) < 1e-15);
    CHECK(li2(0.0) == cplx(0.0, 0.0));
}

TEST_CASE("li2 matches the direct series inside |z| <= 1/2") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const cplx z(u(rng), u(rng));
        if (std::abs(z) > 0.5) continue;
        cplx sum = 0.0, p = z;
        for (int k = 1; k < 80; ++k, p *= z) sum += p / double(k * k);
        CHECK(std::abs(li2(z) - sum) < 1e-14);
    }
}

TEST_CASE("li2 on the cut takes the upper-side limit") {
    const cplx v = li2(3.0);
    CHECK(std::abs(v.real() - 2.320180423313098396406) < 1e-13);
    CHECK(std::abs(v.imag() - std::numbers::pi * std::log(3.0)) < 1e-13);
    const cplx above = li2(cplx(3.0, 1e-12));
    CHECK(std::abs(v - above) < 1e-9);
}

TEST_CASE("Bloch-Wigner function") {
    const double dmax = 1.014941606409653625021;
    CHECK(std::abs(bloch_wigner(std::polar(1.0, std::numbers::pi / 3)) - dmax) < 1e-14);
    CHECK(std::abs(bloch_wigner(cplx(0.5, 0.8)) - 1.012875282224004980803) < 1e-14);
    CHECK(bloch_wigner(cplx(0.0, 1.0)) == doctest::Approx(0.915965594177219015).epsilon(1e-15));
    CHECK(bloch_wigner(cplx(-3.0, 0.0)) == 0.0);
    CHECK(bloch_wigner(0.5) == 0.0);
    CHECK(std::abs(bloch_wigner(cplx(1.0, 1.0)) - 0.915965594177219015) < 1e-15);
    CHECK(bloch_wigner(cplx(0.3, 0.0)) == 0.0);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 500; ++i) {
        const cplx z(u(rng), u(rng));
        if (std::abs(z) < 1e-2 || std::abs(z - 1.0) < 1e-2) continue;
        const double d = bloch_wigner(z);
        const double direct = gsl_li2(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
        CHECK(std::abs(d - direct) < 1e-13);
        CHECK(std::abs(bloch_wigner(1.0 / z) + d) < 1e-13);
        CHECK(std::abs(bloch_wigner(1.0 - z) + d) < 1e-13);
        CHECK(d <= dmax + 1e-14);
    }
}

TEST_CASE("Bloch-Wigner rejects degenerate shapes") {
    CHECK_THROWS_AS(bloch_wigner(0.0), Error);
    CHECK_THROWS_AS(bloch_wigner(cplx(1.0, 1e-15)), Error);
    try {
        bloch_wigner(1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateShape);
    }
}
