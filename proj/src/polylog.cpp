#include "fslgeom/polylog.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace fslgeom {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double zeta2 = pi * pi / 6.0;

// B_{2k} / (2k+1)! for k = 1..15
constexpr std::array<double, 15> bernoulli_coeffs = {
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211680.0,
    -1.0 / 10886400.0,
    1.0 / 526901760.0,
    -4.0647616451442255e-11,
    8.9216910204564526e-13,
    -1.9939295860721076e-14,
    4.5189800296199182e-16,
    -1.0356517612181247e-17,
    2.3952186210261867e-19,
    -5.5817858743250093e-21,
    1.3091507554183213e-22,
    -3.0874198024267401e-24,
    7.315975652702203e-26,
};

cplx li2_taylor(cplx z) {
    cplx term = z;
    cplx sum = 0.0;
    for (int n = 1; n < 200; ++n) {
        cplx add = term / double(n * n);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        term *= z;
    }
    return sum;
}

// Series in w = -log(1-z); good for |z| <= 1, Re z <= 1/2.
cplx li2_bernoulli(cplx z) {
    cplx w = -std::log(1.0 - z);
    cplx w2 = w * w;
    cplx sum = w - 0.25 * w2;
    cplx p = w * w2;
    for (double c : bernoulli_coeffs) {
        sum += c * p;
        p *= w2;
    }
    return sum;
}

cplx li2_unit_disk(cplx z) {
    if (std::abs(z) <= 0.5) return li2_taylor(z);
    if (z.real() > 0.5) {
        if (z == 1.0) return zeta2;
        // reflection
        return zeta2 - std::log(z) * std::log(1.0 - z) - li2_unit_disk(1.0 - z);
    }
    return li2_bernoulli(z);
}

}  // namespace

cplx li2(cplx z) {
    if (z.imag() == 0.0) z = cplx(z.real(), 0.0);  // +0 picks the upper side of the cut
    if (z == 0.0) return 0.0;
    if (std::abs(z) > 1.0) {
        // inversion
        cplx l = std::log(-z);
        return -zeta2 - 0.5 * l * l - li2_unit_disk(1.0 / z);
    }
    return li2_unit_disk(z);
}

double bloch_wigner(cplx z) {
    if (std::abs(z) < 1e-14 || std::abs(z - 1.0) < 1e-14)
        throw Error(ErrorKind::DegenerateShape, "bloch_wigner: shape at 0 or 1");
    if (z.imag() == 0.0) return 0.0;
    return li2(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

}  // namespace fslgeom
