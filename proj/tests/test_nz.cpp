#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fslgeom/nz.hpp"
#include "fslgeom/verify.hpp"

using namespace fslgeom;

TEST_CASE("block datum shape and flattenings") {
    const NzDatum d = block_datum(Holonomy6{});
    CHECK(d.n == 8);
    CHECK(d.k == 6);
    CHECK(d.edges() == 2);
    const FlatteningReport r = validate_flattening(d);
    CHECK(r.ok());
    CHECK_FALSE(r.integral);

    const NzDatum m = block_datum(Holonomy6{}, true);
    const FlatteningReport rm = validate_flattening(m);
    CHECK(rm.ok());
    CHECK(rm.integral);
    const int f[8] = {1, 1, 1, -1, 0, 0, 0, 2};
    for (int i = 0; i < 8; ++i) CHECK(m.flat.f2[i] == 2 * f[i]);
}

TEST_CASE("broken flattenings are located exactly") {
    NzDatum d = block_datum(Holonomy6{});
    d.flat.f2[0] += 2;
    d.flat.fp2[0] -= 2;
    FlatteningReport r = validate_flattening(d);
    CHECK(r.sums_ok);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.bad_rows.empty());

    NzDatum e = block_datum(Holonomy6{});
    e.flat.f2[3] += 1;
    r = validate_flattening(e);
    CHECK_FALSE(r.sums_ok);
    CHECK(r.bad_tets == std::vector<int>{3});
}

TEST_CASE("gluing map and winding at the block datum") {
    Rng rng(21);
    const Holonomy6 h = random_holonomy(rng, 0.3);
    const NzDatum d = block_datum(h);
    CHECK(gluing_residual(d) < 1e-12);
    const VectorXc hol = curve_holonomies(d);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(hol[i] - h[i]) < 1e-12);
}

TEST_CASE("1-loop forms agree and match the block identity") {
    Rng rng(22);
    for (int i = 0; i < 20; ++i) {
        const Holonomy6 h = random_holonomy(rng, 0.3);
        for (bool mer : {false, true}) {
            const NzDatum d = block_datum(h, mer);
            CHECK(unit_rel_error(one_loop(d), one_loop_symmetric(d)) < 1e-12);
        }
        // the block datum's tau carries the 1/2 of the definition
        const IdentityPair p = block_oneloop_identity(h);
        CHECK(unit_rel_error(2.0 * one_loop_symmetric(block_datum(h)), p.lhs) < 1e-12);
    }
}

TEST_CASE("0-2 move keeps tau and validates the extension") {
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        NzDatum d = random_valid_datum(rng, 1);
        const NzDatum e = pachner_02(d, random_pachner_params(d, rng));
        CHECK(e.n == d.n + 2);
        CHECK(e.k == d.k);
        CHECK(validate_flattening(e).ok());
        CHECK(gluing_residual(e) < 1e-10);
        CHECK(unit_rel_error(one_loop(e), one_loop(d)) < 1e-10);
    }
}

TEST_CASE("0-2 move rejects bad parameters") {
    const NzDatum d = block_datum(Holonomy6{});
    PachnerParams p;
    p.split1 = {Eigen::RowVectorXi::Zero(8), Eigen::RowVectorXi::Zero(8), Eigen::RowVectorXi::Zero(8)};
    p.edge_row = 5;  // a curve row
    try {
        pachner_02(d, p);
        FAIL("expected InvalidSplit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidSplit);
    }
    p.edge_row = 0;
    p.z_new1 = cplx(2.0, 0.5);  // violates the split edge equation
    CHECK_THROWS_AS(pachner_02(d, p), Error);
    p.z_new1.reset();
    // an empty split1 makes the new shape 1
    try {
        pachner_02(d, p);
        FAIL("expected DegenerateShape");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateShape);
    }
}

TEST_CASE("fold returns the unfolded datum and the surgery relation") {
    Rng rng(24);
    for (int i = 0; i < 20; ++i) {
        const FoldInstance fi = synthetic_fold(rng);
        const FoldResult fr = fill_fold(fi.unfilled, fi.f_row, fi.g_row, fi.alpha_row, fi.t1, fi.t2);
        CHECK(fr.filled.G == fi.filled.G);
        CHECK(fr.filled.Gp == fi.filled.Gp);
        CHECK(fr.filled.Gpp == fi.filled.Gpp);
        const cplx q = 1.0 / surgery_factor({fr.gamma});
        CHECK(unit_rel_error(one_loop(fr.filled) * q, one_loop(fi.unfilled)) < 1e-10);
    }
}

TEST_CASE("fold rejects data without the filled-cusp pattern") {
    const NzDatum d = block_datum(Holonomy6{});
    try {
        fill_fold(d, 0, 1, 7, 6, 7);
        FAIL("expected PatternMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PatternMismatch);
    }
}

TEST_CASE("surgery factors") {
    const double a = 2.0 * std::asinh(0.5);
    CHECK(std::abs(surgery_factor({a}) - 1.0) < 1e-15);
    CHECK(std::abs(surgery_factor({cplx(0.0, std::numbers::pi)}) + 0.25) < 1e-15);
    const std::vector<cplx> g = {cplx(0.3, 0.1), cplx(-0.2, 1.1), cplx(0.7, -0.4)};
    cplx p = 1.0;
    for (cplx x : g) p /= 4.0 * std::sinh(x / 2.0) * std::sinh(x / 2.0);
    CHECK(std::abs(surgery_factor(g) - p) < 1e-14);
    CHECK(std::abs(surgery_factor_torsion(g) - p) < 1e-14);
    try {
        surgery_factor({0.0});
        FAIL("expected DegenerateFill");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateFill);
    }
}
