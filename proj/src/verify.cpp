#include "fslgeom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

#include "fslgeom/batch.hpp"
#include "fslgeom/polylog.hpp"
#include "fslgeom/solver.hpp"

namespace fslgeom {

namespace {

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

cplx random_disk(Rng& rng, double radius) {
    const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
    const double t = uniform(rng, -std::numbers::pi, std::numbers::pi);
    return std::polar(r, t);
}

bool nice_shape(cplx w) {
    return std::isfinite(w.real()) && std::isfinite(w.imag()) && std::abs(w) > 1e-3 && std::abs(w) < 1e3 &&
           std::abs(w - 1.0) > 1e-3;
}

int flat2(const NzDatum& d, int kind, int c) {
    return kind == 0 ? d.flat.f2[c] : kind == 1 ? d.flat.fp2[c] : d.flat.fpp2[c];
}

int& entry(NzDatum& d, int kind, int r, int c) {
    return kind == 0 ? d.G(r, c) : kind == 1 ? d.Gp(r, c) : d.Gpp(r, c);
}

cplx log_shape(cplx z, int kind) {
    const ShapeTriple t = ShapeTriple::of(z);
    return std::log(kind == 0 ? t.z : kind == 1 ? t.zp : t.zpp);
}

// Adds +-1 times one curve row to another; keeps the flattening valid.
void shear_curves(NzDatum& d, Rng& rng) {
    if (d.k < 2) return;
    const int i = d.edges() + uniform_int(rng, 0, d.k - 1);
    int j = d.edges() + uniform_int(rng, 0, d.k - 2);
    if (j >= i) ++j;
    const int s = uniform_int(rng, 0, 1) ? 1 : -1;
    d.G.row(i) += s * d.G.row(j);
    d.Gp.row(i) += s * d.Gp.row(j);
    d.Gpp.row(i) += s * d.Gpp.row(j);
}

CheckResult make(int id, const char* name, double measured, double tol, std::string detail = {}) {
    CheckResult r;
    r.id = id;
    r.name = name;
    r.measured = measured;
    r.tol = tol;
    r.passed = std::isfinite(measured) && measured <= tol;
    r.detail = std::move(detail);
    return r;
}

CheckResult failed(int id, const char* name, double tol, const std::string& why) {
    CheckResult r = make(id, name, std::numeric_limits<double>::infinity(), tol, why);
    r.passed = false;
    return r;
}

template <class F>
CheckResult guarded(int id, const char* name, double tol, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return failed(id, name, tol, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

std::uint64_t env_seed() {
    if (const char* s = std::getenv("FSLGEOM_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && end != s) return v;
    }
    return default_seed;
}

Holonomy6 random_holonomy(Rng& rng, double radius) {
    Holonomy6 h;
    for (auto& x : h) x = random_disk(rng, radius);
    return h;
}

Holonomy6 random_imaginary_holonomy(Rng& rng, double radius) {
    Holonomy6 h;
    for (auto& x : h) x = cplx(0.0, uniform(rng, -radius, radius));
    return h;
}

PachnerParams random_pachner_params(const NzDatum& d, Rng& rng) {
    const int n = d.n;
    for (int attempt = 0; attempt < 200; ++attempt) {
        PachnerParams p;
        p.edge_row = uniform_int(rng, 0, d.edges() - 1);
        p.split1 = {Eigen::RowVectorXi::Zero(n), Eigen::RowVectorXi::Zero(n), Eigen::RowVectorXi::Zero(n)};
        cplx f1 = 0.0;
        for (int c = 0; c < n; ++c)
            for (int kind = 0; kind < 3; ++kind) {
                const int full = kind == 0 ? d.G(p.edge_row, c) : kind == 1 ? d.Gp(p.edge_row, c) : d.Gpp(p.edge_row, c);
                int v = uniform_int(rng, 0, 1) ? full : 0;
                if (uniform_int(rng, 0, 9) == 0) v += uniform_int(rng, 0, 1) ? 1 : -1;
                (kind == 0 ? p.split1.g : kind == 1 ? p.split1.gp : p.split1.gpp)[c] = v;
                f1 += double(v) * log_shape(d.z[c], kind);
            }
        const cplx w = std::exp(-f1);
        if (!nice_shape(w) || !nice_shape(1.0 / w)) continue;
        p.crossings.resize(n);
        p.patterns.resize(n);
        for (int r = 0; r < n; ++r) {
            const int roll = uniform_int(rng, 0, 5);
            p.crossings[r] = roll == 0 ? -1 : roll == 1 ? 1 : 0;
            p.patterns[r] = uniform_int(rng, 1, 2);
        }
        return p;
    }
    throw Error(ErrorKind::InvalidSplit, "no nondegenerate random split found");
}

NzDatum random_valid_datum(Rng& rng, int moves) {
    NzDatum d = block_datum(random_holonomy(rng, 0.3), uniform_int(rng, 0, 1) == 1);
    const int m = uniform_int(rng, 0, moves);
    for (int i = 0; i < m; ++i) d = pachner_02(d, random_pachner_params(d, rng));
    const int shears = uniform_int(rng, 0, 3);
    for (int i = 0; i < shears; ++i) shear_curves(d, rng);
    fix_winding(d);
    return d;
}

FoldInstance synthetic_fold(Rng& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        NzDatum base = random_valid_datum(rng, 1);
        const int n = base.n, e = base.edges();
        const int row = uniform_int(rng, 0, e - 1);

        struct Term {
            int kind, col, coef, weight;
        };
        std::vector<Term> terms;
        for (int c = 0; c < n; ++c)
            for (int kind = 0; kind < 3; ++kind) {
                const int v = kind == 0 ? base.G(row, c) : kind == 1 ? base.Gp(row, c) : base.Gpp(row, c);
                if (v != 0) terms.push_back({kind, c, v, v * flat2(base, kind, c)});
            }
        const int m = int(terms.size());
        if (m < 2 || m > 16) continue;
        std::vector<unsigned> subsets;
        for (unsigned s = 1; s + 1 < (1u << m); ++s) {
            int w = 0;
            for (int i = 0; i < m; ++i)
                if (s & (1u << i)) w += terms[i].weight;
            if (w == 2) subsets.push_back(s);
        }
        if (subsets.empty()) continue;
        const unsigned pick = subsets[uniform_int(rng, 0, int(subsets.size()) - 1)];

        // f_rest keeps the picked terms, g_rest the others
        cplx ff = 0.0;
        for (int i = 0; i < m; ++i)
            if (pick & (1u << i)) ff += double(terms[i].coef) * log_shape(base.z[terms[i].col], terms[i].kind);
        const cplx a = std::exp(-ff);
        const cplx disc = std::sqrt((1.0 - 2.0 * a) * (1.0 - 2.0 * a) - 4.0 * a * a);
        const cplx w = (-(1.0 - 2.0 * a) + (uniform_int(rng, 0, 1) ? disc : -disc)) / (2.0 * a);
        if (!nice_shape(w) || !nice_shape(1.0 / w) || std::abs(w + 1.0) < 1e-2) continue;

        NzDatum u;
        u.n = n + 2;
        u.k = base.k + 1;
        u.G = Eigen::MatrixXi::Zero(u.n, u.n);
        u.Gp = Eigen::MatrixXi::Zero(u.n, u.n);
        u.Gpp = Eigen::MatrixXi::Zero(u.n, u.n);
        const int t1 = n, t2 = n + 1;
        const int g_row = e, alpha_row = u.n - 1;
        for (int r = 0; r < n; ++r) {
            const int t = r < e ? r : r + 1;
            if (r == row) continue;
            u.G.row(t).head(n) = base.G.row(r);
            u.Gp.row(t).head(n) = base.Gp.row(r);
            u.Gpp.row(t).head(n) = base.Gpp.row(r);
        }
        for (int i = 0; i < m; ++i) {
            const int target = (pick & (1u << i)) ? row : g_row;
            entry(u, terms[i].kind, target, terms[i].col) += terms[i].coef;
        }
        u.Gp(row, t1) = u.Gp(row, t2) = 1;
        u.Gpp(g_row, t1) = u.Gpp(g_row, t2) = 1;
        u.Gp(alpha_row, t1) = 1;
        u.Gp(alpha_row, t2) = -1;
        u.Gpp(alpha_row, t1) = -1;
        u.Gpp(alpha_row, t2) = 1;

        u.z = base.z;
        u.z.push_back(w);
        u.z.push_back(1.0 / w);
        u.flat.f2 = Eigen::VectorXi::Zero(u.n);
        u.flat.fp2 = Eigen::VectorXi::Ones(u.n);
        u.flat.fpp2 = Eigen::VectorXi::Ones(u.n);
        u.flat.f2.head(n) = base.flat.f2;
        u.flat.fp2.head(n) = base.flat.fp2;
        u.flat.fpp2.head(n) = base.flat.fpp2;
        u.winding = Eigen::VectorXi::Zero(u.n);
        if (!validate_flattening(u).ok()) continue;
        fix_winding(u);
        if (gluing_residual(u) > 1e-9) continue;
        return {u, base, row, g_row, alpha_row, t1, t2};
    }
    throw Error(ErrorKind::InvalidSplit, "no synthetic fold instance found");
}

std::vector<TargetCurve> random_targets(const FslComplex& x, Rng& rng) {
    std::vector<TargetCurve> out(x.components().count());
    for (auto& t : out) {
        const int roll = uniform_int(rng, 0, 3);
        t.p = roll == 0 ? -1 : roll == 1 ? 2 : 1;
        t.q = uniform_int(rng, -1, 1);
        t.coeffs.assign(24 * x.blocks(), 0);
        const int nz = uniform_int(rng, 1, 4);
        for (int i = 0; i < nz; ++i) t.coeffs[uniform_int(rng, 0, 24 * x.blocks() - 1)] += uniform_int(rng, 0, 1) ? 1 : -1;
    }
    return out;
}

CheckResult check_explicit_residual(Rng& rng, double tol) {
    const char* name = "explicit-solution residual";
    return guarded(1, name, tol, [&] {
        std::vector<Holonomy6> s(200);
        for (auto& h : s) h = random_holonomy(rng, 0.3);
        const auto res = explicit_residuals(s, Exec::Parallel);
        return make(1, name, *std::max_element(res.begin(), res.end()), tol, "200 samples, |H| <= 0.3");
    });
}

CheckResult check_newton_agreement(Rng& rng, double tol) {
    const char* name = "Newton vs explicit solution";
    return guarded(2, name, tol, [&] {
        double worst = 0.0;
        Shapes8 start;
        start.fill(cplx(0.0, 1.0));
        for (int i = 0; i < 200; ++i) {
            const Holonomy6 h = random_holonomy(rng, 0.3);
            const Shapes8 ze = solve_block_explicit(h).z();
            const Shapes8 zn = newton_block(h, start).z();
            for (int j = 0; j < 8; ++j) worst = std::max(worst, std::abs(ze[j] - zn[j]));
        }
        return make(2, name, worst, tol, "200 samples, max coordinate distance");
    });
}

CheckResult check_discriminant(Rng& rng, double tol) {
    const char* name = "discriminant = 16 det Gram";
    return guarded(3, name, tol, [&] {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Holonomy6 h = random_holonomy(rng, 1.0);
            const cplx lhs = quadratic_coeffs(h).discriminant();
            const cplx rhs = 16.0 * gram_det(h);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
        }
        return make(3, name, worst, tol, "1000 samples, |H| <= 1, relative");
    });
}

CheckResult check_complete_anchors(double tol) {
    const char* name = "complete-structure anchors";
    return guarded(4, name, tol, [&] {
        Shapes8 z;
        z.fill(cplx(0.0, 1.0));
        const cplx dj = block_jacobian(z).determinant();
        const cplx dg = gram_det(Holonomy6{});
        const double e1 = std::abs(dj - cplx(0.0, -32.0)), e2 = std::abs(dg - cplx(-16.0, 0.0));
        return make(4, name, std::max(e1, e2), tol, "det J(all-i) err " + fmt(e1) + ", det Gram(0) err " + fmt(e2));
    });
}

CheckResult check_block_identity(Rng& rng, double tol) {
    const char* name = "block 1-loop identity";
    return guarded(5, name, tol, [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const Holonomy6 h = i < 100 ? random_imaginary_holonomy(rng, 0.3) : random_holonomy(rng, 0.3);
            const IdentityPair p = block_oneloop_identity(h);
            const double mod = std::abs(std::abs(p.lhs) - std::abs(p.rhs)) / std::abs(p.rhs);
            worst = std::max({worst, mod, unit_rel_error(p.lhs, p.rhs)});
        }
        return make(5, name, worst, tol, "100 imaginary + 100 complex samples, modulus and unit class");
    });
}

CheckResult check_fsl_oneloop(Rng& rng, double tol) {
    const char* name = "FSL 1-loop = torsion";
    return guarded(6, name, tol, [&] {
        double worst = 0.0;
        const FslComplex c1 = self_glued_block({0.0, 0.0, 0.0});
        const FslComplex c2 = doubled_tetrahedron(std::vector<cplx>(6, 0.0));
        const double a1 = std::abs(std::abs(fsl_oneloop(c1)) - 32.0) / 32.0;
        const double a2 = std::abs(std::abs(fsl_oneloop(c2)) - 1024.0) / 1024.0;
        for (const FslComplex* x : {&c1, &c2})
            for (int i = 0; i < 50; ++i) {
                std::vector<cplx> h(x->components().count());
                for (auto& v : h) v = random_disk(rng, 0.3);
                const FslComplex y = x->with_holonomies(h);
                worst = std::max(worst, unit_rel_error(fsl_oneloop(y), fsl_torsion(y)));
            }
        return make(6, name, std::max({worst, a1, a2}), tol,
                    "50 samples each for c=1, c=2; anchor errors " + fmt(a1) + ", " + fmt(a2));
    });
}

CheckResult check_volumes(Rng& rng, double tol) {
    const char* name = "volume anchors";
    return guarded(7, name, tol, [&] {
        const double e1 = std::abs(block_volume(Holonomy6{}) - 8.0 * catalan);
        const double e2 = std::abs(hyperideal_volume({}) - 4.0 * catalan);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            std::array<double, 6> th;
            std::vector<cplx> h(6);
            for (int l = 0; l < 6; ++l) {
                th[l] = uniform(rng, 0.0, 0.3);
                h[l] = cplx(0.0, 2.0 * th[l]);
            }
            const double tv = total_volume(doubled_tetrahedron(h));
            worst = std::max(worst, std::abs(tv - 4.0 * hyperideal_volume(th)));
        }
        return make(7, name, std::max({e1, e2, worst}), tol,
                    "8G err " + fmt(e1) + ", 4G err " + fmt(e2) + ", doubled vs 4x hyperideal " + fmt(worst));
    });
}

CheckResult check_oneloop_forms(Rng& rng, double tol) {
    const char* name = "determinant vs symmetric 1-loop";
    return guarded(8, name, tol, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const NzDatum d = random_valid_datum(rng, 3);
            worst = std::max(worst, unit_rel_error(one_loop(d), one_loop_symmetric(d)));
        }
        return make(8, name, worst, tol, "100 random valid data");
    });
}

CheckResult check_pachner(Rng& rng, double tol) {
    const char* name = "0-2 move invariance";
    return guarded(9, name, tol, [&] {
        double worst = 0.0;
        int invalid = 0;
        for (int i = 0; i < 50; ++i) {
            const NzDatum d = block_datum(random_holonomy(rng, 0.3), uniform_int(rng, 0, 1) == 1);
            const NzDatum e = pachner_02(d, random_pachner_params(d, rng));
            if (!validate_flattening(e).ok()) ++invalid;
            if (gluing_residual(e) > 1e-9) ++invalid;
            worst = std::max(worst, unit_rel_error(one_loop(e), one_loop(d)));
        }
        CheckResult r = make(9, name, worst, tol, "50 random splits; invalid extensions: " + std::to_string(invalid));
        r.passed = r.passed && invalid == 0;
        return r;
    });
}

CheckResult check_surgery(Rng& rng, double tol) {
    const char* name = "Dehn-filling fold";
    return guarded(10, name, tol, [&] {
        double worst = 0.0, ident1 = 0.0, ident2 = 0.0;
        for (int i = 0; i < 50; ++i) {
            const FoldInstance fi = synthetic_fold(rng);
            const FoldResult fr = fill_fold(fi.unfilled, fi.f_row, fi.g_row, fi.alpha_row, fi.t1, fi.t2);
            const cplx s = std::sinh(fr.gamma / 2.0);
            const cplx q = 4.0 * s * s;
            worst = std::max(worst, unit_rel_error(one_loop(fr.filled) * q, one_loop(fi.unfilled)));
            const cplx z1 = fi.unfilled.z[fi.t1], z2 = fi.unfilled.z[fi.t2];
            ident1 = std::max(ident1, std::abs(q + (z1 + z2 + 2.0)) / std::max(1.0, std::abs(q)));
            const MatrixXc j = gluing_jacobian(fi.unfilled);
            const cplx minor = j(fi.g_row, fi.t1) * j(fi.alpha_row, fi.t2) - j(fi.g_row, fi.t2) * j(fi.alpha_row, fi.t1);
            const cplx expect = (z1 + z2 + 2.0) / ((z1 - 1.0) * (z2 - 1.0));
            ident2 = std::max(ident2, std::abs(minor - expect) / std::max(1.0, std::abs(expect)));
        }
        CheckResult r = make(10, name, worst, tol,
                             "50 synthetic data; identity errors " + fmt(ident1) + ", " + fmt(ident2) + " (tol 1e-12)");
        r.passed = r.passed && ident1 <= 1e-12 && ident2 <= 1e-12;
        return r;
    });
}

CheckResult check_change_of_curves(Rng& rng, double tol) {
    const char* name = "change of curves";
    return guarded(11, name, tol, [&] {
        double worst = 0.0;
        int done = 0;
        for (int i = 0; done < 20 && i < 200; ++i) {
            const bool c2 = done % 2 == 1;
            std::vector<cplx> h(c2 ? 6 : 3);
            for (auto& v : h) v = random_disk(rng, 0.3);
            const FslComplex x = c2 ? doubled_tetrahedron(h) : self_glued_block(h);
            const auto t = random_targets(x, rng);
            cplx factor;
            try {
                factor = change_of_curves_factor(x, t);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::SingularJacobian) continue;
                throw;
            }
            if (std::abs(factor) < 1e-3) continue;
            worst = std::max(worst, unit_rel_error(fsl_oneloop_with_curves(x, t), factor * fsl_oneloop(x)));
            ++done;
        }
        if (done < 20) return failed(11, name, tol, "too few nonsingular descriptors");
        return make(11, name, worst, tol, "20 descriptors on c=1 and c=2, finite-difference Jacobian");
    });
}

CheckResult check_flattenings() {
    const char* name = "flattening exactness";
    return guarded(12, name, 0.0, [&] {
        const NzDatum a = block_datum(Holonomy6{}, false);
        const NzDatum b = block_datum(Holonomy6{}, true);
        const FlatteningReport ra = validate_flattening(a), rb = validate_flattening(b);
        const bool ok = ra.ok() && rb.ok() && rb.integral;
        CheckResult r = make(12, name, ok ? 0.0 : 1.0, 0.0,
                             std::string("halves ") + (ra.ok() ? "valid" : "INVALID") + ", meridian " +
                                 (rb.ok() ? "valid" : "INVALID") + (rb.integral ? " integral" : " non-integral"));
        return r;
    });
}

CheckResult check_dilog(Rng& rng, double tol) {
    const char* name = "dilogarithm identities";
    return guarded(13, name, tol, [&] {
        double anti = 0.0, three = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const cplx z = random_disk(rng, 3.0);
            if (std::abs(z) < 1e-3 || std::abs(z - 1.0) < 1e-3 || std::abs(z.imag()) < 1e-9) continue;
            const double d = bloch_wigner(z);
            anti = std::max(anti, std::abs(bloch_wigner(std::conj(z)) + d));
            three = std::max({three, std::abs(bloch_wigner(1.0 / (1.0 - z)) - d), std::abs(bloch_wigner(1.0 - 1.0 / z) - d)});
        }
        const double one = std::abs(li2(1.0) - std::numbers::pi * std::numbers::pi / 6.0);
        return make(13, name, std::max({anti, three, one}), tol,
                    "antisymmetry " + fmt(anti) + ", three-fold " + fmt(three) + ", Li2(1) " + fmt(one));
    });
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed, std::optional<double> tol) {
    static const std::vector<std::pair<std::string, std::vector<int>>> suites = {
        {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13}},
        {"dilog", {13}},
        {"block", {1, 2, 3, 4, 5}},
        {"fsl", {6, 7, 11}},
        {"nz", {8, 12}},
        {"moves", {9, 10}},
    };
    auto it = std::find_if(suites.begin(), suites.end(), [&](const auto& s) { return s.first == suite; });
    if (it == suites.end()) throw Error(ErrorKind::InvalidInput, "unknown suite '" + suite + "'");

    std::vector<CheckResult> out;
    for (int id : it->second) {
        // each check gets its own stream so suites agree with "all"
        Rng rng(seed + std::uint64_t(id));
        auto t = [&](double def) { return tol.value_or(def); };
        switch (id) {
            case 1: out.push_back(check_explicit_residual(rng, t(1e-10))); break;
            case 2: out.push_back(check_newton_agreement(rng, t(1e-9))); break;
            case 3: out.push_back(check_discriminant(rng, t(1e-12))); break;
            case 4: out.push_back(check_complete_anchors(t(1e-12))); break;
            case 5: out.push_back(check_block_identity(rng, t(1e-9))); break;
            case 6: out.push_back(check_fsl_oneloop(rng, t(1e-9))); break;
            case 7: out.push_back(check_volumes(rng, t(1e-9))); break;
            case 8: out.push_back(check_oneloop_forms(rng, t(1e-10))); break;
            case 9: out.push_back(check_pachner(rng, t(1e-9))); break;
            case 10: out.push_back(check_surgery(rng, t(1e-9))); break;
            case 11: out.push_back(check_change_of_curves(rng, t(1e-6))); break;
            case 12: out.push_back(check_flattenings()); break;
            case 13: out.push_back(check_dilog(rng, t(1e-12))); break;
        }
    }
    return out;
}

std::string format_check(const CheckResult& r) {
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": measured " << fmt(r.measured)
       << " (tol " << fmt(r.tol) << ")";
    if (!r.detail.empty()) os << " - " << r.detail;
    return os.str();
}

}  // namespace fslgeom
