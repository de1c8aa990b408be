#include "fslgeom/nz.hpp"

#include <cmath>
#include <numbers>

namespace fslgeom {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_shapes(const NzDatum& d) {
    for (cplx w : d.z)
        if (std::abs(w) < 1e-12 || std::abs(w - 1.0) < 1e-12)
            throw Error(ErrorKind::DegenerateShape, "NZ datum shape too close to 0 or 1");
}

// Flattening sum of one row, doubled.
int row_flat2(const Eigen::RowVectorXi& g, const Eigen::RowVectorXi& gp, const Eigen::RowVectorXi& gpp,
              const Flattening& f) {
    return g.dot(f.f2) + gp.dot(f.fp2) + gpp.dot(f.fpp2);
}

cplx half_pow(cplx base, int twice_exp) {
    if (twice_exp % 2 == 0) {
        cplx r = 1.0;
        cplx b = twice_exp >= 0 ? base : 1.0 / base;
        for (int i = 0; i < std::abs(twice_exp) / 2; ++i) r *= b;
        return r;
    }
    return std::pow(base, 0.5 * twice_exp);
}

NzDatum blank_datum(int n, int k) {
    NzDatum out;
    out.n = n;
    out.k = k;
    out.G = Eigen::MatrixXi::Zero(n, n);
    out.Gp = Eigen::MatrixXi::Zero(n, n);
    out.Gpp = Eigen::MatrixXi::Zero(n, n);
    out.z.assign(n, cplx(0.0));
    out.winding = Eigen::VectorXi::Zero(n);
    out.flat.f2 = Eigen::VectorXi::Zero(n);
    out.flat.fp2 = Eigen::VectorXi::Zero(n);
    out.flat.fpp2 = Eigen::VectorXi::Zero(n);
    return out;
}

}  // namespace

FlatteningReport validate_flattening(const NzDatum& d) {
    FlatteningReport rep;
    const Flattening& f = d.flat;
    for (int i = 0; i < d.n; ++i) {
        if (f.f2[i] + f.fp2[i] + f.fpp2[i] != 2) {
            rep.sums_ok = false;
            rep.bad_tets.push_back(i);
        }
        if (f.f2[i] % 2 || f.fp2[i] % 2 || f.fpp2[i] % 2) rep.integral = false;
    }
    const Eigen::VectorXi rows = d.G * f.f2 + d.Gp * f.fp2 + d.Gpp * f.fpp2;
    for (int r = 0; r < d.n; ++r) {
        const int want = r < d.edges() ? 4 : 0;
        if (rows[r] != want) {
            (r < d.edges() ? rep.edges_ok : rep.curves_ok) = false;
            rep.bad_rows.push_back(r);
        }
    }
    return rep;
}

VectorXc gluing_map(const NzDatum& d) {
    check_shapes(d);
    VectorXc lz(d.n), lzp(d.n), lzpp(d.n);
    for (int i = 0; i < d.n; ++i) {
        const ShapeTriple t = ShapeTriple::of(d.z[i]);
        lz[i] = std::log(t.z);
        lzp[i] = std::log(t.zp);
        lzpp[i] = std::log(t.zpp);
    }
    return d.G.cast<cplx>() * lz + d.Gp.cast<cplx>() * lzp + d.Gpp.cast<cplx>() * lzpp;
}

MatrixXc gluing_jacobian(const NzDatum& d) {
    check_shapes(d);
    MatrixXc j(d.n, d.n);
    for (int c = 0; c < d.n; ++c) {
        const cplx w = d.z[c];
        const cplx xi = 1.0 / w, xip = 1.0 / (1.0 - w), xipp = 1.0 / (w * (w - 1.0));
        for (int r = 0; r < d.n; ++r)
            j(r, c) = double(d.G(r, c)) * xi + double(d.Gp(r, c)) * xip + double(d.Gpp(r, c)) * xipp;
    }
    return j;
}

VectorXc curve_holonomies(const NzDatum& d) {
    const VectorXc f = gluing_map(d);
    VectorXc h(d.k);
    for (int j = 0; j < d.k; ++j) h[j] = f[d.edges() + j] - cplx(0.0, two_pi) * double(d.winding[d.edges() + j]);
    return h;
}

void fix_winding(NzDatum& d) {
    const VectorXc f = gluing_map(d);
    d.winding = Eigen::VectorXi::Zero(d.n);
    for (int r = 0; r < d.edges(); ++r)
        d.winding[r] = int(std::lround((f[r].imag() - two_pi) / two_pi));
}

double gluing_residual(const NzDatum& d) {
    const VectorXc f = gluing_map(d);
    double worst = 0.0;
    for (int r = 0; r < d.edges(); ++r)
        worst = std::max(worst, std::abs(f[r] - cplx(0.0, two_pi) * (1.0 + d.winding[r])));
    return worst;
}

cplx one_loop(const NzDatum& d) {
    check_shapes(d);
    MatrixXc m(d.n, d.n);
    cplx flat = 1.0;
    for (int c = 0; c < d.n; ++c) {
        const ShapeTriple t = ShapeTriple::of(d.z[c]);
        for (int r = 0; r < d.n; ++r)
            m(r, c) = double(d.G(r, c) - d.Gp(r, c)) * t.zpp + double(d.Gpp(r, c) - d.Gp(r, c)) / t.z;
        flat *= half_pow(t.z, d.flat.fpp2[c]) * half_pow(t.zpp, -d.flat.f2[c]);
    }
    return 0.5 * m.determinant() * flat;
}

cplx one_loop_symmetric(const NzDatum& d) {
    cplx flat = 1.0;
    for (int c = 0; c < d.n; ++c) {
        const cplx w = d.z[c];
        const cplx xi = 1.0 / w, xip = 1.0 / (1.0 - w), xipp = 1.0 / (w * (w - 1.0));
        flat *= half_pow(xi, d.flat.f2[c]) * half_pow(xip, d.flat.fp2[c]) * half_pow(xipp, d.flat.fpp2[c]);
    }
    return 0.5 * gluing_jacobian(d).determinant() / flat;
}

NzDatum block_datum(const BlockSolution& s, bool meridian_flattening) {
    NzDatum d = blank_datum(8, 6);
    const BlockRows& r = block_rows();
    for (int i = 0; i < 8; ++i)
        for (int c = 0; c < 8; ++c) {
            d.G(i, c) = r.g[i][c];
            d.Gp(i, c) = r.gp[i][c];
            d.Gpp(i, c) = r.gpp[i][c];
        }
    for (int c = 0; c < 8; ++c) d.z[c] = s.shapes[c].z;
    if (meridian_flattening) {
        d.flat.f2 << 1, 1, 1, -1, 0, 0, 0, 2;
        d.flat.fp2 << 0, 0, 0, -1, 1, 1, 1, -2;
        d.flat.fpp2 << 0, 0, 0, 3, 0, 0, 0, 1;
        d.flat.f2 *= 2;
        d.flat.fp2 *= 2;
        d.flat.fpp2 *= 2;
    } else {
        d.flat.f2.setConstant(1);
        d.flat.fp2.setZero();
        d.flat.fpp2.setConstant(1);
    }
    fix_winding(d);
    return d;
}

NzDatum block_datum(const Holonomy6& h, bool meridian_flattening) {
    return block_datum(solve_block_explicit(h), meridian_flattening);
}

NzDatum pachner_02(const NzDatum& d, const PachnerParams& p) {
    const int n = d.n, e = d.edges();
    if (p.edge_row < 0 || p.edge_row >= e) throw Error(ErrorKind::InvalidSplit, "edge_row is not an edge row");
    if (p.split1.g.size() != n || p.split1.gp.size() != n || p.split1.gpp.size() != n)
        throw Error(ErrorKind::InvalidSplit, "split row has the wrong length");
    if (!p.crossings.empty() && int(p.crossings.size()) != n)
        throw Error(ErrorKind::InvalidSplit, "one crossing count per row expected");
    if (!p.patterns.empty() && int(p.patterns.size()) != n)
        throw Error(ErrorKind::InvalidSplit, "one crossing pattern per row expected");
    for (int pat : p.patterns)
        if (pat != 1 && pat != 2) throw Error(ErrorKind::InvalidSplit, "crossing pattern must be 1 or 2");

    RowTriple s1 = p.split1;
    RowTriple s2{d.G.row(p.edge_row) - s1.g, d.Gp.row(p.edge_row) - s1.gp, d.Gpp.row(p.edge_row) - s1.gpp};

    // log-sum of split1 at the current shapes
    cplx f1 = 0.0;
    for (int c = 0; c < n; ++c) {
        const ShapeTriple t = ShapeTriple::of(d.z[c]);
        f1 += double(s1.g[c]) * std::log(t.z) + double(s1.gp[c]) * std::log(t.zp) + double(s1.gpp[c]) * std::log(t.zpp);
    }
    const cplx w1 = p.z_new1 ? *p.z_new1 : std::exp(-f1);
    const cplx w2 = p.z_new2 ? *p.z_new2 : 1.0 / w1;
    if (std::abs(w1 * w2 - 1.0) > 1e-9) throw Error(ErrorKind::InvalidSplit, "new shapes must multiply to 1");
    if (std::abs(std::exp(f1) * w1 - 1.0) > 1e-9)
        throw Error(ErrorKind::InvalidSplit, "new shapes do not satisfy the split edge equations");
    for (cplx w : {w1, w2})
        if (std::abs(w) < 1e-12 || std::abs(w - 1.0) < 1e-12)
            throw Error(ErrorKind::DegenerateShape, "new tetrahedron is degenerate");

    NzDatum out = blank_datum(n + 2, d.k);
    const int a = n, b = n + 1;
    // old row r goes to row map(r)
    auto map = [&](int r) { return r < e ? r : r + 2; };
    for (int r = 0; r < n; ++r) {
        const int t = map(r);
        if (r == p.edge_row) {
            out.G.row(t).head(n) = s1.g;
            out.Gp.row(t).head(n) = s1.gp;
            out.Gpp.row(t).head(n) = s1.gpp;
            out.G(t, a) = 1;
        } else {
            out.G.row(t).head(n) = d.G.row(r);
            out.Gp.row(t).head(n) = d.Gp.row(r);
            out.Gpp.row(t).head(n) = d.Gpp.row(r);
        }
        const int kc = p.crossings.empty() ? 0 : p.crossings[r];
        const int pat = p.patterns.empty() ? 1 : p.patterns[r];
        if (pat == 1) {
            out.Gp(t, a) += kc;
            out.Gpp(t, b) += kc;
        } else {
            out.Gpp(t, a) += kc;
            out.Gp(t, b) += kc;
        }
    }
    out.G.row(e).head(n) = s2.g;
    out.Gp.row(e).head(n) = s2.gp;
    out.Gpp.row(e).head(n) = s2.gpp;
    out.G(e, b) = 1;
    out.G(e + 1, a) = 1;
    out.G(e + 1, b) = 1;

    for (int c = 0; c < n; ++c) out.z[c] = d.z[c];
    out.z[a] = w1;
    out.z[b] = w2;

    const int S1 = row_flat2(s1.g, s1.gp, s1.gpp, d.flat);
    const int S2 = row_flat2(s2.g, s2.gp, s2.gpp, d.flat);
    out.flat.f2.head(n) = d.flat.f2;
    out.flat.fp2.head(n) = d.flat.fp2;
    out.flat.fpp2.head(n) = d.flat.fpp2;
    out.flat.f2[a] = S2;
    out.flat.fp2[a] = 0;
    out.flat.fpp2[a] = 2 - S2;
    out.flat.f2[b] = S1;
    out.flat.fp2[b] = 2 - S1;
    out.flat.fpp2[b] = 0;
    if (!validate_flattening(out).ok())
        throw Error(ErrorKind::FlatteningBroken, "extended flattening does not validate");
    fix_winding(out);
    return out;
}

FoldResult fill_fold(const NzDatum& d, int f_row, int g_row, int alpha_row, int t1, int t2) {
    const int n = d.n, e = d.edges();
    auto bad = [](const char* msg) { return Error(ErrorKind::PatternMismatch, msg); };
    if (f_row < 0 || f_row >= e || g_row < 0 || g_row >= e || f_row == g_row) throw bad("f and g must be distinct edge rows");
    if (alpha_row < e || alpha_row >= n) throw bad("alpha must be a curve row");
    if (t1 < 0 || t1 >= n || t2 < 0 || t2 >= n || t1 == t2) throw bad("bad filled columns");

    for (int r = 0; r < n; ++r) {
        for (int t : {t1, t2}) {
            int g = d.G(r, t), gp = d.Gp(r, t), gpp = d.Gpp(r, t);
            bool ok;
            if (r == f_row) ok = g == 0 && gp == 1 && gpp == 0;
            else if (r == g_row) ok = g == 0 && gp == 0 && gpp == 1;
            else if (r == alpha_row) ok = g == 0 && gp == (t == t1 ? 1 : -1) && gpp == (t == t1 ? -1 : 1);
            else ok = g == 0 && gp == 0 && gpp == 0;
            if (!ok) throw bad("local pattern in the filled columns does not match");
        }
    }
    for (int c = 0; c < n; ++c)
        if (c != t1 && c != t2 && (d.G(alpha_row, c) || d.Gp(alpha_row, c) || d.Gpp(alpha_row, c)))
            throw bad("alpha row must vanish outside the filled columns");
    if (std::abs(d.z[t1] * d.z[t2] - 1.0) > 1e-9) throw bad("filled shapes must multiply to 1");

    FoldResult res;
    const cplx z1 = d.z[t1], z2 = d.z[t2];
    res.gamma = std::log(1.0 / (1.0 - z1)) - std::log(1.0 / (1.0 - z2));
    const cplx s = std::sinh(res.gamma / 2.0);
    if (std::abs(4.0 * s * s) < 1e-12) throw Error(ErrorKind::DegenerateFill, "sinh(H(gamma)/2) vanishes");

    std::vector<int> rows, cols;
    for (int r = 0; r < n; ++r)
        if (r != g_row && r != alpha_row) rows.push_back(r);
    for (int c = 0; c < n; ++c)
        if (c != t1 && c != t2) cols.push_back(c);

    NzDatum out = blank_datum(n - 2, d.k - 1);
    for (int i = 0; i < int(rows.size()); ++i) {
        const int r = rows[i];
        for (int j = 0; j < int(cols.size()); ++j) {
            const int c = cols[j];
            out.G(i, j) = d.G(r, c) + (r == f_row ? d.G(g_row, c) : 0);
            out.Gp(i, j) = d.Gp(r, c) + (r == f_row ? d.Gp(g_row, c) : 0);
            out.Gpp(i, j) = d.Gpp(r, c) + (r == f_row ? d.Gpp(g_row, c) : 0);
        }
    }
    for (int j = 0; j < int(cols.size()); ++j) {
        out.z[j] = d.z[cols[j]];
        out.flat.f2[j] = d.flat.f2[cols[j]];
        out.flat.fp2[j] = d.flat.fp2[cols[j]];
        out.flat.fpp2[j] = d.flat.fpp2[cols[j]];
    }
    if (!validate_flattening(out).ok())
        throw Error(ErrorKind::FlatteningBroken, "restricted flattening does not validate on the filled datum");
    fix_winding(out);
    res.filled = std::move(out);
    return res;
}

cplx surgery_factor(const std::vector<cplx>& gammas) {
    cplx p = 1.0;
    for (cplx g : gammas) {
        const cplx s = std::sinh(g / 2.0);
        const cplx q = 4.0 * s * s;
        if (std::abs(q) < 1e-12) throw Error(ErrorKind::DegenerateFill, "sinh(H(gamma)/2) vanishes");
        p /= q;
    }
    return p;
}

cplx surgery_factor_torsion(const std::vector<cplx>& gammas) {
    cplx p = std::pow(2.0, -2.0 * double(gammas.size()));
    for (cplx g : gammas) {
        const cplx s = std::sinh(g / 2.0);
        if (std::abs(s) < 1e-12) throw Error(ErrorKind::DegenerateFill, "sinh(H(gamma)/2) vanishes");
        p /= s * s;
    }
    return p;
}

}  // namespace fslgeom
