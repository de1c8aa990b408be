#include "fslgeom/dblock.hpp"

#include <cmath>
#include <numbers>

#include "fslgeom/polylog.hpp"

namespace fslgeom {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double eps = 1e-12;

void check_shape(cplx z, const char* where) {
    if (std::abs(z) < eps || std::abs(z - 1.0) < eps)
        throw Error(ErrorKind::DegenerateShape, std::string(where) + ": shape too close to 0 or 1");
}

cplx safe_div(cplx num, cplx den) {
    if (std::abs(den) < eps)
        throw Error(ErrorKind::DegenerateShape, "explicit solution: vanishing denominator");
    return num / den;
}

BlockRows make_rows() {
    BlockRows r{};
    // columns: 0..3 = z1..z4, 4..7 = z~1..z~4
    for (int k = 0; k < 4; ++k) {
        r.g[0][k] = 1;
        r.g[1][4 + k] = 1;
    }
    // m1 = log z4 + log z~4 - log z3'' - log z1' - log z~1'' - log z~3'
    r.g[2][3] = 1; r.g[2][7] = 1; r.gpp[2][2] = -1; r.gp[2][0] = -1; r.gpp[2][4] = -1; r.gp[2][6] = -1;
    // m2 = log z4' + log z~4'' - log z1' - log z~1''
    r.gp[3][3] = 1; r.gpp[3][7] = 1; r.gp[3][0] = -1; r.gpp[3][4] = -1;
    // m3 = log z1'' + log z~1' - log z2'' - log z~2'
    r.gpp[4][0] = 1; r.gp[4][4] = 1; r.gpp[4][1] = -1; r.gp[4][5] = -1;
    // m4 = log z3 + log z~3 - log z4'' - log z2' - log z~2'' - log z~4'
    r.g[5][2] = 1; r.g[5][6] = 1; r.gpp[5][3] = -1; r.gp[5][1] = -1; r.gpp[5][5] = -1; r.gp[5][7] = -1;
    // m5 = log z2' + log z~2'' - log z3' - log z~3''
    r.gp[6][1] = 1; r.gpp[6][5] = 1; r.gp[6][2] = -1; r.gpp[6][6] = -1;
    // m6 = log z4'' + log z~4' - log z3'' - log z~3'
    r.gpp[7][3] = 1; r.gp[7][7] = 1; r.gpp[7][2] = -1; r.gp[7][6] = -1;
    return r;
}

}  // namespace

const std::array<std::array<int, 3>, 4> face_edges = {{{0, 5, 4}, {0, 1, 2}, {5, 1, 3}, {4, 2, 3}}};
const std::array<std::array<int, 2>, 6> edge_faces = {{{0, 1}, {1, 2}, {1, 3}, {2, 3}, {0, 3}, {0, 2}}};

ShapeTriple ShapeTriple::of(cplx z) { return {z, 1.0 / (1.0 - z), 1.0 - 1.0 / z}; }

Shapes8 BlockSolution::z() const {
    Shapes8 out;
    for (int k = 0; k < 8; ++k) out[k] = shapes[k].z;
    return out;
}

BlockSolution BlockSolution::from_shapes(const Shapes8& z, cplx zstar) {
    BlockSolution s;
    for (int k = 0; k < 8; ++k) s.shapes[k] = ShapeTriple::of(z[k]);
    s.zstar = zstar;
    return s;
}

Matrix4c gram_matrix(const Holonomy6& h) {
    std::array<cplx, 6> c;
    for (int l = 0; l < 6; ++l) c[l] = -std::cosh(h[l] / 2.0);
    Matrix4c g;
    g << 1.0, c[0], c[5], c[4],
         c[0], 1.0, c[1], c[2],
         c[5], c[1], 1.0, c[3],
         c[4], c[2], c[3], 1.0;
    return g;
}

cplx gram_det(const Holonomy6& h) { return gram_matrix(h).determinant(); }

Quadratic quadratic_coeffs(const Holonomy6& h) {
    std::array<cplx, 7> u;
    for (int l = 0; l < 6; ++l) u[l + 1] = std::exp(h[l] / 2.0);
    const cplx u1 = u[1], u2 = u[2], u3 = u[3], u4 = u[4], u5 = u[5], u6 = u[6];
    Quadratic q;
    q.A = -u1 / u4 - u1 * u3 / u2 - u1 / (u2 * u3) - u1 / (u2 * u2 * u4) - u5 / u2 - u6 / (u2 * u4) -
          1.0 / (u2 * u4 * u6) - 1.0 / (u2 * u5);
    q.B = -u1 * u4 + u1 / u4 + u4 / u1 - 1.0 / (u1 * u4) + u2 * u5 + u2 / u5 + u5 / u2 + 1.0 / (u2 * u5) -
          u3 * u6 - u3 / u6 - u6 / u3 - 1.0 / (u3 * u6);
    q.C = -u4 / u1 - u2 / (u1 * u3) - u2 * u3 / u1 - u2 * u2 * u4 / u1 - u2 / u5 - u2 * u4 / u6 -
          u2 * u4 * u6 - u2 * u5;
    return q;
}

BlockSolution solve_block_on_sheet(const Holonomy6& h, int sign) {
    const Quadratic q = quadratic_coeffs(h);
    if (std::abs(q.A) <= eps) throw Error(ErrorKind::DegenerateQuadratic, "|A| below 1e-12");
    cplx s = std::sqrt(q.discriminant());
    if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
    const cplx zs = (-q.B - double(sign) * s) / (2.0 * q.A);

    std::array<cplx, 7> u;
    for (int l = 0; l < 6; ++l) u[l + 1] = std::exp(h[l] / 2.0);
    const cplx u1 = u[1], u2 = u[2], u3 = u[3], u4 = u[4], u5 = u[5], u6 = u[6];

    Shapes8 z;
    z[0] = safe_div(zs - u2 * u2, zs + u2 * u3 * u4);
    z[1] = safe_div(zs * u1 * u3 * u5 - u2 * u3 * u4, zs * u1 * u3 * u5 + u1 * u2 * u4 * u5);
    z[2] = safe_div(zs * u1 * u6 - u2 * u4 * u5 * u6, zs * u1 * u6 + u2);
    z[3] = safe_div(zs * u1 - u1, zs * u1 + u2 * u6);
    z[4] = -safe_div(zs * u2 + u2 * u2 * u3 * u4, zs * u3 * u4 - u2 * u2 * u3 * u4);
    z[5] = -safe_div(zs * u3 + u2 * u4, zs * u1 * u5 - u2 * u4);
    z[6] = -safe_div(zs * u1 * u4 * u5 * u6 + u2 * u4 * u5, zs * u1 - u2 * u4 * u5);
    z[7] = -safe_div(zs * u1 + u2 * u6, zs * u2 * u6 - u2 * u6);
    for (cplx w : z) check_shape(w, "explicit solution");
    return BlockSolution::from_shapes(z, zs);
}

BlockSolution solve_block_explicit(const Holonomy6& h) {
    auto central_ok = [&](const BlockSolution& s) {
        auto r = block_system(h, s.z());
        return std::abs(r[0]) < 1e-8 && std::abs(r[1]) < 1e-8;
    };
    BlockSolution s = solve_block_on_sheet(h, +1);
    if (central_ok(s)) return s;
    try {
        BlockSolution t = solve_block_on_sheet(h, -1);
        if (central_ok(t)) return t;
    } catch (const Error&) {
    }
    return s;
}

const BlockRows& block_rows() {
    static const BlockRows rows = make_rows();
    return rows;
}

std::array<cplx, 8> block_system(const Holonomy6& h, const Shapes8& z) {
    const BlockRows& r = block_rows();
    std::array<cplx, 8> lz, lzp, lzpp;
    for (int k = 0; k < 8; ++k) {
        check_shape(z[k], "block_system");
        ShapeTriple t = ShapeTriple::of(z[k]);
        lz[k] = std::log(t.z);
        lzp[k] = std::log(t.zp);
        lzpp[k] = std::log(t.zpp);
    }
    std::array<cplx, 8> out;
    for (int i = 0; i < 8; ++i) {
        cplx f = 0.0;
        for (int k = 0; k < 8; ++k) f += double(r.g[i][k]) * lz[k] + double(r.gp[i][k]) * lzp[k] + double(r.gpp[i][k]) * lzpp[k];
        out[i] = f - (i < 2 ? cplx(0.0, two_pi) : h[i - 2]);
    }
    return out;
}

Matrix8c block_jacobian(const Shapes8& z) {
    const BlockRows& r = block_rows();
    Matrix8c j;
    for (int k = 0; k < 8; ++k) {
        check_shape(z[k], "block_jacobian");
        const cplx xi = 1.0 / z[k], xip = 1.0 / (1.0 - z[k]), xipp = 1.0 / (z[k] * (z[k] - 1.0));
        for (int i = 0; i < 8; ++i) j(i, k) = double(r.g[i][k]) * xi + double(r.gp[i][k]) * xip + double(r.gpp[i][k]) * xipp;
    }
    return j;
}

double block_volume(const BlockSolution& s) {
    double v = 0.0;
    for (const auto& t : s.shapes) v += bloch_wigner(t.z);
    return v;
}

double block_volume(const Holonomy6& h) { return block_volume(solve_block_explicit(h)); }

cplx block_flattening_product(const Shapes8& z) {
    cplx p = 1.0;
    for (cplx w : z) {
        const cplx xi = 1.0 / w, xipp = 1.0 / (w * (w - 1.0));
        p *= std::sqrt(xi) * std::sqrt(xipp);
    }
    return p;
}

IdentityPair block_oneloop_identity(const Holonomy6& h) {
    const Shapes8 z = solve_block_explicit(h).z();
    IdentityPair out;
    out.lhs = block_jacobian(z).determinant() / block_flattening_product(z);
    out.rhs = 32.0 * std::sqrt(gram_det(h));
    return out;
}

}  // namespace fslgeom
