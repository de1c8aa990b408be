#pragma once

#include <array>

#include <Eigen/Dense>

#include "fslgeom/error.hpp"

namespace fslgeom {

// Logarithmic meridian holonomies H(m_1..m_6) of one D-block. Opposite edge
// pairs are (1,4), (2,5), (3,6).
using Holonomy6 = std::array<cplx, 6>;
using Shapes8 = std::array<cplx, 8>;
using Matrix4c = Eigen::Matrix<cplx, 4, 4>;
using Matrix8c = Eigen::Matrix<cplx, 8, 8>;

struct ShapeTriple {
    cplx z, zp, zpp;  // z, 1/(1-z), 1-1/z
    static ShapeTriple of(cplx z);
};

// Shapes are ordered z1..z4, z~1..z~4.
struct BlockSolution {
    std::array<ShapeTriple, 8> shapes;
    cplx zstar;

    Shapes8 z() const;
    static BlockSolution from_shapes(const Shapes8& z, cplx zstar = 0.0);
};

// Canonical face/edge incidence, 0-based: face f holds edges face_edges[f].
// Face 1 = {e1,e6,e5}, face 2 = {e1,e2,e3}, face 3 = {e6,e2,e4}, face 4 = {e5,e3,e4}.
extern const std::array<std::array<int, 3>, 4> face_edges;
// The two faces each edge touches, lower index first.
extern const std::array<std::array<int, 2>, 6> edge_faces;

Matrix4c gram_matrix(const Holonomy6& h);
cplx gram_det(const Holonomy6& h);

struct Quadratic {
    cplx A, B, C;
    cplx discriminant() const { return B * B - 4.0 * A * C; }
};
Quadratic quadratic_coeffs(const Holonomy6& h);

// Closed-form solution of the block gluing system. The square-root sheet is
// the one continuous through h = 0 (Im sqrt >= 0); if the two central edge
// equations fail on that sheet the opposite sheet is used.
BlockSolution solve_block_explicit(const Holonomy6& h);

// Same formula on an explicitly chosen sheet: z* = (-B - sign*sqrt)/(2A).
BlockSolution solve_block_on_sheet(const Holonomy6& h, int sign);

// Coefficients of log z, log z', log z'' in the eight rows
// (e1, e2, m1..m6) against the eight shapes.
struct BlockRows {
    std::array<std::array<int, 8>, 8> g, gp, gpp;
};
const BlockRows& block_rows();

// Residuals (F_e1 - 2 pi i, F_e2 - 2 pi i, F_m1 - H1, ..., F_m6 - H6).
std::array<cplx, 8> block_system(const Holonomy6& h, const Shapes8& z);
Matrix8c block_jacobian(const Shapes8& z);

double block_volume(const Holonomy6& h);
double block_volume(const BlockSolution& s);

// Product of xi^f xi'^f' xi''^f'' with f = f'' = 1/2, f' = 0 over the block.
cplx block_flattening_product(const Shapes8& z);

struct IdentityPair {
    cplx lhs, rhs;
};
// lhs = det(D_z G_D) / flattening product, rhs = 32 sqrt(det Gram).
IdentityPair block_oneloop_identity(const Holonomy6& h);

}  // namespace fslgeom
