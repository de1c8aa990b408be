#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fslgeom/dblock.hpp"
#include "fslgeom/error.hpp"

namespace fslgeom {

using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

// Half-integer flattening stored doubled: f = f2 / 2 etc.
struct Flattening {
    Eigen::VectorXi f2, fp2, fpp2;
};

// Neumann-Zagier datum. Rows are the n-k edge equations followed by the k
// curve equations; columns are tetrahedra.
struct NzDatum {
    int n = 0;
    int k = 0;
    Eigen::MatrixXi G, Gp, Gpp;
    std::vector<cplx> z;
    Eigen::VectorXi winding;
    Flattening flat;

    int edges() const { return n - k; }
};

struct FlatteningReport {
    bool sums_ok = true;      // f + f' + f'' = 1 per tetrahedron
    bool edges_ok = true;     // edge rows give 2
    bool curves_ok = true;    // curve rows give 0
    bool integral = true;     // no half-integers anywhere
    std::vector<int> bad_tets, bad_rows;

    bool ok() const { return sums_ok && edges_ok && curves_ok; }
};

FlatteningReport validate_flattening(const NzDatum& d);

// F(z) = G log z + G' log z' + G'' log z'' with principal logarithms.
VectorXc gluing_map(const NzDatum& d);
// D_z F = G diag(xi) + G' diag(xi') + G'' diag(xi'').
MatrixXc gluing_jacobian(const NzDatum& d);
// Curve holonomies read back from the curve rows.
VectorXc curve_holonomies(const NzDatum& d);
// Choose winding so that each edge row equals 2 pi i (1 + l).
void fix_winding(NzDatum& d);
// Max |F - (2 pi i, ..., H) - 2 pi i l| with H read back from the curve rows.
double gluing_residual(const NzDatum& d);

// Determinant formula 1/2 det((G-G') diag(z'') + (G''-G') diag(1/z)) prod z^f'' z''^-f.
cplx one_loop(const NzDatum& d);
// Symmetric formula 1/2 det(G diag(xi) + G' diag(xi') + G'' diag(xi'')) / prod xi^f xi'^f' xi''^f''.
cplx one_loop_symmetric(const NzDatum& d);

// Block datum: two central edge rows and six meridian rows on the eight
// block shapes. meridian_flattening selects the integral flattening with
// f = (1,1,1,-1,0,0,0,2) instead of the all-halves one.
NzDatum block_datum(const Holonomy6& h, bool meridian_flattening = false);
NzDatum block_datum(const BlockSolution& s, bool meridian_flattening = false);

struct RowTriple {
    Eigen::RowVectorXi g, gp, gpp;
};

struct PachnerParams {
    int edge_row = 0;
    RowTriple split1;                 // split2 = edge row - split1
    std::vector<int> crossings;       // per original row, 0 leaves the row alone
    std::vector<int> patterns;        // per original row, 1 or 2
    std::optional<cplx> z_new1;       // defaults to exp(-F_split1(z))
    std::optional<cplx> z_new2;       // defaults to 1 / z_new1
};

// 0-2 move: two new tetrahedra n, n+1; the chosen edge row becomes
// split1 + log z_n and a new row split2 + log z_{n+1} plus a new edge row
// log z_n + log z_{n+1} are inserted after the edges.
NzDatum pachner_02(const NzDatum& d, const PachnerParams& p);

struct FoldResult {
    NzDatum filled;
    cplx gamma;  // log z'_{t1} - log z'_{t2}
};

// Dehn-filling fold: rows f and g (edges) and alpha (curve) carry the local
// pattern of a filled cusp in columns t1, t2. They are replaced by the
// single edge row f + g, and the two columns are dropped.
FoldResult fill_fold(const NzDatum& d, int f_row, int g_row, int alpha_row, int t1, int t2);

// prod 1/(4 sinh^2(H/2)).
cplx surgery_factor(const std::vector<cplx>& gammas);
// 2^{-2m} prod 1/sinh^2(H/2), the torsion normalisation.
cplx surgery_factor_torsion(const std::vector<cplx>& gammas);

}  // namespace fslgeom
