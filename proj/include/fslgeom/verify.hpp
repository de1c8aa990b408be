#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fslgeom/dblock.hpp"
#include "fslgeom/fsl.hpp"
#include "fslgeom/nz.hpp"

namespace fslgeom {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t default_seed = 20240611;
inline constexpr double catalan = 0.915965594177219015054603514932384110774;

// Seed from the FSLGEOM_SEED environment variable, else default_seed.
std::uint64_t env_seed();

// Each H uniform in the disk |H| <= radius.
Holonomy6 random_holonomy(Rng& rng, double radius = 0.3);
// Each H = i t with t uniform in [-radius, radius].
Holonomy6 random_imaginary_holonomy(Rng& rng, double radius = 0.3);

// Valid data: a block datum at random small holonomy (either flattening),
// followed by up to `moves` random 0-2 moves and random curve-row shears.
NzDatum random_valid_datum(Rng& rng, int moves = 2);
// Random split / crossing data for pachner_02 on d. The result is checked
// against d (the new shape must be nondegenerate).
PachnerParams random_pachner_params(const NzDatum& d, Rng& rng);

struct FoldInstance {
    NzDatum unfilled;  // carries the filled-cusp pattern
    NzDatum filled;    // the datum it should fold back to
    int f_row, g_row, alpha_row, t1, t2;
};
// Unfolds a random valid datum by splitting one edge row into f and g and
// adding two tetrahedra plus a curve row alpha.
FoldInstance synthetic_fold(Rng& rng);

std::vector<TargetCurve> random_targets(const FslComplex& x, Rng& rng);

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tol = 0.0;
    std::string detail;
};

// One check per acceptance criterion; tol is the pass threshold on `measured`.
CheckResult check_explicit_residual(Rng& rng, double tol = 1e-10);
CheckResult check_newton_agreement(Rng& rng, double tol = 1e-9);
CheckResult check_discriminant(Rng& rng, double tol = 1e-12);
CheckResult check_complete_anchors(double tol = 1e-12);
CheckResult check_block_identity(Rng& rng, double tol = 1e-9);
CheckResult check_fsl_oneloop(Rng& rng, double tol = 1e-9);
CheckResult check_volumes(Rng& rng, double tol = 1e-9);
CheckResult check_oneloop_forms(Rng& rng, double tol = 1e-10);
CheckResult check_pachner(Rng& rng, double tol = 1e-9);
CheckResult check_surgery(Rng& rng, double tol = 1e-9);
CheckResult check_change_of_curves(Rng& rng, double tol = 1e-6);
CheckResult check_flattenings();
CheckResult check_dilog(Rng& rng, double tol = 1e-12);

// Suites: all, dilog, block, fsl, nz, moves. A tolerance override replaces
// every check's default. Unknown names throw InvalidInput.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                   std::optional<double> tol = std::nullopt);

std::string format_check(const CheckResult& r);

}  // namespace fslgeom
