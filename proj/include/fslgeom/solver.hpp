#pragma once

#include <vector>

#include "fslgeom/dblock.hpp"
#include "fslgeom/nz.hpp"

namespace fslgeom {

struct NewtonConfig {
    int max_iters = 100;
    double residual_tol = 1e-12;
    double step_damping = 1.0;
};

struct NewtonStats {
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> history;  // residual before each step
};

// Damped Newton on the block system, halving the step (up to 20 times)
// whenever the residual does not decrease.
BlockSolution newton_block(const Holonomy6& h, const Shapes8& start, const NewtonConfig& cfg = {},
                           NewtonStats* stats = nullptr);

// Newton on F(z) = rhs for a generic datum. Only G, G', G'' and n are read
// from d; the returned vector holds the shapes.
std::vector<cplx> newton_generic(const NzDatum& d, const VectorXc& rhs, const std::vector<cplx>& start,
                                 const NewtonConfig& cfg = {}, NewtonStats* stats = nullptr);

// Explicit solution checked against Newton from all-i. If they disagree the
// opposite square-root sheet is tried, and failing that Newton wins.
BlockSolution solve_block(const Holonomy6& h);

}  // namespace fslgeom
