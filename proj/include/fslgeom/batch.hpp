#pragma once

#include <vector>

#include "fslgeom/dblock.hpp"
#include "fslgeom/fsl.hpp"

namespace fslgeom {

// Serial kernels are the reference; the parallel ones split the sample loop
// with OpenMP and must agree bit for bit.
enum class Exec { Serial, Parallel };

std::vector<double> block_volumes(const std::vector<Holonomy6>& samples, Exec exec);

// Max |residual| of the block system at the explicit solution, per sample.
std::vector<double> explicit_residuals(const std::vector<Holonomy6>& samples, Exec exec);

struct SweepRow {
    double theta = 0.0;
    double volume = 0.0;
    double tau_abs = 0.0;
    double torsion_abs = 0.0;
};

// Sets the chosen component's holonomy to 2 theta i for theta evenly spaced
// in [theta_min, theta_max] (steps points) and evaluates each sample.
std::vector<SweepRow> sweep(const FslComplex& x, int component, double theta_min, double theta_max, int steps,
                            Exec exec);

}  // namespace fslgeom
