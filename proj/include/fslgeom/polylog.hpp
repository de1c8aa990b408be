#pragma once

#include "fslgeom/error.hpp"

namespace fslgeom {

// Principal dilogarithm. On the cut (1, inf) the limit from the upper
// half-plane is returned.
cplx li2(cplx z);

// Bloch-Wigner function D(z) = Im Li2(z) + arg(1-z) log|z|, the volume of
// the ideal tetrahedron of shape z. Throws DegenerateShape near 0 and 1.
double bloch_wigner(cplx z);

}  // namespace fslgeom
