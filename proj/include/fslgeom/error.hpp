#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fslgeom {

using cplx = std::complex<double>;

enum class ErrorKind {
    InvalidInput,
    MalformedGluing,
    DegenerateShape,
    DegenerateQuadratic,
    SingularGram,
    SingularJacobian,
    NoConvergence,
    InvalidSplit,
    FlatteningBroken,
    PatternMismatch,
    DegenerateFill,
};

const char* to_string(ErrorKind kind);

// Input errors map to CLI exit code 2, everything else is a numerical
// degeneracy (exit code 3).
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Distance between a and b once a is rotated by the best of {1, -1, i, -i}.
double unit_distance(cplx a, cplx b);

// Relative version of unit_distance, scaled by |b| (or 1 if b is tiny).
double unit_rel_error(cplx a, cplx b);

// The representative of a's unit class with Arg in (-pi/4, pi/4].
cplx unit_normalize(cplx a);

}  // namespace fslgeom
