#include "fslgeom/error.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace fslgeom {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::MalformedGluing: return "MalformedGluing";
    case ErrorKind::DegenerateShape: return "DegenerateShape";
    case ErrorKind::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidSplit: return "InvalidSplit";
    case ErrorKind::FlatteningBroken: return "FlatteningBroken";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::DegenerateFill: return "DegenerateFill";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind kind) {
    return kind == ErrorKind::InvalidInput || kind == ErrorKind::MalformedGluing ||
           kind == ErrorKind::InvalidSplit || kind == ErrorKind::PatternMismatch;
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

double unit_distance(cplx a, cplx b) {
    static const std::array<cplx, 4> units = {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
    double best = INFINITY;
    for (cplx u : units) best = std::min(best, std::abs(u * a - b));
    return best;
}

double unit_rel_error(cplx a, cplx b) {
    double scale = std::abs(b) > 1e-300 ? std::abs(b) : 1.0;
    return unit_distance(a, b) / scale;
}

cplx unit_normalize(cplx a) {
    constexpr double quarter = std::numbers::pi / 4;
    double t = std::arg(a);
    while (t > quarter) { a *= cplx(0, -1); t -= 2 * quarter; }
    while (t <= -quarter) { a *= cplx(0, 1); t += 2 * quarter; }
    return a;
}

}  // namespace fslgeom
