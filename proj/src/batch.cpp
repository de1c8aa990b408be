#include "fslgeom/batch.hpp"

#include <algorithm>
#include <exception>
#include <string>

namespace fslgeom {

namespace {

// Runs body(i) for i in [0, n). Exceptions inside the parallel region are
// captured and the one with the lowest index is rethrown.
template <class Body>
void for_each_index(int n, Exec exec, Body body) {
    if (exec == Exec::Serial) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<double> block_volumes(const std::vector<Holonomy6>& samples, Exec exec) {
    std::vector<double> out(samples.size());
    for_each_index(int(samples.size()), exec, [&](int i) { out[i] = block_volume(samples[i]); });
    return out;
}

std::vector<double> explicit_residuals(const std::vector<Holonomy6>& samples, Exec exec) {
    std::vector<double> out(samples.size());
    for_each_index(int(samples.size()), exec, [&](int i) {
        const auto r = block_system(samples[i], solve_block_explicit(samples[i]).z());
        double worst = 0.0;
        for (cplx v : r) worst = std::max(worst, std::abs(v));
        out[i] = worst;
    });
    return out;
}

std::vector<SweepRow> sweep(const FslComplex& x, int component, double theta_min, double theta_max, int steps,
                            Exec exec) {
    if (steps < 1) throw Error(ErrorKind::InvalidInput, "sweep needs at least one step");
    if (component < 0 || component >= x.components().count())
        throw Error(ErrorKind::InvalidInput, "sweep component out of range");
    std::vector<SweepRow> rows(steps);
    for_each_index(steps, exec, [&](int i) {
        const double t = steps == 1 ? theta_min : theta_min + (theta_max - theta_min) * i / (steps - 1);
        std::vector<cplx> h = x.holonomies();
        h[component] = cplx(0.0, 2.0 * t);
        const FslComplex y = x.with_holonomies(h);
        rows[i] = {t, total_volume(y), std::abs(fsl_oneloop(y)), std::abs(fsl_torsion(y))};
    });
    return rows;
}

}  // namespace fslgeom
