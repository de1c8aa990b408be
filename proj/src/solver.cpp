#include "fslgeom/solver.hpp"

#include <cmath>
#include <numbers>

namespace fslgeom {

namespace {


void check_config(const NewtonConfig& cfg) {
    if (cfg.max_iters < 1 || !(cfg.residual_tol > 0.0) || !(cfg.step_damping > 0.0) || cfg.step_damping > 1.0)
        throw Error(ErrorKind::InvalidInput, "bad Newton configuration");
}

bool degenerate(cplx w) { return std::abs(w) < 1e-10 || std::abs(w - 1.0) < 1e-10; }

// Shared Newton driver; residual(z) and jacobian(z) work on an Eigen vector.
template <class Residual, class Jacobian>
VectorXc newton(VectorXc z, Residual residual, Jacobian jacobian, const NewtonConfig& cfg, NewtonStats* stats) {
    check_config(cfg);
    for (int i = 0; i < z.size(); ++i)
        if (degenerate(z[i])) throw Error(ErrorKind::DegenerateShape, "Newton start is degenerate");

    VectorXc r = residual(z);
    double norm = r.norm();
    NewtonStats local;
    for (int it = 0;; ++it) {
        local.history.push_back(norm);
        if (norm < cfg.residual_tol) {
            local.iterations = it;
            local.residual = norm;
            if (stats) *stats = local;
            return z;
        }
        if (it >= cfg.max_iters) break;

        const MatrixXc j = jacobian(z);
        Eigen::PartialPivLU<MatrixXc> lu(j);
        if (std::abs(lu.determinant()) < 1e-14) throw Error(ErrorKind::SingularJacobian, "Newton Jacobian is singular");
        const VectorXc step = lu.solve(-r);

        double t = cfg.step_damping;
        bool accepted = false;
        for (int halving = 0; halving <= 20; ++halving, t *= 0.5) {
            VectorXc trial = z + t * step;
            bool bad = false;
            for (int i = 0; i < trial.size(); ++i) bad = bad || degenerate(trial[i]);
            if (bad) continue;
            VectorXc rt = residual(trial);
            const double nt = rt.norm();
            if (std::isfinite(nt) && nt < norm) {
                z = trial;
                r = rt;
                norm = nt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    throw Error(ErrorKind::NoConvergence, "Newton did not reach the residual tolerance");
}

VectorXc to_vec(const Shapes8& z) {
    VectorXc v(8);
    for (int i = 0; i < 8; ++i) v[i] = z[i];
    return v;
}

Shapes8 to_shapes(const VectorXc& v) {
    Shapes8 z;
    for (int i = 0; i < 8; ++i) z[i] = v[i];
    return z;
}

}  // namespace

BlockSolution newton_block(const Holonomy6& h, const Shapes8& start, const NewtonConfig& cfg, NewtonStats* stats) {
    auto residual = [&](const VectorXc& v) { return to_vec(block_system(h, to_shapes(v))); };
    auto jacobian = [&](const VectorXc& v) { return MatrixXc(block_jacobian(to_shapes(v))); };
    const VectorXc z = newton(to_vec(start), residual, jacobian, cfg, stats);
    return BlockSolution::from_shapes(to_shapes(z));
}

std::vector<cplx> newton_generic(const NzDatum& d, const VectorXc& rhs, const std::vector<cplx>& start,
                                 const NewtonConfig& cfg, NewtonStats* stats) {
    if (int(start.size()) != d.n || rhs.size() != d.n) throw Error(ErrorKind::InvalidInput, "size mismatch in newton_generic");
    NzDatum work = d;
    auto load = [&](const VectorXc& v) {
        for (int i = 0; i < d.n; ++i) work.z[i] = v[i];
    };
    auto residual = [&](const VectorXc& v) {
        load(v);
        return VectorXc(gluing_map(work) - rhs);
    };
    auto jacobian = [&](const VectorXc& v) {
        load(v);
        return gluing_jacobian(work);
    };
    VectorXc z0(d.n);
    for (int i = 0; i < d.n; ++i) z0[i] = start[i];
    const VectorXc z = newton(z0, residual, jacobian, cfg, stats);
    return std::vector<cplx>(z.data(), z.data() + z.size());
}

BlockSolution solve_block(const Holonomy6& h) {
    Shapes8 all_i;
    all_i.fill(cplx(0.0, 1.0));
    BlockSolution ref = newton_block(h, all_i);
    auto close = [&](const BlockSolution& s) {
        for (int k = 0; k < 8; ++k)
            if (std::abs(s.shapes[k].z - ref.shapes[k].z) > 1e-8) return false;
        return true;
    };
    for (int sign : {+1, -1}) {
        try {
            BlockSolution s = solve_block_on_sheet(h, sign);
            if (close(s)) return s;
        } catch (const Error&) {
        }
    }
    return ref;
}

}  // namespace fslgeom
