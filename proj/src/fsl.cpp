#include "fslgeom/fsl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

namespace fslgeom {

namespace {

Error malformed(const std::string& msg) { return Error(ErrorKind::MalformedGluing, msg); }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

bool face_has_edge(int face, int edge) {
    const auto& fe = face_edges[face];
    return std::find(fe.begin(), fe.end(), edge) != fe.end();
}

// endpoint key: (block, edge, face)
using Endpoint = std::tuple<int, int, int>;

}  // namespace

Components derive_components(int c, const std::vector<FaceGluing>& gluings) {
    if (c < 1) throw malformed("need at least one block");
    if (int(gluings.size()) != 2 * c) throw malformed("expected 2c face gluings");

    std::vector<int> seen(4 * c, 0);
    std::map<Endpoint, Endpoint> partner;
    UnionFind uf(6 * c);
    for (const FaceGluing& g : gluings) {
        for (const FaceRef& f : {g.from, g.to}) {
            if (f.block < 0 || f.block >= c || f.face < 0 || f.face >= 4) throw malformed("face reference out of range");
            if (seen[4 * f.block + f.face]++) throw malformed("face listed twice");
        }
        std::set<int> src, dst;
        for (const auto& [s, t] : g.edge_map) {
            if (s < 0 || s >= 6 || t < 0 || t >= 6) throw malformed("edge index out of range");
            if (!face_has_edge(g.from.face, s) || !face_has_edge(g.to.face, t))
                throw malformed("edge map does not respect the face/edge incidence");
            src.insert(s);
            dst.insert(t);
            const Endpoint a{g.from.block, s, g.from.face}, b{g.to.block, t, g.to.face};
            partner[a] = b;
            partner[b] = a;
            uf.unite(6 * g.from.block + s, 6 * g.to.block + t);
        }
        if (src.size() != 3 || dst.size() != 3) throw malformed("edge map is not a bijection");
    }

    // Partition from the union-find, keyed by the smallest member.
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < 6 * c; ++i) groups[uf.find(i)].push_back(i);

    Components out;
    out.id.assign(6 * c, -1);
    out.sign.assign(6 * c, 0);
    for (auto& [root, items] : groups) {
        const int start = *std::min_element(items.begin(), items.end());
        const int comp = out.count();
        out.members.emplace_back();
        // Walk the cycle from the smallest member in its canonical direction.
        int cur = start;
        int enter = edge_faces[start % 6][0];
        for (int steps = 0; steps <= 6 * c; ++steps) {
            const int b = cur / 6, e = cur % 6;
            out.members[comp].push_back({b, e});
            out.id[cur] = comp;
            out.sign[cur] = enter == edge_faces[e][0] ? 1 : -1;
            const int exit = enter == edge_faces[e][0] ? edge_faces[e][1] : edge_faces[e][0];
            const auto [nb, ne, nf] = partner.at({b, e, exit});
            cur = 6 * nb + ne;
            enter = nf;
            if (cur == start) break;
        }
        if (out.members[comp].size() != items.size()) throw malformed("link component is not a simple cycle");
    }
    return out;
}

FslComplex::FslComplex(int c, std::vector<FaceGluing> gluings, std::vector<cplx> holonomies)
    : c_(c), gluings_(std::move(gluings)), comps_(derive_components(c, gluings_)), hol_(std::move(holonomies)) {
    if (int(hol_.size()) != comps_.count())
        throw Error(ErrorKind::InvalidInput, "holonomy count " + std::to_string(hol_.size()) + " does not match " +
                                                 std::to_string(comps_.count()) + " link components");
}

Holonomy6 FslComplex::pullback(int block) const {
    Holonomy6 h;
    for (int l = 0; l < 6; ++l) {
        const int i = 6 * block + l;
        h[l] = double(comps_.sign[i]) * hol_[comps_.id[i]];
    }
    return h;
}

FslComplex FslComplex::with_holonomies(std::vector<cplx> h) const { return FslComplex(c_, gluings_, std::move(h)); }

FslComplex doubled_tetrahedron(const std::vector<cplx>& holonomies) {
    std::vector<FaceGluing> g;
    for (int f = 0; f < 4; ++f) {
        FaceGluing fg;
        fg.from = {0, f};
        fg.to = {1, f};
        for (int j = 0; j < 3; ++j) fg.edge_map[j] = {face_edges[f][j], face_edges[f][j]};
        g.push_back(fg);
    }
    return FslComplex(2, g, holonomies);
}

FslComplex self_glued_block(const std::vector<cplx>& holonomies) {
    FaceGluing a, b;
    a.from = {0, 0};
    a.to = {0, 1};
    a.edge_map = {{{0, 0}, {5, 1}, {4, 2}}};
    b.from = {0, 2};
    b.to = {0, 3};
    b.edge_map = {{{5, 4}, {1, 2}, {3, 3}}};
    return FslComplex(1, {a, b}, holonomies);
}

FslSolution assemble_solution(const FslComplex& x) {
    FslSolution sol;
    for (int b = 0; b < x.blocks(); ++b) {
        const Holonomy6 h = x.pullback(b);
        try {
            BlockSolution s = solve_block_explicit(h);
            double worst = 0.0;
            for (cplx r : block_system(h, s.z())) worst = std::max(worst, std::abs(r));
            if (worst > 1e-10) throw Error(ErrorKind::NoConvergence, "explicit solution residual too large");
            sol.blocks.push_back(s);
        } catch (const Error& e) {
            throw Error(e.kind(), "block " + std::to_string(b + 1) + ": " + e.what());
        }
    }
    return sol;
}

double total_volume(const FslComplex& x) {
    double v = 0.0;
    for (const BlockSolution& s : assemble_solution(x).blocks) v += block_volume(s);
    return v;
}

double hyperideal_volume(const std::array<double, 6>& theta) {
    Holonomy6 plus, minus;
    for (int l = 0; l < 6; ++l) {
        plus[l] = cplx(0.0, 2.0 * theta[l]);
        minus[l] = -plus[l];
    }
    return 0.25 * (block_volume(plus) + block_volume(minus));
}

cplx fsl_oneloop(const FslComplex& x) {
    cplx tau = std::pow(2.0, -2.0 * x.blocks());
    for (const BlockSolution& s : assemble_solution(x).blocks) {
        const Shapes8 z = s.z();
        tau *= block_jacobian(z).determinant() / block_flattening_product(z);
    }
    return tau;
}

cplx fsl_torsion(const FslComplex& x) {
    cplx t = std::pow(2.0, 3.0 * x.blocks());
    for (int b = 0; b < x.blocks(); ++b) {
        const cplx d = gram_det(x.pullback(b));
        if (std::abs(d) < 1e-12) throw Error(ErrorKind::SingularGram, "block " + std::to_string(b + 1) + ": det Gram vanishes");
        t *= std::sqrt(d);
    }
    return t;
}

namespace {

void check_targets(const FslComplex& x, const std::vector<TargetCurve>& target) {
    if (int(target.size()) != x.components().count())
        throw Error(ErrorKind::InvalidInput, "one target curve per link component expected");
    for (const TargetCurve& t : target)
        if (!t.coeffs.empty() && int(t.coeffs.size()) != 24 * x.blocks())
            throw Error(ErrorKind::InvalidInput, "curve descriptor needs 24 coefficients per block");
}

cplx proxy_value(const TargetCurve& t, const FslSolution& sol) {
    cplx v = 0.0;
    if (t.coeffs.empty()) return v;
    for (int b = 0; b < int(sol.blocks.size()); ++b)
        for (int s = 0; s < 8; ++s) {
            const ShapeTriple& st = sol.blocks[b].shapes[s];
            const int* c = &t.coeffs[24 * b + 3 * s];
            v += double(c[0]) * std::log(st.z) + double(c[1]) * std::log(st.zp) + double(c[2]) * std::log(st.zpp);
        }
    return v;
}

}  // namespace

cplx change_of_curves_factor(const FslComplex& x, const std::vector<TargetCurve>& target, double step) {
    check_targets(x, target);
    const int n = x.components().count();
    auto eval = [&](const std::vector<cplx>& h) {
        const FslSolution sol = assemble_solution(x.with_holonomies(h));
        VectorXc out(n);
        for (int j = 0; j < n; ++j) out[j] = double(target[j].p) * h[j] + double(target[j].q) * proxy_value(target[j], sol);
        return out;
    };
    MatrixXc jac(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<cplx> hp = x.holonomies(), hm = x.holonomies();
        hp[j] += step;
        hm[j] -= step;
        jac.col(j) = (eval(hp) - eval(hm)) / (2.0 * step);
    }
    const cplx det = jac.determinant();
    if (std::abs(det) < 1e-12) throw Error(ErrorKind::SingularJacobian, "change-of-curves Jacobian is singular");
    return det;
}

cplx fsl_oneloop_with_curves(const FslComplex& x, const std::vector<TargetCurve>& target) {
    check_targets(x, target);
    const int c = x.blocks();
    const FslSolution sol = assemble_solution(x);
    MatrixXc j0 = MatrixXc::Zero(8 * c, 8 * c);
    cplx flat = 1.0;
    for (int b = 0; b < c; ++b) {
        const Shapes8 z = sol.blocks[b].z();
        j0.block(8 * b, 8 * b, 8, 8) = block_jacobian(z);
        flat *= block_flattening_product(z);
    }
    const Components& comps = x.components();
    MatrixXc m = j0;
    for (int p = 0; p < comps.count(); ++p) {
        const auto& mem = comps.members[p];
        const int rep = 6 * mem[0].block + mem[0].edge;
        const int rep_row = 8 * mem[0].block + 2 + mem[0].edge;
        const double s0 = comps.sign[rep];
        for (size_t i = 1; i < mem.size(); ++i) {
            const int idx = 6 * mem[i].block + mem[i].edge;
            const int row = 8 * mem[i].block + 2 + mem[i].edge;
            m.row(row) = double(comps.sign[idx]) * j0.row(row) - s0 * j0.row(rep_row);
        }
        const TargetCurve& t = target[p];
        Eigen::RowVectorXcd proxy = Eigen::RowVectorXcd::Zero(8 * c);
        if (!t.coeffs.empty())
            for (int b = 0; b < c; ++b)
                for (int s = 0; s < 8; ++s) {
                    const cplx w = sol.blocks[b].shapes[s].z;
                    const int* cf = &t.coeffs[24 * b + 3 * s];
                    proxy[8 * b + s] = double(cf[0]) / w + double(cf[1]) / (1.0 - w) + double(cf[2]) / (w * (w - 1.0));
                }
        m.row(rep_row) = double(t.p) * s0 * j0.row(rep_row) + double(t.q) * proxy;
    }
    return std::pow(2.0, -2.0 * c) * m.determinant() / flat;
}

}  // namespace fslgeom
