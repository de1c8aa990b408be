#pragma once

#include <array>
#include <vector>

#include "fslgeom/dblock.hpp"
#include "fslgeom/nz.hpp"

namespace fslgeom {

// All indices are 0-based here; the JSON layer converts from 1-based.
struct FaceRef {
    int block = 0;
    int face = 0;
    bool operator==(const FaceRef&) const = default;
};

struct FaceGluing {
    FaceRef from, to;
    // (source edge, target edge) for the three edges of the source face.
    std::array<std::array<int, 2>, 3> edge_map{};
};

struct EdgeRef {
    int block = 0;
    int edge = 0;
    bool operator==(const EdgeRef&) const = default;
    auto operator<=>(const EdgeRef&) const = default;
};

struct Components {
    // members[j] lists the (block, edge) pairs of component j in traversal
    // order; components are sorted by their smallest member.
    std::vector<std::vector<EdgeRef>> members;
    std::vector<int> id;    // component of (block, edge), index 6*block + edge
    std::vector<int> sign;  // +1 if the traversal runs from the lower face to the higher face

    int count() const { return int(members.size()); }
};

Components derive_components(int c, const std::vector<FaceGluing>& gluings);

class FslComplex {
public:
    FslComplex(int c, std::vector<FaceGluing> gluings, std::vector<cplx> holonomies);

    int blocks() const { return c_; }
    const std::vector<FaceGluing>& gluings() const { return gluings_; }
    const Components& components() const { return comps_; }
    const std::vector<cplx>& holonomies() const { return hol_; }

    // Per-block holonomies: each edge reads its component's holonomy, with
    // the sign of the traversal direction.
    Holonomy6 pullback(int block) const;
    FslComplex with_holonomies(std::vector<cplx> h) const;

private:
    int c_;
    std::vector<FaceGluing> gluings_;
    Components comps_;
    std::vector<cplx> hol_;
};

// Faces 1<->1, ..., 4<->4 of two blocks with identity edge maps.
FslComplex doubled_tetrahedron(const std::vector<cplx>& holonomies);
// One block with face 1<->2 and 3<->4 glued.
FslComplex self_glued_block(const std::vector<cplx>& holonomies);

struct FslSolution {
    std::vector<BlockSolution> blocks;
};

FslSolution assemble_solution(const FslComplex& x);
double total_volume(const FslComplex& x);

// 1/4 (Vol_D(2 theta i) + Vol_D(-2 theta i)).
double hyperideal_volume(const std::array<double, 6>& theta);

// 2^{-2c} prod det(block Jacobian) / prod flattening products.
cplx fsl_oneloop(const FslComplex& x);
// 2^{3c} prod sqrt(det Gram_k).
cplx fsl_torsion(const FslComplex& x);

// A curve on one component: p * meridian + q * proxy, where the proxy is the
// integer combination of log-shapes given by coeffs. coeffs holds 24 entries
// per block: for each of the 8 shapes the coefficients of log z, log z',
// log z''.
struct TargetCurve {
    int p = 1;
    int q = 0;
    std::vector<int> coeffs;
};

// det(dH(target_i)/dH(m_j)) by central differences of the assembled solution.
cplx change_of_curves_factor(const FslComplex& x, const std::vector<TargetCurve>& target, double step = 1e-6);

// 1-loop of the block-diagonal system after replacing one meridian row per
// component by the target curve row; with p = 1, q = 0 everywhere this is
// fsl_oneloop up to sign.
cplx fsl_oneloop_with_curves(const FslComplex& x, const std::vector<TargetCurve>& target);

}  // namespace fslgeom
