#pragma once

#include <json.hpp>

#include "fslgeom/fsl.hpp"
#include "fslgeom/nz.hpp"

namespace fslgeom {

// FSL document: {"blocks": c, "gluings": [{"from": [b, f], "to": [b, f],
// "edge_map": {"e": e', ...}}], "holonomies": [[re, im], ...]}.
// Blocks, faces and edges are 1-based in JSON.
FslComplex fsl_from_json(const nlohmann::json& doc);
nlohmann::json fsl_to_json(const FslComplex& x);

nlohmann::json nz_to_json(const NzDatum& d);
NzDatum nz_from_json(const nlohmann::json& doc);

nlohmann::json cplx_to_json(cplx z);
cplx cplx_from_json(const nlohmann::json& j);

}  // namespace fslgeom
