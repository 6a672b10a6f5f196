#pragma once

#include <string>

#include <json.hpp>

#include "zst/potential.hpp"
#include "zst/singleexp.hpp"
#include "zst/spectra.hpp"
#include "zst/zeroset.hpp"

namespace zst {

using Json = nlohmann::ordered_json;

// fixed key order, floats as %.15e, so equal inputs give equal bytes
std::string dump(const Json& j, int indent = 2);

Json to_json(cplx z);
cplx cplx_from_json(const Json& j);

Json to_json(const Potential& p);
Json to_json(const SingleExp& s);
Json to_json(const LabeledEigenvalue& e);
Json to_json(const Spectrum& s);
Json to_json(const ArcPolyline& a);
Json to_json(const Disc& d);

// {"K": K, "coeffs": [[[re, im], ...] x4]} or {"singleexp": {"sigma", "omega", "alpha", "c"}}
Potential potential_from_json(const Json& j);
// "zero", "random:K:norm:seed", "figure:ID", inline JSON or a path to a JSON file
Potential load_potential(const std::string& source);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace zst
