#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "miquel/circle_pattern.hpp"
#include "miquel/clifford.hpp"
#include "miquel/dimer.hpp"
#include "miquel/lattice.hpp"
#include "miquel/surface_graph.hpp"

// JSON formats. Parsers throw Error(ParseError) on malformed input.
namespace miquel::io {

using nlohmann::json;

json to_json(const ExtendedComplex& z);  // [re, im] or "inf"
ExtendedComplex complex_from_json(const json& j);

json to_json(const Circle& c);
Circle circle_from_json(const json& j);

// Face cycles list edge ids; dart directions are recovered by chaining. A face
// whose cycle chains both ways carries "start" (tail of its first dart), torus
// faces carry "offsets" (tail offsets) when any is nonzero.
json to_json(const SurfaceGraph& g);
SurfaceGraph graph_from_json(const json& j);

json to_json(const Periods& p);
Periods periods_from_json(const json& j);

json to_json(const FaceDrawing& d);  // {"graph", "centers", "periods"?}
FaceDrawing drawing_from_json(const json& j);

json to_json(const CirclePattern& p);  // {"graph", "vertices", "centers", "periods"?}
CirclePattern pattern_from_json(const json& j);

json to_json(const EdgeWeights& w);  // {edgeId: weight}
EdgeWeights weights_from_json(const json& j);

json to_json(const OctahedralPatch& p);  // {"window": [x0,x1,y0,y1,z0,z1], "values": {"x,y,z": ...}}
OctahedralPatch patch_from_json(const json& j);

json to_json(const CliffordConfiguration& cfg);
json to_json(const UrbanRenewalReport& r);
json to_json(const StarRatioField& f);

// Canonical text: two-space indentation and a trailing newline.
std::string dump(const json& j);
json parse(const std::string& text);
json read_file(const std::string& path);
// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace miquel::io
