#pragma once

// File formats for the CLI.
//
// Cone descriptors:
//   {"type":"lorentz","dim":4}
//   {"type":"pnorm","dim":3,"p":4.0}
//   {"type":"linear_image","matrix":[[...],...],"base":{...}}
//   {"type":"cross_section","body":{"type":"disk","radius":1.0}}
//   {"type":"cross_section","body":{"type":"lens","center_offset":0.5}}
//   {"type":"orthant2"}
// Points: {"coords":[...]}; for Lorentz cones {"h":[...],"lam":...} is
// accepted anywhere a point is.
//
// Malformed input throws parse_error.

#include "conelab/cone.hpp"
#include "conelab/reconstruct.hpp"
#include "conelab/verify.hpp"

#include <json.hpp>

#include <string>

namespace conelab {

using Json = nlohmann::ordered_json;

ConePtr cone_from_json(const Json& j);
ConePtr load_cone(const std::string& path);

Vec point_from_json(const Json& j, const Cone& K);
Vec load_point(const std::string& path, const Cone& K);

Json to_json(const VerificationReport& r);
Json to_json(const ReconstructionReport& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace conelab
