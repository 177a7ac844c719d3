#pragma once

#include "sic/fiducial_search.hpp"
#include "sic/overlaps.hpp"

#include <nlohmann/json.hpp>

namespace sic {

// Current on-disk format; readers refuse files written by a newer one.
inline constexpr int kFormatVersion = 1;

// All numerics are serialized as decimal strings at full working precision;
// raw binary floats never appear in the files. Key order is alphabetical and
// array orders are fixed, so identical inputs give byte-identical output.

nlohmann::json fiducial_to_json(const Fiducial& f);
Fiducial fiducial_from_json(const nlohmann::json& j);

nlohmann::json overlaps_to_json(const OverlapTable& t);
OverlapTable overlaps_from_json(const nlohmann::json& j);

std::string dump_deterministic(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace sic
