#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fqdist/geometry.hpp"

namespace fqdist {

// CSV layout: header "dim=<d>,q=<q>", then one row per point with d
// comma-separated element indices.

struct LoadedPointSet {
  std::uint32_t q = 0;
  PointSet points;
};

void write_pointset_csv(std::ostream& os, const PointSet& s, std::uint32_t q);
LoadedPointSet read_pointset_csv(std::istream& is);
LoadedPointSet read_pointset_csv_file(const std::string& path);
void write_pointset_csv_file(const std::string& path, const PointSet& s, std::uint32_t q);

/// {"dim": d, "q": q, "points": [[...], ...]}
nlohmann::json pointset_to_json(const PointSet& s, std::uint32_t q);
LoadedPointSet pointset_from_json(const nlohmann::json& j);

}  // namespace fqdist
