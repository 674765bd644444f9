#include "fqdist/pointset_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fqdist/errors.hpp"

namespace fqdist {

namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::uint64_t header_value(std::string_view field, std::string_view key) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  if (field.substr(0, key.size()) != key || field.size() <= key.size() ||
      field[key.size()] != '=') {
    throw ConfigError("PointSet CSV header must be 'dim=<d>,q=<q>'");
  }
  return parse_uint(field.substr(key.size() + 1), key);
}

}  // namespace

void write_pointset_csv(std::ostream& os, const PointSet& s, std::uint32_t q) {
  os << "dim=" << s.dim() << ",q=" << q << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto p = s[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) os << ',';
      os << p[j].index;
    }
    os << '\n';
  }
}

LoadedPointSet read_pointset_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty PointSet CSV");
  const auto head = split(line);
  if (head.size() != 2) throw ConfigError("PointSet CSV header must be 'dim=<d>,q=<q>'");
  const auto dim = header_value(head[0], "dim");
  const auto q = header_value(head[1], "q");
  if (dim == 0) throw ConfigError("PointSet dimension must be positive");

  std::vector<Vector> pts;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != dim) {
      throw ConfigError("row " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                        " columns, expected " + std::to_string(dim));
    }
    Vector v;
    for (auto c : cells) {
      const auto idx = parse_uint(c, "element index");
      if (idx >= q) throw ConfigError("element index out of range on row " + std::to_string(lineno));
      v.emplace_back(static_cast<std::uint32_t>(idx));
    }
    pts.push_back(std::move(v));
  }
  return {static_cast<std::uint32_t>(q), PointSet(dim, std::move(pts))};
}

LoadedPointSet read_pointset_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return read_pointset_csv(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_pointset_csv_file(const std::string& path, const PointSet& s, std::uint32_t q) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_pointset_csv(out, s, q);
  if (!out) throw std::runtime_error("write failed: " + path);
}

nlohmann::json pointset_to_json(const PointSet& s, std::uint32_t q) {
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (auto c : s[i]) row.push_back(c.index);
    pts.push_back(std::move(row));
  }
  return {{"dim", s.dim()}, {"q", q}, {"points", std::move(pts)}};
}

LoadedPointSet pointset_from_json(const nlohmann::json& j) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    const auto q = j.at("q").get<std::uint32_t>();
    std::vector<Vector> pts;
    for (const auto& row : j.at("points")) {
      Vector v;
      for (const auto& c : row) {
        const auto idx = c.get<std::uint32_t>();
        if (idx >= q) throw ConfigError("element index out of range");
        v.emplace_back(idx);
      }
      pts.push_back(std::move(v));
    }
    return {q, PointSet(dim, std::move(pts))};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed PointSet JSON: ") + e.what());
  }
}

}  // namespace fqdist
