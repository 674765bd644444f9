#include "fqdist/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fqdist/errors.hpp"

namespace fqdist {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open " + p.string() + " for writing");
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& p) {
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + p.string());
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_double(x));
}

void write_instances_csv(std::ostream& os, const VerificationReport& r) {
  os << "family,index,hypothesis_met,verdict,check,lhs,rhs,note\n";
  for (const auto& rec : r.instances) {
    const Check* c = rec.primary();
    os << csv_field(rec.family) << ',' << rec.index << ',' << (rec.hypothesis_met ? 1 : 0) << ','
       << to_string(rec.verdict()) << ',';
    if (c) {
      os << csv_field(c->name) << ',' << format_double(c->lhs) << ',' << format_double(c->rhs);
    } else {
      os << ",,";
    }
    os << ',' << csv_field(rec.note) << '\n';
  }
}

void write_scatter_csv(std::ostream& os, const VerificationReport& r) {
  os << "family,index,x,y\n";
  for (const auto& rec : r.instances) {
    if (!rec.scatter) continue;
    os << csv_field(rec.family) << ',' << rec.index << ',' << format_double(rec.scatter->first) << ','
       << format_double(rec.scatter->second) << '\n';
  }
}

void emit_report(const VerificationReport& r, const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path base(dir);
  std::error_code ec;
  fs::create_directories(base, ec);
  if (ec) throw std::runtime_error("cannot create " + base.string() + ": " + ec.message());

  const fs::path json_path = base / (r.theorem_id + ".json");
  auto js = open_out(json_path);
  js << r.to_json().dump(2) << '\n';
  finish(js, json_path);

  const fs::path inst_path = base / (r.theorem_id + "_instances.csv");
  auto is = open_out(inst_path);
  write_instances_csv(is, r);
  finish(is, inst_path);

  const fs::path scatter_path = base / (r.theorem_id + "_scatter.csv");
  auto ss = open_out(scatter_path);
  write_scatter_csv(ss, r);
  finish(ss, scatter_path);

  const fs::path timing_path = base / (r.theorem_id + "_timing.json");
  auto ts = open_out(timing_path);
  ts << nlohmann::json{{"theorem_id", r.theorem_id}, {"runtime_ms", round12(r.runtime_ms)}}.dump(2) << '\n';
  finish(ts, timing_path);
}

}  // namespace fqdist
