#pragma once

#include <ostream>
#include <string>

#include "fqdist/verify.hpp"

namespace fqdist {

/// Floats in reports and CSVs carry 12 significant digits.
std::string format_double(double x);
/// x rounded to 12 significant digits, for JSON output.
double round12(double x);

/// Columns: family, index, hypothesis_met, verdict, check, lhs, rhs, note.
void write_instances_csv(std::ostream& os, const VerificationReport& r);
/// Columns: family, index, x = |A||B|/q^d, y = |Delta|/q.
void write_scatter_csv(std::ostream& os, const VerificationReport& r);

/// Writes <dir>/<id>.json, <id>_instances.csv, <id>_scatter.csv and
/// <id>_timing.json. Creates dir if needed; I/O errors name the path.
void emit_report(const VerificationReport& r, const std::string& dir);

}  // namespace fqdist
