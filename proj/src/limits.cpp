#include "fqdist/limits.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "fqdist/errors.hpp"

namespace fqdist {

std::uint64_t max_universe() {
  const char* env = std::getenv("FQDIST_MAX_UNIVERSE");
  if (env == nullptr || *env == '\0') return kDefaultMaxUniverse;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) {
    throw ConfigError(std::string("FQDIST_MAX_UNIVERSE is not a positive integer: ") + env);
  }
  return v;
}

void require_within_limit(std::uint64_t work, std::string_view what) {
  const std::uint64_t limit = max_universe();
  if (work > limit) {
    throw SizeLimitError(std::string(what) + ": " + std::to_string(work) +
                         " terms exceeds the scan ceiling " + std::to_string(limit) +
                         " (set FQDIST_MAX_UNIVERSE to raise it)");
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

}  // namespace fqdist
