#pragma once

#include <cstdint>
#include <string_view>

namespace fqdist {

/// Largest field order accepted by Field::make.
inline constexpr std::uint64_t kMaxFieldOrder = 1'000'000;

/// Default ceiling on the number of terms any single exhaustive scan may
/// touch (pair scans, q^{2d} enumerations, Fourier tables).
inline constexpr std::uint64_t kDefaultMaxUniverse = 100'000'000;

/// Current scan ceiling. FQDIST_MAX_UNIVERSE overrides the default.
std::uint64_t max_universe();

/// Throws SizeLimitError if `work` exceeds max_universe().
void require_within_limit(std::uint64_t work, std::string_view what);

/// Saturating helpers for size arithmetic.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace fqdist
