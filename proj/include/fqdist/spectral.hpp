#pragma once

// Discrete Fourier analysis of indicator functions on F_q^d.
//
//   E^(m) = q^{-d} sum_{x in E} chi(-m . x)
//
// Tables are dense over all q^d frequencies, indexed by encode_point(m).

#include <cstdint>
#include <vector>

#include "fqdist/field.hpp"
#include "fqdist/geometry.hpp"

namespace fqdist {

struct FourierTable {
  std::size_t dim = 0;
  std::uint32_t q = 0;
  std::size_t source_size = 0;
  std::vector<CharacterValue> values;

  CharacterValue at(const Field& f, VectorView m) const { return values[encode_point(f, m)]; }
};

FourierTable fourier_indicator(const Field& f, const PointSet& e);
/// sum_m |E^(m)|^2.
double plancherel_sum(const FourierTable& t);
/// sum_m chi(m . x) E^(m); equals 1_E(x) up to rounding.
CharacterValue fourier_inverse_at(const Field& f, const FourierTable& t, VectorView x);

/// Closed-form Fourier transform of V_0 = {X in F_q^{2d} : ||X||_* = 0} at M.
/// Throws ConfigError for odd-length M.
double v0_fourier_formula(const Field& f, VectorView M);
/// V_0 as an explicit point set (q^{2d} scan).
PointSet v0_enumerate(const Field& f, std::size_t d);
/// q^{-2d} sum_{X in V_0} chi(-M . X) by direct summation.
CharacterValue v0_fourier_bruteforce(const Field& f, VectorView M);
CharacterValue v0_fourier_bruteforce(const Field& f, VectorView M, const PointSet& v0);

/// R_t(B) = sum_{m in S_t} |B^(m)|^2.
double restriction_sum(const Field& f, const FourierTable& b_hat, Elem t);
/// R_t(B) for every t (index = t).
std::vector<double> restriction_profile(const Field& f, const FourierTable& b_hat);
double max_restriction(const Field& f, const FourierTable& b_hat);

struct NuProfile {
  std::vector<std::uint64_t> counts;  // index = t
  std::size_t size_a = 0, size_b = 0;

  std::uint64_t total() const;
  std::size_t support_size() const;
  std::uint64_t sum_of_squares() const;
};

/// nu(t) = #{(x, y) in A x B : ||x - y|| = t}.
NuProfile nu_profile(const Field& f, const PointSet& a, const PointSet& b);

/// sum_t nu(t)^2, computed from nu and again as the number of quadruples
/// (x, z, y, w) in A x A x B x B with ||(x, z) - (y, w)||_* = 0. Throws
/// ConsistencyError if the two disagree.
std::uint64_t second_moment(const Field& f, const PointSet& a, const PointSet& b);
/// q^{4d} sum_M V0^(M) conj((AxA)^(M)) (BxB)^(M), the spectral form of the
/// same second moment.
double second_moment_spectral(const Field& f, const PointSet& a, const PointSet& b);

/// |A|^2 |B|^2 / (q^{-1} |A|^2 |B|^2 + q^{2d} |A| max_t R_t(B)).
double distance_lower_bound(const Field& f, const PointSet& a, const PointSet& b);
double distance_lower_bound(const Field& f, std::size_t size_a, std::size_t size_b,
                            std::size_t dim, double max_restriction_b);
/// max of distance_lower_bound(A, B) and distance_lower_bound(B, A).
double distance_lower_bound_symmetric(const Field& f, const PointSet& a, const PointSet& b);

/// |A|^2 |B|^2 / sum_t nu(t)^2.
double cauchy_schwarz_bound(const Field& f, const PointSet& a, const PointSet& b);
double cauchy_schwarz_bound(const NuProfile& nu);

/// Right-hand side of the second-moment estimate,
/// q^{-1}|A|^2|B|^2 + q^{2d}|A| max_t R_t(B).
double second_moment_upper(const Field& f, std::size_t size_a, std::size_t size_b,
                           std::size_t dim, double max_restriction_b);

}  // namespace fqdist
