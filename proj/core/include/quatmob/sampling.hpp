#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "quatmob/qmatrix.hpp"
#include "quatmob/spectral.hpp"

namespace quatmob {

/// Independent stream per (seed, stream, index) so samples can be drawn in
/// any order or in parallel and still come out identical.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

Quaternion random_unit_quaternion(std::mt19937_64& rng);

/// Spectral condition number of phi(S).
double condition_number(const QMatrix2& s);

/// Random element of SL(2,H) built from unit-quaternion diagonals and real
/// shears, with condition_number <= cond_bound. Shears shrink on rejection,
/// so any cond_bound >= 1 terminates.
QMatrix2 random_sl_conjugator(std::mt19937_64& rng, double cond_bound = 20.0);

/// Names accepted by sample_family: "case-1" .. "case-8" and named forms
/// such as "parabolic", "elliptic-distinct", "central", "involution".
const std::vector<std::string>& family_names();
bool is_known_family(std::string_view family);

/// Angles keep at least this distance from the predicate boundaries
/// (theta = phi, theta + phi = pi, theta = pi/2) unless a family sits on one.
inline constexpr double kAngleMargin = 0.1;
/// Modulus range for non-unit families.
inline constexpr double kMinModulus = 1.2;
inline constexpr double kMaxModulus = 4.0;

/// Canonical normal form drawn from the family's parameter region.
/// Throws Error{UnknownFamily}.
NormalForm sample_normal_form(std::string_view family, std::mt19937_64& rng);

struct GeneratedSample {
  std::string family;
  NormalForm form;
  QMatrix2 conjugator;
  QMatrix2 matrix;  // conjugator * materialize(form) * conjugator^-1
};

GeneratedSample sample_family(std::string_view family, std::mt19937_64& rng, double cond_bound = 20.0);

}  // namespace quatmob
