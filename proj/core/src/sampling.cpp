#include "quatmob/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include <Eigen/SVD>

#include "quatmob/error.hpp"

namespace quatmob {

namespace {

using std::numbers::pi;
constexpr double kBoundaryChance = 0.1;

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }
double modulus(std::mt19937_64& rng) { return uniform(rng, kMinModulus, kMaxModulus); }
double real_angle(std::mt19937_64& rng) { return chance(rng, 0.5) ? 0.0 : pi; }

double interior_angle(std::mt19937_64& rng) { return uniform(rng, kAngleMargin, pi - kAngleMargin); }

// Interior angle, replaced by exactly 0 or pi with small probability.
double angle(std::mt19937_64& rng) { return chance(rng, kBoundaryChance) ? real_angle(rng) : interior_angle(rng); }

bool off_half(double t) { return std::abs(t - pi / 2) >= kAngleMargin; }
bool generic_pair(double t, double p) { return std::abs(t - p) >= kAngleMargin && std::abs(t + p - pi) >= kAngleMargin; }

template <typename Draw, typename Accept>
auto rejection(std::mt19937_64& rng, Draw draw, Accept accept) {
  for (;;) {
    auto v = draw(rng);
    if (accept(v)) return v;
  }
}

DiagonalForm unit_pair(double t, double p) { return {1.0, std::min(t, p), std::max(t, p)}; }

using Sampler = std::function<NormalForm(std::mt19937_64&)>;

const std::map<std::string, Sampler, std::less<>>& samplers() {
  static const std::map<std::string, Sampler, std::less<>> table = [] {
    std::map<std::string, Sampler, std::less<>> t;
    t["case-1"] = [](std::mt19937_64& rng) -> NormalForm {
      const double r = modulus(rng);
      const auto ang = rejection(
          rng, [](std::mt19937_64& g) { return std::pair{angle(g), angle(g)}; },
          [](const auto& a) { return generic_pair(a.first, a.second); });
      return DiagonalForm{r, ang.first, ang.second};
    };
    t["case-2"] = [](std::mt19937_64& rng) -> NormalForm {
      const double r = modulus(rng);
      const double th = rejection(rng, angle, off_half);
      return DiagonalForm{r, th, pi - th};
    };
    t["case-3"] = [](std::mt19937_64& rng) -> NormalForm { return DiagonalForm{modulus(rng), pi / 2, pi / 2}; };
    t["case-4"] = [](std::mt19937_64& rng) -> NormalForm {
      const double r = modulus(rng);
      const double th = rejection(rng, angle, off_half);
      return DiagonalForm{r, th, th};
    };
    t["case-5"] = [](std::mt19937_64& rng) -> NormalForm {
      const auto ang = rejection(
          rng, [](std::mt19937_64& g) { return std::pair{angle(g), angle(g)}; },
          [](const auto& a) { return generic_pair(a.first, a.second); });
      return unit_pair(ang.first, ang.second);
    };
    t["case-6"] = [](std::mt19937_64& rng) -> NormalForm {
      const double th = rejection(rng, angle, off_half);
      return DiagonalForm{1.0, th, th};
    };
    t["case-7"] = [](std::mt19937_64& rng) -> NormalForm {
      double th = chance(rng, kBoundaryChance) ? (chance(rng, 0.5) ? 0.0 : pi / 2) : uniform(rng, kAngleMargin, pi / 2 - kAngleMargin);
      return unit_pair(th, pi - th);
    };
    t["case-8"] = [](std::mt19937_64& rng) -> NormalForm {
      if (chance(rng, kBoundaryChance)) return ParabolicForm{chance(rng, 0.5) ? real_angle(rng) : pi / 2};
      return ParabolicForm{interior_angle(rng)};
    };
    t["parabolic"] = t["case-8"];
    t["parabolic-interior"] = [](std::mt19937_64& rng) -> NormalForm { return ParabolicForm{interior_angle(rng)}; };
    t["parabolic-real"] = [](std::mt19937_64& rng) -> NormalForm { return ParabolicForm{real_angle(rng)}; };
    t["parabolic-half"] = [](std::mt19937_64&) -> NormalForm { return ParabolicForm{pi / 2}; };
    t["elliptic-distinct"] = [](std::mt19937_64& rng) -> NormalForm {
      const auto ang = rejection(
          rng, [](std::mt19937_64& g) { return std::pair{interior_angle(g), interior_angle(g)}; },
          [](const auto& a) { return std::abs(a.first - a.second) >= kAngleMargin; });
      return unit_pair(ang.first, ang.second);
    };
    t["diag(e^{i theta},e^{i phi})-distinct"] = t["elliptic-distinct"];
    t["elliptic-equal"] = [](std::mt19937_64& rng) -> NormalForm {
      const double th = rejection(rng, interior_angle, off_half);
      return DiagonalForm{1.0, th, th};
    };
    t["hyperbolic-equal"] = t["case-4"];
    t["loxodromic"] = t["case-1"];
    t["neg-inverse"] = [](std::mt19937_64& rng) -> NormalForm {
      const double th = rejection(rng, interior_angle, off_half);
      if (chance(rng, 0.5)) return unit_pair(th, pi - th);
      return DiagonalForm{modulus(rng), th, pi - th};
    };
    t["central"] = [](std::mt19937_64& rng) -> NormalForm {
      const double th = real_angle(rng);
      return DiagonalForm{1.0, th, th};
    };
    t["involution"] = [](std::mt19937_64&) -> NormalForm { return DiagonalForm{1.0, 0.0, pi}; };
    t["skew-involution"] = [](std::mt19937_64&) -> NormalForm { return DiagonalForm{1.0, pi / 2, pi / 2}; };
    return t;
  }();
  return table;
}

}  // namespace

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

Quaternion random_unit_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Quaternion q{n(rng), n(rng), n(rng), n(rng)};
    const double len = q.norm();
    if (len > 1e-6) return q / len;
  }
}

double condition_number(const QMatrix2& s) {
  const Eigen::JacobiSVD<CMatrix4> svd(phi_embed(s));
  const auto& sv = svd.singularValues();
  return sv(0) / sv(3);
}

QMatrix2 random_sl_conjugator(std::mt19937_64& rng, double cond_bound) {
  if (!(cond_bound >= 1.0)) throw Error(ErrorCode::DomainError, "condition bound must be >= 1");
  double shear = 2.0;
  for (;;) {
    const QMatrix2 u1 = QMatrix2::diag(random_unit_quaternion(rng), random_unit_quaternion(rng));
    const QMatrix2 u2 = QMatrix2::diag(random_unit_quaternion(rng), random_unit_quaternion(rng));
    const QMatrix2 u3 = QMatrix2::diag(random_unit_quaternion(rng), random_unit_quaternion(rng));
    const QMatrix2 upper{Quaternion(1), Quaternion(uniform(rng, -shear, shear)), Quaternion(), Quaternion(1)};
    const QMatrix2 lower{Quaternion(1), Quaternion(), Quaternion(uniform(rng, -shear, shear)), Quaternion(1)};
    const QMatrix2 s = sl_normalize(u1 * upper * u2 * lower * u3);
    if (condition_number(s) <= cond_bound * (1.0 + 1e-12)) return s;
    shear *= 0.9;
  }
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : samplers()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_known_family(std::string_view family) { return samplers().find(family) != samplers().end(); }

NormalForm sample_normal_form(std::string_view family, std::mt19937_64& rng) {
  const auto it = samplers().find(family);
  if (it == samplers().end()) throw Error(ErrorCode::UnknownFamily, std::string(family));
  return it->second(rng);
}

GeneratedSample sample_family(std::string_view family, std::mt19937_64& rng, double cond_bound) {
  GeneratedSample out;
  out.family = std::string(family);
  out.form = sample_normal_form(family, rng);
  out.conjugator = random_sl_conjugator(rng, cond_bound);
  out.matrix = out.conjugator * materialize(out.form) * m_inverse(out.conjugator, 0.0);
  return out;
}

}  // namespace quatmob
