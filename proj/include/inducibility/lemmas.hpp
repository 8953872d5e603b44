#pragma once

// Grid checks of the three one-variable extremal inequalities behind the
// even-tree and caterpillar results. These are regression guards evaluated
// in floating point, plus an exact evaluation at x = 1/2.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace inducibility {

/// x^k (1-x)^k / (1 - x^{2k} - (1-x)^{2k}); maximum 1/(2^{2k}-2) at x = 1/2.
inline double even_split_ratio(unsigned k, double x) {
  const double y = 1.0 - x;
  return std::pow(x, k) * std::pow(y, k) / (1.0 - std::pow(x, 2 * k) - std::pow(y, 2 * k));
}

/// (x^k (1-x)^{k+1} + x^{k+1} (1-x)^k) / (1 - x^{2k+1} - (1-x)^{2k+1});
/// maximum 1/(2^{2k}-1) at x = 1/2.
inline double odd_split_ratio(unsigned k, double x) {
  const double y = 1.0 - x;
  return (std::pow(x, k) * std::pow(y, k + 1) + std::pow(x, k + 1) * std::pow(y, k)) /
         (1.0 - std::pow(x, 2 * k + 1) - std::pow(y, 2 * k + 1));
}

/// x (1-x) (x^{k-2} + (1-x)^{k-2}) / (1 - x^k - (1-x)^k); minimum
/// 1/(2^{k-1}-1) at x = 1/2. Requires k >= 2.
inline double caterpillar_split_ratio(unsigned k, double x) {
  const double y = 1.0 - x;
  return x * y * (std::pow(x, k - 2) + std::pow(y, k - 2)) /
         (1.0 - std::pow(x, k) - std::pow(y, k));
}

namespace detail {
inline BigRational rpow(const BigRational& x, unsigned e) {
  BigRational r(1);
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}
}  // namespace detail

/// The same three functions evaluated exactly at x = 1/2.
inline BigRational even_split_ratio_at_half(unsigned k) {
  const BigRational h(BigInt(1), BigInt(2));
  return detail::rpow(h, 2 * k) / (BigRational(1) - BigRational(2) * detail::rpow(h, 2 * k));
}
inline BigRational odd_split_ratio_at_half(unsigned k) {
  const BigRational h(BigInt(1), BigInt(2));
  return BigRational(2) * detail::rpow(h, 2 * k + 1) /
         (BigRational(1) - BigRational(2) * detail::rpow(h, 2 * k + 1));
}
inline BigRational caterpillar_split_ratio_at_half(unsigned k) {
  const BigRational h(BigInt(1), BigInt(2));
  return h * h * BigRational(2) * detail::rpow(h, k - 2) /
         (BigRational(1) - BigRational(2) * detail::rpow(h, k));
}

struct LemmaCheck {
  std::string function;  // "even_split", "odd_split" or "caterpillar_split"
  bool is_maximum = true;
  BigRational bound;           // closed form at x = 1/2
  BigRational exact_at_half;   // the function evaluated exactly at 1/2
  double grid_extremum = 0.0;  // max (or min) over the grid
  double grid_argext = 0.0;    // first grid point attaining it
  double margin = 0.0;         // distance of the grid extremum from the bound, signed so >= -tol passes
  bool attained_at_half = false;
  bool passed = false;
};

struct LemmaReport {
  unsigned k = 0;
  double grid_step = 0.0;
  double tolerance = 0.0;
  std::vector<LemmaCheck> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

namespace detail {
template <class F>
LemmaCheck grid_check(std::string name, bool is_max, F f, BigRational bound,
                      BigRational exact_half, double step, double tol) {
  LemmaCheck c;
  c.function = std::move(name);
  c.is_maximum = is_max;
  c.bound = bound;
  c.exact_at_half = exact_half;
  const double b = bound.to_double();
  const auto points = static_cast<std::size_t>(std::ceil(1.0 / step));
  double best = is_max ? -INFINITY : INFINITY;
  double at_half = NAN;
  double half_dist = INFINITY;
  for (std::size_t i = 1; i < points; ++i) {
    const double x = static_cast<double>(i) * step;
    if (x >= 1.0) break;
    const double v = f(x);
    if (is_max ? v > best : v < best) {
      best = v;
      c.grid_argext = x;
    }
    if (std::abs(x - 0.5) < half_dist) {
      half_dist = std::abs(x - 0.5);
      at_half = v;
    }
  }
  c.grid_extremum = best;
  c.margin = is_max ? b - best : best - b;
  // Flat functions (k small) attain the extremum everywhere; 1/2 counts as a
  // location whenever its value is within tolerance of the grid extremum.
  c.attained_at_half = half_dist <= step / 2 && std::abs(at_half - best) <= tol;
  c.passed = c.margin >= -tol && c.attained_at_half && exact_half == bound;
  return c;
}
}  // namespace detail

/// Evaluates the three functions on {step, 2 step, ...} inside (0,1) and
/// checks the extremal inequalities within `tol`. The caterpillar function
/// is only checked for k >= 2.
inline LemmaReport verify_lemma_functions(unsigned k, double grid_step = 1e-3,
                                          double tol = 1e-12) {
  if (k < 1) throw InvalidArgument("verify_lemma_functions: k must be >= 1");
  if (!(grid_step > 0.0 && grid_step < 0.5))
    throw InvalidArgument("verify_lemma_functions: grid_step must lie in (0, 1/2)");
  LemmaReport r{k, grid_step, tol, {}};
  r.checks.push_back(detail::grid_check(
      "even_split", true, [k](double x) { return even_split_ratio(k, x); },
      BigRational(BigInt(1), pow2(2 * k) - 2), even_split_ratio_at_half(k), grid_step, tol));
  r.checks.push_back(detail::grid_check(
      "odd_split", true, [k](double x) { return odd_split_ratio(k, x); },
      BigRational(BigInt(1), pow2(2 * k) - 1), odd_split_ratio_at_half(k), grid_step, tol));
  if (k >= 2) {
    r.checks.push_back(detail::grid_check(
        "caterpillar_split", false, [k](double x) { return caterpillar_split_ratio(k, x); },
        BigRational(BigInt(1), pow2(k - 1) - 1), caterpillar_split_ratio_at_half(k), grid_step,
        tol));
  }
  return r;
}

}  // namespace inducibility
