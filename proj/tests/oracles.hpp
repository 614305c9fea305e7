// Independent reference implementations used only by the test suites.
// Each oracle takes a different computational route than the library code
// it cross-checks (incomplete-gamma closed form vs. Gauss-Kronrod panels,
// Simpson integration vs. the closed-form CDF, exhaustive vertex search vs.
// the greedy allocation pass).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

// Regularized lower incomplete gamma P(s, x): series expansion for
// x < s + 1, Lentz continued fraction for the complement otherwise.
inline double reg_lower_gamma(double s, double x) {
  if (!(s > 0.0) || x < 0.0) {
    throw std::domain_error("reg_lower_gamma: need s > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  const double log_prefactor = -x + s * std::log(x) - std::lgamma(s);
  if (x < s + 1.0) {
    double term = 1.0 / s;
    double sum = term;
    double denom = s;
    for (int i = 0; i < 500; ++i) {
      denom += 1.0;
      term *= x / denom;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return sum * std::exp(log_prefactor);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return 1.0 - std::exp(log_prefactor) * h;
}

inline double lower_gamma(double s, double x) {
  return std::exp(std::lgamma(s)) * reg_lower_gamma(s, x);
}

// Closed form of integral_0^r r^alpha exp(-c r^alpha) dr through the lower
// incomplete gamma function.
inline double kernel_closed_form(double c, double alpha, double r_upper) {
  if (c == 0.0) return std::pow(r_upper, alpha + 1.0) / (alpha + 1.0);
  const double s = 1.0 + 1.0 / alpha;
  const double x = c * std::pow(r_upper, alpha);
  return lower_gamma(s, x) / (alpha * std::pow(c, s));
}

// Classic adaptive Simpson integration with Richardson correction.
namespace detail {
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= 48 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}
}  // namespace detail

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

// Exhaustive vertex search for
//   max (1/K) sum_k s_k / f_k  s.t.  sum s_k <= capacity, 0 <= s_k <= f_k.
// At an optimal vertex every granted BS is either full or the single
// fractional one, so trying all full-grant subsets plus one fractional
// candidate covers the optimum.  Zero-demand BSs count as satisfied.
inline double lp_best_sat(const std::vector<double>& f_bs, double capacity) {
  std::vector<std::size_t> positive;
  std::size_t zeros = 0;
  for (std::size_t k = 0; k < f_bs.size(); ++k) {
    if (f_bs[k] > 0.0) {
      positive.push_back(k);
    } else {
      ++zeros;
    }
  }
  const double k_count = static_cast<double>(f_bs.size());
  const std::size_t n = positive.size();
  if (n > 20) throw std::invalid_argument("lp_best_sat: instance too large");

  double best = 0.0;
  for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << n);
       ++mask) {
    double used = 0.0;
    double coeff_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (static_cast<std::size_t>(1) << i)) {
        used += f_bs[positive[i]];
        coeff_sum += 1.0;
      }
    }
    if (used > capacity * (1.0 + 1e-12) + 1e-300) continue;
    const double leftover = std::max(0.0, capacity - used);
    best = std::max(best, coeff_sum / k_count);
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (static_cast<std::size_t>(1) << j)) continue;
      const double f = f_bs[positive[j]];
      const double frac = std::min(f, leftover) / f;
      best = std::max(best, (coeff_sum + frac) / k_count);
    }
  }
  return best + static_cast<double>(zeros) / k_count;
}

// Relative difference with an absolute fallback near zero.
inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace oracle
