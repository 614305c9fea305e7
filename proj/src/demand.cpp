#include "mecsim/demand.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mecsim {

namespace {

// ------------------------- quadrature backend -------------------------

// 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK constants).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss weights belong to Kronrod nodes 1, 3, 5 and the center node.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

// Quadrature targets; kept slightly tighter than the consumers need so the
// demand terms stay consistent to well below any test tolerance.
constexpr double kAbsTol = 1e-12;
constexpr double kRelTol = 1e-10;

template <typename F>
double gauss_kronrod_15(const F& f, double a, double b, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(mid);
  double result_kronrod = kKronrodWeights[7] * f_center;
  double result_gauss = kGaussWeights[3] * f_center;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double f_sum = f(mid - dx) + f(mid + dx);
    result_kronrod += kKronrodWeights[i] * f_sum;
    if (i % 2 == 1) result_gauss += kGaussWeights[i / 2] * f_sum;
  }
  result_kronrod *= half;
  result_gauss *= half;
  err = std::abs(result_kronrod - result_gauss);
  return result_kronrod;
}

template <typename F>
double integrate_adaptive(const F& f, double a, double b, double tol,
                          int depth) {
  double err = 0.0;
  const double value = gauss_kronrod_15(f, a, b, err);
  if (err <= tol || depth >= 48 || (b - a) <= 1e-15 * (std::abs(a) + 1.0)) {
    return value;
  }
  const double mid = 0.5 * (a + b);
  return integrate_adaptive(f, a, mid, 0.5 * tol, depth + 1) +
         integrate_adaptive(f, mid, b, 0.5 * tol, depth + 1);
}

// Common demand prefactor 2 * f_ue * rho * pi * alpha.
double demand_scale(const NetworkScenario& scenario) {
  return 2.0 * scenario.f_ue() * scenario.rho() * std::numbers::pi *
         scenario.channel().alpha;
}

// Demand of one BS expressed through the decay coefficient
// c = mu * T * (sigma2 + interference) / p.
double demand_from_coefficient(const NetworkScenario& scenario, double c) {
  const double alpha = scenario.channel().alpha;
  return demand_scale(scenario) * c *
         kernel_integral(c, alpha, scenario.r_max());
}

double decay_coefficient(const NetworkScenario& scenario, double p,
                         double interference) {
  const ChannelParams& ch = scenario.channel();
  return ch.mu * ch.t_linear * (ch.sigma2 + interference) / p;
}

}  // namespace

double kernel_integral(double c, double alpha, double r_upper) {
  if (!std::isfinite(c) || !std::isfinite(alpha) || !std::isfinite(r_upper)) {
    throw std::domain_error("kernel_integral: arguments must be finite");
  }
  if (c < 0.0) throw std::domain_error("kernel_integral: c must be >= 0");
  if (alpha <= 0.0) {
    throw std::domain_error("kernel_integral: alpha must be > 0");
  }
  if (r_upper <= 0.0) {
    throw std::domain_error("kernel_integral: r_upper must be > 0");
  }
  if (c == 0.0) return std::pow(r_upper, alpha + 1.0) / (alpha + 1.0);

  const auto integrand = [c, alpha](double r) {
    const double ra = std::pow(r, alpha);
    return ra * std::exp(-c * ra);
  };

  // exp(-c r^alpha) underflows past this radius; nothing measurable beyond.
  const double r_cut = std::pow(746.0 / c, 1.0 / alpha);
  const double upper = std::min(r_upper, r_cut);

  // Split at the decay scale (c r^alpha = 1) and double outward so the
  // sampler cannot overlook an integrand spike far smaller than the domain.
  std::vector<double> edges{0.0};
  const double scale = std::pow(1.0 / c, 1.0 / alpha);
  if (scale < upper) {
    double x = scale;
    while (x < upper && edges.size() < 64) {
      edges.push_back(x);
      x *= 2.0;
    }
  }
  edges.push_back(upper);

  double rough = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double err = 0.0;
    rough += gauss_kronrod_15(integrand, edges[i], edges[i + 1], err);
  }
  const double tol = std::max(kAbsTol, kRelTol * std::abs(rough)) /
                     static_cast<double>(edges.size() - 1);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    total += integrate_adaptive(integrand, edges[i], edges[i + 1], tol, 0);
  }
  return total;
}

double required_compute(const NetworkScenario& scenario,
                        const PowerProfile& powers, std::size_t k) {
  if (k >= scenario.bs_count()) {
    throw std::out_of_range("required_compute: index out of range");
  }
  const double interference = interference_at(scenario, powers, k);
  const double c = decay_coefficient(scenario, powers.powers[k], interference);
  return demand_from_coefficient(scenario, c);
}

double max_compute(const NetworkScenario& scenario, double p_k) {
  if (!std::isfinite(p_k) || p_k <= 0.0) {
    throw std::domain_error("max_compute: power must be > 0");
  }
  return demand_from_coefficient(scenario,
                                 decay_coefficient(scenario, p_k, 0.0));
}

double single_interferer_compute(const NetworkScenario& scenario, double p_k,
                                 double p_m, double dist) {
  if (!std::isfinite(p_k) || p_k <= 0.0) {
    throw std::domain_error("single_interferer_compute: power must be > 0");
  }
  if (!std::isfinite(p_m) || p_m < 0.0) {
    throw std::domain_error(
        "single_interferer_compute: interferer power must be >= 0");
  }
  if (!std::isfinite(dist) || dist <= 0.0) {
    throw std::domain_error(
        "single_interferer_compute: distance must be > 0");
  }
  const double interference =
      p_m * std::pow(dist, -scenario.channel().alpha);
  return demand_from_coefficient(
      scenario, decay_coefficient(scenario, p_k, interference));
}

double demand_delta(const NetworkScenario& scenario, double p_k, double p_m,
                    double dist) {
  return max_compute(scenario, p_k) -
         single_interferer_compute(scenario, p_k, p_m, dist);
}

DemandProfile demand_profile(const NetworkScenario& scenario,
                             const PowerProfile& powers) {
  validate_profile(scenario, powers);
  DemandProfile profile;
  profile.f_bs.resize(scenario.bs_count());
  profile.interference.resize(scenario.bs_count());
  for (std::size_t k = 0; k < scenario.bs_count(); ++k) {
    profile.interference[k] = interference_at(scenario, powers, k);
    profile.f_bs[k] = required_compute(scenario, powers, k);
  }
  return profile;
}

}  // namespace mecsim
