#include "mecsim/netmodel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mecsim {

namespace {

bool all_finite(double a, double b, double c, double d) {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) &&
         std::isfinite(d);
}

}  // namespace

ChannelParams::ChannelParams(double mu_in, double sigma2_in, double t_linear_in,
                             double alpha_in)
    : mu(mu_in), sigma2(sigma2_in), t_linear(t_linear_in), alpha(alpha_in) {
  if (!all_finite(mu, sigma2, t_linear, alpha)) {
    throw std::invalid_argument("ChannelParams: parameters must be finite");
  }
  if (mu <= 0.0) throw std::invalid_argument("ChannelParams: mu must be > 0");
  if (sigma2 <= 0.0) {
    throw std::invalid_argument("ChannelParams: sigma2 must be > 0");
  }
  if (t_linear <= 0.0) {
    throw std::invalid_argument("ChannelParams: t_linear must be > 0");
  }
  if (alpha <= 1.0) {
    throw std::invalid_argument("ChannelParams: alpha must be > 1");
  }
}

double t_db_to_linear(double t_db) {
  if (!std::isfinite(t_db)) {
    throw std::invalid_argument("t_db_to_linear: value must be finite");
  }
  return std::pow(10.0, t_db / 10.0);
}

NetworkScenario::NetworkScenario(std::vector<Point2> bs_positions,
                                 ChannelParams channel, double rho, double f_ue,
                                 double r_max, double p_max, double epsilon,
                                 double b, double server_capacity,
                                 double p_floor)
    : positions_(std::move(bs_positions)),
      channel_(channel),
      rho_(rho),
      f_ue_(f_ue),
      r_max_(r_max),
      p_max_(p_max),
      p_floor_(p_floor),
      epsilon_(epsilon),
      b_(b),
      server_capacity_(server_capacity) {
  if (positions_.empty()) {
    throw std::invalid_argument("NetworkScenario: need at least one BS");
  }
  for (const Point2& p : positions_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("NetworkScenario: positions must be finite");
    }
  }
  if (!(rho_ >= 0.0) || !std::isfinite(rho_)) {
    throw std::invalid_argument("NetworkScenario: rho must be >= 0");
  }
  if (!(f_ue_ >= 0.0) || !std::isfinite(f_ue_)) {
    throw std::invalid_argument("NetworkScenario: f_ue must be >= 0");
  }
  if (!(r_max_ > 0.0) || !std::isfinite(r_max_)) {
    throw std::invalid_argument("NetworkScenario: r_max must be > 0");
  }
  if (!(p_floor_ > 0.0) || !std::isfinite(p_floor_)) {
    throw std::invalid_argument("NetworkScenario: p_floor must be > 0");
  }
  if (!(p_max_ > p_floor_) || !std::isfinite(p_max_)) {
    throw std::invalid_argument("NetworkScenario: p_max must be > p_floor");
  }
  if (!(epsilon_ >= 0.0) || !std::isfinite(epsilon_)) {
    throw std::invalid_argument("NetworkScenario: epsilon must be >= 0");
  }
  if (!(b_ >= 0.0 && b_ <= 1.0)) {
    throw std::invalid_argument("NetworkScenario: b must be in [0, 1]");
  }
  if (!(server_capacity_ >= 0.0) || !std::isfinite(server_capacity_)) {
    throw std::invalid_argument(
        "NetworkScenario: server_capacity must be >= 0");
  }

  const std::size_t k_count = positions_.size();
  dist_.assign(k_count * k_count, 0.0);
  for (std::size_t m = 0; m < k_count; ++m) {
    for (std::size_t n = m + 1; n < k_count; ++n) {
      const double dx = positions_[m].x - positions_[n].x;
      const double dy = positions_[m].y - positions_[n].y;
      const double d = std::hypot(dx, dy);
      if (!(d > 0.0)) {
        throw std::invalid_argument(
            "NetworkScenario: BS positions must be pairwise distinct");
      }
      dist_[m * k_count + n] = d;
      dist_[n * k_count + m] = d;
    }
  }
}

const Point2& NetworkScenario::position(std::size_t k) const {
  if (k >= positions_.size()) {
    throw std::out_of_range("NetworkScenario::position: index out of range");
  }
  return positions_[k];
}

double NetworkScenario::distance(std::size_t m, std::size_t n) const {
  const std::size_t k_count = positions_.size();
  if (m >= k_count || n >= k_count) {
    throw std::out_of_range("NetworkScenario::distance: index out of range");
  }
  return dist_[m * k_count + n];
}

void validate_profile(const NetworkScenario& scenario,
                      const PowerProfile& powers) {
  if (powers.powers.size() != scenario.bs_count()) {
    throw std::invalid_argument("PowerProfile: one power per BS required");
  }
  for (double p : powers.powers) {
    if (!std::isfinite(p) || p < scenario.p_floor() || p > scenario.p_max()) {
      throw std::invalid_argument(
          "PowerProfile: powers must lie in [p_floor, p_max]");
    }
  }
}

double interference_at(const NetworkScenario& scenario,
                       const PowerProfile& powers, std::size_t k) {
  validate_profile(scenario, powers);
  if (k >= scenario.bs_count()) {
    throw std::out_of_range("interference_at: index out of range");
  }
  const double alpha = scenario.channel().alpha;
  double total = 0.0;
  for (std::size_t m = 0; m < scenario.bs_count(); ++m) {
    if (m == k) continue;
    total += powers.powers[m] * std::pow(scenario.distance(m, k), -alpha);
  }
  return total;
}

double sinr(double h, double r, double p, double interference,
            const ChannelParams& channel) {
  if (!std::isfinite(h) || h < 0.0) {
    throw std::domain_error("sinr: fading gain must be >= 0");
  }
  if (!std::isfinite(r) || r <= 0.0) {
    throw std::domain_error("sinr: distance must be > 0");
  }
  if (!std::isfinite(p) || p <= 0.0) {
    throw std::domain_error("sinr: power must be > 0");
  }
  if (!std::isfinite(interference) || interference < 0.0) {
    throw std::domain_error("sinr: interference must be >= 0");
  }
  return h * std::pow(r, -channel.alpha) * p /
         (channel.sigma2 + interference);
}

double coverage_radius(double h, double p, double interference,
                       const ChannelParams& channel) {
  if (!std::isfinite(h) || h <= 0.0) {
    throw std::domain_error("coverage_radius: fading gain must be > 0");
  }
  if (!std::isfinite(p) || p <= 0.0) {
    throw std::domain_error("coverage_radius: power must be > 0");
  }
  if (!std::isfinite(interference) || interference < 0.0) {
    throw std::domain_error("coverage_radius: interference must be >= 0");
  }
  const double base =
      h * p / (channel.t_linear * (channel.sigma2 + interference));
  return std::pow(base, 1.0 / channel.alpha);
}

double radius_cdf(double r, double p, double interference,
                  const ChannelParams& channel) {
  if (!std::isfinite(r) || r < 0.0) {
    throw std::domain_error("radius_cdf: radius must be >= 0");
  }
  if (!std::isfinite(p) || p <= 0.0) {
    throw std::domain_error("radius_cdf: power must be > 0");
  }
  if (!std::isfinite(interference) || interference < 0.0) {
    throw std::domain_error("radius_cdf: interference must be >= 0");
  }
  const double rate = channel.mu * channel.t_linear *
                      (channel.sigma2 + interference) / p;
  // -expm1 keeps full precision for small exponents and stays in [0, 1).
  return -std::expm1(-rate * std::pow(r, channel.alpha));
}

double radius_pdf(double r, double p, double interference,
                  const ChannelParams& channel) {
  if (!std::isfinite(r) || r < 0.0) {
    throw std::domain_error("radius_pdf: radius must be >= 0");
  }
  if (!std::isfinite(p) || p <= 0.0) {
    throw std::domain_error("radius_pdf: power must be > 0");
  }
  if (!std::isfinite(interference) || interference < 0.0) {
    throw std::domain_error("radius_pdf: interference must be >= 0");
  }
  const double rate = channel.mu * channel.t_linear *
                      (channel.sigma2 + interference) / p;
  return channel.alpha * rate * std::pow(r, channel.alpha - 1.0) *
         std::exp(-rate * std::pow(r, channel.alpha));
}

double coverage_probability(double r, double p, double interference,
                            const ChannelParams& channel) {
  return 1.0 - radius_cdf(r, p, interference, channel);
}

double sample_fading(const ChannelParams& channel, Rng& rng) {
  // uniform01 < 1, so the log argument stays strictly positive.
  return -std::log1p(-rng.uniform01()) / channel.mu;
}

}  // namespace mecsim
