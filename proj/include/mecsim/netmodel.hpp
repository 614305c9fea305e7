// Downlink coverage model: SINR under Rayleigh fading, inter-cell
// interference, and the induced distribution of the cell coverage radius.

#pragma once

#include <cstddef>
#include <vector>

#include "mecsim/rng.hpp"

namespace mecsim {

struct Point2 {
  double x;  // m
  double y;  // m
};

// Channel constants.  The SINR threshold is stored as a linear ratio; use
// t_db_to_linear() at the configuration boundary.
struct ChannelParams {
  double mu;        // rate of the exponential fading gain, > 0
  double sigma2;    // noise power (W), > 0
  double t_linear;  // SINR threshold, linear, > 0
  double alpha;     // path-loss exponent, > 1

  ChannelParams(double mu, double sigma2, double t_linear, double alpha);
};

double t_db_to_linear(double t_db);

// Static deployment of base stations in a square service zone plus every
// parameter the two allocation stages need.  Validated on construction.
class NetworkScenario {
 public:
  NetworkScenario(std::vector<Point2> bs_positions, ChannelParams channel,
                  double rho, double f_ue, double r_max, double p_max,
                  double epsilon, double b, double server_capacity,
                  double p_floor = 1e-6);

  std::size_t bs_count() const { return positions_.size(); }
  const Point2& position(std::size_t k) const;
  // Distance between BS m and BS n (m); symmetric, zero diagonal.
  double distance(std::size_t m, std::size_t n) const;

  const ChannelParams& channel() const { return channel_; }
  double rho() const { return rho_; }                          // users/m^2
  double f_ue() const { return f_ue_; }                        // cycles/bit
  double r_max() const { return r_max_; }                      // m
  double p_max() const { return p_max_; }                      // W
  double p_floor() const { return p_floor_; }                  // W
  double epsilon() const { return epsilon_; }                  // price factor
  double b() const { return b_; }                              // cost split
  double server_capacity() const { return server_capacity_; }  // cycles/bit

 private:
  std::vector<Point2> positions_;
  std::vector<double> dist_;  // bs_count x bs_count, row major
  ChannelParams channel_;
  double rho_;
  double f_ue_;
  double r_max_;
  double p_max_;
  double p_floor_;
  double epsilon_;
  double b_;
  double server_capacity_;
};

// Transmit powers, one entry per BS (W).
struct PowerProfile {
  std::vector<double> powers;
};

// Throws std::invalid_argument unless the profile has one entry per BS and
// every power lies in [p_floor, p_max].
void validate_profile(const NetworkScenario& scenario,
                      const PowerProfile& powers);

// Aggregate interference seen at BS k from every other BS (W).
double interference_at(const NetworkScenario& scenario,
                       const PowerProfile& powers, std::size_t k);

// Instantaneous SINR at distance r from a BS transmitting with power p
// under fading gain h and external interference (W).
double sinr(double h, double r, double p, double interference,
            const ChannelParams& channel);

// Largest radius at which the SINR still reaches the threshold.
double coverage_radius(double h, double p, double interference,
                       const ChannelParams& channel);

// Distribution of the coverage radius induced by the fading gain.
double radius_cdf(double r, double p, double interference,
                  const ChannelParams& channel);
double radius_pdf(double r, double p, double interference,
                  const ChannelParams& channel);

// P(coverage radius >= r); exact complement of radius_cdf.
double coverage_probability(double r, double p, double interference,
                            const ChannelParams& channel);

// Inverse-transform sample of the exponential fading gain.
double sample_fading(const ChannelParams& channel, Rng& rng);

}  // namespace mecsim
