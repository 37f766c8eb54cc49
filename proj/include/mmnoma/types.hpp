#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mmnoma {

/// Thrown when a numerical routine (eigensolver, quadrature) fails to
/// produce a trustworthy result.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the allocator when even the entire power budget assigned to
/// the weak user cannot meet the minimum-rate requirement.
class InfeasibleRateError : public std::runtime_error {
 public:
  InfeasibleRateError(double required_rate, double achievable_rate)
      : std::runtime_error("minimum rate " + std::to_string(required_rate) +
                           " bps/Hz is infeasible: full-budget weak-user "
                           "capacity is " +
                           std::to_string(achievable_rate) + " bps/Hz"),
        required_rate(required_rate),
        achievable_rate(achievable_rate) {}

  double required_rate;
  double achievable_rate;
};

/// Antenna counts and per-user channel gains of the two-user downlink.
/// User 1 is the weak user (smaller gain), user 2 the strong user.
struct SystemConfig {
  int n_s = 16;           ///< transmit antennas at the source
  int n_1 = 16;           ///< receive antennas, weak user
  int n_2 = 16;           ///< receive antennas, strong user
  double gain_1 = 1.0;    ///< weak-user channel gain (linear power)
  double gain_2 = 1.0;    ///< strong-user channel gain (linear power)
};

/// Throws std::invalid_argument if counts or gains are out of range.
void validate(const SystemConfig& cfg);

/// True when gain_1 > gain_2, i.e. the "weak" user has the larger gain.
/// Callers should surface this as a diagnostic warning, not an error:
/// the capacities stay well defined, but SIC feasibility may not hold.
bool gain_ordering_inverted(const SystemConfig& cfg);

/// Per-antenna transmit powers for the two superposed signals.
struct PowerSplit {
  double p_1 = 0.0;  ///< weak-user signal power per antenna (W)
  double p_2 = 0.0;  ///< strong-user signal power per antenna (W)
};

void validate(const PowerSplit& split);

/// One draw of a Rayleigh-fading channel matrix.
struct ChannelSample {
  Eigen::MatrixXcd entries;  ///< shape (n_rx, n_tx)
  double gain = 1.0;         ///< the gain folded into the entries
};

/// A Monte-Carlo capacity estimate with its sampling uncertainty.
struct CapacityEstimate {
  double value = 0.0;      ///< bps/Hz, mean over trials
  double std_error = 0.0;  ///< bps/Hz, standard error of the mean
  long trials = 0;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace mmnoma
