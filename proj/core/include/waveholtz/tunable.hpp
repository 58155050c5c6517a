#pragma once

#include <cstdint>

#include "waveholtz/filter.hpp"

namespace waveholtz {

/// Weights of the filter design cost
///   J = curvature_weight * beta''(lambda_r) + penalty_weight * sum_{j in A} |beta(r_j)|^exponent
/// where r_j are equispaced in [0, sample_hi] and A drops points within
/// `exclusion` of the resonant frequency lambda_r.
///
/// beta_h is even and 2 pi / dt periodic in lambda, so the default window
/// [0, max(4 lambda_r, pi / dt)] covers every mode the time grid can represent.
struct TunableCostOptions {
  double curvature_weight = 10.6;
  double penalty_weight = 0.1;
  int exponent = 20;
  double exclusion = 0.1;
  /// Upper end of the sample interval; <= 0 means max(4 * resonant_lambda, pi / dt).
  double sample_hi = 0.0;
  /// <= 0 keeps the spacing of 801 points on [0, 4 * resonant_lambda].
  int samples = 0;

  int restarts = 5;
  /// Nelder-Mead iteration budget per restart is budget_per_dim * dim.
  int budget_per_dim = 200;
  std::uint64_t seed = 20200101;
  /// Spread of the random restart points around the standard filter.
  double restart_scale = 0.05;
};

struct TunableDesign {
  FilterSpec spec;
  double cost = 0.0;
  /// Cost of the standard filter (a0 = -1/4, all sines zero) for comparison.
  double baseline_cost = 0.0;
  /// False when no restart improved on the baseline.
  bool improved = false;
};

double tunable_cost(const FilterSpec& spec, double resonant_lambda, const TimeGrid& tg,
                    const TunableCostOptions& options = {});

/// Minimizes the design cost over a0 and a_2..a_{n_coeffs-1} (a_1 follows from a0),
/// keeping |a0| < 1/2. n_coeffs = 2 reduces to a search over a0 alone.
TunableDesign optimize_tunable_filter(double omega, double resonant_lambda, int n_coeffs,
                                      const TimeGrid& tg, const TunableCostOptions& options = {});

}  // namespace waveholtz
