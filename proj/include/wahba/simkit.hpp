#ifndef WAHBA_SIMKIT_HPP
#define WAHBA_SIMKIT_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "wahba/davenport.hpp"

// Monte Carlo study of the first-order eigenvalue estimate. Noise model:
// each direction is rotated about a uniformly random axis orthogonal to it
// by a Gaussian angle (zero mean, sigma given in degrees). Histogram tails
// depend on this choice.

namespace wahba {

using Rng = std::mt19937_64;

struct NoiseSpec {
  double sigma1_deg;
  double sigma2_deg;
};

struct CampaignConfig {
  std::size_t n_trials;
  NoiseSpec noise;
  std::size_t rho_h;  // samples per bin; bin count = round(n_trials / rho_h)
  std::uint64_t seed;
  std::pair<double, double> weights{1.0, 1.0};
  double taste_gate = 0.0;  // > 0 enables gating at taste_gate * lambda0 * sigma_bar^2
};

struct Histogram {
  std::vector<double> bin_edges;       // size = counts.size() + 1, strictly increasing
  std::vector<std::uint64_t> counts;
  std::uint64_t n_total = 0;
  std::uint64_t n_rejected = 0;
};

namespace detail {
// Uniform point on S^3, no sign normalization; exposed for statistical tests.
Vec4 sample_sphere4(Rng& rng);
}  // namespace detail

// Uniform random attitude; scalar part sign-normalized to be nonnegative.
Quaterniond random_unit_quaternion(Rng& rng);

// Rotates v by a Gaussian angle about a random axis orthogonal to v.
Vec3 perturb_direction(const Vec3& v, double sigma_deg, Rng& rng);

// Two-vector measurement set: random reference directions with separation in
// [30, 150] degrees, body vectors formed with A(q_true) and per-vector noise.
MeasurementSet synth_trial(const Quaterniond& q_true, const NoiseSpec& noise,
                           const std::pair<double, double>& weights, Rng& rng);

// One trial: synth -> build_system -> q_method and first_order; returns the
// error parameter lambda_m - lambda1. Propagates NearSingular.
double run_trial(const CampaignConfig& config, Rng& rng);

// Deterministic per-trial seed stream: hash(seed, trial_index).
std::uint64_t trial_seed(std::uint64_t campaign_seed, std::uint64_t trial_index);

// Runs n_trials independent trials and bins the error parameter into
// round(n_trials / rho_h) equal-width bins over [0, max observed]. Output is
// identical for any worker count.
Histogram run_campaign(const CampaignConfig& config, unsigned workers = 1);

}  // namespace wahba

#endif  // WAHBA_SIMKIT_HPP
