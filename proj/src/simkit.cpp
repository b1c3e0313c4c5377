#include "wahba/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "wahba/errors.hpp"
#include "wahba/solvers.hpp"

namespace wahba {

namespace detail {

Vec4 sample_sphere4(Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Vec4 v;
  do {
    for (int i = 0; i < 4; ++i) v(i) = n01(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace detail

Quaterniond random_unit_quaternion(Rng& rng) {
  return canonical_sign(Quaterniond(detail::sample_sphere4(rng)));
}

namespace {

constexpr double kDeg = M_PI / 180.0;

Vec3 random_unit_vec3(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * M_PI);
  const double z = u(rng);
  const double p = phi(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(s * std::cos(p), s * std::sin(p), z);
}

}  // namespace

Vec3 perturb_direction(const Vec3& v, double sigma_deg, Rng& rng) {
  if (sigma_deg == 0.0) return v;
  // Orthonormal pair spanning the plane normal to v.
  Vec3 a = std::abs(v.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = v.cross(a).normalized();
  const Vec3 e2 = v.cross(e1);

  std::uniform_real_distribution<double> uphi(0.0, 2.0 * M_PI);
  std::normal_distribution<double> angle(0.0, sigma_deg * kDeg);
  const double phi = uphi(rng);
  const double theta = angle(rng);
  const Vec3 axis = std::cos(phi) * e1 + std::sin(phi) * e2;
  return std::cos(theta) * v + std::sin(theta) * axis.cross(v);
}

MeasurementSet synth_trial(const Quaterniond& q_true, const NoiseSpec& noise,
                           const std::pair<double, double>& weights, Rng& rng) {
  const double cos_max = std::cos(30.0 * kDeg);  // separation in [30, 150] deg
  const Vec3 r1 = random_unit_vec3(rng);
  Vec3 r2;
  do {
    r2 = random_unit_vec3(rng);
  } while (std::abs(r1.dot(r2)) > cos_max);

  const Mat3 A = attitude_matrix(q_true);
  MeasurementSet meas;
  meas.entries.push_back({perturb_direction(A * r1, noise.sigma1_deg, rng), r1, weights.first});
  meas.entries.push_back({perturb_direction(A * r2, noise.sigma2_deg, rng), r2, weights.second});
  return meas;
}

double run_trial(const CampaignConfig& config, Rng& rng) {
  const Quaterniond q_true = random_unit_quaternion(rng);
  const MeasurementSet meas = synth_trial(q_true, config.noise, config.weights, rng);
  const DavenportSystem sys = build_system(meas);
  return q_method(sys).lambda - first_order(sys).lambda;
}

std::uint64_t trial_seed(std::uint64_t campaign_seed, std::uint64_t trial_index) {
  // splitmix64 finalizer over the combined stream
  std::uint64_t x = campaign_seed + 0x9e3779b97f4a7c15ULL * (trial_index + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

namespace {

struct TrialOutcome {
  double err = std::numeric_limits<double>::quiet_NaN();
  double taste = 0.0;
  bool rejected = false;
};

TrialOutcome one_trial(const CampaignConfig& config, std::uint64_t index) {
  Rng rng(trial_seed(config.seed, index));
  TrialOutcome out;
  try {
    const Quaterniond q_true = random_unit_quaternion(rng);
    const MeasurementSet meas = synth_trial(q_true, config.noise, config.weights, rng);
    const DavenportSystem sys = build_system(meas);
    const SolveReport oracle = q_method(sys);
    out.err = oracle.lambda - first_order(sys).lambda;
    out.taste = taste(sys.lambda0, oracle.lambda);
  } catch (const NumericalError&) {
    out.rejected = true;
  }
  return out;
}

}  // namespace

Histogram run_campaign(const CampaignConfig& config, unsigned workers) {
  if (config.rho_h == 0) throw ConfigError("rho_h must be positive");
  if (config.n_trials < config.rho_h) throw ConfigError("n_trials must be >= rho_h");
  if (!(config.noise.sigma1_deg >= 0.0 && config.noise.sigma2_deg >= 0.0 &&
        config.noise.sigma1_deg <= 30.0 && config.noise.sigma2_deg <= 30.0))
    throw ConfigError("noise sigmas must be in [0, 30] degrees");
  if (workers == 0) workers = 1;

  std::vector<TrialOutcome> outcomes(config.n_trials);
  auto worker_fn = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) outcomes[i] = one_trial(config, i);
  };
  if (workers == 1) {
    worker_fn(0, config.n_trials);
  } else {
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (config.n_trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, config.n_trials);
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, config.n_trials);
      if (begin < end) threads.emplace_back(worker_fn, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  if (config.taste_gate > 0.0) {
    const double lambda0 = config.weights.first + config.weights.second;
    const double sigma_bar =
        0.5 * (config.noise.sigma1_deg + config.noise.sigma2_deg) * kDeg;
    const double threshold = config.taste_gate * lambda0 * sigma_bar * sigma_bar;
    for (auto& o : outcomes)
      if (!o.rejected && o.taste > threshold) o.rejected = true;
  }

  double max_err = 0.0;
  for (const auto& o : outcomes)
    if (!o.rejected) max_err = std::max(max_err, o.err);
  // floor keeps zero-noise campaigns (roundoff-level errors) in the first bin
  max_err = std::max(max_err, 1e-12);

  const std::size_t n_bins =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                   static_cast<double>(config.n_trials) / config.rho_h)));
  Histogram h;
  h.n_total = config.n_trials;
  h.counts.assign(n_bins, 0);
  h.bin_edges.resize(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i)
    h.bin_edges[i] = max_err * static_cast<double>(i) / static_cast<double>(n_bins);

  for (const auto& o : outcomes) {
    if (o.rejected) {
      ++h.n_rejected;
      continue;
    }
    auto bin = static_cast<std::size_t>(std::clamp(o.err, 0.0, max_err) / max_err *
                                        static_cast<double>(n_bins));
    if (bin >= n_bins) bin = n_bins - 1;
    ++h.counts[bin];
  }
  return h;
}

}  // namespace wahba
