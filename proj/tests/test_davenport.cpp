#include <doctest.h>

#include <algorithm>

#include "test_helpers.hpp"
#include "wahba/davenport.hpp"
#include "wahba/solvers.hpp"

using namespace wahba;
using wahba::test::identity_pair;
using wahba::test::perfect_set;
using wahba::test::random_system;

namespace {

// Eq.-by-eq evaluation of the loss from its definition, bypassing K.
double direct_loss(const Quaterniond& q, const MeasurementSet& meas) {
  const Mat3 A = attitude_matrix(q);
  double J = 0.0;
  for (const auto& m : meas.entries) J += 0.5 * m.w * (m.b - A * m.r).squaredNorm();
  return J;
}

double direct_gain(const Quaterniond& q, const MeasurementSet& meas) {
  const Mat3 A = attitude_matrix(q);
  double G = 0.0;
  for (const auto& m : meas.entries) G += m.w * m.b.dot(A * m.r);
  return G;
}

}  // namespace

TEST_CASE("build_system on the perfect identity pair") {
  const auto sys = build_system(identity_pair());
  CHECK((sys.B - Vec3(1, 1, 0).asDiagonal().toDenseMatrix()).norm() == 0.0);
  CHECK(sys.sigma == 2.0);
  CHECK(sys.z.norm() == 0.0);
  CHECK(sys.lambda0 == 2.0);
  CHECK((sys.K - Vec4(0, 0, -2, 2).asDiagonal().toDenseMatrix()).norm() == 0.0);
}

TEST_CASE("build_system rejects bad input") {
  MeasurementSet bad = identity_pair();
  bad.entries[0].w = 0.0;
  CHECK_THROWS_AS(build_system(bad), InvalidMeasurement);

  bad = identity_pair();
  bad.entries.pop_back();
  CHECK_THROWS_AS(build_system(bad), InvalidMeasurement);

  bad = identity_pair();
  bad.entries[1].b *= 1.5;
  CHECK_THROWS_AS(build_system(bad), InvalidMeasurement);
}

TEST_CASE("build_system is permutation invariant") {
  Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    auto meas = perfect_set(wahba::test::random_unit(rng), 5, rng);
    const auto sys = build_system(meas);
    std::reverse(meas.entries.begin(), meas.entries.end());
    const auto rev = build_system(meas);
    CHECK((sys.K - rev.K).norm() < 1e-13 * (1.0 + sys.K.norm()));
  }
}

TEST_CASE("K is symmetric and traceless") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto sys = random_system(rng, 1.0);
    CHECK((sys.K - sys.K.transpose()).norm() < 1e-12);
    CHECK(std::abs(sys.K.trace()) < 1e-12);
    CHECK((sys.rho - sys.rho.transpose()).norm() == 0.0);
    CHECK(sys.lambda0 > 0.0);
  }
}

TEST_CASE("wahba_loss equals the definitional sum") {
  const auto sys = build_system(identity_pair());
  CHECK(std::abs(wahba_loss(Quaterniond::identity(), sys)) < 1e-14);
  // 180 degrees about z reverses both vectors: J = 2 + 2
  CHECK(wahba_loss(Quaterniond(0, 0, 1, 0), sys) == doctest::Approx(4.0));

  Rng rng(12);
  for (int t = 0; t < 1000; ++t) {
    const auto q_true = wahba::test::random_unit(rng);
    const auto meas = synth_trial(q_true, NoiseSpec{1.0, 1.0}, {1.0, 1.0}, rng);
    const auto s = build_system(meas);
    const auto q = wahba::test::random_unit(rng);
    CHECK(wahba_loss(q, s) == doctest::Approx(direct_loss(q, meas)).epsilon(1e-10));
    CHECK(gain(q, s) == doctest::Approx(direct_gain(q, meas)).epsilon(1e-10));
  }
}

TEST_CASE("gain respects the Rayleigh bound") {
  const auto sys = build_system(identity_pair());
  CHECK(gain(Quaterniond::identity(), sys) == doctest::Approx(2.0));

  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const auto q = wahba::test::random_unit(rng);
    const double g = gain(q, sys);
    CHECK(g >= -2.0 - 1e-12);
    CHECK(g <= 2.0 + 1e-12);
  }
  for (int t = 0; t < 100; ++t) {
    const auto s = random_system(rng, 1.0);
    const double lm = q_method(s).lambda;
    CHECK(gain(wahba::test::random_unit(rng), s) <= lm + 1e-10);
    CHECK(lm <= s.lambda0 + 1e-10);
  }
}

TEST_CASE("taste") {
  CHECK(taste(2.0, 2.0) == 0.0);
  CHECK(taste(2.0, 1.9997) == doctest::Approx(3e-4));

  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const auto s = random_system(rng, 0.5);
    const auto rep = q_method(s);
    CHECK(taste(s.lambda0, rep.lambda) == doctest::Approx(wahba_loss(rep.q, s)).epsilon(1e-9));
  }
}

TEST_CASE("weight scaling leaves the optimal attitude unchanged") {
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const auto q_true = wahba::test::random_unit(rng);
    auto meas = synth_trial(q_true, NoiseSpec{0.5, 0.5}, {1.0, 1.0}, rng);
    const auto s1 = build_system(meas);
    const double c = 3.7;
    for (auto& m : meas.entries) m.w *= c;
    const auto s2 = build_system(meas);
    CHECK((s2.K - c * s1.K).norm() < 1e-12 * s2.K.norm());
    CHECK(s2.lambda0 == doctest::Approx(c * s1.lambda0));
    const auto r1 = q_method(s1);
    const auto r2 = q_method(s2);
    CHECK(r2.lambda == doctest::Approx(c * r1.lambda).epsilon(1e-12));
    const double d = std::min((r1.q.coeffs() - r2.q.coeffs()).norm(),
                              (r1.q.coeffs() + r2.q.coeffs()).norm());
    CHECK(d < 1e-9);
  }
}
