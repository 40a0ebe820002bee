#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lyclamp/signals.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace lyclamp;

TEST_CASE("reference_eval examples") {
  auto r = reference_eval(Sinusoid{1.0, 1.0}, 0.0);
  CHECK(r.y_r == 0.0);
  CHECK(r.y_r_dot == 1.0);
  CHECK(r.y_r_ddot == 0.0);

  r = reference_eval(Sinusoid{1.0, 1.0}, std::numbers::pi / 2);
  CHECK(r.y_r == doctest::Approx(1.0));
  CHECK(r.y_r_dot == doctest::Approx(0.0));
  CHECK(r.y_r_ddot == doctest::Approx(-1.0));

  r = reference_eval(Step{1.0}, 7.3);
  CHECK(r.y_r == 1.0);
  CHECK(r.y_r_dot == 0.0);
  CHECK(r.y_r_ddot == 0.0);

  r = reference_eval(Step{2.5}, 0.0);
  CHECK(r.y_r == 2.5);
  CHECK(r.y_r_dot == 0.0);
}

TEST_CASE("sinusoid derivatives match central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> tdist(0.0, 60.0);
  std::uniform_real_distribution<double> adist(0.2, 3.0);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const Sinusoid s{adist(rng), adist(rng)};
    const double t = tdist(rng) + h;
    const double d1 = (reference_eval(s, t + h).y_r - reference_eval(s, t - h).y_r) / (2 * h);
    const double d2 =
        (reference_eval(s, t + h).y_r_dot - reference_eval(s, t - h).y_r_dot) / (2 * h);
    CHECK(std::abs(d1 - reference_eval(s, t).y_r_dot) < 1e-6);
    CHECK(std::abs(d2 - reference_eval(s, t).y_r_ddot) < 1e-6);
  }
}

TEST_CASE("simple base laws") {
  BaseLaw zero(ZeroLaw{}, 0.01);
  CHECK(zero.sample(0.0, 1.0, 1.0) == 0.0);
  CHECK(zero.sample(3.0, -1.0, 2.0) == 0.0);

  BaseLaw c(ConstantLaw{250.0}, 0.01);
  CHECK(c.sample(0.0, 0.0, 0.0) == 250.0);
  CHECK(c.sample(59.0, 5.0, 1.0) == 250.0);
}

TEST_CASE("pid accumulates a rectangle-rule integral") {
  BaseLaw pid(PidLaw{2.0, 10.0, 0.5}, 0.1);
  // integral after first sample: 1 * 0.1
  CHECK(pid.sample(0.0, 1.0, -2.0) == doctest::Approx(2.0 + 10.0 * 0.1 - 1.0));
  // integral: 0.1 + 3 * 0.1 = 0.4
  CHECK(pid.sample(0.1, 3.0, 0.0) == doctest::Approx(6.0 + 4.0));
}

TEST_CASE("noise law rejects an empty range") {
  CHECK_THROWS_AS(BaseLaw(NoiseLaw{1.0, 1.0, 3}, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(BaseLaw(NoiseLaw{2.0, 1.0, 3}, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(BaseLaw(ZeroLaw{}, 0.0), std::invalid_argument);
}

TEST_CASE("noise is deterministic per seed") {
  BaseLaw a(NoiseLaw{-500.0, 500.0, 1}, 0.01);
  BaseLaw b(NoiseLaw{-500.0, 500.0, 1}, 0.01);
  BaseLaw c(NoiseLaw{-500.0, 500.0, 2}, 0.01);
  bool any_diff = false;
  for (int i = 0; i < 10; ++i) {
    const double va = a.sample(0, 0, 0);
    const double vb = b.sample(0, 0, 0);
    CHECK(va == vb);
    CHECK(va >= -500.0);
    CHECK(va <= 500.0);
    any_diff = any_diff || (va != c.sample(0, 0, 0));
  }
  CHECK(any_diff);
}

TEST_CASE("noise pins the first draw of seed 1") {
  // std::mt19937_64 seeded with 1: first output is fixed by the standard
  std::mt19937_64 ref(1);
  const double unit = static_cast<double>(ref() >> 11) / 9007199254740992.0;
  UniformNoise n(-500.0, 500.0, 1);
  CHECK(n.next() == -500.0 + 1000.0 * unit);
}

TEST_CASE("noise bounds and mean over 10^6 draws") {
  for (std::uint64_t seed : {1ULL, 99ULL, 123456789ULL}) {
    UniformNoise n(-500.0, 500.0, seed);
    double sum = 0.0;
    bool in_range = true;
    const int count = 1'000'000;
    for (int i = 0; i < count; ++i) {
      const double v = n.next();
      in_range = in_range && v >= -500.0 && v <= 500.0;
      sum += v;
    }
    CHECK(in_range);
    CHECK(std::abs(sum / count) <= 0.01 * 1000.0);
  }

  UniformNoise skew(2.0, 6.0, 5);
  double sum = 0.0;
  for (int i = 0; i < 1'000'000; ++i) sum += skew.next();
  CHECK(std::abs(sum / 1e6 - 4.0) <= 0.05 * 4.0);
}
