#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lyclamp/errors.hpp"
#include "lyclamp/stabilizer.hpp"

#include <cmath>
#include <random>

using namespace lyclamp;

namespace {

const PlantModel kPlant = make_linear_plant(3.0, 2.0, 1.0);

StabilizerConfig v1_cfg() { return make_stabilizer(Variant::v1, kPlant, 0.01); }
StabilizerConfig v2_cfg(double k = 5.0) { return make_stabilizer(Variant::v2, kPlant, 0.01, k); }

// Reference values computed offline from the closed-form expressions.
constexpr double kV1AtHalf = 75.13023058681397;
constexpr double kSAtHalf = 2.4476572299076222;
constexpr double kNAtHalf = 3.9600405445328017;

}  // namespace

TEST_CASE("v1_threshold examples") {
  const auto cfg = v1_cfg();
  CHECK(v1_threshold({0, 0}, {0, 0, 0}, cfg) == 0.0);
  CHECK(v1_threshold({0, 0}, {0, 1, 0}, cfg) == doctest::Approx(100.0).epsilon(1e-14));
  const ReferenceSample ref{std::sin(1.0), std::cos(1.0), -std::sin(1.0)};
  CHECK(v1_threshold({0.5, -0.2}, ref, cfg) == doctest::Approx(kV1AtHalf).epsilon(1e-12));
}

TEST_CASE("v2_threshold examples") {
  const auto cfg = v2_cfg(5.0);
  auto r = v2_threshold({0, 0}, {0, 0, 0}, cfg);
  CHECK(r.threshold == 0.0);
  CHECK(r.s == 0.0);

  r = v2_threshold({0, 0}, {1, 0, 0}, cfg);
  CHECK(r.threshold == 0.0);
  CHECK(r.s == 5.0);

  const ReferenceSample ref{std::sin(1.0), std::cos(1.0), -std::sin(1.0)};
  r = v2_threshold({0.5, -0.2}, ref, cfg);
  CHECK(r.threshold == doctest::Approx(kNAtHalf).epsilon(1e-12));
  CHECK(r.s == doctest::Approx(kSAtHalf).epsilon(1e-12));
}

TEST_CASE("v2 threshold scales with 1/b") {
  const PlantModel p = make_linear_plant(3.0, 2.0, 2.0);
  const auto cfg = make_stabilizer(Variant::v2, p, 0.01, 5.0);
  const ReferenceSample ref{std::sin(1.0), std::cos(1.0), -std::sin(1.0)};
  CHECK(v2_threshold({0.5, -0.2}, ref, cfg).threshold ==
        doctest::Approx(kNAtHalf / 2.0).epsilon(1e-12));
}

TEST_CASE("clamp examples") {
  auto d = clamp(400.0, 75.13, 0.34);
  CHECK(d.u == 400.0);
  CHECK_FALSE(d.overridden);

  d = clamp(-400.0, 75.13, 0.34);
  CHECK(d.u == 75.13);
  CHECK(d.overridden);

  d = clamp(400.0, 75.13, -0.2);
  CHECK(d.u == 75.13);
  CHECK(d.overridden);

  d = clamp(400.0, 75.13, 0.0);
  CHECK(d.u == 400.0);
  CHECK_FALSE(d.overridden);
  CHECK(d.threshold == 75.13);
  CHECK(d.sign_driver == 0.0);
}

TEST_CASE("stabilize examples") {
  // e = 0 and the predicted error is 0 as well: passthrough
  auto d = stabilize({0, 0}, {0, 0, 0}, 7.0, v1_cfg());
  CHECK(d.u == 7.0);
  CHECK_FALSE(d.overridden);

  // e = 0 but the reference is moving: predicted error (1 - 0) * dt > 0 drives max
  d = stabilize({0, 0}, {0, 1, 0}, -400.0, v1_cfg());
  CHECK(d.u == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(d.overridden);
  CHECK(d.sign_driver > 0.0);

  d = stabilize({0, 0}, {1, 0, 0}, -300.0, v2_cfg(5.0));
  CHECK(d.u == 0.0);
  CHECK(d.overridden);
  CHECK(d.sign_driver == 5.0);
}

TEST_CASE("V2 passes u_b through on the surface") {
  // s = k e + e_dot = 5 * 0.1 - 0.5 = 0
  const auto d = stabilize({0.0, 0.5}, {0.1, 0.0, 0.0}, -123.0, v2_cfg(5.0));
  CHECK(d.sign_driver == 0.0);
  CHECK(d.u == -123.0);
}

TEST_CASE("degenerate gains and bad configs") {
  StabilizerConfig cfg = v1_cfg();
  cfg.model_b = 0.0;
  CHECK_THROWS_AS(v1_threshold({0, 0}, {0, 1, 0}, cfg), DegenerateGain);
  CHECK_THROWS_AS(v2_threshold({0, 0}, {0, 1, 0}, cfg), DegenerateGain);
  CHECK_THROWS_AS(stabilize({0, 0}, {0, 1, 0}, 0.0, cfg), DegenerateGain);
  CHECK_THROWS_AS(cfg.validate(), DegenerateGain);

  CHECK_THROWS_AS(make_stabilizer(Variant::v2, kPlant, 0.01, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_stabilizer(Variant::v2, kPlant, 0.01, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_stabilizer(Variant::v1, kPlant, 0.0), std::invalid_argument);
  CHECK_NOTHROW(make_stabilizer(Variant::v1, kPlant, 0.01, 0.0));  // k unused by V1
}

TEST_CASE("variant names") {
  Variant v{};
  CHECK(parse_variant("V2", v));
  CHECK(v == Variant::v2);
  CHECK(parse_variant("v1", v));
  CHECK(v == Variant::v1);
  CHECK_FALSE(parse_variant("V3", v));
  CHECK(to_string(Variant::v1) == "V1");
}

TEST_CASE("clamp properties on random triples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(-1000.0, 1000.0);
  for (int i = 0; i < 100000; ++i) {
    const double ub = dist(rng);
    const double th = dist(rng);
    const double drv = dist(rng);
    const auto d = clamp(ub, th, drv);
    REQUIRE((d.u == ub || d.u == th));
    if (drv > 0) {
      REQUIRE(d.u == std::max(th, ub));
      if (ub >= th) REQUIRE_FALSE(d.overridden);
    } else {
      REQUIRE(d.u == std::min(th, ub));
    }
    REQUIRE(d.overridden == (d.u != ub));

    // monotone non-decreasing in u_b
    const double ub2 = ub + std::abs(dist(rng));
    REQUIRE(clamp(ub2, th, drv).u >= d.u);
  }
}

TEST_CASE("decrease margins are non-positive after stabilize") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> st(-3.0, 3.0);
  std::uniform_real_distribution<double> ub(-500.0, 500.0);
  for (double k : {1.0, 5.0, 20.0, 160.0}) {
    const auto c1 = v1_cfg();
    const auto c2 = v2_cfg(k);
    for (int i = 0; i < 20000; ++i) {
      const State s{st(rng), st(rng)};
      const ReferenceSample ref{st(rng), st(rng), st(rng)};
      const double u_b = ub(rng);
      REQUIRE(v1_decrease_margin(s, ref, stabilize(s, ref, u_b, c1).u, c1) <= kDecreaseTolerance);
      REQUIRE(v2_decrease_margin(s, ref, stabilize(s, ref, u_b, c2).u, c2) <= kDecreaseTolerance);
      REQUIRE(decrease_ok(s, ref, stabilize(s, ref, u_b, c2).u, c2));
    }
  }
}

TEST_CASE("an unclamped destabilizing control is flagged") {
  const auto cfg = v1_cfg();
  // e > 0, threshold 100: u = -400 drives x2 away from y_r_dot
  const State s{-0.1, 0.0};
  const ReferenceSample ref{0.0, 1.0, 0.0};
  CHECK(v1_decrease_margin(s, ref, -400.0, cfg) > 0.0);
  CHECK_FALSE(decrease_ok(s, ref, -400.0, cfg));
}
