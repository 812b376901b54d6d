#include "copdyn/models/disk.hpp"
#include "copdyn/models/interval.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace copdyn;
using namespace copdyn::models;

TEST_CASE("halving map on the unit interval: E1") {
  auto rep = interval_analyze(interval_halving(), 40, 1e-10);
  CHECK(rep.c1.lo == Rat(1, 2));
  CHECK(rep.c2.hi == Rat(1, 2));
  CHECK(rep.contraction);
  CHECK(rep.injective);
  CHECK(rep.verdict == EVerdict::E1);
  CHECK(rep.mixing_certified);
  CHECK(rep.dissipative);
  // mu(f^k(X)) = 2^-k exactly
  for (int k = 1; k <= 40; ++k) {
    CHECK(rep.fkx_mass[k - 1].exact());
    CHECK(rep.fkx_mass[k - 1].lo == rat_pow2(-k));
  }
  // W = (1/2, 1]
  REQUIRE(rep.wandering.size() == 1);
  CHECK(rep.wandering[0].a.lo == Rat(1, 2));
  CHECK(rep.wandering[0].b.hi == Rat(1));
  CHECK(rep.wandering_mass.lo == Rat(1, 2));
}

TEST_CASE("halving map on the line: E2") {
  auto rep = interval_analyze(interval_halving_real(), 10, 1e-10);
  CHECK(rep.contraction);
  CHECK(rep.lambda_infinite);
  CHECK(rep.verdict == EVerdict::E2);
  CHECK_FALSE(rep.mixing_certified);
  CHECK_FALSE(rep.dissipative);
}

TEST_CASE("log1p: dissipative but not a contraction") {
  auto rep = interval_analyze(interval_log1p(), 64, 1e-10);
  CHECK(rep.c2.hi == 1);  // sup derivative attained at 0, exactly
  CHECK_FALSE(rep.contraction);
  CHECK(rep.injective);
  CHECK(rep.dissipative);
  CHECK(rep.verdict == EVerdict::NotDetermined);
  CHECK(rep.mixing_certified);
  // W = [log 2, 1] within the enclosure tolerance
  REQUIRE(rep.wandering.size() == 1);
  CHECK(std::abs(to_double(rep.wandering[0].a.lo) - std::log(2.0)) < 1e-10);
  CHECK(rep.wandering[0].b.hi == 1);
  // The core mass vanishes in the limit even though mu(f^64(X)) is still
  // around 2/64.
  CHECK(to_double(rep.lambda_mass.hi) > 0.01);
  CHECK(rep.lambda_limit_known);
  CHECK(to_double(rep.lambda_limit.hi) <= 1e-10);
}

TEST_CASE("two-branch piecewise linear map: dissipative via the orbit block") {
  auto rep = interval_analyze(interval_two_branch(), 32, 1e-10);
  CHECK(rep.c1.lo == Rat(1, 2));
  CHECK(rep.c2.hi == Rat(3, 2));
  CHECK_FALSE(rep.contraction);
  CHECK(rep.injective);
  CHECK(rep.dissipative);
  CHECK(rep.mixing_certified);
  // f(X) = X mod null: the core keeps full mass, no E-verdict applies.
  CHECK(rep.lambda_limit_known);
  CHECK(rep.lambda_limit.lo == 1);
  CHECK(rep.verdict == EVerdict::NotDetermined);
  // Wandering block [f(1/2), 1/2) = [1/4, 1/2)
  REQUIRE(rep.wandering.size() == 1);
  CHECK(rep.wandering[0].a.lo == Rat(1, 4));
  CHECK(rep.wandering[0].b.hi == Rat(1, 2));
}

TEST_CASE("derivative bounds are sound on random subintervals") {
  std::mt19937_64 rng(8888);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& sys :
       {interval_halving(), interval_log1p(), interval_two_branch()}) {
    auto rep = interval_analyze(sys, 4, 1e-10);
    for (int trial = 0; trial < 100; ++trial) {
      double x = u(rng), y = u(rng);
      if (x > y) std::swap(x, y);
      if (y - x < 1e-6) continue;
      Iv J{Enclosure::point(rat_from_double(x)),
           Enclosure::point(rat_from_double(y))};
      auto img = interval_image(sys, {J});
      Enclosure len = interval_mass(img);
      Rat jlen = rat_from_double(y) - rat_from_double(x);
      CHECK(len.hi >= rep.c1.lo * jlen - rat_from_double(1e-12));
      CHECK(len.lo <= rep.c2.hi * jlen + rat_from_double(1e-12));
    }
  }
}

TEST_CASE("disk classification") {
  SUBCASE("hyperbolic a = 1/2") {
    DiskAutomorphism aut{Cx{0.5, 0.0}, 0.0};
    auto c = disk_classify(aut);
    CHECK(c.type == MobiusType::hyperbolic);
    REQUIRE(c.fixed_points.size() == 2);
    for (Cx z : c.fixed_points) {
      CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
      CHECK(std::abs(z.imag()) < 1e-12);
    }
    // z -> (z - 1/2)/(1 - z/2) attracts to -1.
    CHECK(std::abs(c.omega1 - Cx{-1.0, 0.0}) < 1e-9);
    CHECK(std::abs(c.omega2 - Cx{1.0, 0.0}) < 1e-9);
    // Orbit of 0 confirms the attractor.
    Cx z = 0;
    for (int i = 0; i < 64; ++i) z = disk_apply(aut, z);
    CHECK(std::abs(z - c.omega1) < 1e-6);
  }

  SUBCASE("the mirrored coefficient attracts to +1") {
    DiskAutomorphism aut{Cx{-0.5, 0.0}, 0.0};
    auto c = disk_classify(aut);
    CHECK(c.type == MobiusType::hyperbolic);
    CHECK(std::abs(c.omega1 - Cx{1.0, 0.0}) < 1e-9);
  }

  SUBCASE("elliptic rotation") {
    DiskAutomorphism rot{Cx{0.0, 0.0}, 1.0};
    auto c = disk_classify(rot);
    CHECK(c.type == MobiusType::elliptic);
    REQUIRE(c.fixed_points.size() == 1);
    CHECK(std::abs(c.fixed_points[0]) < 1e-12);
  }

  SUBCASE("parabolic boundary case") {
    double theta = 1.0;
    double a = std::sin(theta / 2);  // cos^2(theta/2) = 1 - a^2
    auto c = disk_classify(DiskAutomorphism{Cx{a, 0.0}, theta});
    CHECK(c.type == MobiusType::parabolic);
    CHECK(std::abs(c.omega1 - c.omega2) < 1e-12);
    CHECK(std::abs(std::abs(c.omega1) - 1.0) < 1e-6);
  }
}

TEST_CASE("elliptic rotations preserve arc measure") {
  DiskAutomorphism rot{Cx{0.0, 0.0}, 0.7};
  std::mt19937_64 rng(1212);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Arc arc{u(rng), 0.02 + 0.6 * u(rng)};
    for (int k : {1, 5, 17}) {
      CHECK(disk_measure_pullback(rot, {arc}, k) ==
            doctest::Approx(arc.length).epsilon(1e-12));
    }
  }
}

TEST_CASE("hyperbolic escape from the Denjoy-Wolff arcs") {
  DiskAutomorphism aut{Cx{0.5, 0.0}, 0.0};
  auto c = disk_classify(aut);
  double t1 = std::arg(c.omega1) / (2 * std::numbers::pi);
  double t2 = std::arg(c.omega2) / (2 * std::numbers::pi);
  ArcSet holes = arc_normalize(
      {arc_centered(t1 - std::floor(t1), 0.05), arc_centered(t2 - std::floor(t2), 0.05)});
  ArcSet B = arc_complement(holes);
  CHECK(arc_measure(B) == doctest::Approx(0.9));
  int k0 = -1;
  for (int k = 1; k <= 64; ++k) {
    double fwd = arc_measure(boundary_map_arcs(aut, B, k));
    double bwd = arc_measure(boundary_map_arcs(aut, B, -k));
    if (fwd <= 0.1 && bwd <= 0.1) {
      k0 = k;
      break;
    }
  }
  REQUIRE(k0 > 0);
  for (int k = k0; k <= 64; ++k) {
    CHECK(arc_measure(boundary_map_arcs(aut, B, k)) <= 0.1);
    CHECK(arc_measure(boundary_map_arcs(aut, B, -k)) <= 0.1);
  }
}

TEST_CASE("arc pushforward is a probability measure") {
  DiskAutomorphism aut{Cx{0.3, 0.2}, 0.9};
  for (int k : {1, 3, 9, 40}) {
    double total = 0;
    const int parts = 16;
    for (int i = 0; i < parts; ++i) {
      Arc piece{static_cast<double>(i) / parts, 1.0 / parts};
      total += disk_measure_pullback(aut, {piece}, k);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("poisson measure identity") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DiskAutomorphism auts[] = {
      {Cx{0.5, 0.0}, 0.0}, {Cx{0.2, -0.3}, 1.3}, {Cx{0.0, 0.0}, 2.0}};
  for (const auto& aut : auts) {
    for (int trial = 0; trial < 40; ++trial) {
      double r = 0.9 * u(rng);
      double phase = 2 * std::numbers::pi * u(rng);
      Cx omega = std::polar(r, phase);
      Arc arc{u(rng), 0.01 + 0.8 * u(rng)};
      auto chk = poisson_check(aut, omega, arc);
      CHECK(std::abs(chk.lhs - chk.rhs) <= 1e-12);
    }
  }
}

TEST_CASE("arc set algebra") {
  ArcSet wrap = arc_normalize({{0.9, 0.2}});  // wraps across 0
  CHECK(arc_measure(wrap) == doctest::Approx(0.2).epsilon(1e-15));
  auto comp = arc_complement(wrap);
  CHECK(arc_measure(comp) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(arc_measure(arc_complement(ArcSet{})) == doctest::Approx(1.0));
  auto merged = arc_normalize({{0.1, 0.3}, {0.35, 0.2}, {0.2, 0.2}});
  CHECK(arc_measure(merged) == doctest::Approx(0.45).epsilon(1e-15));
}
