#include "copdyn/models/dyadic.hpp"
#include "copdyn/models/odometer.hpp"
#include "copdyn/models/partition_z.hpp"
#include "copdyn/models/shift.hpp"

#include "copdyn/dynamics.hpp"

#include <doctest.h>

using namespace copdyn;
using namespace copdyn::models;

TEST_CASE("corollary 32 weight blocks") {
  auto w2 = corollary32_weights(2);
  CHECK(w2 == std::vector<Rat>{1, Rat(1, 2), 1, Rat(1, 2), Rat(1, 4), Rat(1, 2)});

  const int n = 8;
  auto w = corollary32_weights(n);
  auto starts = corollary32_block_starts(n);
  REQUIRE(starts.size() == static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) {
    long s = starts[m - 1];
    long len = 2 * m;
    CHECK(w[s] == 1);
    Rat min = w[s];
    long argmin = s;
    for (long i = s; i < s + len; ++i) {
      if (w[i] < min) {
        min = w[i];
        argmin = i;
      }
    }
    CHECK(min == rat_pow2(-m));
    CHECK(argmin == s + m);  // the middle of the block
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    Rat r = w[i + 1] / w[i];
    CHECK((r == Rat(1, 2) || r == 2));
  }
}

TEST_CASE("shift boundedness equals the max weight ratio") {
  for (int n_blocks : {3, 5}) {
    auto sys = build_corollary32_shift(n_blocks);
    Rat expect = 0;
    const auto& w = sys.space.weights();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] / w[i + 1] > expect) expect = w[i] / w[i + 1];
    }
    CHECK(boundedness_constant(sys.space, sys.map, 1.0).c == expect);
  }
  auto geo = build_geometric_shift(ShiftSide::unilateral, 16, Rat(1, 2));
  CHECK(boundedness_constant(geo.space, geo.map, 1.0).c == 2);
  CHECK(*geo.space.tail_mass() == rat_pow2(-15));  // sum_{i>=16} 2^-i
}

TEST_CASE("odometer structure") {
  for (int depth = 1; depth <= 5; ++depth) {
    auto sys = build_odometer(depth);
    CHECK(sys.space.total() == 1);  // probability vectors multiply out exactly

    // Single cycle of length L: orbit traversal returns to the start only
    // after cycle_length steps.
    auto spec = odometer_spec(depth);
    long L = spec.cycle_length;
    CHECK(sys.space.atom_count() == L);
    int32_t x = 0;
    for (long step = 1; step < L; ++step) {
      x = sys.map(x);
      CHECK(x != 0);
    }
    CHECK(sys.map(x) == 0);

    // The carry rule is +1 in little-endian mixed radix.
    for (long idx = 0; idx < L; ++idx) {
      CHECK(sys.map(static_cast<int32_t>(idx)) == (idx + 1) % L);
    }
  }

  auto spec = odometer_spec(4);
  CHECK(spec.radix == std::vector<int>{2, 2, 6, 2});
  CHECK(spec.cycle_length == 48);
  CHECK(spec.digit_mass[2][0] == Rat(7, 24));
  CHECK(spec.digit_mass[2][5] == Rat(1, 24));
}

TEST_CASE("radon-nikodym values") {
  auto spec5 = odometer_spec(5);

  // carry level 1: x_1 = 0, ratio mu_1(1)/mu_1(0) = 1
  CHECK(rn_derivative(spec5, {0, 1, 4, 0, 7}) == 1);

  // x = (1,1,2,...): level 3, value (1/24)/(7/24) = 1/7
  CHECK(rn_derivative(spec5, {1, 1, 2, 0, 0}) == Rat(1, 7));
  CHECK(odometer_carry_level(spec5, {1, 1, 2, 0, 0}) == 3);

  // Exhaustive depth-5 scan: minimum is exactly 1/7.
  Rat min = -1;
  for (long idx = 0; idx < spec5.cycle_length; ++idx) {
    Rat rn = rn_derivative(spec5, odometer_digits(spec5, idx));
    if (min < 0 || rn < min) min = rn;
    CHECK(rn >= Rat(1, 7));
  }
  CHECK(min == Rat(1, 7));

  // Two independent routes agree: formula vs weight ratio along the map.
  for (int depth : {3, 4}) {
    auto spec = odometer_spec(depth);
    auto sys = build_odometer(depth);
    for (long idx = 0; idx < spec.cycle_length; ++idx) {
      auto digits = odometer_digits(spec, idx);
      Rat via_weights = sys.space.weight(sys.map(static_cast<int32_t>(idx))) /
                        sys.space.weight(static_cast<int32_t>(idx));
      CHECK(rn_derivative(spec, digits) == via_weights);
    }
  }

  // Wrap atom: finite-depth product over every digit.
  auto spec3 = odometer_spec(3);
  CHECK(rn_derivative(spec3, {1, 1, 5}) == 7);
}

TEST_CASE("partition example bookkeeping") {
  const int n = 20;
  auto sys = build_partition_example(n);
  // Window mass is 3 minus both declared tails.
  CHECK(sys.space.total() + *sys.space.tail_mass() == 3);
  CHECK(*sys.space.preimage_tail_bound() == rat_pow2(-n));
  CHECK(*sys.space.exit_tail_mass() == rat_pow2(-(n - 1)));

  CHECK(measure(sys.space, partition_dn(n, 2)) + *sys.space.preimage_tail_bound() ==
        Rat(1, 8));
}

TEST_CASE("dyadic halving model") {
  auto sys = build_dyadic_halving(6);
  CHECK(sys.space.total() == 1);
  CHECK_FALSE(sys.map.injective());
  CHECK(boundedness_constant(sys.space, sys.map, 1.0).c == 2);
  CHECK(sys.map(13) == 6);
  CHECK(sys.map(0) == 0);
}
