#include "copdyn/criteria.hpp"

#include "copdyn/models/dyadic.hpp"
#include "copdyn/models/odometer.hpp"
#include "copdyn/models/partition_z.hpp"
#include "copdyn/models/shift.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace copdyn;

namespace {

models::BuiltSystem identity_system(int n) {
  std::vector<Rat> w(n, Rat(1, n));
  std::vector<std::vector<int32_t>> blocks(n);
  std::vector<int32_t> fwd(n);
  for (int32_t a = 0; a < n; ++a) {
    blocks[a] = {a};
    fwd[a] = a;
  }
  auto space = AtomicSpace::make(std::move(w), std::move(blocks), {});
  auto map = AtomMap::make(std::move(fwd), "id");
  return {std::move(space), std::move(map), "id"};
}

// Depth-4 odometer set {x_3 in {0,1,2}}.
MeasurableSet odo4_low_third_digit() {
  auto spec = models::odometer_spec(4);
  std::vector<int32_t> ids;
  for (long idx = 0; idx < spec.cycle_length; ++idx) {
    if (models::odometer_digits(spec, idx)[2] <= 2) {
      ids.push_back(static_cast<int32_t>(idx));
    }
  }
  return MeasurableSet::of_blocks(std::move(ids));
}

}  // namespace

TEST_CASE("verify_transitivity on the claim-B certificate") {
  auto sys = models::build_odometer(4);
  TransitivityCertificate cert;
  cert.epsilon = rat_from_double(0.2);
  cert.A = MeasurableSet::all(sys.space);
  cert.B = odo4_low_third_digit();
  cert.k = 12;  // n * |A_1| * |A_2| with n = 3
  auto img = image(sys.space, iterate(sys.map, 12), cert.B);
  cert.C = img.hull;
  auto rep = verify_transitivity(sys.space, sys.map, cert);
  CHECK(rep.valid);
  CHECK(rep.measured.mu_A_minus_B == Rat(1, 8));
  CHECK(rep.measured.mu_C == Rat(1, 8));
  CHECK(cert.B.set_intersection(img.hull).empty());

  // Smaller epsilon invalidates it.
  cert.epsilon = rat_from_double(0.1);
  CHECK_FALSE(verify_transitivity(sys.space, sys.map, cert).valid);
}

TEST_CASE("verify_transitivity rejects the identity certificate") {
  auto sys = identity_system(4);
  TransitivityCertificate cert;
  cert.epsilon = Rat(1, 2);  // < mu(A) = 1
  cert.A = MeasurableSet::all(sys.space);
  cert.B = cert.A;
  cert.C = cert.A;
  cert.k = 3;
  auto rep = verify_transitivity(sys.space, sys.map, cert);
  CHECK_FALSE(rep.valid);
  CHECK(rep.measured.mu_preimage_B == 1);
}

TEST_CASE("verify_transitivity on the partition example") {
  const int n = 20;
  auto sys = models::build_partition_example(n);
  TransitivityCertificate cert;
  cert.A = MeasurableSet::all(sys.space);
  cert.B = cert.A.set_difference(
      models::partition_cn(n, 2).set_union(models::partition_dn(n, 2)));
  cert.k = 40;
  auto g = iterate(sys.map, cert.k);
  // Every image escapes right at k = 40: C is just the declared tail.
  cert.C = MeasurableSet{};
  cert.c_includes_exit_tail = true;
  // mu(A\B) = (1/2 - 2^-19) + (1/8 - 2^-20) = 5/8 - 3*2^-20: valid at 0.7,
  // too large at 0.6 (the set drops slightly more than epsilon allows).
  cert.epsilon = rat_from_double(0.7);
  auto rep = verify_transitivity(sys.space, sys.map, cert);
  CHECK(rep.valid);
  CHECK(rep.measured.mu_A_minus_B == Rat(5, 8) - 3 * rat_pow2(-20));
  cert.epsilon = rat_from_double(0.6);
  CHECK_FALSE(verify_transitivity(sys.space, sys.map, cert).valid);
}

TEST_CASE("search_transitivity on the corollary-32 shift") {
  auto sys = models::build_corollary32_shift(20);
  auto A = MeasurableSet::of_blocks({0, 1});  // the first block window V_1
  auto res = search_transitivity(sys.space, sys.map, rat_from_double(0.3), A, 200);
  REQUIRE(res.kind == VerdictKind::CertifiedWithinHorizon);
  REQUIRE(res.certificate.has_value());
  auto rep = verify_transitivity(sys.space, sys.map, *res.certificate);
  CHECK(rep.valid);
}

TEST_CASE("search_transitivity is inconclusive on the identity") {
  auto sys = identity_system(6);
  auto res = search_transitivity(sys.space, sys.map, Rat(1, 10),
                                 MeasurableSet::all(sys.space), 25);
  CHECK(res.kind == VerdictKind::Inconclusive);
}

TEST_CASE("dyadic atomization: sigma-algebra refutation plus run-away content") {
  // The 2-to-1 atom map genuinely breaks f^-1(B) = B at any finite
  // resolution, so the searcher refutes the discretized operator outright.
  auto sys = models::build_dyadic_halving(8);
  auto res = search_transitivity(sys.space, sys.map, Rat(3, 10),
                                 MeasurableSet::all(sys.space), 10);
  CHECK(res.kind == VerdictKind::RefutedAtHorizon);
  CHECK(res.sigma_algebra_witness.has_value());

  // The underlying run-away choice B = [1/4, 1] still works: B meets no
  // f^k(B) for k >= 2 and mu(X\B) = 1/4 < 0.3.
  std::vector<int32_t> ids;
  for (int32_t j = 1 << 6; j < (1 << 8); ++j) ids.push_back(j);
  auto B = MeasurableSet::of_blocks(std::move(ids));
  CHECK(measure(sys.space, B.complement(sys.space)) == Rat(1, 4));
  auto g = iterate(sys.map, 2);
  auto img = image(sys.space, g, B);
  CHECK(MeasurableSet::of_blocks(img.atoms).set_intersection(B).empty());

  auto rv = runaway_verdict(sys.space, sys.map, Rat(3, 10), 2);
  CHECK(rv.kind == VerdictKind::CertifiedWithinHorizon);
  CHECK_FALSE(rv.exact);  // greedy route: the atom map is not injective
}

TEST_CASE("exact run-away optimum on the odometer") {
  auto sys = models::build_odometer(4);

  SUBCASE("k = 24: perfect matching, optimum exactly 1/2") {
    auto r = search_runaway_exact(sys.space, sys.map, 24);
    CHECK(r.exact);
    CHECK(r.max_mass == Rat(1, 2));
    auto v = runaway_verdict(sys.space, sys.map, rat_from_double(0.1), 24);
    CHECK(v.kind == VerdictKind::RefutedAtHorizon);  // 1/2 <= 9/10
  }

  SUBCASE("k = 12: optimum 7/8 certifies at eps = 0.2") {
    auto r = search_runaway_exact(sys.space, sys.map, 12);
    CHECK(r.exact);
    CHECK(r.max_mass == Rat(7, 8));
    auto v = runaway_verdict(sys.space, sys.map, rat_from_double(0.2), 12);
    REQUIRE(v.kind == VerdictKind::CertifiedWithinHorizon);
    CHECK(v.certificate->mu_complement == Rat(1, 8));
    // The claim-B set attains the optimum.
    auto B = odo4_low_third_digit();
    CHECK(measure(sys.space, B) == Rat(7, 8));
    auto img = image(sys.space, iterate(sys.map, 12), B);
    CHECK(img.hull.set_intersection(B).empty());
  }

  SUBCASE("identity: every block self-conflicts") {
    auto id = identity_system(5);
    for (int k : {1, 3}) {
      auto r = search_runaway_exact(id.space, id.map, k);
      CHECK(r.exact);
      CHECK(r.max_mass == 0);
    }
  }
}

TEST_CASE("run-away DP agrees with exhaustive search") {
  std::mt19937_64 rng(314159);
  for (int trial = 0; trial < 60; ++trial) {
    auto sys = trial % 3 == 2
                   ? testing::random_block_system(rng, 4 + trial % 6, 2)
                   : testing::random_injective_system(
                         rng, 4 + static_cast<int>(rng() % 14), trial % 3 == 1);
    int k = 1 + static_cast<int>(rng() % 3);
    auto r = search_runaway_exact(sys.space, sys.map, k);
    REQUIRE(r.exact);
    auto brute =
        testing::brute_force_runaway_once(sys.space, iterate(sys.map, k));
    CHECK(r.max_mass == brute.mass);
  }
}

TEST_CASE("check_c3_c4") {
  SUBCASE("dyadic halving: proxies fall to zero") {
    auto sys = models::build_dyadic_halving(10);
    auto res = check_c3_c4(sys.space, sys.map, rat_from_double(0.3), 12,
                           rat_from_double(1e-2));
    CHECK(res.kind == VerdictKind::CertifiedWithinHorizon);
    CHECK(res.c3_proxy == 0);
    CHECK(res.c4_proxy <= rat_from_double(1e-2));
    CHECK(res.mu_complement < rat_from_double(0.3));
  }

  SUBCASE("identity: never certified, exactly refuted") {
    auto id = identity_system(6);
    auto res = check_c3_c4(id.space, id.map, Rat(1, 10), 10, Rat(1, 1000));
    CHECK(res.kind == VerdictKind::RefutedAtHorizon);
  }

  SUBCASE("odometer at eps = 0.1: claim-C pattern") {
    auto sys = models::build_odometer(4);
    auto res = check_c3_c4(sys.space, sys.map, rat_from_double(0.1), 48,
                           rat_from_double(1e-3));
    CHECK(res.kind != VerdictKind::CertifiedWithinHorizon);
  }
}

TEST_CASE("search_mixing") {
  SUBCASE("partition example certifies a tail of k values") {
    const int n = 20;
    auto sys = models::build_partition_example(n);
    auto res = search_mixing(sys.space, sys.map, rat_from_double(0.6),
                             MeasurableSet::all(sys.space), 24, 40);
    REQUIRE(res.kind == VerdictKind::CertifiedWithinHorizon);
    REQUIRE(res.certificate.has_value());
    CHECK(res.certificate->k0 <= 24);
    for (const auto& e : res.certificate->per_k) {
      TransitivityCertificate cert;
      cert.epsilon = res.certificate->epsilon;
      cert.A = res.certificate->A;
      cert.B = e.B;
      cert.C = e.C;
      cert.c_includes_exit_tail = e.c_includes_exit_tail;
      cert.k = e.k;
      CHECK(verify_transitivity(sys.space, sys.map, cert).valid);
    }
  }

  SUBCASE("corollary 32: refuted at horizon (limsup obstruction)") {
    auto sys = models::build_corollary32_shift(20);
    auto A = MeasurableSet::of_blocks({0, 1});
    auto res =
        search_mixing(sys.space, sys.map, rat_from_double(0.3), A, 64, 200);
    CHECK(res.kind == VerdictKind::RefutedAtHorizon);
  }

  SUBCASE("finite-measure geometric shift: mixing certified") {
    auto sys = models::build_geometric_shift(models::ShiftSide::unilateral, 64,
                                             Rat(1, 2));
    auto res = search_mixing(sys.space, sys.map, rat_from_double(0.25),
                             MeasurableSet::all(sys.space), 16, 32);
    REQUIRE(res.kind == VerdictKind::CertifiedWithinHorizon);
    CHECK(res.certificate->k0 <= 16);
  }
}

TEST_CASE("run-away witness converts to a transitivity certificate") {
  std::mt19937_64 rng(2718);
  int converted = 0;
  for (int trial = 0; trial < 120 && converted < 25; ++trial) {
    auto sys = testing::random_injective_system(
        rng, 4 + static_cast<int>(rng() % 10), false);
    int k = 1 + static_cast<int>(rng() % 3);
    Rat eps = Rat(1 + static_cast<int>(rng() % 30), 10);
    auto v = runaway_verdict(sys.space, sys.map, eps, k);
    if (v.kind != VerdictKind::CertifiedWithinHorizon) continue;
    ++converted;
    auto cert = to_transitivity_certificate(sys.space, sys.map, *v.certificate);
    CHECK(verify_transitivity(sys.space, sys.map, cert).valid);
  }
  CHECK(converted > 0);
}

TEST_CASE("certificate epsilon monotonicity") {
  std::mt19937_64 rng(1618);
  auto odo = models::build_odometer(4);
  auto part = models::build_partition_example(12);
  int checked = 0;
  for (int trial = 0; trial < 120 && checked < 100; ++trial) {
    const auto& sys = trial % 2 == 0 ? odo : part;
    Rat eps = Rat(2 + static_cast<int>(rng() % 5), 10);
    auto res = search_transitivity(sys.space, sys.map, eps,
                                   MeasurableSet::all(sys.space), 48);
    if (res.kind != VerdictKind::CertifiedWithinHorizon) continue;
    TransitivityCertificate bumped = *res.certificate;
    bumped.epsilon = eps + Rat(1 + static_cast<int>(rng() % 20), 7);
    CHECK(verify_transitivity(sys.space, sys.map, bumped).valid);
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("salas criteria") {
  SUBCASE("corollary 32 weights") {
    auto w = models::corollary32_weights(20);
    auto a = salas_unilateral(w, rat_from_double(1e-4));
    CHECK(a.kind == VerdictKind::CertifiedWithinHorizon);
    CHECK(a.proxy == rat_pow2(-20));
    CHECK(a.ratio_sup == 2);

    // Running minimum after each block V_n is exactly 2^-n.
    auto starts = models::corollary32_block_starts(20);
    Rat running = w[0];
    for (int m = 1; m <= 20; ++m) {
      long end = m < 20 ? starts[m] : static_cast<long>(w.size());
      for (long i = m == 1 ? 0 : starts[m - 1]; i < end; ++i) {
        if (w[i] < running) running = w[i];
      }
      CHECK(running == rat_pow2(-m));
    }

    auto c = salas_mixing(w, rat_from_double(1e-4));
    CHECK(c.kind == VerdictKind::RefutedAtHorizon);
    CHECK(c.proxy == 1);  // tail sup stays at the global sup
  }

  SUBCASE("geometric weights certify (a) and (c)") {
    std::vector<Rat> w;
    for (int i = 0; i < 64; ++i) w.push_back(rat_pow2(-i));
    CHECK(salas_unilateral(w, rat_from_double(1e-4)).kind ==
          VerdictKind::CertifiedWithinHorizon);
    CHECK(salas_mixing(w, rat_from_double(1e-4)).kind ==
          VerdictKind::CertifiedWithinHorizon);
  }

  SUBCASE("bilateral (b) extraction") {
    std::vector<Rat> w;
    const long h = 64;
    for (long i = -h; i <= h; ++i) {
      w.push_back(rat_pow2(-std::labs(i)));
    }
    auto b = salas_bilateral(w, -h, rat_from_double(1e-3));
    CHECK(b.kind == VerdictKind::CertifiedWithinHorizon);
    REQUIRE(!b.nk_prefix.empty());
    for (std::size_t i = 0; i + 1 < b.nk_prefix.size(); ++i) {
      CHECK(b.nk_prefix[i] < b.nk_prefix[i + 1]);
    }

    // Constant weights: no level can be extracted.
    std::vector<Rat> flat(2 * h + 1, Rat(1));
    CHECK(salas_bilateral(flat, -h, rat_from_double(1e-3)).kind ==
          VerdictKind::Inconclusive);
  }
}
