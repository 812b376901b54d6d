#pragma once

#include "copdyn/certificates.hpp"
#include "copdyn/dynamics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace copdyn {

struct VerifyReport {
  bool valid = false;
  Measured measured;
  std::vector<std::string> failures;
};

/// Re-measures every inequality of the certificate exactly. Exit atoms in
/// B's forward orbit are only tolerated when the space declares an
/// exit-absorbing tail and the certificate opts into it.
VerifyReport verify_transitivity(const AtomicSpace& space, const AtomMap& f,
                                 const TransitivityCertificate& cert);

struct TransitivitySearchResult {
  VerdictKind kind = VerdictKind::Inconclusive;
  HorizonStamp horizon;
  std::optional<TransitivityCertificate> certificate;
  std::optional<int32_t> sigma_algebra_witness;  // set on exact refutation
  std::string note;
};

/// Greedy per-k search. Only verified certificates are emitted; the single
/// exact refutation is failure of f^-1(B) = B. Deterministic: drops blocks
/// by descending cost, ties by block id.
TransitivitySearchResult search_transitivity(const AtomicSpace& space,
                                             const AtomMap& f,
                                             const Rat& epsilon,
                                             const MeasurableSet& A, int k_max);

struct RunAwayResult {
  Rat max_mass;         // best mu(B) over feasible B (window mass)
  MeasurableSet best;   // attaining set
  bool exact = false;   // true: dynamic program, false: greedy lower bound
  std::string note;
};

/// Maximum of mu(B) over measurable B with B and f^k(B) disjoint.
/// Exact via max-weight independent set DP on the path/cycle block graph
/// when the k-step block graph has in/out degree <= 1; greedy otherwise.
RunAwayResult search_runaway_exact(const AtomicSpace& space, const AtomMap& f,
                                   int k);

struct RunAwayVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  HorizonStamp horizon;
  int k = 1;
  Rat max_mass;
  bool exact = false;
  std::optional<RunAwayCertificate> certificate;
};

/// Applies the mu(X)-epsilon threshold at one k. Requires finite measure.
RunAwayVerdict runaway_verdict(const AtomicSpace& space, const AtomMap& f,
                               const Rat& epsilon, int k);

std::vector<RunAwayVerdict> runaway_sweep(const AtomicSpace& space,
                                          const AtomMap& f, const Rat& epsilon,
                                          int k_max);

struct C3C4Result {
  VerdictKind kind = VerdictKind::Inconclusive;
  HorizonStamp horizon;
  MeasurableSet B;          // intersection of per-level run-away witnesses
  Rat mu_complement;        // mu(X\B) including tail
  Rat c3_proxy;             // min over k <= k_max of mu(B meet f^k(B))
  int c3_argmin = 0;
  Rat c4_proxy;             // min over k <= k_max of raw image mass of B
  int c4_argmin = 0;
  bool all_k_exactly_refuted = false;
  std::string note;
};

/// Builds B from run-away witnesses at budgets eps/2^j and reports the
/// finite-horizon liminf proxies. Certified when mu(X\B) < eps and the
/// proxy is at or below tol.
C3C4Result check_c3_c4(const AtomicSpace& space, const AtomMap& f,
                       const Rat& epsilon, int k_max, const Rat& tol);

struct PerKOutcome {
  int k = 1;
  bool certified = false;
  bool exactly_refuted = false;
  std::string refutation;  // which exact route fired
};

struct MixingSearchResult {
  VerdictKind kind = VerdictKind::Inconclusive;
  HorizonStamp horizon;
  std::optional<MixingCertificate> certificate;
  std::vector<PerKOutcome> per_k;
  std::optional<int32_t> sigma_algebra_witness;
  std::string note;
};

/// Per-k searches over [1, k_max]; certified when some k0 <= k0_max has all
/// k in [k0, k_max] certified. Exact per-k refutations come from the forced
/// block obstruction, or from the run-away DP when (D2) applies (finite
/// measure, A = X, injective block graph).
MixingSearchResult search_mixing(const AtomicSpace& space, const AtomMap& f,
                                 const Rat& epsilon, const MeasurableSet& A,
                                 int k0_max, int k_max);

/// Run-away witness to a transitivity certificate with A = X (finite-measure
/// injective bimeasurable route).
TransitivityCertificate to_transitivity_certificate(
    const AtomicSpace& space, const AtomMap& f, const RunAwayCertificate& rc);

// --- Salas criteria for weighted shifts -----------------------------------

struct SalasResult {
  VerdictKind kind = VerdictKind::Inconclusive;
  int horizon = 0;
  Rat proxy;                    // criterion-specific (see below)
  Rat ratio_sup;                // sup nu_i / nu_{i+1} over the window
  std::vector<long> nk_prefix;  // bilateral only
  std::string detail;
};

/// (a) liminf nu_i = 0 via the running minimum at the horizon.
SalasResult salas_unilateral(const std::vector<Rat>& weights, const Rat& tol);

/// (b) existence of (n_k) with nu_{i+-n_k} -> 0; weights[j] is nu_{j+lo}.
SalasResult salas_bilateral(const std::vector<Rat>& weights, long lo,
                            const Rat& tol);

/// (c) lim nu_i = 0 via the tail sup over the last quarter of the window.
/// Refuted at horizon when every suffix keeps attaining half the global sup.
SalasResult salas_mixing(const std::vector<Rat>& weights, const Rat& tol);

}  // namespace copdyn
