#pragma once

#include "copdyn/measure_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace copdyn {

enum class VerdictKind { CertifiedWithinHorizon, RefutedAtHorizon, Inconclusive };

std::string verdict_name(VerdictKind k);

/// Finite-horizon stamp attached to every verdict.
struct HorizonStamp {
  int k_max = 0;
  int window_size = 0;  // atoms in the truncation
  std::optional<Rat> tail_mass;
  std::optional<Rat> preimage_tail_bound;
};

/// Quantities re-measured when checking a transitivity-style certificate.
/// Preimage-side values already include the declared leakage bound; the
/// C-side value includes the exit-absorbing tail when the certificate uses it.
struct Measured {
  Rat mu_A_minus_B;
  Rat mu_preimage_B;
  Rat mu_C;
};

/// Witness (B, k, C) for the transitivity condition at a given epsilon and A.
struct TransitivityCertificate {
  Rat epsilon;
  MeasurableSet A;
  MeasurableSet B;  // subset of A
  MeasurableSet C;  // in-window part; exit tail added when flagged
  bool c_includes_exit_tail = false;
  int k = 1;
  Measured measured;
};

struct MixingEntry {
  int k = 1;
  MeasurableSet B;
  MeasurableSet C;
  bool c_includes_exit_tail = false;
  Measured measured;
};

/// Per-k family of witnesses for k0 <= k <= k_max.
struct MixingCertificate {
  Rat epsilon;
  MeasurableSet A;
  int k0 = 1;
  std::vector<MixingEntry> per_k;
};

/// Witness for the run-away condition: mu(X\B) < epsilon, B and f^k(B) disjoint.
struct RunAwayCertificate {
  Rat epsilon;
  MeasurableSet B;
  int k = 1;
  Rat mu_complement;  // window complement plus declared tail
};

}  // namespace copdyn
