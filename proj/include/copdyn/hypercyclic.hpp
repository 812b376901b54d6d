#pragma once

#include "copdyn/certificates.hpp"
#include "copdyn/criteria.hpp"

#include <vector>

namespace copdyn {

/// Two target simple functions supported inside a finite-measure A, plus the
/// ball radius eta. The exponent p comes from the functions themselves.
struct ApproximationRequest {
  SimpleFunction psi1;
  SimpleFunction psi2;
  double eta = 0;
};

struct PhiResult {
  SimpleFunction phi;
  double err1 = 0;  // ||phi - psi1||_p
  double err2 = 0;  // ||phi o f^k - psi2||_p
  SimpleFunction phi_pullback;  // phi o f^k
};

/// Builds phi equal to psi1 on B away from the pullback cells C_j and equal
/// to psi2's block values on each C_j, so that phi approximates psi1 while
/// phi o f^k approximates psi2. Requires cert.epsilon <= h4_epsilon(eta,M,p).
/// Throws BudgetTooLoose or NoSolvablePullback.
PhiResult construct_phi(const AtomicSpace& space, const AtomMap& f,
                        const ApproximationRequest& req,
                        const TransitivityCertificate& cert);

/// phi o f: block-constant pullback; atoms leaving the window evaluate to 0
/// because phi is supported inside it. Throws NoSolvablePullback when the
/// pullback is not block-constant.
SimpleFunction pullback(const AtomicSpace& space, const AtomMap& f,
                        const SimpleFunction& phi);

/// [phi, phi o f, ..., phi o f^n].
std::vector<SimpleFunction> orbit_segment(const AtomicSpace& space,
                                          const AtomMap& f,
                                          const SimpleFunction& phi, int n);

}  // namespace copdyn
