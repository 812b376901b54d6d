#include "copdyn/hypercyclic.hpp"

#include "copdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace copdyn {

SimpleFunction pullback(const AtomicSpace& space, const AtomMap& f,
                        const SimpleFunction& phi) {
  SimpleFunction out;
  out.p = phi.p;
  for (int32_t b = 0; b < space.block_count(); ++b) {
    bool have = false;
    Rat val;
    for (int32_t a : space.block_atoms(b)) {
      int32_t t = f(a);
      // phi is supported inside the window, so escaping atoms evaluate to 0.
      Rat v = t == kExit ? Rat{0} : phi.value_on(space.block_of(t));
      if (!have) {
        val = v;
        have = true;
      } else if (v != val) {
        throw NoSolvablePullback(
            "pullback is not block-constant on block " + std::to_string(b));
      }
    }
    if (val != 0) out.values[b] = val;
  }
  return out;
}

std::vector<SimpleFunction> orbit_segment(const AtomicSpace& space,
                                          const AtomMap& f,
                                          const SimpleFunction& phi, int n) {
  if (n < 0) throw std::invalid_argument("orbit_segment: n must be >= 0");
  std::vector<SimpleFunction> orbit;
  orbit.reserve(n + 1);
  orbit.push_back(phi);
  for (int j = 1; j <= n; ++j) {
    orbit.push_back(pullback(space, f, orbit.back()));
  }
  return orbit;
}

namespace {

SimpleFunction difference(const SimpleFunction& a, const SimpleFunction& b) {
  SimpleFunction d;
  d.p = a.p;
  for (const auto& [blk, v] : a.values) d.values[blk] = v;
  for (const auto& [blk, v] : b.values) {
    auto it = d.values.find(blk);
    if (it == d.values.end()) {
      d.values[blk] = -v;
    } else {
      it->second -= v;
      if (it->second == 0) d.values.erase(it);
    }
  }
  return d;
}

}  // namespace

PhiResult construct_phi(const AtomicSpace& space, const AtomMap& f,
                        const ApproximationRequest& req,
                        const TransitivityCertificate& cert) {
  if (req.psi1.p != req.psi2.p) {
    throw std::invalid_argument("psi1 and psi2 must share the exponent p");
  }
  if (!(req.eta > 0)) throw std::invalid_argument("eta must be positive");
  const double p = req.psi1.p;

  if (!req.psi1.support().subset_of(cert.A) ||
      !req.psi2.support().subset_of(cert.A)) {
    throw std::invalid_argument("psi supports must lie inside A");
  }

  Rat M = std::max(req.psi1.sup_norm(), req.psi2.sup_norm());
  if (M == 0) {
    PhiResult zero;
    zero.phi.p = p;
    zero.phi_pullback.p = p;
    return zero;
  }

  // (H4) budget gate, exact for integral p.
  if (auto e = integral_exponent(p)) {
    Rat eta_r = rat_from_double(req.eta);
    Rat threshold = rat_pow(eta_r / 2, *e) / rat_pow(2 * M, *e);
    if (cert.epsilon > threshold) {
      throw BudgetTooLoose("certificate epsilon exceeds the (H4) threshold");
    }
  } else if (to_double(cert.epsilon) >
             h4_epsilon(req.eta, to_double(M), p)) {
    throw BudgetTooLoose("certificate epsilon exceeds the (H4) threshold");
  }

  auto rep = verify_transitivity(space, f, cert);
  if (!rep.valid) {
    throw std::invalid_argument("certificate does not verify: " +
                                (rep.failures.empty() ? std::string{}
                                                      : rep.failures.front()));
  }

  AtomMap g = iterate(f, cert.k);

  // Preimage cells: block d -> the unique block c with f^-k(c) = d in-window.
  // Pullback sigma-algebra equality (checked by verify) makes cells whole
  // blocks and assigns each d to at most one c.
  std::vector<int32_t> cell_owner(space.block_count(), -1);
  for (int32_t c = 0; c < space.block_count(); ++c) {
    auto pre = preimage_atoms(g, space.block_atoms(c));
    for (int32_t a : pre) cell_owner[space.block_of(a)] = c;
  }

  // gamma1 = psi1 restricted to B.
  SimpleFunction gamma1;
  gamma1.p = p;
  for (const auto& [blk, v] : req.psi1.values) {
    if (cert.B.contains(blk)) gamma1.values[blk] = v;
  }

  // For each support block of psi2 inside B, find C_j with f^-k(C_j) = B_j n B.
  std::vector<std::pair<int32_t, Rat>> cj_values;  // block c -> value b_j
  for (const auto& [blk, v] : req.psi2.values) {
    if (!cert.B.contains(blk)) continue;
    bool exits = false;
    for (int32_t a : space.block_atoms(blk)) {
      if (g(a) == kExit) exits = true;
    }
    if (exits) {
      throw NoSolvablePullback("support block " + std::to_string(blk) +
                               " leaves the window under f^k: no in-window "
                               "C_j exists");
    }
    int32_t c = cell_owner[blk];
    if (c == -1) {
      throw NoSolvablePullback("no block solves f^-k(C_j) = B_j for block " +
                               std::to_string(blk));
    }
    cj_values.emplace_back(c, v);
  }

  // phi: b_j on each C_j (C_j wins on overlaps with B), gamma1 on the rest of
  // B, zero elsewhere.
  PhiResult out;
  out.phi.p = p;
  for (const auto& [blk, v] : gamma1.values) {
    if (v != 0) out.phi.values[blk] = v;
  }
  for (const auto& [c, v] : cj_values) {
    if (v == 0) {
      out.phi.values.erase(c);
    } else {
      out.phi.values[c] = v;
    }
  }

  out.phi_pullback = out.phi;
  for (int step = 0; step < cert.k; ++step) {
    out.phi_pullback = pullback(space, f, out.phi_pullback);
  }

  auto err_norm = [&](const SimpleFunction& diff, bool add_leak) {
    if (auto e = integral_exponent(p)) {
      Rat pow = lp_norm_pow(diff, space);
      if (add_leak && space.preimage_tail_bound()) {
        pow += rat_pow(2 * M, *e) * *space.preimage_tail_bound();
      }
      return std::pow(to_double(pow), 1.0 / p);
    }
    double v = lp_norm(diff, space);
    if (add_leak && space.preimage_tail_bound()) {
      v = std::pow(std::pow(v, p) + std::pow(2.0 * to_double(M), p) *
                                        to_double(*space.preimage_tail_bound()),
                   1.0 / p);
    }
    return v;
  };

  out.err1 = err_norm(difference(out.phi, req.psi1), false);
  // The real phi o f^k also lives on preimages outside the window; the
  // declared leakage bound covers that part at amplitude <= 2M.
  out.err2 = err_norm(difference(out.phi_pullback, req.psi2), true);
  return out;
}

}  // namespace copdyn
