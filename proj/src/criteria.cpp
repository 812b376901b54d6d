#include "copdyn/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace copdyn {

std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedWithinHorizon: return "certified-within-horizon";
    case VerdictKind::RefutedAtHorizon: return "refuted-at-horizon";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

HorizonStamp stamp(const AtomicSpace& space, int k_max) {
  HorizonStamp h;
  h.k_max = k_max;
  h.window_size = space.atom_count();
  h.tail_mass = space.tail_mass();
  h.preimage_tail_bound = space.preimage_tail_bound();
  return h;
}

// forward composition: (g after f)(a) = g(f(a)) with EXIT absorbing.
std::vector<int32_t> compose_forward(const std::vector<int32_t>& g,
                                     const AtomMap& f) {
  std::vector<int32_t> out(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) {
    int32_t t = f(static_cast<int32_t>(a));
    out[a] = t == kExit ? kExit : g[t];
  }
  return out;
}

// k-step structure of one block under g = f^k.
struct BlockImage {
  std::vector<int32_t> hull;  // sorted block ids met by the in-window image
  bool exits = false;
  Rat window_preimage_mass;   // mass of in-window g-preimage of the block
};

std::vector<BlockImage> block_images(const AtomicSpace& space,
                                     const AtomMap& g) {
  std::vector<BlockImage> out(space.block_count());
  for (int32_t b = 0; b < space.block_count(); ++b) {
    auto& bi = out[b];
    std::vector<int32_t> hull;
    for (int32_t a : space.block_atoms(b)) {
      int32_t t = g(a);
      if (t == kExit) {
        bi.exits = true;
      } else {
        hull.push_back(space.block_of(t));
      }
    }
    std::sort(hull.begin(), hull.end());
    hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
    bi.hull = std::move(hull);
    bi.window_preimage_mass =
        atom_set_mass(space, preimage_atoms(g, space.block_atoms(b)));
  }
  return out;
}

// Undirected block conflict structure of B meet f^k(B) = empty:
// u conflicts with v when some atom of u maps into v.
struct BlockGraphK {
  std::vector<std::vector<int32_t>> out;  // distinct in-window target blocks
  std::vector<std::vector<int32_t>> in;
  std::vector<bool> exits;
  bool functional = true;  // every block has <= 1 out and <= 1 in neighbour
};

BlockGraphK block_graph(const AtomicSpace& space, const AtomMap& g) {
  BlockGraphK bg;
  const int32_t nb = space.block_count();
  bg.out.resize(nb);
  bg.in.resize(nb);
  bg.exits.resize(nb, false);
  for (int32_t b = 0; b < nb; ++b) {
    std::vector<int32_t> targets;
    for (int32_t a : space.block_atoms(b)) {
      int32_t t = g(a);
      if (t == kExit) {
        bg.exits[b] = true;
      } else {
        targets.push_back(space.block_of(t));
      }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    bg.out[b] = std::move(targets);
  }
  for (int32_t b = 0; b < nb; ++b) {
    for (int32_t t : bg.out[b]) bg.in[t].push_back(b);
  }
  for (int32_t b = 0; b < nb; ++b) {
    if (bg.out[b].size() > 1 || bg.in[b].size() > 1) {
      bg.functional = false;
      break;
    }
  }
  return bg;
}

struct MwisPick {
  Rat mass;
  std::vector<int32_t> chosen;
};

// Max-weight independent set on an ordered path of blocks.
MwisPick mwis_path(const std::vector<int32_t>& nodes, const AtomicSpace& space,
                   const std::vector<bool>& eligible) {
  const std::size_t n = nodes.size();
  std::vector<Rat> best(n + 1);
  std::vector<bool> took(n + 1, false);
  for (std::size_t i = 1; i <= n; ++i) {
    best[i] = best[i - 1];
    int32_t b = nodes[i - 1];
    if (eligible[b]) {
      Rat take = (i >= 2 ? best[i - 2] : Rat{0}) + space.block_mass(b);
      if (take > best[i]) {
        best[i] = take;
        took[i] = true;
      }
    }
  }
  MwisPick out;
  out.mass = best[n];
  for (std::size_t i = n; i >= 1;) {
    if (took[i]) {
      out.chosen.push_back(nodes[i - 1]);
      i = i >= 2 ? i - 2 : 0;
    } else {
      --i;
    }
  }
  return out;
}

MwisPick mwis_cycle(const std::vector<int32_t>& nodes, const AtomicSpace& space,
                    const std::vector<bool>& eligible) {
  const std::size_t n = nodes.size();
  if (n == 1) return {};  // self-loop: the block conflicts with itself
  // first node excluded vs included (then both neighbours excluded)
  std::vector<int32_t> rest(nodes.begin() + 1, nodes.end());
  MwisPick without_first = mwis_path(rest, space, eligible);
  if (!eligible[nodes[0]]) return without_first;
  std::vector<int32_t> middle;
  if (n >= 4) {
    middle.assign(nodes.begin() + 2, nodes.begin() + static_cast<long>(n) - 1);
  }
  MwisPick with_first = mwis_path(middle, space, eligible);
  with_first.mass += space.block_mass(nodes[0]);
  with_first.chosen.push_back(nodes[0]);
  return with_first.mass > without_first.mass ? with_first : without_first;
}

}  // namespace

// --------------------------------------------------------------------------

VerifyReport verify_transitivity(const AtomicSpace& space, const AtomMap& f,
                                 const TransitivityCertificate& cert) {
  VerifyReport rep;
  auto fail = [&rep](std::string msg) { rep.failures.push_back(std::move(msg)); };

  if (cert.epsilon <= 0) fail("epsilon must be positive");
  if (cert.k < 1) fail("k must be >= 1");
  if (!cert.B.subset_of(cert.A)) fail("B is not a subset of A");

  auto pc = pullback_sigma_algebra_equals(space, f);
  if (!pc.equal) fail("pullback sigma-algebra differs: " + pc.detail);

  rep.measured.mu_A_minus_B = measure(space, cert.A.set_difference(cert.B));
  if (rep.measured.mu_A_minus_B >= cert.epsilon) fail("mu(A\\B) >= epsilon");

  AtomMap g = iterate(f, cert.k);

  // Preimage side: in-window mass plus the declared leakage bound.
  auto pre = preimage_atoms(g, cert.B.atoms(space));
  Rat pre_mass = atom_set_mass(space, pre);
  if (!space.preimage_tail_bound()) {
    fail("preimage leakage bound undeclared: preimage side unverifiable");
  } else {
    pre_mass += *space.preimage_tail_bound();
  }
  rep.measured.mu_preimage_B = pre_mass;
  if (pre_mass >= cert.epsilon) fail("mu(f^-k(B)) >= epsilon");

  // Image side: every in-window image atom must lie in C; escaping atoms are
  // covered only by an opted-in exit-absorbing tail.
  bool any_exit = false;
  for (int32_t a : cert.B.atoms(space)) {
    int32_t t = g(a);
    if (t == kExit) {
      any_exit = true;
    } else if (!cert.C.contains(space.block_of(t))) {
      fail("f^k(B) not contained in C");
      break;
    }
  }
  Rat mu_c = measure(space, cert.C);
  if (any_exit) {
    if (!cert.c_includes_exit_tail) {
      fail("orbit of B leaves the window but C does not include the tail");
    } else if (!space.exit_tail_mass()) {
      fail("orbit of B leaves the window and no exit-absorbing tail declared");
    }
  }
  if (cert.c_includes_exit_tail) {
    if (!space.exit_tail_mass()) {
      fail("certificate references an undeclared exit tail");
    } else {
      mu_c += *space.exit_tail_mass();
    }
  }
  rep.measured.mu_C = mu_c;
  if (mu_c >= cert.epsilon) fail("mu(C) >= epsilon");

  rep.valid = rep.failures.empty();
  return rep;
}

namespace {

struct PerKOutcomeInternal {
  bool certified = false;
  bool exactly_refuted = false;
  std::string refutation;
  std::optional<TransitivityCertificate> cert;
  bool saw_exit = false;
};

// One greedy (B, C) search at fixed k, with the exact forced-block
// obstruction checked first.
PerKOutcomeInternal per_k_search(const AtomicSpace& space, const AtomMap& f,
                                 const AtomMap& g, const Rat& epsilon,
                                 const MeasurableSet& A, int k) {
  PerKOutcomeInternal out;
  auto images = block_images(space, g);
  const bool exit_tail_ok = space.exit_tail_mass().has_value();

  // Forced blocks: mu(b) >= epsilon cannot be dropped. Their window-side
  // preimage and hull masses are lower bounds for any candidate certificate.
  {
    Rat forced_pre = 0;
    std::vector<int32_t> forced_hull;
    for (int32_t b : A.block_ids()) {
      if (space.block_mass(b) >= epsilon) {
        forced_pre += images[b].window_preimage_mass;
        forced_hull.insert(forced_hull.end(), images[b].hull.begin(),
                           images[b].hull.end());
      }
    }
    std::sort(forced_hull.begin(), forced_hull.end());
    forced_hull.erase(std::unique(forced_hull.begin(), forced_hull.end()),
                      forced_hull.end());
    Rat forced_hull_mass = 0;
    for (int32_t h : forced_hull) forced_hull_mass += space.block_mass(h);
    if (forced_pre >= epsilon) {
      out.exactly_refuted = true;
      out.refutation = "forced blocks already have preimage mass >= epsilon";
      return out;
    }
    if (forced_hull_mass >= epsilon) {
      out.exactly_refuted = true;
      out.refutation = "forced blocks already force mu(C) >= epsilon";
      return out;
    }
  }

  if (!space.preimage_tail_bound()) {
    out.refutation.clear();
    return out;  // preimage side unverifiable: cannot certify, cannot refute
  }
  const Rat pre_bound = *space.preimage_tail_bound();

  // Greedy: drop costliest blocks until the three budgets hold.
  struct Cand {
    int32_t b;
    Rat cost;
    bool must_drop;  // exits with no declared absorbing tail
  };
  std::vector<Cand> order;
  Rat pre_total = pre_bound;
  std::vector<int32_t> hull_count(space.block_count(), 0);
  int exiting_kept = 0;
  for (int32_t b : A.block_ids()) {
    Cand c;
    c.b = b;
    c.cost = images[b].window_preimage_mass;
    for (int32_t h : images[b].hull) {
      c.cost += space.block_mass(h);
      ++hull_count[h];
    }
    c.must_drop = images[b].exits && !exit_tail_ok;
    if (images[b].exits) {
      out.saw_exit = true;
      ++exiting_kept;
    }
    pre_total += images[b].window_preimage_mass;
    order.push_back(std::move(c));
  }
  std::sort(order.begin(), order.end(), [](const Cand& x, const Cand& y) {
    if (x.must_drop != y.must_drop) return x.must_drop;
    if (x.cost != y.cost) return x.cost > y.cost;
    return x.b < y.b;
  });

  Rat hull_mass = 0;
  for (int32_t h = 0; h < space.block_count(); ++h) {
    if (hull_count[h] > 0) hull_mass += space.block_mass(h);
  }
  std::vector<bool> kept(space.block_count(), false);
  for (int32_t b : A.block_ids()) kept[b] = true;
  Rat drop_mass = 0;

  auto mu_c_current = [&]() {
    Rat m = hull_mass;
    if (exiting_kept > 0 && exit_tail_ok) m += *space.exit_tail_mass();
    return m;
  };

  std::size_t next = 0;
  while (true) {
    bool pending_must_drop = next < order.size() && order[next].must_drop;
    if (!pending_must_drop && drop_mass < epsilon && pre_total < epsilon &&
        mu_c_current() < epsilon) {
      break;  // feasible
    }
    if (next >= order.size()) return out;  // nothing left to drop
    const Cand& c = order[next++];
    kept[c.b] = false;
    drop_mass += space.block_mass(c.b);
    if (drop_mass >= epsilon) return out;  // drop budget exhausted
    pre_total -= images[c.b].window_preimage_mass;
    for (int32_t h : images[c.b].hull) {
      if (--hull_count[h] == 0) hull_mass -= space.block_mass(h);
    }
    if (images[c.b].exits) --exiting_kept;
  }

  TransitivityCertificate cert;
  cert.epsilon = epsilon;
  cert.A = A;
  std::vector<int32_t> b_ids;
  for (int32_t b : A.block_ids()) {
    if (kept[b]) b_ids.push_back(b);
  }
  cert.B = MeasurableSet::of_blocks(std::move(b_ids));
  std::vector<int32_t> c_ids;
  for (int32_t h = 0; h < space.block_count(); ++h) {
    if (hull_count[h] > 0) c_ids.push_back(h);
  }
  cert.C = MeasurableSet::of_blocks(std::move(c_ids));
  cert.c_includes_exit_tail = exiting_kept > 0;
  cert.k = k;

  auto rep = verify_transitivity(space, f, cert);
  if (!rep.valid) return out;  // greedy construction did not verify
  cert.measured = rep.measured;
  out.certified = true;
  out.cert = std::move(cert);
  return out;
}

}  // namespace

TransitivitySearchResult search_transitivity(const AtomicSpace& space,
                                             const AtomMap& f,
                                             const Rat& epsilon,
                                             const MeasurableSet& A,
                                             int k_max) {
  TransitivitySearchResult res;
  res.horizon = stamp(space, k_max);
  auto pc = pullback_sigma_algebra_equals(space, f);
  if (!pc.equal) {
    res.kind = VerdictKind::RefutedAtHorizon;
    res.sigma_algebra_witness = pc.witness_block;
    res.note = "f^-1(B) != B: " + pc.detail;
    return res;
  }
  std::vector<int32_t> fwd(space.atom_count());
  for (int32_t a = 0; a < space.atom_count(); ++a) fwd[a] = a;
  bool saw_exit = false;
  for (int k = 1; k <= k_max; ++k) {
    fwd = compose_forward(fwd, f);
    AtomMap g = AtomMap::make(fwd, f.name() + "^" + std::to_string(k));
    auto o = per_k_search(space, f, g, epsilon, A, k);
    saw_exit = saw_exit || o.saw_exit;
    if (o.certified) {
      res.kind = VerdictKind::CertifiedWithinHorizon;
      res.certificate = std::move(o.cert);
      return res;
    }
  }
  res.kind = VerdictKind::Inconclusive;
  res.note = saw_exit ? "budget exhausted at k_max; orbits leave the window"
                      : "budget exhausted at k_max";
  return res;
}

RunAwayResult search_runaway_exact(const AtomicSpace& space, const AtomMap& f,
                                   int k) {
  AtomMap g = iterate(f, k);
  auto bg = block_graph(space, g);
  const bool exit_tail_ok = space.exit_tail_mass().has_value();
  const int32_t nb = space.block_count();

  std::vector<bool> eligible(nb, true);
  for (int32_t b = 0; b < nb; ++b) {
    bool self_loop =
        std::binary_search(bg.out[b].begin(), bg.out[b].end(), b);
    if (self_loop) eligible[b] = false;
    if (bg.exits[b] && !exit_tail_ok) eligible[b] = false;
  }

  RunAwayResult res;
  res.max_mass = 0;

  if (bg.functional) {
    // Paths start at blocks with no in-edge; everything left lies on cycles.
    std::vector<bool> used(nb, false);
    std::vector<int32_t> chosen_all;
    Rat total = 0;
    auto run = [&](const std::vector<int32_t>& nodes, bool cycle) {
      MwisPick pick = cycle ? mwis_cycle(nodes, space, eligible)
                            : mwis_path(nodes, space, eligible);
      total += pick.mass;
      chosen_all.insert(chosen_all.end(), pick.chosen.begin(),
                        pick.chosen.end());
    };
    for (int32_t b = 0; b < nb; ++b) {
      if (!bg.in[b].empty() || used[b]) continue;
      std::vector<int32_t> nodes;
      int32_t x = b;
      while (x != -1 && !used[x]) {
        used[x] = true;
        nodes.push_back(x);
        x = bg.out[x].empty() ? -1 : bg.out[x][0];
      }
      run(nodes, false);
    }
    for (int32_t b = 0; b < nb; ++b) {
      if (used[b]) continue;
      std::vector<int32_t> nodes;
      int32_t x = b;
      while (!used[x]) {
        used[x] = true;
        nodes.push_back(x);
        x = bg.out[x][0];
      }
      run(nodes, true);
    }
    res.max_mass = total;
    res.best = MeasurableSet::of_blocks(std::move(chosen_all));
    res.exact = true;
    return res;
  }

  // Greedy lower bound: blocks by descending mass, ties by id.
  std::vector<int32_t> by_mass(nb);
  for (int32_t b = 0; b < nb; ++b) by_mass[b] = b;
  std::sort(by_mass.begin(), by_mass.end(), [&](int32_t x, int32_t y) {
    if (space.block_mass(x) != space.block_mass(y)) {
      return space.block_mass(x) > space.block_mass(y);
    }
    return x < y;
  });
  std::vector<bool> in_set(nb, false);
  std::vector<int32_t> chosen;
  Rat total = 0;
  for (int32_t b : by_mass) {
    if (!eligible[b]) continue;
    bool conflict = false;
    for (int32_t t : bg.out[b]) {
      if (in_set[t]) conflict = true;
    }
    for (int32_t s : bg.in[b]) {
      if (in_set[s]) conflict = true;
    }
    if (conflict) continue;
    in_set[b] = true;
    chosen.push_back(b);
    total += space.block_mass(b);
  }
  res.max_mass = total;
  res.best = MeasurableSet::of_blocks(std::move(chosen));
  res.exact = false;
  res.note = "block graph not functional-injective: greedy lower bound only";
  return res;
}

RunAwayVerdict runaway_verdict(const AtomicSpace& space, const AtomMap& f,
                               const Rat& epsilon, int k) {
  if (!space.finite_measure()) {
    throw std::invalid_argument(
        "runaway_verdict requires a declared finite measure");
  }
  RunAwayVerdict v;
  v.horizon = stamp(space, k);
  v.k = k;
  auto r = search_runaway_exact(space, f, k);
  v.max_mass = r.max_mass;
  v.exact = r.exact;
  Rat mu_x = space.total() + *space.tail_mass();
  if (r.max_mass > mu_x - epsilon) {
    v.kind = VerdictKind::CertifiedWithinHorizon;
    RunAwayCertificate c;
    c.epsilon = epsilon;
    c.B = r.best;
    c.k = k;
    c.mu_complement = mu_x - measure(space, r.best);
    v.certificate = std::move(c);
  } else if (r.exact) {
    v.kind = VerdictKind::RefutedAtHorizon;
  } else {
    v.kind = VerdictKind::Inconclusive;
  }
  return v;
}

std::vector<RunAwayVerdict> runaway_sweep(const AtomicSpace& space,
                                          const AtomMap& f, const Rat& epsilon,
                                          int k_max) {
  std::vector<RunAwayVerdict> rows;
  rows.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    rows.push_back(runaway_verdict(space, f, epsilon, k));
  }
  return rows;
}

C3C4Result check_c3_c4(const AtomicSpace& space, const AtomMap& f,
                       const Rat& epsilon, int k_max, const Rat& tol) {
  if (!space.finite_measure()) {
    throw std::invalid_argument("check_c3_c4 requires a finite measure space");
  }
  C3C4Result res;
  res.horizon = stamp(space, k_max);
  const Rat mu_x = space.total() + *space.tail_mass();

  // Per-level run-away witnesses at budgets eps/2^j; best effort when a level
  // is unattainable within the horizon.
  MeasurableSet B = MeasurableSet::all(space);
  bool level1_all_exact_refuted = true;
  for (int j = 1; j <= 8; ++j) {
    Rat budget = epsilon / rat_pow2(j);
    std::optional<MeasurableSet> witness;
    MeasurableSet best_effort;
    Rat best_mass = -1;
    for (int k = 1; k <= k_max; ++k) {
      auto r = search_runaway_exact(space, f, k);
      if (j == 1 && (!r.exact || r.max_mass > mu_x - epsilon / 2)) {
        level1_all_exact_refuted = false;
      }
      if (r.max_mass > best_mass) {
        best_mass = r.max_mass;
        best_effort = r.best;
      }
      if (r.max_mass > mu_x - budget) {
        witness = r.best;
        break;
      }
    }
    B = B.set_intersection(witness ? *witness : best_effort);
    if (!witness) break;  // deeper levels cannot improve within this horizon
  }
  res.B = B;
  res.mu_complement = mu_x - measure(space, B);
  res.all_k_exactly_refuted = level1_all_exact_refuted;

  // Finite-horizon liminf proxies.
  auto b_atoms = B.atoms(space);
  std::vector<bool> in_b(space.atom_count(), false);
  for (int32_t a : b_atoms) in_b[a] = true;
  std::vector<int32_t> fwd(space.atom_count());
  for (int32_t a = 0; a < space.atom_count(); ++a) fwd[a] = a;
  bool first = true;
  for (int k = 1; k <= k_max; ++k) {
    fwd = compose_forward(fwd, f);
    std::vector<int32_t> img;
    bool exits = false;
    for (int32_t a : b_atoms) {
      int32_t t = fwd[a];
      if (t == kExit) {
        exits = true;
      } else {
        img.push_back(t);
      }
    }
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    Rat img_mass = atom_set_mass(space, img);
    if (exits && space.exit_tail_mass()) img_mass += *space.exit_tail_mass();
    Rat conflict_mass = 0;
    for (int32_t t : img) {
      if (in_b[t]) conflict_mass += space.weight(t);
    }
    if (first || conflict_mass < res.c3_proxy) {
      res.c3_proxy = conflict_mass;
      res.c3_argmin = k;
    }
    if (first || img_mass < res.c4_proxy) {
      res.c4_proxy = img_mass;
      res.c4_argmin = k;
    }
    first = false;
  }

  if (res.mu_complement < epsilon && res.c4_proxy <= tol) {
    res.kind = VerdictKind::CertifiedWithinHorizon;
  } else if (res.all_k_exactly_refuted) {
    res.kind = VerdictKind::RefutedAtHorizon;
    res.note = "no run-away witness exists at any k <= k_max for eps/2";
  } else {
    res.kind = VerdictKind::Inconclusive;
  }
  return res;
}

MixingSearchResult search_mixing(const AtomicSpace& space, const AtomMap& f,
                                 const Rat& epsilon, const MeasurableSet& A,
                                 int k0_max, int k_max) {
  if (k0_max < 1 || k0_max > k_max) {
    throw std::invalid_argument("search_mixing needs 1 <= k0_max <= k_max");
  }
  MixingSearchResult res;
  res.horizon = stamp(space, k_max);
  auto pc = pullback_sigma_algebra_equals(space, f);
  if (!pc.equal) {
    res.kind = VerdictKind::RefutedAtHorizon;
    res.sigma_algebra_witness = pc.witness_block;
    res.note = "f^-1(B) != B: " + pc.detail;
    return res;
  }
  const bool d2_route = space.finite_measure() &&
                        A == MeasurableSet::all(space);
  std::vector<int32_t> fwd(space.atom_count());
  for (int32_t a = 0; a < space.atom_count(); ++a) fwd[a] = a;
  std::vector<PerKOutcomeInternal> outcomes;
  outcomes.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    fwd = compose_forward(fwd, f);
    AtomMap g = AtomMap::make(fwd, f.name() + "^" + std::to_string(k));
    auto o = per_k_search(space, f, g, epsilon, A, k);
    if (!o.certified && !o.exactly_refuted && d2_route) {
      // A (B2)-witness at eps yields a run-away set at 2*eps, so an exact
      // run-away optimum <= mu(X) - 2*eps refutes this k.
      auto r = search_runaway_exact(space, f, k);
      Rat mu_x = space.total() + *space.tail_mass();
      if (r.exact && r.max_mass <= mu_x - 2 * epsilon) {
        o.exactly_refuted = true;
        o.refutation = "exact run-away optimum <= mu(X) - 2*epsilon";
      }
    }
    PerKOutcome row;
    row.k = k;
    row.certified = o.certified;
    row.exactly_refuted = o.exactly_refuted;
    row.refutation = o.refutation;
    res.per_k.push_back(row);
    outcomes.push_back(std::move(o));
  }

  // Smallest k0 <= k0_max with every k in [k0, k_max] certified.
  int k0 = -1;
  {
    int run_start = -1;
    for (int k = k_max; k >= 1; --k) {
      if (outcomes[k - 1].certified) {
        run_start = k;
      } else {
        break;
      }
    }
    if (run_start != -1 && run_start <= k0_max) k0 = run_start;
  }
  if (k0 != -1) {
    res.kind = VerdictKind::CertifiedWithinHorizon;
    MixingCertificate mc;
    mc.epsilon = epsilon;
    mc.A = A;
    mc.k0 = k0;
    for (int k = k0; k <= k_max; ++k) {
      const auto& cert = *outcomes[k - 1].cert;
      MixingEntry e;
      e.k = k;
      e.B = cert.B;
      e.C = cert.C;
      e.c_includes_exit_tail = cert.c_includes_exit_tail;
      e.measured = cert.measured;
      mc.per_k.push_back(std::move(e));
    }
    res.certificate = std::move(mc);
    return res;
  }
  for (int k = k_max; k >= k0_max; --k) {
    if (outcomes[k - 1].exactly_refuted) {
      res.kind = VerdictKind::RefutedAtHorizon;
      res.note = "exactly refuted at k = " + std::to_string(k) +
                 " >= k0_max (" + outcomes[k - 1].refutation + ")";
      return res;
    }
  }
  res.kind = VerdictKind::Inconclusive;
  res.note = "no k0 <= k0_max certifies every k up to k_max";
  return res;
}

TransitivityCertificate to_transitivity_certificate(
    const AtomicSpace& space, const AtomMap& f, const RunAwayCertificate& rc) {
  TransitivityCertificate cert;
  cert.epsilon = rc.epsilon;
  cert.A = MeasurableSet::all(space);
  cert.B = rc.B;
  cert.k = rc.k;
  AtomMap g = iterate(f, rc.k);
  std::vector<int32_t> hull;
  bool exits = false;
  for (int32_t a : rc.B.atoms(space)) {
    int32_t t = g(a);
    if (t == kExit) {
      exits = true;
    } else {
      hull.push_back(space.block_of(t));
    }
  }
  cert.C = MeasurableSet::of_blocks(std::move(hull));
  cert.c_includes_exit_tail = exits;
  auto rep = verify_transitivity(space, f, cert);
  cert.measured = rep.measured;
  return cert;
}

// --- Salas criteria --------------------------------------------------------

namespace {

Rat ratio_sup(const std::vector<Rat>& w) {
  Rat sup = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    Rat r = w[i] / w[i + 1];
    if (r > sup) sup = r;
  }
  return sup;
}

int levels_for(const Rat& tol) {
  int t = 1;
  while (t < 64 && rat_pow2(-t) > tol) ++t;
  return t;
}

}  // namespace

SalasResult salas_unilateral(const std::vector<Rat>& weights, const Rat& tol) {
  if (weights.empty()) throw std::invalid_argument("empty weight window");
  SalasResult res;
  res.horizon = static_cast<int>(weights.size());
  res.ratio_sup = ratio_sup(weights);
  Rat running = weights[0];
  for (const Rat& w : weights) {
    if (w <= 0) throw std::invalid_argument("weights must be positive");
    if (w < running) running = w;
  }
  res.proxy = running;
  res.kind = running <= tol ? VerdictKind::CertifiedWithinHorizon
                            : VerdictKind::Inconclusive;
  res.detail = "liminf proxy = running minimum at the horizon";
  return res;
}

SalasResult salas_bilateral(const std::vector<Rat>& weights, long lo,
                            const Rat& tol) {
  if (weights.empty()) throw std::invalid_argument("empty weight window");
  SalasResult res;
  const long n = static_cast<long>(weights.size());
  const long hi = lo + n - 1;
  res.horizon = static_cast<int>(n);
  res.ratio_sup = ratio_sup(weights);
  auto nu = [&](long i) -> const Rat& { return weights[i - lo]; };

  const int t_max = levels_for(tol);
  long prev = 0;
  bool ok = true;
  for (int t = 1; t <= t_max; ++t) {
    Rat level = rat_pow2(-t);
    long found = -1;
    for (long nk = prev + 1; nk + t <= hi && -static_cast<long>(t) - nk >= lo;
         ++nk) {
      bool good = true;
      for (long i = -t; i <= t && good; ++i) {
        if (nu(i + nk) >= level || nu(i - nk) >= level) good = false;
      }
      if (good) {
        found = nk;
        break;
      }
    }
    if (found == -1) {
      ok = false;
      break;
    }
    res.nk_prefix.push_back(found);
    prev = found;
  }
  res.proxy = rat_pow2(-static_cast<long>(res.nk_prefix.size()));
  res.kind = ok ? VerdictKind::CertifiedWithinHorizon
                : VerdictKind::Inconclusive;
  res.detail = "greedy (n_k) extraction to level 2^-" + std::to_string(t_max);
  return res;
}

SalasResult salas_mixing(const std::vector<Rat>& weights, const Rat& tol) {
  if (weights.empty()) throw std::invalid_argument("empty weight window");
  SalasResult res;
  const std::size_t n = weights.size();
  res.horizon = static_cast<int>(n);
  res.ratio_sup = ratio_sup(weights);
  Rat global_max = 0;
  for (const Rat& w : weights) {
    if (w > global_max) global_max = w;
  }
  Rat tail_sup = 0;
  for (std::size_t i = (3 * n) / 4; i < n; ++i) {
    if (weights[i] > tail_sup) tail_sup = weights[i];
  }
  res.proxy = tail_sup;
  if (tail_sup <= tol) {
    res.kind = VerdictKind::CertifiedWithinHorizon;
  } else if (2 * tail_sup >= global_max) {
    res.kind = VerdictKind::RefutedAtHorizon;
    res.detail = "tail sup stays at the global sup: limsup proxy obstruction";
  } else {
    res.kind = VerdictKind::Inconclusive;
  }
  return res;
}

}  // namespace copdyn
