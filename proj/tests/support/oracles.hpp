#pragma once

// Test-only oracles and random system generators, independent of the library
// search paths they are used to check.

#include "copdyn/dynamics.hpp"
#include "copdyn/measure_space.hpp"
#include "copdyn/models/system.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace copdyn::testing {

struct BruteRunAway {
  Rat mass;
  uint32_t mask = 0;
};

// Exhaustive maximum of mu(B) over unions of blocks with B meet g(B) empty,
// where g applies the map once. Same exit convention as the library: blocks
// touching EXIT are eligible only when an exit-absorbing tail is declared.
// Gray-code enumeration with an incremental conflict counter.
inline BruteRunAway brute_force_runaway_once(const AtomicSpace& space,
                                             const AtomMap& g) {
  const int nb = space.block_count();
  if (nb > 22) throw std::invalid_argument("instance too large to enumerate");
  const bool exit_ok = space.exit_tail_mass().has_value();
  std::vector<uint32_t> eligible(nb, 1);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < nb; ++u) {
    for (int32_t a : space.block_atoms(u)) {
      int32_t t = g(a);
      if (t == kExit) {
        if (!exit_ok) eligible[u] = 0;
      } else {
        int v = space.block_of(t);
        edges.emplace_back(u, v);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<std::vector<int>> incident(nb);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    incident[edges[e].first].push_back(static_cast<int>(e));
    if (edges[e].second != edges[e].first) {
      incident[edges[e].second].push_back(static_cast<int>(e));
    }
  }
  auto other = [&](int e, int u) {
    return edges[e].first == u ? edges[e].second : edges[e].first;
  };

  BruteRunAway best;
  best.mass = 0;
  Rat mass = 0;
  uint32_t mask = 0;
  long violations = 0;
  long banned = 0;
  const uint64_t count = 1ull << nb;
  for (uint64_t i = 1; i < count; ++i) {
    int bit = __builtin_ctzll(i);  // Gray code: flip this block
    uint32_t flip = 1u << bit;
    bool adding = (mask & flip) == 0;
    for (int e : incident[bit]) {
      int v = other(e, bit);
      bool self = v == bit;
      bool v_in = self || (mask & (1u << v));
      if (v_in) violations += adding ? 1 : -1;
    }
    if (adding) {
      mask |= flip;
      mass += space.block_mass(bit);
      if (!eligible[bit]) ++banned;
    } else {
      mask &= ~flip;
      mass -= space.block_mass(bit);
      if (!eligible[bit]) --banned;
    }
    if (violations == 0 && banned == 0 && mass > best.mass) {
      best.mass = mass;
      best.mask = mask;
    }
  }
  return best;
}

// Random injective system: singleton blocks, integer weights, a random
// partial injection as the map (optionally with EXIT atoms).
inline models::BuiltSystem random_injective_system(std::mt19937_64& rng,
                                                   int n_atoms,
                                                   bool allow_exit) {
  std::vector<Rat> weights(n_atoms);
  std::uniform_int_distribution<int> wd(1, 50);
  for (auto& w : weights) w = wd(rng);
  std::vector<std::vector<int32_t>> blocks(n_atoms);
  for (int32_t a = 0; a < n_atoms; ++a) blocks[a] = {a};
  std::vector<int32_t> targets(n_atoms);
  for (int32_t a = 0; a < n_atoms; ++a) targets[a] = a;
  std::shuffle(targets.begin(), targets.end(), rng);
  std::vector<int32_t> fwd(n_atoms);
  std::bernoulli_distribution exit_flip(0.2);
  for (int32_t a = 0; a < n_atoms; ++a) {
    fwd[a] = allow_exit && exit_flip(rng) ? kExit : targets[a];
  }
  TailSpec tails;
  tails.total = Rat{0};
  if (allow_exit) {
    tails.total = Rat{1};
    tails.exit_absorbing = Rat{1};
  }
  auto space = AtomicSpace::make(std::move(weights), std::move(blocks), tails);
  auto map = AtomMap::make(std::move(fwd), "random-injective");
  return {std::move(space), std::move(map), "random-injective"};
}

// Random block system: equal-sized blocks, a block permutation refined to
// atoms positionwise (injective and block-functional).
inline models::BuiltSystem random_block_system(std::mt19937_64& rng,
                                               int n_blocks, int block_size) {
  const int n_atoms = n_blocks * block_size;
  std::vector<Rat> weights(n_atoms);
  std::uniform_int_distribution<int> wd(1, 20);
  for (auto& w : weights) w = wd(rng);
  std::vector<std::vector<int32_t>> blocks(n_blocks);
  for (int b = 0; b < n_blocks; ++b) {
    for (int j = 0; j < block_size; ++j) {
      blocks[b].push_back(b * block_size + j);
    }
  }
  std::vector<int> perm(n_blocks);
  for (int b = 0; b < n_blocks; ++b) perm[b] = b;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int32_t> fwd(n_atoms);
  for (int b = 0; b < n_blocks; ++b) {
    for (int j = 0; j < block_size; ++j) {
      fwd[b * block_size + j] = perm[b] * block_size + j;
    }
  }
  auto space = AtomicSpace::make(std::move(weights), std::move(blocks), {});
  auto map = AtomMap::make(std::move(fwd), "random-blocks");
  return {std::move(space), std::move(map), "random-blocks"};
}

// Random simple function supported inside the given set.
inline SimpleFunction random_simple_function(std::mt19937_64& rng,
                                             const MeasurableSet& support,
                                             double p, int max_abs = 5) {
  SimpleFunction f;
  f.p = p;
  std::uniform_int_distribution<int> vd(-max_abs, max_abs);
  std::bernoulli_distribution keep(0.6);
  for (int32_t b : support.block_ids()) {
    if (!keep(rng)) continue;
    int v = vd(rng);
    if (v != 0) f.values[b] = Rat(v);
  }
  return f;
}

inline MeasurableSet random_subset(std::mt19937_64& rng,
                                   const MeasurableSet& of, double keep_p) {
  std::bernoulli_distribution keep(keep_p);
  std::vector<int32_t> ids;
  for (int32_t b : of.block_ids()) {
    if (keep(rng)) ids.push_back(b);
  }
  return MeasurableSet::of_blocks(std::move(ids));
}

}  // namespace copdyn::testing
