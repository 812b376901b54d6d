#include "copdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace copdyn {

AtomMap AtomMap::make(std::vector<int32_t> forward, std::string name) {
  AtomMap m;
  const auto n = static_cast<int32_t>(forward.size());
  m.fibers_.resize(n);
  for (int32_t a = 0; a < n; ++a) {
    int32_t t = forward[a];
    if (t == kExit) {
      m.exit_atoms_.push_back(a);
      continue;
    }
    if (t < 0 || t >= n) throw std::invalid_argument("forward target out of range");
    m.fibers_[t].push_back(a);
  }
  for (const auto& fib : m.fibers_) {
    if (fib.size() > 1) {
      m.injective_ = false;
      break;
    }
  }
  m.forward_ = std::move(forward);
  m.name_ = std::move(name);
  return m;
}

Rat AtomMap::exit_mass(const AtomicSpace& space) const {
  return atom_set_mass(space, exit_atoms_);
}

std::vector<int32_t> preimage_atoms(const AtomMap& f,
                                    const std::vector<int32_t>& atoms) {
  std::vector<int32_t> out;
  for (int32_t a : atoms) {
    const auto& fib = f.fiber(a);
    out.insert(out.end(), fib.begin(), fib.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Is the sorted atom list exactly a union of blocks? Returns the block ids.
std::optional<std::vector<int32_t>> as_block_union(
    const AtomicSpace& space, const std::vector<int32_t>& atoms) {
  std::vector<int32_t> ids;
  for (int32_t a : atoms) {
    int32_t b = space.block_of(a);
    if (ids.empty() || ids.back() != b) ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::size_t covered = 0;
  for (int32_t b : ids) covered += space.block_atoms(b).size();
  if (covered != atoms.size()) return std::nullopt;
  return ids;
}

}  // namespace

MeasurableSet preimage(const AtomicSpace& space, const AtomMap& f,
                       const MeasurableSet& s) {
  auto pre = preimage_atoms(f, s.atoms(space));
  auto ids = as_block_union(space, pre);
  if (!ids) {
    throw NonMeasurablePreimage(
        "preimage is not a union of blocks: map not measurable for this "
        "partition");
  }
  return MeasurableSet::of_blocks(std::move(*ids));
}

ImageResult image(const AtomicSpace& space, const AtomMap& f,
                  const MeasurableSet& s) {
  ImageResult r;
  for (int32_t a : s.atoms(space)) {
    int32_t t = f(a);
    if (t == kExit) {
      throw ExitEncountered("image: atom " + std::to_string(a) +
                            " leaves the truncation window");
    }
    r.atoms.push_back(t);
  }
  std::sort(r.atoms.begin(), r.atoms.end());
  r.atoms.erase(std::unique(r.atoms.begin(), r.atoms.end()), r.atoms.end());
  std::vector<int32_t> hull_ids;
  for (int32_t a : r.atoms) hull_ids.push_back(space.block_of(a));
  r.hull = MeasurableSet::of_blocks(std::move(hull_ids));
  r.measurable = as_block_union(space, r.atoms).has_value();
  return r;
}

BoundednessReport boundedness_constant(const AtomicSpace& space,
                                       const AtomMap& f, double p) {
  // Preimages are additive over disjoint blocks, so the per-block maximum
  // dominates every measurable set (mediant inequality).
  Rat c = 0;
  for (int32_t b = 0; b < space.block_count(); ++b) {
    auto pre = preimage_atoms(f, space.block_atoms(b));
    Rat ratio = atom_set_mass(space, pre) / space.block_mass(b);
    if (ratio > c) c = ratio;
  }
  BoundednessReport rep;
  rep.c = c;
  rep.op_norm = std::pow(to_double(c), 1.0 / p);
  rep.exit_mass = f.exit_mass(space);
  return rep;
}

PullbackCheck pullback_sigma_algebra_equals(const AtomicSpace& space,
                                            const AtomMap& f) {
  PullbackCheck out;
  const int32_t nb = space.block_count();
  // cell_of[a] = which block's preimage the atom lies in, -1 if none.
  std::vector<int32_t> cell_of(space.atom_count(), -1);
  for (int32_t a = 0; a < space.atom_count(); ++a) {
    int32_t t = f(a);
    if (t != kExit) cell_of[a] = space.block_of(t);
  }
  // Each nonempty preimage cell must be a union of blocks and each block a
  // union of cells; both partitions on the non-exit atoms, so mutual
  // refinement reduces to: every block is contained in one cell and every
  // cell in a union of whole blocks, with the block count matching per cell.
  for (int32_t b = 0; b < nb; ++b) {
    const auto& atoms = space.block_atoms(b);
    bool any_exit = false, any_live = false;
    int32_t cell = -2;
    bool split = false;
    for (int32_t a : atoms) {
      if (cell_of[a] == -1) {
        any_exit = true;
      } else {
        if (any_live && cell_of[a] != cell) split = true;
        cell = cell_of[a];
        any_live = true;
      }
    }
    if (any_exit && any_live) {
      out.witness_block = b;
      out.detail = "block mixes exit and non-exit atoms";
      return out;
    }
    if (split) {
      // Block is cut by the pullback partition: f^-1(B) would be finer.
      out.witness_block = b;
      out.detail = "block split across preimage cells: preimage not measurable";
      return out;
    }
  }
  // Here every live block sits inside exactly one cell. Equality additionally
  // needs every cell to be exactly one block.
  std::vector<std::vector<int32_t>> cell_blocks(nb);
  for (int32_t b = 0; b < nb; ++b) {
    const auto& atoms = space.block_atoms(b);
    if (cell_of[atoms.front()] >= 0) {
      cell_blocks[cell_of[atoms.front()]].push_back(b);
    }
  }
  for (int32_t c = 0; c < nb; ++c) {
    if (cell_blocks[c].size() > 1) {
      out.witness_block = cell_blocks[c][1];
      out.detail =
          "two blocks share one preimage cell: block is not a union of cells";
      return out;
    }
  }
  out.equal = true;
  return out;
}

AtomMap iterate(const AtomMap& f, int k) {
  if (k < 0) throw std::invalid_argument("iterate: k must be >= 0");
  const int32_t n = f.atom_count();
  std::vector<int32_t> fwd(n);
  for (int32_t a = 0; a < n; ++a) {
    int32_t x = a;
    for (int j = 0; j < k && x != kExit; ++j) x = f(x);
    fwd[a] = x;
  }
  std::string name = f.name().empty() ? "f" : f.name();
  return AtomMap::make(std::move(fwd), name + "^" + std::to_string(k));
}

FunctionalGraphDecomposition decompose(const AtomMap& f, int k) {
  AtomMap g = iterate(f, k);
  if (!g.injective()) {
    throw NotInjective("decompose: k-step graph has in-degree > 1");
  }
  const int32_t n = g.atom_count();
  std::vector<bool> used(n, false);
  std::vector<int32_t> indeg(n, 0);
  for (int32_t a = 0; a < n; ++a) {
    if (g(a) != kExit) indeg[g(a)] = 1;
  }
  FunctionalGraphDecomposition out;
  // Paths start at in-degree-0 atoms and stop where the edge exits.
  for (int32_t a = 0; a < n; ++a) {
    if (indeg[a] != 0 || used[a]) continue;
    GraphComponent comp;
    comp.kind = GraphComponent::Kind::path;
    int32_t x = a;
    while (x != kExit && !used[x]) {
      used[x] = true;
      comp.atoms.push_back(x);
      x = g(x);
    }
    out.components.push_back(std::move(comp));
  }
  // Everything left lies on cycles.
  for (int32_t a = 0; a < n; ++a) {
    if (used[a]) continue;
    GraphComponent comp;
    comp.kind = GraphComponent::Kind::cycle;
    int32_t x = a;
    while (!used[x]) {
      used[x] = true;
      comp.atoms.push_back(x);
      x = g(x);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace copdyn
