#pragma once

#include "copdyn/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace copdyn {

/// Declared facts about the measure outside the truncation window.
/// - total: mass outside the window (nullopt = undeclared or infinite).
/// - exit_absorbing: mass of a forward-invariant region that every EXIT atom
///   maps into; when declared, a certificate set C may cover escaping images
///   by including this region at the stated cost. nullopt = exits are
///   unknowable and any certificate touching them is rejected.
/// - preimage_bound: upper bound on preimage mass entering the window from
///   outside; verdicts add it to every preimage-side measurement.
///   Defaults to total.
struct TailSpec {
  std::optional<Rat> total = Rat{0};
  std::optional<Rat> exit_absorbing = std::nullopt;
  std::optional<std::optional<Rat>> preimage_bound = std::nullopt;
};

/// Finitely truncated countable measure space: positive atom weights and a
/// partition sigma-algebra whose measurable sets are unions of blocks.
class AtomicSpace {
 public:
  static AtomicSpace make(std::vector<Rat> weights,
                          std::vector<std::vector<int32_t>> blocks,
                          TailSpec tails = {});

  int32_t atom_count() const { return static_cast<int32_t>(weights_.size()); }
  int32_t block_count() const { return static_cast<int32_t>(blocks_.size()); }

  const std::vector<Rat>& weights() const { return weights_; }
  const Rat& weight(int32_t atom) const { return weights_[atom]; }
  const std::vector<std::vector<int32_t>>& blocks() const { return blocks_; }
  const std::vector<int32_t>& block_atoms(int32_t b) const { return blocks_[b]; }
  int32_t block_of(int32_t atom) const { return block_of_[atom]; }
  const Rat& block_mass(int32_t b) const { return block_mass_[b]; }
  const Rat& total() const { return total_; }

  const std::optional<Rat>& tail_mass() const { return tails_.total; }
  bool finite_measure() const { return tails_.total.has_value(); }
  const std::optional<Rat>& exit_tail_mass() const {
    return tails_.exit_absorbing;
  }
  const std::optional<Rat>& preimage_tail_bound() const {
    return preimage_tail_bound_;
  }

 private:
  std::vector<Rat> weights_;
  std::vector<std::vector<int32_t>> blocks_;
  std::vector<int32_t> block_of_;
  std::vector<Rat> block_mass_;
  Rat total_;
  TailSpec tails_;
  std::optional<Rat> preimage_tail_bound_;
};

/// A measurable set: a union of blocks, held as a sorted id list.
class MeasurableSet {
 public:
  MeasurableSet() = default;
  static MeasurableSet of_blocks(std::vector<int32_t> ids);
  static MeasurableSet all(const AtomicSpace& space);
  static MeasurableSet single(int32_t id) { return of_blocks({id}); }

  const std::vector<int32_t>& block_ids() const { return ids_; }
  bool contains(int32_t block) const;
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }

  MeasurableSet set_union(const MeasurableSet& other) const;
  MeasurableSet set_intersection(const MeasurableSet& other) const;
  MeasurableSet set_difference(const MeasurableSet& other) const;
  MeasurableSet complement(const AtomicSpace& space) const;
  bool subset_of(const MeasurableSet& other) const;

  std::vector<int32_t> atoms(const AtomicSpace& space) const;

  bool operator==(const MeasurableSet&) const = default;

 private:
  std::vector<int32_t> ids_;  // sorted, unique
};

/// Block-constant finitely supported function together with its exponent p.
/// Zero values are not stored.
struct SimpleFunction {
  std::map<int32_t, Rat> values;  // block id -> value
  double p = 1.0;

  Rat value_on(int32_t block) const;
  Rat sup_norm() const;  // M = max |value|
  MeasurableSet support() const;

  static SimpleFunction indicator(const MeasurableSet& s, double p);
  static SimpleFunction scaled_indicator(const Rat& c, const MeasurableSet& s,
                                         double p);
};

/// mu(s): exact sum of block masses.
Rat measure(const AtomicSpace& space, const MeasurableSet& s);

/// Outer mass of a raw atom set (need not be measurable).
Rat atom_set_mass(const AtomicSpace& space, const std::vector<int32_t>& atoms);

/// (sum_b |value(b)|^p mu(b))^(1/p). Exact sum when p is integral.
double lp_norm(const SimpleFunction& f, const AtomicSpace& space);

/// The exact p-th power of the norm; requires integral p.
Rat lp_norm_pow(const SimpleFunction& f, const AtomicSpace& space);

/// (H3) constant for X = L^p: delta = (eps/2)^(1/p). With |psi| >= 1 on S and
/// ||psi|| <= delta, Markov gives mu(S) <= eps/2.
double h3_delta(double epsilon, double p);

/// (H4) constant for X = L^p: eps = (eta/2)^p / (2M)^p. With mu(S) < eps,
/// psi supported on S and |psi| <= 2M, it follows that ||psi|| < eta/2.
double h4_epsilon(double eta, double M, double p);

/// Integral exponent or nullopt.
std::optional<unsigned> integral_exponent(double p);

}  // namespace copdyn
