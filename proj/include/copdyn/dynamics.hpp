#pragma once

#include "copdyn/errors.hpp"
#include "copdyn/measure_space.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace copdyn {

/// Image of an atom that leaves the truncation window.
inline constexpr int32_t kExit = -1;

/// Measurable self-map given atom by atom, with precomputed fibers.
class AtomMap {
 public:
  static AtomMap make(std::vector<int32_t> forward, std::string name = {});

  int32_t operator()(int32_t atom) const { return forward_[atom]; }
  int32_t atom_count() const { return static_cast<int32_t>(forward_.size()); }
  const std::vector<int32_t>& forward() const { return forward_; }
  const std::vector<int32_t>& fiber(int32_t atom) const { return fibers_[atom]; }
  const std::string& name() const { return name_; }

  bool injective() const { return injective_; }
  const std::vector<int32_t>& exit_atoms() const { return exit_atoms_; }
  Rat exit_mass(const AtomicSpace& space) const;

 private:
  std::vector<int32_t> forward_;
  std::vector<std::vector<int32_t>> fibers_;
  std::vector<int32_t> exit_atoms_;
  std::string name_;
  bool injective_ = true;
};

struct ImageResult {
  std::vector<int32_t> atoms;  // raw image, sorted
  MeasurableSet hull;          // union of all blocks meeting the image
  bool measurable = false;     // raw image is itself a union of blocks
};

/// f^-1(s) as a measurable set. Throws NonMeasurablePreimage when the atom
/// preimage is not a union of blocks.
MeasurableSet preimage(const AtomicSpace& space, const AtomMap& f,
                       const MeasurableSet& s);

/// Raw atom preimage, always defined.
std::vector<int32_t> preimage_atoms(const AtomMap& f,
                                    const std::vector<int32_t>& atoms);

/// Raw image plus measurable hull; probes bimeasurability of s.
/// Throws ExitEncountered when an atom of s maps outside the window.
ImageResult image(const AtomicSpace& space, const AtomMap& f,
                  const MeasurableSet& s);

struct BoundednessReport {
  Rat c;            // max over blocks of mu(f^-1(block)) / mu(block)
  double op_norm;   // c^(1/p)
  Rat exit_mass;    // mass of atoms mapped outside the window
};

BoundednessReport boundedness_constant(const AtomicSpace& space,
                                       const AtomMap& f, double p);

struct PullbackCheck {
  bool equal = false;
  std::optional<int32_t> witness_block;  // a block violating equality
  std::string detail;
};

/// Does the partition generated by {f^-1(block)} coincide with the original
/// partition (restricted to non-exit atoms)? Blocks made entirely of exit
/// atoms are excluded from the comparison.
PullbackCheck pullback_sigma_algebra_equals(const AtomicSpace& space,
                                            const AtomMap& f);

/// forward^k with EXIT absorbing.
AtomMap iterate(const AtomMap& f, int k);

struct GraphComponent {
  enum class Kind { path, cycle };
  Kind kind;
  std::vector<int32_t> atoms;  // in traversal order
};

struct FunctionalGraphDecomposition {
  std::vector<GraphComponent> components;
};

/// Path/cycle decomposition of the graph a -> forward^k(a), covering all
/// atoms. Throws NotInjective when some atom has in-degree > 1.
FunctionalGraphDecomposition decompose(const AtomMap& f, int k);

}  // namespace copdyn
