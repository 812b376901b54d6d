#pragma once

#include "copdyn/models/system.hpp"

#include <optional>
#include <vector>

namespace copdyn::models {

enum class ShiftSide { unilateral, bilateral };

/// Weighted shift i -> i+1 on a truncated index window. weights[t] is the
/// weight of the atom representing integer lo + t.
struct WeightedShiftSpec {
  ShiftSide side = ShiftSide::unilateral;
  std::vector<Rat> weights;
  long lo = 0;
  std::optional<Rat> right_tail;  // declared mass beyond the right edge
  std::optional<Rat> left_tail = Rat{0};  // below the left edge (0 on N)
};

/// Concatenation of the blocks V_1 .. V_n: V_m descends 1, 1/2, ..., 2^-m and
/// climbs back up to 1/2.
std::vector<Rat> corollary32_weights(int n_blocks);

/// Index of the first weight of each V_m (m = 1 .. n_blocks).
std::vector<long> corollary32_block_starts(int n_blocks);

BuiltSystem build_shift(const WeightedShiftSpec& spec);

/// nu_i = ratio^|i| with exact declared tails; ratio in (0,1).
BuiltSystem build_geometric_shift(ShiftSide side, int horizon, const Rat& ratio);

/// The transitive-but-not-mixing shift; infinite measure, exact preimages.
BuiltSystem build_corollary32_shift(int n_blocks);

}  // namespace copdyn::models
