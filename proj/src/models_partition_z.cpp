#include "copdyn/models/partition_z.hpp"

#include <stdexcept>

namespace copdyn::models {

int32_t partition_atom_of(int n_range, long v) {
  if (v < -n_range || v >= 2L * n_range) {
    throw std::invalid_argument("integer outside the window");
  }
  return static_cast<int32_t>(v + n_range);
}

int32_t partition_negative_block(int n_range, long k) {
  if (k >= 0 || k < -n_range) throw std::invalid_argument("not a window negative");
  return static_cast<int32_t>(k + n_range);
}

int32_t partition_pair_block(int n_range, long j) {
  if (j < 0 || j >= n_range) throw std::invalid_argument("pair outside window");
  return static_cast<int32_t>(n_range + j);
}

BuiltSystem build_partition_example(int n_range) {
  if (n_range < 3) throw std::invalid_argument("n_range must be >= 3");
  const int32_t atoms = 3 * n_range;  // integers -n_range .. 2*n_range - 1
  std::vector<Rat> weights(atoms);
  std::vector<std::vector<int32_t>> blocks;
  for (long k = -n_range; k < 0; ++k) {
    weights[partition_atom_of(n_range, k)] = rat_pow2(k);
    blocks.push_back({partition_atom_of(n_range, k)});
  }
  for (long j = 0; j < n_range; ++j) {
    // The pair {2j, 2j+1} carries 2^-j; the split between its two atoms is
    // invisible to the sigma-algebra.
    weights[partition_atom_of(n_range, 2 * j)] = rat_pow2(-j) / 2;
    weights[partition_atom_of(n_range, 2 * j + 1)] = rat_pow2(-j) / 2;
    blocks.push_back({partition_atom_of(n_range, 2 * j),
                      partition_atom_of(n_range, 2 * j + 1)});
  }
  TailSpec tails;
  Rat left_tail = rat_pow2(-n_range);       // sum_{k < -n_range} 2^k
  Rat right_tail = rat_pow2(-(n_range - 1));  // sum_{j >= n_range} 2^-j
  tails.total = left_tail + right_tail;
  tails.exit_absorbing = right_tail;  // n -> n+4 keeps the right tail inside
  tails.preimage_bound = left_tail;
  auto space = AtomicSpace::make(std::move(weights), std::move(blocks), tails);

  std::vector<int32_t> fwd(atoms);
  for (long v = -n_range; v < 2L * n_range; ++v) {
    long t;
    if (v == -2) {
      t = 0;
    } else if (v == -1) {
      t = 2;
    } else if (v >= 0) {
      t = v + 4;
    } else {
      t = v + 1;
    }
    fwd[partition_atom_of(n_range, v)] =
        t >= 2L * n_range ? kExit : partition_atom_of(n_range, t);
  }
  std::string name = "partition-z:" + std::to_string(n_range);
  auto map = AtomMap::make(std::move(fwd), name);
  return {std::move(space), std::move(map), std::move(name)};
}

MeasurableSet partition_cn(int n_range, int n) {
  std::vector<int32_t> ids;
  for (long j = n; j < n_range; ++j) ids.push_back(partition_pair_block(n_range, j));
  return MeasurableSet::of_blocks(std::move(ids));
}

MeasurableSet partition_dn(int n_range, int n) {
  std::vector<int32_t> ids;
  for (long k = -2L * n; k >= -n_range; --k) {
    ids.push_back(partition_negative_block(n_range, k));
  }
  return MeasurableSet::of_blocks(std::move(ids));
}

}  // namespace copdyn::models
