#pragma once

#include "copdyn/models/system.hpp"

namespace copdyn::models {

/// The non-bimeasurable system on Z: blocks {k} for k < 0 and {2k, 2k+1} for
/// k >= 0, weights mu({k}) = 2^k and mu({2k,2k+1}) = 2^-k, and the map
///   -2 -> 0, -1 -> 2, n -> n+4 (n >= 0), n -> n+1 (n <= -3),
/// truncated to integers [-n_range, 2*n_range). Exits on the right fall into
/// the declared forward-invariant tail.
BuiltSystem build_partition_example(int n_range);

/// Atom index of integer v in the window.
int32_t partition_atom_of(int n_range, long v);

/// Block of the negative singleton {k}, k < 0.
int32_t partition_negative_block(int n_range, long k);

/// Block of the pair {2j, 2j+1}, j >= 0.
int32_t partition_pair_block(int n_range, long j);

/// C_n = {2n, 2n+1, ...} (window part; the right tail continues it).
MeasurableSet partition_cn(int n_range, int n);

/// D_n = {-2n, -2n-1, ...} (window part; the left tail continues it).
MeasurableSet partition_dn(int n_range, int n);

}  // namespace copdyn::models
