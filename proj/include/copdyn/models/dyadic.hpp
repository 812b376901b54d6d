#pragma once

#include "copdyn/models/system.hpp"

namespace copdyn::models {

/// x -> x/2 on [0,1] discretized on the 2^m dyadic atoms
/// [j 2^-m, (j+1) 2^-m): atom j maps to atom floor(j/2). The atom map is
/// 2-to-1 even though the underlying map is injective.
BuiltSystem build_dyadic_halving(int m);

}  // namespace copdyn::models
