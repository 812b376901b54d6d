#include "copdyn/models/dyadic.hpp"

#include <stdexcept>

namespace copdyn::models {

BuiltSystem build_dyadic_halving(int m) {
  if (m < 1 || m > 24) throw std::invalid_argument("depth must be in [1, 24]");
  const int32_t n = 1 << m;
  std::vector<Rat> weights(n, rat_pow2(-m));
  std::vector<std::vector<int32_t>> blocks(n);
  std::vector<int32_t> fwd(n);
  for (int32_t j = 0; j < n; ++j) {
    blocks[j] = {j};
    fwd[j] = j / 2;
  }
  auto space = AtomicSpace::make(std::move(weights), std::move(blocks), {});
  std::string name = "dyadic:" + std::to_string(m);
  auto map = AtomMap::make(std::move(fwd), name);
  return {std::move(space), std::move(map), std::move(name)};
}

}  // namespace copdyn::models
