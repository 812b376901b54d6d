#include "copdyn/models/shift.hpp"

#include <stdexcept>

namespace copdyn::models {

std::vector<Rat> corollary32_weights(int n_blocks) {
  if (n_blocks < 1) throw std::invalid_argument("need at least one block");
  std::vector<Rat> w;
  for (int m = 1; m <= n_blocks; ++m) {
    for (int j = 0; j <= m; ++j) w.push_back(rat_pow2(-j));
    for (int j = m - 1; j >= 1; --j) w.push_back(rat_pow2(-j));
  }
  return w;
}

std::vector<long> corollary32_block_starts(int n_blocks) {
  std::vector<long> starts;
  long pos = 0;
  for (int m = 1; m <= n_blocks; ++m) {
    starts.push_back(pos);
    pos += 2 * m;  // |V_m| = 2m
  }
  return starts;
}

BuiltSystem build_shift(const WeightedShiftSpec& spec) {
  const auto n = static_cast<int32_t>(spec.weights.size());
  if (n < 1) throw std::invalid_argument("empty shift window");
  std::vector<std::vector<int32_t>> blocks;
  blocks.reserve(n);
  for (int32_t a = 0; a < n; ++a) blocks.push_back({a});
  TailSpec tails;
  if (spec.left_tail && spec.right_tail) {
    tails.total = *spec.left_tail + *spec.right_tail;
  } else {
    tails.total = std::nullopt;
  }
  // The right tail absorbs every exit (the shift moves right); preimages can
  // only leak in from below the left edge.
  tails.exit_absorbing = spec.right_tail;
  tails.preimage_bound = spec.left_tail;
  auto space = AtomicSpace::make(spec.weights, std::move(blocks), tails);
  std::vector<int32_t> fwd(n);
  for (int32_t a = 0; a < n; ++a) fwd[a] = a + 1 < n ? a + 1 : kExit;
  std::string name =
      spec.side == ShiftSide::unilateral ? "shift:unilateral" : "shift:bilateral";
  auto map = AtomMap::make(std::move(fwd), name);
  return {std::move(space), std::move(map), std::move(name)};
}

BuiltSystem build_geometric_shift(ShiftSide side, int horizon,
                                  const Rat& ratio) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (ratio <= 0 || ratio >= 1) {
    throw std::invalid_argument("ratio must lie in (0,1)");
  }
  WeightedShiftSpec spec;
  spec.side = side;
  if (side == ShiftSide::unilateral) {
    spec.lo = 0;
    Rat w{1};
    for (int i = 0; i < horizon; ++i) {
      spec.weights.push_back(w);
      w *= ratio;
    }
    spec.right_tail = w / (1 - ratio);  // sum_{i >= horizon} ratio^i
    spec.left_tail = Rat{0};
  } else {
    spec.lo = -horizon;
    for (long i = -horizon; i <= horizon; ++i) {
      spec.weights.push_back(rat_pow(ratio, static_cast<unsigned>(std::abs(i))));
    }
    Rat tail = rat_pow(ratio, static_cast<unsigned>(horizon) + 1) / (1 - ratio);
    spec.right_tail = tail;
    spec.left_tail = tail;
  }
  auto sys = build_shift(spec);
  sys.name += ":geometric";
  sys.map = AtomMap::make(sys.map.forward(), sys.name);
  return sys;
}

BuiltSystem build_corollary32_shift(int n_blocks) {
  WeightedShiftSpec spec;
  spec.side = ShiftSide::unilateral;
  spec.weights = corollary32_weights(n_blocks);
  spec.lo = 0;
  spec.right_tail = std::nullopt;  // the remaining blocks carry infinite mass
  spec.left_tail = Rat{0};
  auto sys = build_shift(spec);
  sys.name = "shift:corollary32";
  sys.map = AtomMap::make(sys.map.forward(), sys.name);
  return sys;
}

}  // namespace copdyn::models
