#include "copdyn/models/odometer.hpp"

#include <stdexcept>

namespace copdyn::models {

OdometerSpec odometer_spec(int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  OdometerSpec spec;
  spec.depth = depth;
  spec.cycle_length = 1;
  for (int i = 1; i <= depth; ++i) {
    const bool odd = i % 2 == 1;
    const int size = odd ? 2 * i : 2;
    spec.radix.push_back(size);
    spec.cycle_length *= size;
    std::vector<Rat> mass;
    if (odd) {
      Rat low = (1 - rat_pow2(-i)) / i;
      Rat high = rat_pow2(-i) / i;
      for (int j = 0; j < i; ++j) mass.push_back(low);
      for (int j = i; j < 2 * i; ++j) mass.push_back(high);
    } else {
      mass = {Rat(1, 2), Rat(1, 2)};
    }
    spec.digit_mass.push_back(std::move(mass));
  }
  return spec;
}

std::vector<int> odometer_digits(const OdometerSpec& spec, long index) {
  std::vector<int> digits(spec.depth);
  for (int i = 0; i < spec.depth; ++i) {
    digits[i] = static_cast<int>(index % spec.radix[i]);
    index /= spec.radix[i];
  }
  return digits;
}

long odometer_index(const OdometerSpec& spec, const std::vector<int>& digits) {
  long idx = 0;
  long stride = 1;
  for (int i = 0; i < spec.depth; ++i) {
    idx += digits[i] * stride;
    stride *= spec.radix[i];
  }
  return idx;
}

int odometer_carry_level(const OdometerSpec& spec,
                         const std::vector<int>& digits) {
  for (int i = 0; i < spec.depth; ++i) {
    if (digits[i] < spec.radix[i] - 1) return i + 1;
  }
  return 0;
}

Rat odometer_atom_mass(const OdometerSpec& spec,
                       const std::vector<int>& digits) {
  Rat m{1};
  for (int i = 0; i < spec.depth; ++i) m *= spec.digit_mass[i][digits[i]];
  return m;
}

Rat rn_derivative(const OdometerSpec& spec, const std::vector<int>& digits) {
  const int level = odometer_carry_level(spec, digits);
  Rat value{1};
  const int reset_below = level == 0 ? spec.depth : level - 1;
  for (int i = 0; i < reset_below; ++i) {
    // digit i+1 rolls over from max A_i to 0
    value *= spec.digit_mass[i][0] / spec.digit_mass[i][spec.radix[i] - 1];
  }
  if (level > 0) {
    const int i = level - 1;
    value *= spec.digit_mass[i][digits[i] + 1] / spec.digit_mass[i][digits[i]];
  }
  return value;
}

long odometer_star_index(const OdometerSpec& spec) {
  return spec.cycle_length - 1;
}

BuiltSystem build_odometer(int depth) {
  OdometerSpec spec = odometer_spec(depth);
  const long n = spec.cycle_length;
  std::vector<Rat> weights(n);
  std::vector<std::vector<int32_t>> blocks(n);
  std::vector<int32_t> fwd(n);
  for (long idx = 0; idx < n; ++idx) {
    auto digits = odometer_digits(spec, idx);
    weights[idx] = odometer_atom_mass(spec, digits);
    blocks[idx] = {static_cast<int32_t>(idx)};
    // Carry rule: zero below the carry level, bump it, keep the rest.
    const int level = odometer_carry_level(spec, digits);
    std::vector<int> next(digits);
    if (level == 0) {
      for (int i = 0; i < spec.depth; ++i) next[i] = 0;
    } else {
      for (int i = 0; i < level - 1; ++i) next[i] = 0;
      next[level - 1] += 1;
    }
    fwd[idx] = static_cast<int32_t>(odometer_index(spec, next));
  }
  TailSpec tails;  // the cylinders partition the whole space
  tails.total = Rat{0};
  tails.preimage_bound = std::optional<Rat>{Rat{0}};
  auto space = AtomicSpace::make(std::move(weights), std::move(blocks), tails);
  std::string name = "odometer:" + std::to_string(depth);
  auto map = AtomMap::make(std::move(fwd), name);
  return {std::move(space), std::move(map), std::move(name)};
}

}  // namespace copdyn::models
