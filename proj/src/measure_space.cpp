#include "copdyn/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace copdyn {

AtomicSpace AtomicSpace::make(std::vector<Rat> weights,
                              std::vector<std::vector<int32_t>> blocks,
                              TailSpec tails) {
  AtomicSpace s;
  const auto n = static_cast<int32_t>(weights.size());
  for (const Rat& w : weights) {
    if (w <= 0) throw std::invalid_argument("atom weights must be positive");
  }
  std::vector<int32_t> seen(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("empty block");
    for (int32_t a : blocks[b]) {
      if (a < 0 || a >= n) throw std::invalid_argument("block atom out of range");
      if (seen[a] != -1) throw std::invalid_argument("blocks overlap");
      seen[a] = static_cast<int32_t>(b);
    }
  }
  for (int32_t a = 0; a < n; ++a) {
    if (seen[a] == -1) throw std::invalid_argument("blocks do not cover all atoms");
  }
  if (tails.total && *tails.total < 0) {
    throw std::invalid_argument("tail mass must be nonnegative");
  }
  if (tails.exit_absorbing &&
      (!tails.total || *tails.exit_absorbing > *tails.total)) {
    throw std::invalid_argument("exit-absorbing tail exceeds declared tail");
  }
  s.weights_ = std::move(weights);
  s.blocks_ = std::move(blocks);
  s.block_of_ = std::move(seen);
  s.block_mass_.resize(s.blocks_.size());
  for (std::size_t b = 0; b < s.blocks_.size(); ++b) {
    Rat m = 0;
    for (int32_t a : s.blocks_[b]) m += s.weights_[a];
    s.block_mass_[b] = m;
  }
  s.total_ = 0;
  for (const Rat& w : s.weights_) s.total_ += w;
  s.preimage_tail_bound_ =
      tails.preimage_bound ? *tails.preimage_bound : tails.total;
  s.tails_ = std::move(tails);
  return s;
}

MeasurableSet MeasurableSet::of_blocks(std::vector<int32_t> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  MeasurableSet s;
  s.ids_ = std::move(ids);
  return s;
}

MeasurableSet MeasurableSet::all(const AtomicSpace& space) {
  std::vector<int32_t> ids(space.block_count());
  for (int32_t b = 0; b < space.block_count(); ++b) ids[b] = b;
  MeasurableSet s;
  s.ids_ = std::move(ids);
  return s;
}

bool MeasurableSet::contains(int32_t block) const {
  return std::binary_search(ids_.begin(), ids_.end(), block);
}

MeasurableSet MeasurableSet::set_union(const MeasurableSet& other) const {
  MeasurableSet out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(),
                 other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

MeasurableSet MeasurableSet::set_intersection(const MeasurableSet& other) const {
  MeasurableSet out;
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(),
                        other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

MeasurableSet MeasurableSet::set_difference(const MeasurableSet& other) const {
  MeasurableSet out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                      other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

MeasurableSet MeasurableSet::complement(const AtomicSpace& space) const {
  return all(space).set_difference(*this);
}

bool MeasurableSet::subset_of(const MeasurableSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                       ids_.end());
}

std::vector<int32_t> MeasurableSet::atoms(const AtomicSpace& space) const {
  std::vector<int32_t> out;
  for (int32_t b : ids_) {
    const auto& as = space.block_atoms(b);
    out.insert(out.end(), as.begin(), as.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rat SimpleFunction::value_on(int32_t block) const {
  auto it = values.find(block);
  return it == values.end() ? Rat{0} : it->second;
}

Rat SimpleFunction::sup_norm() const {
  Rat m = 0;
  for (const auto& [b, v] : values) {
    Rat a = v < 0 ? Rat(-v) : v;
    if (a > m) m = a;
  }
  return m;
}

MeasurableSet SimpleFunction::support() const {
  std::vector<int32_t> ids;
  for (const auto& [b, v] : values) {
    if (v != 0) ids.push_back(b);
  }
  return MeasurableSet::of_blocks(std::move(ids));
}

SimpleFunction SimpleFunction::indicator(const MeasurableSet& s, double p) {
  return scaled_indicator(Rat{1}, s, p);
}

SimpleFunction SimpleFunction::scaled_indicator(const Rat& c,
                                                const MeasurableSet& s,
                                                double p) {
  SimpleFunction f;
  f.p = p;
  if (c != 0) {
    for (int32_t b : s.block_ids()) f.values[b] = c;
  }
  return f;
}

Rat measure(const AtomicSpace& space, const MeasurableSet& s) {
  Rat m = 0;
  for (int32_t b : s.block_ids()) m += space.block_mass(b);
  return m;
}

Rat atom_set_mass(const AtomicSpace& space, const std::vector<int32_t>& atoms) {
  Rat m = 0;
  for (int32_t a : atoms) m += space.weight(a);
  return m;
}

std::optional<unsigned> integral_exponent(double p) {
  if (p < 1.0) return std::nullopt;
  double r = std::round(p);
  if (std::abs(p - r) > 1e-9 || r > 64.0) return std::nullopt;
  return static_cast<unsigned>(r);
}

Rat lp_norm_pow(const SimpleFunction& f, const AtomicSpace& space) {
  auto e = integral_exponent(f.p);
  if (!e) throw std::invalid_argument("lp_norm_pow requires integral p");
  Rat sum = 0;
  for (const auto& [b, v] : f.values) {
    if (v == 0) continue;
    Rat a = v < 0 ? Rat(-v) : v;
    sum += rat_pow(a, *e) * space.block_mass(b);
  }
  return sum;
}

double lp_norm(const SimpleFunction& f, const AtomicSpace& space) {
  if (integral_exponent(f.p)) {
    return std::pow(to_double(lp_norm_pow(f, space)), 1.0 / f.p);
  }
  double sum = 0;
  for (const auto& [b, v] : f.values) {
    sum += std::pow(std::abs(to_double(v)), f.p) *
           to_double(space.block_mass(b));
  }
  return std::pow(sum, 1.0 / f.p);
}

double h3_delta(double epsilon, double p) {
  if (!(epsilon > 0)) throw std::invalid_argument("h3_delta: epsilon must be positive");
  if (!(p >= 1)) throw std::invalid_argument("h3_delta: p must be >= 1");
  return std::pow(epsilon / 2.0, 1.0 / p);
}

double h4_epsilon(double eta, double M, double p) {
  if (!(eta > 0) || !(M > 0)) {
    throw std::invalid_argument("h4_epsilon: eta and M must be positive");
  }
  if (!(p >= 1)) throw std::invalid_argument("h4_epsilon: p must be >= 1");
  return std::pow(eta / 2.0, p) / std::pow(2.0 * M, p);
}

}  // namespace copdyn
