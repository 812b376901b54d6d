#pragma once

#include "copdyn/models/system.hpp"

#include <vector>

namespace copdyn::models {

/// The adding machine on prod A_i with |A_i| = 2 for even i and 2i for odd i,
/// truncated at a finite depth. Digit masses: 1/2 each when i is even;
/// (1-2^-i)/i on the low half and 2^-i/i on the high half when i is odd.
struct OdometerSpec {
  int depth = 0;
  std::vector<int> radix;                    // |A_i|, index 0 = digit 1
  std::vector<std::vector<Rat>> digit_mass;  // mu_i(j)
  long cycle_length = 0;                     // prod |A_i|
};

OdometerSpec odometer_spec(int depth);

/// Little-endian mixed-radix coding: digit 1 is least significant, so the
/// adding machine is plain +1 mod cycle_length on indices.
std::vector<int> odometer_digits(const OdometerSpec& spec, long index);
long odometer_index(const OdometerSpec& spec, const std::vector<int>& digits);

/// l(x) = least i with x_i < max A_i; 0 when every digit is maximal (x = x*).
int odometer_carry_level(const OdometerSpec& spec,
                         const std::vector<int>& digits);

/// Exact Radon-Nikodym value of d(mu o f)/d mu at the cylinder [x_1..x_m].
/// At x* (wrap atom) this is the finite-depth product over all digits.
Rat rn_derivative(const OdometerSpec& spec, const std::vector<int>& digits);

/// Atom weight prod_i mu_i(x_i).
Rat odometer_atom_mass(const OdometerSpec& spec, const std::vector<int>& digits);

BuiltSystem build_odometer(int depth);

/// Index of the wrap atom x* = (max A_i)_i.
long odometer_star_index(const OdometerSpec& spec);

}  // namespace copdyn::models
