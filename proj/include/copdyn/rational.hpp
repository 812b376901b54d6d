#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace copdyn {

// Exact rational scalar used for all measure arithmetic. Finite doubles
// convert exactly (every IEEE value is a dyadic rational), so sums,
// differences and comparisons carry no rounding error.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Exact conversion; throws std::invalid_argument on NaN/infinity.
Rat rat_from_double(double x);

// "num/den" when the denominator is nontrivial, plain integer otherwise.
std::string rat_to_string(const Rat& r);

// Accepts "num/den", integers and decimal literals with optional exponent.
std::optional<Rat> rat_parse(const std::string& text);

// 2^e with e possibly negative.
Rat rat_pow2(long e);

// r^e for integer e >= 0.
Rat rat_pow(const Rat& r, unsigned e);

}  // namespace copdyn
