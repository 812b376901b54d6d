#include "copdyn/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace copdyn {

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("rat_from_double: value is not finite");
  }
  return Rat(x);
}

std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<Rat> parse_decimal(const std::string& s) {
  // [-]digits[.digits][e[-]digits]
  std::string mant = s;
  long exp10 = 0;
  auto epos = mant.find_first_of("eE");
  if (epos != std::string::npos) {
    try {
      exp10 = std::stol(mant.substr(epos + 1));
    } catch (...) {
      return std::nullopt;
    }
    mant = mant.substr(0, epos);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  auto dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (!all_digits(digits)) return std::nullopt;
  Rat value{Int(digits), 1};
  Rat ten{10};
  for (long i = 0; i < std::labs(exp10); ++i) {
    if (exp10 > 0) {
      value *= ten;
    } else {
      value /= ten;
    }
  }
  return neg ? -value : value;
}

}  // namespace

std::optional<Rat> rat_parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    bool neg = false;
    if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
      neg = num[0] == '-';
      num = num.substr(1);
    }
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    Int d(den);
    if (d == 0) return std::nullopt;
    Rat r{Int(num), d};
    return neg ? -r : r;
  }
  return parse_decimal(text);
}

Rat rat_pow2(long e) {
  if (e >= 0) return Rat(Int(1) << static_cast<unsigned>(e), 1);
  return Rat(1, Int(1) << static_cast<unsigned>(-e));
}

Rat rat_pow(const Rat& r, unsigned e) {
  Rat acc{1};
  for (unsigned i = 0; i < e; ++i) acc *= r;
  return acc;
}

}  // namespace copdyn
