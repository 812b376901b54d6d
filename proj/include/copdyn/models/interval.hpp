#pragma once

#include "copdyn/rational.hpp"

#include <string>
#include <variant>
#include <vector>

namespace copdyn::models {

/// Real value known to lie in [lo, hi]; lo == hi when exact. Affine
/// arithmetic stays exact; log1p/expm1 round outward.
struct Enclosure {
  Rat lo, hi;
  bool exact() const { return lo == hi; }
  double width() const { return to_double(hi - lo); }
  static Enclosure point(const Rat& v) { return {v, v}; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure log1p_enclosure(const Enclosure& x);
Enclosure expm1_enclosure(const Enclosure& x);

/// Closed interval [a, b]; measure-theoretic, endpoint openness untracked.
struct Iv {
  Enclosure a, b;
  Enclosure length() const { return b - a; }
};

/// x -> slope*x + offset with slope > 0 (all systems here are increasing).
struct AffineMap {
  Rat slope, offset;
};
struct Log1pMap {};
using PieceMap = std::variant<AffineMap, Log1pMap>;

struct Piece {
  Iv domain;  // exact endpoints
  PieceMap map;
};

struct IntervalSystem {
  std::vector<Piece> pieces;  // disjoint domains covering the ambient
  Iv ambient;
  bool real_line = false;  // ambient is all of R (single affine piece)
  std::string name;
};

enum class EVerdict { E1, E2, NotDetermined };
std::string everdict_name(EVerdict v);

struct IntervalReport {
  Enclosure c1, c2;  // inf/sup of the derivative over the pieces
  bool contraction = false;  // c2 < 1 certified
  bool injective = false;
  std::vector<Iv> wandering;  // W = X \ f(X)
  Enclosure wandering_mass;
  bool dissipative = false;
  std::string wandering_note;
  std::vector<Enclosure> fkx_mass;  // mu(f^k(X)), k = 1..k_max
  Enclosure lambda_mass;            // mu(f^{k_max}(X))
  bool lambda_infinite = false;
  Enclosure lambda_limit;  // certified enclosure of lim_k mu(f^k(X))
  bool lambda_limit_known = false;
  EVerdict verdict = EVerdict::NotDetermined;
  bool mixing_certified = false;
  int k_max = 0;
};

IntervalReport interval_analyze(const IntervalSystem& sys, int k_max,
                                double tol);

/// f(S) as a normalized interval union.
std::vector<Iv> interval_image(const IntervalSystem& sys,
                               const std::vector<Iv>& s);

/// Total length of a normalized union.
Enclosure interval_mass(const std::vector<Iv>& s);

// The systems studied here.
IntervalSystem interval_halving();       // x/2 on [0,1]
IntervalSystem interval_halving_real();  // x/2 on R
IntervalSystem interval_log1p();         // log(1+x) on [0,1]
IntervalSystem interval_two_branch();    // x/2 on [0,1/2), (3/2)x-1/2 on [1/2,1)

IntervalSystem interval_system_by_name(const std::string& name);

}  // namespace copdyn::models
