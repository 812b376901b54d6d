#include "copdyn/models/interval.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace copdyn::models {

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

namespace {

double down(double x) { return std::nextafter(x, -1e308); }
double up(double x) { return std::nextafter(x, 1e308); }

Rat rat_down(double x) { return rat_from_double(down(down(x))); }
Rat rat_up(double x) { return rat_from_double(up(up(x))); }

Enclosure ap_min(const Enclosure& a, const Enclosure& b) {
  return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Enclosure ap_max(const Enclosure& a, const Enclosure& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace

Enclosure log1p_enclosure(const Enclosure& x) {
  if (x.exact() && x.lo == 0) return Enclosure::point(Rat{0});
  Rat lo = rat_down(std::log1p(to_double(x.lo)));
  Rat hi = rat_up(std::log1p(to_double(x.hi)));
  if (x.lo >= 0 && lo < 0) lo = 0;  // log1p(t) >= 0 for t >= 0
  return {lo, hi};
}

Enclosure expm1_enclosure(const Enclosure& x) {
  if (x.exact() && x.lo == 0) return Enclosure::point(Rat{0});
  Rat lo = rat_down(std::expm1(to_double(x.lo)));
  Rat hi = rat_up(std::expm1(to_double(x.hi)));
  if (x.lo >= 0 && lo < 0) lo = 0;
  return {lo, hi};
}

std::string everdict_name(EVerdict v) {
  switch (v) {
    case EVerdict::E1: return "E1";
    case EVerdict::E2: return "E2";
    case EVerdict::NotDetermined: return "not-determined";
  }
  return "?";
}

namespace {

Enclosure apply_map(const PieceMap& m, const Enclosure& x) {
  if (const auto* aff = std::get_if<AffineMap>(&m)) {
    return {aff->slope * x.lo + aff->offset, aff->slope * x.hi + aff->offset};
  }
  return log1p_enclosure(x);
}

std::optional<Enclosure> apply_inverse(const PieceMap& m, const Enclosure& y) {
  if (const auto* aff = std::get_if<AffineMap>(&m)) {
    return Enclosure{(y.lo - aff->offset) / aff->slope,
                     (y.hi - aff->offset) / aff->slope};
  }
  return expm1_enclosure(y);
}

// Derivative range of a piece over its domain; exact rational endpoints.
Enclosure derivative_range(const Piece& p) {
  if (const auto* aff = std::get_if<AffineMap>(&p.map)) {
    return Enclosure::point(aff->slope);
  }
  // d/dx log(1+x) = 1/(1+x), decreasing
  return {Rat{1} / (1 + p.domain.b.hi), Rat{1} / (1 + p.domain.a.lo)};
}

// Normalized union: sorted, overlapping/touching intervals merged,
// degenerate ones dropped.
std::vector<Iv> normalize(std::vector<Iv> ivs) {
  std::vector<Iv> kept;
  for (auto& iv : ivs) {
    if (iv.b.hi > iv.a.lo) kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(), [](const Iv& x, const Iv& y) {
    return x.a.lo < y.a.lo;
  });
  std::vector<Iv> out;
  for (auto& iv : kept) {
    if (!out.empty() && iv.a.lo <= out.back().b.hi) {
      out.back().b = ap_max(out.back().b, iv.b);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

std::vector<Iv> image_of(const IntervalSystem& sys, const std::vector<Iv>& s) {
  std::vector<Iv> out;
  for (const auto& piece : sys.pieces) {
    for (const auto& iv : s) {
      Enclosure a = ap_max(iv.a, piece.domain.a);
      Enclosure b = ap_min(iv.b, piece.domain.b);
      if (b.hi <= a.lo) continue;
      out.push_back({apply_map(piece.map, a), apply_map(piece.map, b)});
    }
  }
  return normalize(std::move(out));
}

std::vector<Iv> complement_in(const Iv& ambient, const std::vector<Iv>& s) {
  std::vector<Iv> out;
  Enclosure cursor = ambient.a;
  for (const auto& iv : s) {
    out.push_back({cursor, iv.a});
    cursor = iv.b;
  }
  out.push_back({cursor, ambient.b});
  return normalize(std::move(out));
}

Enclosure total_mass(const std::vector<Iv>& s) {
  Enclosure m = Enclosure::point(Rat{0});
  for (const auto& iv : s) {
    Enclosure len = iv.length();
    if (len.lo < 0) len.lo = 0;
    m = m + len;
  }
  return m;
}

bool sets_equal_exact(const std::vector<Iv>& x, const std::vector<Iv>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i].a.exact() && y[i].a.exact() && x[i].a.lo == y[i].a.lo &&
          x[i].b.exact() && y[i].b.exact() && x[i].b.lo == y[i].b.lo)) {
      return false;
    }
  }
  return true;
}

const Piece* piece_containing(const IntervalSystem& sys, const Enclosure& pt) {
  for (const auto& p : sys.pieces) {
    if (pt.lo >= p.domain.a.lo && pt.hi <= p.domain.b.hi) return &p;
  }
  return nullptr;
}

// Fixed point the monotone orbit through pt converges to: exact solve for an
// affine piece, the origin for log1p. decreasing = orbit moves down.
std::optional<Enclosure> terminal_fixed(const IntervalSystem& sys,
                                        const Enclosure& pt, bool decreasing) {
  const Piece* p = piece_containing(sys, pt);
  if (!p) return std::nullopt;
  Rat star;
  if (const auto* aff = std::get_if<AffineMap>(&p->map)) {
    if (aff->slope == 1) return std::nullopt;
    star = aff->offset / (1 - aff->slope);
  } else {
    star = 0;  // log(1+x) = x only at 0
  }
  if (decreasing) {
    if (star > pt.hi || star < p->domain.a.lo) return std::nullopt;
  } else {
    if (star < pt.lo || star > p->domain.b.hi) return std::nullopt;
  }
  return Enclosure::point(star);
}

Enclosure apply_system(const IntervalSystem& sys, const Enclosure& pt) {
  const Piece* p = piece_containing(sys, pt);
  if (!p) throw std::runtime_error("point not inside any piece domain");
  return apply_map(p->map, pt);
}

std::optional<Enclosure> apply_system_inverse(const IntervalSystem& sys,
                                              const Enclosure& pt) {
  const Piece* match = nullptr;
  for (const auto& p : sys.pieces) {
    Enclosure ia = apply_map(p.map, p.domain.a);
    Enclosure ib = apply_map(p.map, p.domain.b);
    if (pt.lo >= ia.lo && pt.hi <= ib.hi) {
      if (match) return std::nullopt;  // ambiguous on an overlap
      match = &p;
    }
  }
  if (!match) return std::nullopt;
  return apply_inverse(match->map, pt);
}

}  // namespace

std::vector<Iv> interval_image(const IntervalSystem& sys,
                               const std::vector<Iv>& s) {
  return image_of(sys, s);
}

Enclosure interval_mass(const std::vector<Iv>& s) { return total_mass(s); }

IntervalReport interval_analyze(const IntervalSystem& sys, int k_max,
                                double tol) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (sys.pieces.empty()) throw std::invalid_argument("no pieces");
  const Rat tol_r = rat_from_double(tol);
  IntervalReport rep;
  rep.k_max = k_max;

  bool first = true;
  for (const auto& p : sys.pieces) {
    Enclosure d = derivative_range(p);
    rep.c1 = first ? d : ap_min(rep.c1, d);
    rep.c2 = first ? d : ap_max(rep.c2, d);
    first = false;
  }
  rep.contraction = rep.c2.hi < 1;

  if (sys.real_line) {
    rep.injective = true;
    rep.lambda_infinite = true;
    rep.wandering_mass = Enclosure::point(Rat{0});
    rep.wandering_note = "bijective on the line: no wandering candidate";
    rep.verdict = rep.contraction ? EVerdict::E2 : EVerdict::NotDetermined;
    rep.mixing_certified = false;
    return rep;
  }

  // Injectivity: increasing pieces with disjoint images (up to endpoints).
  {
    std::vector<std::pair<Enclosure, Enclosure>> images;
    for (const auto& p : sys.pieces) {
      images.emplace_back(apply_map(p.map, p.domain.a),
                          apply_map(p.map, p.domain.b));
    }
    std::sort(images.begin(), images.end(),
              [](const auto& x, const auto& y) { return x.first.lo < y.first.lo; });
    rep.injective = true;
    for (std::size_t i = 0; i + 1 < images.size(); ++i) {
      if (images[i].second.hi > images[i + 1].first.lo) rep.injective = false;
    }
  }

  // Iterated images of the whole space.
  std::vector<Iv> current = {sys.ambient};
  std::vector<Iv> previous;
  bool stabilized = false;
  for (int k = 1; k <= k_max; ++k) {
    previous = current;
    current = image_of(sys, current);
    rep.fkx_mass.push_back(total_mass(current));
    if (!stabilized && sets_equal_exact(previous, current)) stabilized = true;
  }
  rep.lambda_mass = rep.fkx_mass.back();

  // Certified limit of mu(f^k(X)).
  const Enclosure ambient_mass = sys.ambient.length();
  if (rep.contraction) {
    // mu(f^k(X)) <= c2^k mu(X) -> 0
    rep.lambda_limit = Enclosure::point(Rat{0});
    rep.lambda_limit_known = true;
  } else if (stabilized) {
    rep.lambda_limit = rep.lambda_mass;
    rep.lambda_limit_known = true;
  } else if (current.size() == 1) {
    // Single interval with monotone endpoints: limits are fixed points.
    std::optional<Enclosure> lo_lim, hi_lim;
    if (current[0].a.exact() && previous.size() == 1 &&
        previous[0].a.exact() && previous[0].a.lo == current[0].a.lo) {
      lo_lim = current[0].a;
    } else {
      lo_lim = terminal_fixed(sys, current[0].a, /*decreasing=*/false);
    }
    hi_lim = terminal_fixed(sys, current[0].b, /*decreasing=*/true);
    if (lo_lim && hi_lim) {
      Enclosure len = *hi_lim - *lo_lim;
      if (len.lo < 0) len.lo = 0;
      rep.lambda_limit = len;
      rep.lambda_limit_known = true;
    }
  }

  // Wandering set and dissipativity.
  rep.wandering = complement_in(sys.ambient, image_of(sys, {sys.ambient}));
  rep.wandering_mass = total_mass(rep.wandering);
  if (rep.wandering_mass.lo > tol_r) {
    // W = X \ f(X): its forward iterates tile X \ Lambda, so exhaustiveness
    // is exactly the vanishing of the core.
    if (rep.injective && rep.lambda_limit_known &&
        rep.lambda_limit.hi <= tol_r) {
      rep.dissipative = true;
      rep.wandering_note = "W = X \\ f(X) is exhaustive: core mass vanishes";
    } else {
      rep.wandering_note = "W = X \\ f(X) wanders; exhaustiveness not settled";
    }
  } else if (sys.pieces.size() >= 2 && rep.injective) {
    // Bijective-mod-null case: try the orbit block at an interior piece
    // boundary; its iterates tile (forward limit, backward limit).
    const Enclosure c = sys.pieces[1].domain.a;
    Enclosure fc = apply_system(sys, c);
    bool decreasing = fc.hi < c.lo;
    bool increasing = fc.lo > c.hi;
    if (decreasing || increasing) {
      Enclosure x = c;
      bool monotone = true;
      for (int j = 0; j < 64 && monotone; ++j) {
        Enclosure nx = apply_system(sys, x);
        monotone = decreasing ? nx.hi < x.lo || (nx.exact() && x.exact() && nx.lo == x.lo)
                              : nx.lo > x.hi || (nx.exact() && x.exact() && nx.lo == x.lo);
        x = nx;
      }
      std::optional<Enclosure> fwd_lim =
          terminal_fixed(sys, x, /*decreasing=*/decreasing);
      Enclosure y = c;
      bool back_ok = true;
      for (int j = 0; j < 64 && back_ok; ++j) {
        auto ny = apply_system_inverse(sys, y);
        if (!ny) back_ok = false;
        else y = *ny;
      }
      std::optional<Enclosure> back_lim =
          back_ok ? terminal_fixed(sys, y, /*decreasing=*/!decreasing)
                  : std::nullopt;
      if (monotone && fwd_lim && back_lim) {
        Enclosure covered = decreasing ? *back_lim - *fwd_lim
                                       : *fwd_lim - *back_lim;
        Enclosure gap = ambient_mass - covered;
        if (gap.hi <= tol_r && gap.lo >= -tol_r) {
          rep.dissipative = true;
          Enclosure w_lo = decreasing ? fc : c;
          Enclosure w_hi = decreasing ? c : fc;
          rep.wandering = {{w_lo, w_hi}};
          rep.wandering_mass = total_mass(rep.wandering);
          rep.wandering_note =
              "orbit block at the piece boundary tiles the space";
        }
      }
    }
    if (!rep.dissipative && rep.wandering_note.empty()) {
      rep.wandering_note = "no exhaustive wandering candidate established";
    }
  } else {
    rep.wandering_note = "no wandering candidate";
  }

  if (rep.contraction && rep.lambda_limit_known &&
      rep.lambda_limit.hi <= tol_r) {
    rep.verdict = EVerdict::E1;
  } else if (rep.contraction && rep.lambda_limit_known &&
             rep.lambda_limit.lo > tol_r) {
    rep.verdict = EVerdict::E2;
  } else {
    rep.verdict = EVerdict::NotDetermined;
  }
  rep.mixing_certified =
      rep.verdict == EVerdict::E1 || (rep.injective && rep.dissipative);
  return rep;
}

IntervalSystem interval_halving() {
  IntervalSystem sys;
  sys.name = "interval:halving";
  sys.ambient = {Enclosure::point(Rat{0}), Enclosure::point(Rat{1})};
  sys.pieces = {{sys.ambient, AffineMap{Rat(1, 2), Rat{0}}}};
  return sys;
}

IntervalSystem interval_halving_real() {
  IntervalSystem sys;
  sys.name = "interval:halving-r";
  sys.real_line = true;
  sys.ambient = {Enclosure::point(Rat{0}), Enclosure::point(Rat{0})};
  sys.pieces = {{sys.ambient, AffineMap{Rat(1, 2), Rat{0}}}};
  return sys;
}

IntervalSystem interval_log1p() {
  IntervalSystem sys;
  sys.name = "interval:log1p";
  sys.ambient = {Enclosure::point(Rat{0}), Enclosure::point(Rat{1})};
  sys.pieces = {{sys.ambient, Log1pMap{}}};
  return sys;
}

IntervalSystem interval_two_branch() {
  IntervalSystem sys;
  sys.name = "interval:pl";
  sys.ambient = {Enclosure::point(Rat{0}), Enclosure::point(Rat{1})};
  Iv left{Enclosure::point(Rat{0}), Enclosure::point(Rat(1, 2))};
  Iv right{Enclosure::point(Rat(1, 2)), Enclosure::point(Rat{1})};
  sys.pieces = {{left, AffineMap{Rat(1, 2), Rat{0}}},
                {right, AffineMap{Rat(3, 2), Rat(-1, 2)}}};
  return sys;
}

IntervalSystem interval_system_by_name(const std::string& name) {
  if (name == "halving") return interval_halving();
  if (name == "halving-r") return interval_halving_real();
  if (name == "log1p") return interval_log1p();
  if (name == "pl") return interval_two_branch();
  throw std::invalid_argument("unknown interval system: " + name);
}

}  // namespace copdyn::models
