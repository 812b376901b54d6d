#include "copdyn/models/disk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace copdyn::models {

std::string mobius_type_name(MobiusType t) {
  switch (t) {
    case MobiusType::elliptic: return "elliptic";
    case MobiusType::parabolic: return "parabolic";
    case MobiusType::hyperbolic: return "hyperbolic";
  }
  return "?";
}

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

struct Mobius {
  Cx m00, m01, m10, m11;

  Cx apply(Cx z) const { return (m00 * z + m01) / (m10 * z + m11); }

  Mobius compose(const Mobius& o) const {  // this after o
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }

  Mobius inverse() const { return {m11, -m01, -m10, m00}; }

  void normalize() {
    double s = std::max({std::abs(m00), std::abs(m01), std::abs(m10),
                         std::abs(m11)});
    if (s > 0) {
      m00 /= s;
      m01 /= s;
      m10 /= s;
      m11 /= s;
    }
  }
};

Mobius mobius_of(const DiskAutomorphism& aut) {
  Cx rot = std::polar(1.0, aut.theta);
  return {rot, -rot * aut.a, -std::conj(aut.a), Cx{1, 0}};
}

Mobius mobius_power(const DiskAutomorphism& aut, int k) {
  Mobius base = k >= 0 ? mobius_of(aut) : mobius_of(aut).inverse();
  int n = std::abs(k);
  Mobius acc{1, 0, 0, 1};
  for (int i = 0; i < n; ++i) {
    acc = base.compose(acc);
    acc.normalize();
  }
  return acc;
}

double angle_of(Cx z) {
  double t = std::arg(z) / kTau;
  t -= std::floor(t);
  return t < 1.0 ? t : 0.0;
}

Cx at_angle(double t) { return std::polar(1.0, t * kTau); }

double deriv_mod(const DiskAutomorphism& aut, Cx z) {
  double num = 1.0 - std::norm(aut.a);
  Cx den = Cx{1, 0} - std::conj(aut.a) * z;
  return num / std::norm(den);
}

ArcSet map_arcs(const Mobius& m, const ArcSet& arcs) {
  ArcSet out;
  for (const Arc& a : arcs) {
    if (a.length >= 1.0) {
      out.push_back({0.0, 1.0});
      continue;
    }
    if (a.length <= 0.0) continue;
    double s = angle_of(m.apply(at_angle(a.start)));
    double e = angle_of(m.apply(at_angle(a.start + a.length)));
    double len = e - s;
    len -= std::floor(len);
    // A nonempty proper arc maps to a nonempty proper arc.
    if (len == 0.0) len = 1e-300;
    out.push_back({s, len});
  }
  return arc_normalize(std::move(out));
}

}  // namespace

ArcSet arc_normalize(ArcSet arcs) {
  ArcSet split;
  double covered = 0;
  for (Arc a : arcs) {
    if (a.length <= 0) continue;
    if (a.length >= 1) return {{0.0, 1.0}};
    a.start -= std::floor(a.start);
    covered += a.length;
    if (a.start + a.length > 1.0) {  // wraps: split at 0
      split.push_back({a.start, 1.0 - a.start});
      split.push_back({0.0, a.start + a.length - 1.0});
    } else {
      split.push_back(a);
    }
  }
  if (covered >= 1.0) {
    // may still be a proper union; merging below settles it
  }
  std::sort(split.begin(), split.end(),
            [](const Arc& x, const Arc& y) { return x.start < y.start; });
  ArcSet out;
  for (const Arc& a : split) {
    if (!out.empty() && a.start <= out.back().start + out.back().length) {
      double end = std::max(out.back().start + out.back().length,
                            a.start + a.length);
      out.back().length = end - out.back().start;
    } else {
      out.push_back(a);
    }
  }
  // merge across the wrap point
  if (out.size() >= 2) {
    const Arc& last = out.back();
    if (last.start + last.length >= 1.0 && out.front().start <=
        last.start + last.length - 1.0) {
      double head_end = out.front().start + out.front().length;
      double tail_end = last.start + last.length - 1.0;
      if (head_end <= tail_end) {
        out.erase(out.begin());
      } else {
        out.front().length = head_end - tail_end;
        out.front().start = tail_end;
        out.back().length = 1.0 - out.back().start;
        if (out.front().length <= 0) out.erase(out.begin());
      }
    }
  }
  if (out.size() == 1 && out[0].length >= 1.0) return {{0.0, 1.0}};
  return out;
}

ArcSet arc_complement(const ArcSet& arcs) {
  ArcSet norm = arc_normalize(arcs);
  if (norm.empty()) return {{0.0, 1.0}};
  if (norm.size() == 1 && norm[0].length >= 1.0) return {};
  ArcSet out;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    double gap_start = norm[i].start + norm[i].length;
    double gap_end = i + 1 < norm.size() ? norm[i + 1].start
                                         : norm[0].start + 1.0;
    if (gap_end > gap_start) out.push_back({gap_start, gap_end - gap_start});
  }
  return arc_normalize(std::move(out));
}

double arc_measure(const ArcSet& arcs) {
  double m = 0;
  for (const Arc& a : arc_normalize(arcs)) m += a.length;
  return std::min(m, 1.0);
}

Arc arc_centered(double center, double length) {
  double s = center - length / 2;
  s -= std::floor(s);
  return {s, length};
}

Cx disk_apply(const DiskAutomorphism& aut, Cx z) {
  return mobius_of(aut).apply(z);
}

DiskClassification disk_classify(const DiskAutomorphism& aut) {
  if (std::abs(aut.a) >= 1.0) {
    throw std::invalid_argument("|a| must be < 1");
  }
  DiskClassification out;
  const Cx rot = std::polar(1.0, aut.theta);
  const Cx abar = std::conj(aut.a);

  // Fixed points of z(1 - abar z) = rot (z - a).
  if (std::abs(abar) < 1e-15) {
    out.fixed_points = {Cx{0, 0}};
  } else {
    Cx A = abar, B = rot - Cx{1, 0}, C = -rot * aut.a;
    Cx disc = std::sqrt(B * B - 4.0 * A * C);
    out.fixed_points = {(-B + disc) / (2.0 * A), (-B - disc) / (2.0 * A)};
  }

  // Trace invariant tr^2/det = 4 cos^2(theta/2) / (1 - |a|^2).
  double q = 4.0 * std::pow(std::cos(aut.theta / 2.0), 2) /
             (1.0 - std::norm(aut.a));
  constexpr double kParabolicTol = 1e-9;
  if (q < 4.0 - kParabolicTol) {
    out.type = MobiusType::elliptic;
    // Keep only the fixed point inside the closed disk.
    std::vector<Cx> inside;
    for (Cx z : out.fixed_points) {
      if (std::abs(z) < 1.0 - 1e-12) inside.push_back(z);
    }
    if (!inside.empty()) out.fixed_points = inside;
    return out;
  }
  out.type = q <= 4.0 + kParabolicTol ? MobiusType::parabolic
                                      : MobiusType::hyperbolic;
  if (out.type == MobiusType::parabolic) {
    Cx w = out.fixed_points.front();
    out.fixed_points = {w / std::abs(w)};
    out.omega1 = out.omega2 = out.fixed_points[0];
    return out;
  }
  // Hyperbolic: boundary fixed points; the attractor has |f'| < 1.
  Cx p0 = out.fixed_points[0] / std::abs(out.fixed_points[0]);
  Cx p1 = out.fixed_points[1] / std::abs(out.fixed_points[1]);
  out.fixed_points = {p0, p1};
  if (deriv_mod(aut, p0) <= 1.0) {
    out.omega1 = p0;
    out.omega2 = p1;
  } else {
    out.omega1 = p1;
    out.omega2 = p0;
  }
  return out;
}

ArcSet boundary_map_arcs(const DiskAutomorphism& aut, const ArcSet& arcs,
                         int k) {
  return map_arcs(mobius_power(aut, k), arcs);
}

double disk_measure_pullback(const DiskAutomorphism& aut, const ArcSet& b,
                             int k) {
  return arc_measure(boundary_map_arcs(aut, b, -k));
}

double harmonic_measure(Cx omega, const ArcSet& arcs) {
  if (std::abs(omega) >= 1.0) {
    throw std::invalid_argument("omega must lie inside the disk");
  }
  Mobius g{Cx{1, 0}, -omega, -std::conj(omega), Cx{1, 0}};
  return arc_measure(map_arcs(g, arcs));
}

PoissonCheck poisson_check(const DiskAutomorphism& aut, Cx omega,
                           const Arc& a) {
  PoissonCheck out{};
  ArcSet pre = boundary_map_arcs(aut, {a}, -1);
  out.lhs = harmonic_measure(omega, pre);
  out.rhs = harmonic_measure(disk_apply(aut, omega), {a});
  return out;
}

}  // namespace copdyn::models
