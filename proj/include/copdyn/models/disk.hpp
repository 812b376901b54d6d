#pragma once

#include <complex>
#include <string>
#include <vector>

namespace copdyn::models {

using Cx = std::complex<double>;

/// z -> e^{i theta} (z - a) / (1 - conj(a) z), |a| < 1.
struct DiskAutomorphism {
  Cx a;
  double theta = 0;
};

enum class MobiusType { elliptic, parabolic, hyperbolic };
std::string mobius_type_name(MobiusType t);

struct DiskClassification {
  MobiusType type = MobiusType::elliptic;
  std::vector<Cx> fixed_points;
  Cx omega1;  // Denjoy-Wolff point of f (non-elliptic)
  Cx omega2;  // Denjoy-Wolff point of f^-1
};

DiskClassification disk_classify(const DiskAutomorphism& aut);

/// Arc of the unit circle in normalized angle units: {start, length},
/// start in [0,1), 0 <= length <= 1.
struct Arc {
  double start = 0;
  double length = 0;
};
using ArcSet = std::vector<Arc>;

ArcSet arc_normalize(ArcSet arcs);
ArcSet arc_complement(const ArcSet& arcs);
double arc_measure(const ArcSet& arcs);
Arc arc_centered(double center, double length);

/// Image of the arcs under f^k on the circle (k may be negative); exact via
/// endpoint images, automorphisms being orientation-preserving arc maps.
ArcSet boundary_map_arcs(const DiskAutomorphism& aut, const ArcSet& arcs, int k);

/// lambda(f^-k(B)).
double disk_measure_pullback(const DiskAutomorphism& aut, const ArcSet& b, int k);

/// Harmonic (Poisson) measure m_omega(arc) = lambda(g_omega(arc)) where
/// g_omega moves omega to the origin.
double harmonic_measure(Cx omega, const ArcSet& arcs);

struct PoissonCheck {
  double lhs;  // m_omega(f^-1(A))
  double rhs;  // m_{f(omega)}(A)
};

PoissonCheck poisson_check(const DiskAutomorphism& aut, Cx omega, const Arc& a);

/// f(z) evaluated in the closed disk.
Cx disk_apply(const DiskAutomorphism& aut, Cx z);

}  // namespace copdyn::models
