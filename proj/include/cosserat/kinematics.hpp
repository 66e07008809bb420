#pragma once

// Kinematical states as 1-jet sections over the body and their deformation by
// jet-valued Poincare displacements.

#include <vector>

#include "cosserat/forms.hpp"

namespace cosserat {

/// Point and frame values together with their first derivatives along each
/// material axis a < p. In a displacement the same slots hold (a, L, a_a, L_a).
struct Jet {
  Vec4 x = Vec4::Zero();
  Mat4 e = Mat4::Identity();
  std::array<Vec4, 4> xd{Vec4::Zero(), Vec4::Zero(), Vec4::Zero(), Vec4::Zero()};
  std::array<Mat4, 4> ed{Mat4::Zero(), Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};
};

struct JetSection {
  Lattice lattice;
  std::vector<Jet> jets;

  JetSection() = default;
  explicit JetSection(const Lattice& lat) : lattice(lat), jets(lat.size()) {}

  /// Every frame must be a Lorentz matrix.
  void validate(double tol = kLorentzTol) const {
    if (jets.size() != lattice.size()) throw std::invalid_argument("JetSection: size does not match lattice");
    for (const Jet& j : jets)
      if (!is_lorentz(j.e, tol)) throw std::invalid_argument("JetSection: frame is not Lorentz");
  }
};

struct KinematicalState : JetSection {
  using JetSection::JetSection;
};

struct DisplacementField : JetSection {
  using JetSection::JetSection;
};

namespace detail {

template <class Section>
void fill_jets_by_differencing(Section& s) {
  const Lattice& lat = s.lattice;
  auto get_x = [&](std::size_t q) -> const Vec4& { return s.jets[q].x; };
  auto get_e = [&](std::size_t q) -> const Mat4& { return s.jets[q].e; };
  for (std::size_t pt = 0; pt < lat.size(); ++pt)
    for (int a = 0; a < lat.dim(); ++a) {
      s.jets[pt].xd[a] = partial<Vec4>(lat, get_x, pt, a);
      s.jets[pt].ed[a] = partial<Mat4>(lat, get_e, pt, a);
    }
}

}  // namespace detail

/// Samples an object rho -> (x, e) and fills its jets with the lattice stencils.
template <class F>
KinematicalState prolong(const Lattice& lat, F&& object) {
  KinematicalState s(lat);
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    const AffineFrame f = object(lat.point(pt));
    s.jets[pt].x = f.origin();
    s.jets[pt].e = f.axes();
  }
  detail::fill_jets_by_differencing(s);
  return s;
}

template <class F>
DisplacementField prolong_displacement(const Lattice& lat, F&& chi) {
  DisplacementField d(lat);
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    const PoincareElement g = chi(lat.point(pt));
    if (!is_lorentz(g.L)) throw std::invalid_argument("prolong_displacement: non-Lorentz L");
    d.jets[pt].x = g.a;
    d.jets[pt].e = g.L;
  }
  detail::fill_jets_by_differencing(d);
  return d;
}

struct IntegrabilityReport {
  bool integrable = false;
  double residual = 0.0;
};

/// Compares the stored jets against differences of the point coordinates.
inline IntegrabilityReport is_integrable(const JetSection& s, double tol) {
  const Lattice& lat = s.lattice;
  auto get_x = [&](std::size_t q) -> const Vec4& { return s.jets[q].x; };
  auto get_e = [&](std::size_t q) -> const Mat4& { return s.jets[q].e; };
  double r = 0.0;
  for (std::size_t pt = 0; pt < lat.size(); ++pt)
    for (int a = 0; a < lat.dim(); ++a) {
      r = std::max(r, max_abs(Vec4(s.jets[pt].xd[a] - partial<Vec4>(lat, get_x, pt, a))));
      r = std::max(r, max_abs(Mat4(s.jets[pt].ed[a] - partial<Mat4>(lat, get_e, pt, a))));
    }
  return {r <= tol, r};
}

/// Pointwise action of a displacement jet on a state jet:
///   x = a + L x0,  e = L e0,
///   x_a = a_a + L_a x0 + L x0_a,  e_a = L_a e0 + L e0_a.
inline Jet act(const Jet& chi, const Jet& s0, int p) {
  Jet s;
  s.x = chi.x + chi.e * s0.x;
  s.e = chi.e * s0.e;
  for (int a = 0; a < p; ++a) {
    s.xd[a] = chi.xd[a] + chi.ed[a] * s0.x + chi.e * s0.xd[a];
    s.ed[a] = chi.ed[a] * s0.e + chi.e * s0.ed[a];
  }
  return s;
}

inline KinematicalState deform(const DisplacementField& chi, const KinematicalState& s0) {
  require_same_lattice(chi.lattice, s0.lattice, "deform");
  KinematicalState s(s0.lattice);
  for (std::size_t pt = 0; pt < s.jets.size(); ++pt) s.jets[pt] = act(chi.jets[pt], s0.jets[pt], s.lattice.dim());
  return s;
}

/// Product chi2 . chi1 of displacement jets; the derivative slots follow the
/// product rule applied to (a2 + L2 a1, L2 L1).
inline DisplacementField compose(const DisplacementField& chi2, const DisplacementField& chi1) {
  require_same_lattice(chi2.lattice, chi1.lattice, "compose");
  DisplacementField out(chi1.lattice);
  for (std::size_t pt = 0; pt < out.jets.size(); ++pt)
    out.jets[pt] = act(chi2.jets[pt], chi1.jets[pt], out.lattice.dim());
  return out;
}

/// omega_a = L_a L^{-1},  xi_a = a_a - omega_a a, as a 1-form over the body.
inline FormField<AlgebraElement> eulerian_of(const DisplacementField& chi) {
  FormField<AlgebraElement> E(chi.lattice, 1);
  for (std::size_t pt = 0; pt < chi.jets.size(); ++pt) {
    const Jet& j = chi.jets[pt];
    const Mat4 Linv = lorentz_adjoint(j.e);
    for (int a = 0; a < chi.lattice.dim(); ++a) {
      AlgebraElement& x = E.at(pt, a);
      x.w = j.ed[a] * Linv;
      x.v = j.xd[a] - x.w * j.x;
    }
  }
  return E;
}

/// Same result as deform, written through the Eulerian displacement:
///   x_a = xi_a + omega_a x + L x0_a,  e_a = omega_a e + L e0_a.
inline KinematicalState eulerian_deform(const DisplacementField& chi, const KinematicalState& s0) {
  require_same_lattice(chi.lattice, s0.lattice, "eulerian_deform");
  const auto E = eulerian_of(chi);
  KinematicalState s(s0.lattice);
  for (std::size_t pt = 0; pt < s.jets.size(); ++pt) {
    const Jet& c = chi.jets[pt];
    const Jet& j0 = s0.jets[pt];
    Jet& j = s.jets[pt];
    j.x = c.x + c.e * j0.x;
    j.e = c.e * j0.e;
    for (int a = 0; a < s.lattice.dim(); ++a) {
      const AlgebraElement& xi = E.at(pt, a);
      j.xd[a] = xi.v + xi.w * j.x + c.e * j0.xd[a];
      j.ed[a] = xi.w * j.e + c.e * j0.ed[a];
    }
  }
  return s;
}

}  // namespace cosserat
