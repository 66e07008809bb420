#pragma once

// Smooth analytic fields used by the convergence studies.

#include <cmath>
#include <functional>
#include <vector>

#include "cosserat/forms.hpp"

namespace cosserat::manufactured {

using Displacement = std::function<PoincareElement(const Point&)>;

/// Three displacement fields with non-commuting Lorentz parts.
inline std::vector<Displacement> displacement_fields() {
  return {
      [](const Point& r) {
        PoincareElement g;
        g.a = Vec4(std::sin(r[0]), 0.5 * std::cos(r[1]), r[0] * r[1], 0.3 * r[2] * r[2] + 0.2 * r[3]);
        g.L = rotation(3, 0.8 * r[0] + 0.3 * r[1]) * boost(1, 0.5 * std::sin(r[1] + r[2])) *
              rotation(1, 0.4 * r[0] * r[2] + 0.3 * r[3]);
        return g;
      },
      [](const Point& r) {
        PoincareElement g;
        g.a = 0.5 * Vec4(r[0] * r[0], std::sin(r[0] + r[1]), r[2] - r[3], std::cos(r[1]));
        g.L = boost(2, 0.3 * r[0]) * rotation(2, 0.7 * r[1] - 0.2 * r[2]) *
              boost(3, 0.2 * r[0] * r[1] + 0.1 * r[3]);
        return g;
      },
      [](const Point& r) {
        PoincareElement g;
        g.a = Vec4(std::exp(0.3 * r[2]), r[1] * r[2], 0.2 * std::sin(2 * r[0]), r[0] + r[3] * r[3]);
        g.L = rotation(2, 0.8 * r[1] + 0.3 * r[0]) * boost(1, 0.4 * r[0] * r[0] + 0.2 * r[1]) *
              rotation(3, 0.6 * std::sin(r[2]) + 0.2 * r[3]) * boost(2, 0.25 * r[2]);
        return g;
      },
  };
}

/// A generic smooth iso(1,3)-valued 1-form; not closed and not of the form dg g^-1.
inline AlgebraElement smooth_one_form(const Point& r, int a) {
  AlgebraElement e;
  for (int mu = 0; mu < 4; ++mu)
    e.v[mu] = 0.5 * std::cos((mu + 1) * r[0] - (a + 1) * r[2] + r[0] * r[1] + mu * a + 0.3 * r[3]);
  for (int k = 4; k < basis::kSize; ++k) {
    const double c = 0.3 * std::sin((k - 3) * r[0] + (a + 1) * r[1] + 0.5 * k * r[2] + 0.2 * r[3] + a);
    e.w += c * basis::generator(k).w;
  }
  return e;
}

inline FormField<AlgebraElement> sample_smooth_one_form(const Lattice& lat) {
  return FormField<AlgebraElement>::sample(
      lat, 1, [](const Point& r, const MultiIndex& m) { return smooth_one_form(r, m.a[0]); });
}

/// log2 of the error ratio between a grid and its refinement by two.
inline double convergence_order(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace cosserat::manufactured
