#pragma once

// Seeded random draws of group and algebra elements for property checks.

#include <random>

#include "cosserat/algebra.hpp"

namespace cosserat {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec4 random_vec4(Rng& rng, double scale = 1.0) {
  Vec4 v;
  for (int i = 0; i < 4; ++i) v[i] = scale * uniform(rng);
  return v;
}

inline Mat4 random_mat4(Rng& rng, double scale = 1.0) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = scale * uniform(rng);
  return m;
}

/// Random combination of the six Lorentz generators.
inline Mat4 random_lorentz_generator(Rng& rng, double scale = 1.0) {
  Mat4 w = Mat4::Zero();
  for (int k = 4; k < basis::kSize; ++k) w += scale * uniform(rng) * basis::generator(k).w;
  return w;
}

inline AlgebraElement random_algebra(Rng& rng, double scale = 1.0) {
  return {random_vec4(rng, scale), random_lorentz_generator(rng, scale)};
}

inline Mat4 random_lorentz(Rng& rng, double scale = 1.0) {
  return exp(AlgebraElement{Vec4::Zero(), random_lorentz_generator(rng, scale)}).L;
}

inline PoincareElement random_poincare(Rng& rng, double scale = 1.0) {
  return {random_vec4(rng, scale), random_lorentz(rng, scale)};
}

}  // namespace cosserat
