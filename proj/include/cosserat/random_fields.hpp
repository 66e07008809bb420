#pragma once

// Seeded random jet sections and dynamical data for property checks.

#include "cosserat/dynamics.hpp"
#include "cosserat/sampling.hpp"

namespace cosserat {

/// Arbitrary (not integrable) jets with Lorentz frames.
inline KinematicalState random_state(const Lattice& lat, Rng& rng) {
  KinematicalState s(lat);
  for (Jet& j : s.jets) {
    j.x = random_vec4(rng);
    j.e = random_lorentz(rng);
    for (int a = 0; a < lat.dim(); ++a) {
      j.xd[a] = random_vec4(rng);
      j.ed[a] = random_lorentz_generator(rng) * j.e;
    }
  }
  return s;
}

inline DynamicalState random_dynamical_state(const Lattice& lat, Rng& rng) {
  DynamicalState phi(lat);
  for (auto& d : phi.points) {
    d.F = random_vec4(rng);
    d.M = random_mat4(rng);
    for (int a = 0; a < lat.dim(); ++a) {
      d.sigma[a] = random_vec4(rng);
      d.mu[a] = random_mat4(rng);
    }
  }
  return phi;
}

inline VirtualDisplacement random_eulerian_variation(const Lattice& lat, Rng& rng) {
  VirtualDisplacement ds(lat, Picture::Eulerian);
  for (Jet& v : ds.jets) {
    v.x = random_vec4(rng);
    v.e = random_lorentz_generator(rng);
    for (int a = 0; a < lat.dim(); ++a) {
      v.xd[a] = random_vec4(rng);
      v.ed[a] = random_lorentz_generator(rng);
    }
  }
  return ds;
}

}  // namespace cosserat
