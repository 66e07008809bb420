#pragma once

// Plain-text grid format shared by forms and jet sections.
//
//   cosserat-grid 1
//   kind form | state | displacement
//   p <p>
//   shape <n_1> .. <n_p>
//   spacing <h_1> .. <h_p>
//   origin <o_1> .. <o_p>
//   degree <k>                  (forms only)
//   value scalar|vector|matrix|algebra   (forms only)
//   points <N>
//   <N lines of point data, row-major with axis 1 fastest>
//
// A form line holds its C(p,k) components in increasing multi-index order,
// each written as the value's flat doubles (vector: 4; matrix: 16 row-major;
// algebra: v then w). A jet line holds x, e, then x_a and e_a for a = 1..p.

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "cosserat/kinematics.hpp"

namespace cosserat {

namespace detail {

inline void write_header(std::ostream& os, const char* kind, const Lattice& lat) {
  os << "cosserat-grid 1\nkind " << kind << "\np " << lat.dim() << "\nshape";
  for (int a = 0; a < lat.dim(); ++a) os << ' ' << lat.shape(a);
  os << "\nspacing";
  for (int a = 0; a < lat.dim(); ++a) os << ' ' << lat.spacing(a);
  os << "\norigin";
  for (int a = 0; a < lat.dim(); ++a) os << ' ' << lat.origin(a);
  os << '\n';
}

inline void expect_word(std::istream& is, const std::string& word) {
  std::string got;
  if (!(is >> got) || got != word) throw std::runtime_error("grid file: expected '" + word + "', got '" + got + "'");
}

inline Lattice read_header(std::istream& is, const std::string& kind) {
  expect_word(is, "cosserat-grid");
  int version = 0;
  is >> version;
  if (version != 1) throw std::runtime_error("grid file: unsupported version");
  expect_word(is, "kind");
  expect_word(is, kind);
  expect_word(is, "p");
  int p = 0;
  is >> p;
  if (p < 1 || p > 4) throw std::runtime_error("grid file: bad dimension");
  std::array<int, 4> shape{1, 1, 1, 1};
  std::array<double, 4> spacing{1, 1, 1, 1}, origin{0, 0, 0, 0};
  expect_word(is, "shape");
  for (int a = 0; a < p; ++a) is >> shape[a];
  expect_word(is, "spacing");
  for (int a = 0; a < p; ++a) is >> spacing[a];
  expect_word(is, "origin");
  for (int a = 0; a < p; ++a) is >> origin[a];
  if (!is) throw std::runtime_error("grid file: truncated header");
  return Lattice(p, shape, spacing, origin);
}

inline void read_points_line(std::istream& is, std::size_t expected) {
  expect_word(is, "points");
  std::size_t n = 0;
  is >> n;
  if (n != expected) throw std::runtime_error("grid file: point count does not match shape");
}

template <class V>
void write_value(std::ostream& os, const V& x) {
  double buf[ValueTraits<V>::width];
  ValueTraits<V>::write(x, buf);
  for (double d : buf) os << ' ' << d;
}

template <class V>
V read_value(std::istream& is) {
  double buf[ValueTraits<V>::width];
  for (double& d : buf)
    if (!(is >> d)) throw std::runtime_error("grid file: truncated data");
  return ValueTraits<V>::read(buf);
}

}  // namespace detail

template <FormValue V>
void write_form(std::ostream& os, const FormField<V>& f) {
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  const Lattice& lat = f.lattice();
  detail::write_header(os, "form", lat);
  os << "degree " << f.degree() << "\nvalue " << ValueTraits<V>::kind << "\npoints " << lat.size() << '\n';
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    for (int c = 0; c < f.components(); ++c) detail::write_value(os, f.at(pt, c));
    os << '\n';
  }
  os.precision(old);
}

template <FormValue V>
FormField<V> read_form(std::istream& is) {
  const Lattice lat = detail::read_header(is, "form");
  detail::expect_word(is, "degree");
  int k = -1;
  is >> k;
  detail::expect_word(is, "value");
  detail::expect_word(is, ValueTraits<V>::kind);
  detail::read_points_line(is, lat.size());
  FormField<V> f(lat, k);
  for (std::size_t pt = 0; pt < lat.size(); ++pt)
    for (int c = 0; c < f.components(); ++c) f.at(pt, c) = detail::read_value<V>(is);
  return f;
}

namespace detail {

inline void write_jets(std::ostream& os, const char* kind, const JetSection& s) {
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  detail::write_header(os, kind, s.lattice);
  os << "points " << s.lattice.size() << '\n';
  for (const Jet& j : s.jets) {
    write_value(os, j.x);
    write_value(os, j.e);
    for (int a = 0; a < s.lattice.dim(); ++a) write_value(os, j.xd[a]);
    for (int a = 0; a < s.lattice.dim(); ++a) write_value(os, j.ed[a]);
    os << '\n';
  }
  os.precision(old);
}

template <class Section>
Section read_jets(std::istream& is, const char* kind) {
  Section s(read_header(is, kind));
  read_points_line(is, s.lattice.size());
  for (Jet& j : s.jets) {
    j.x = read_value<Vec4>(is);
    j.e = read_value<Mat4>(is);
    for (int a = 0; a < s.lattice.dim(); ++a) j.xd[a] = read_value<Vec4>(is);
    for (int a = 0; a < s.lattice.dim(); ++a) j.ed[a] = read_value<Mat4>(is);
  }
  return s;
}

}  // namespace detail

inline void write_state(std::ostream& os, const KinematicalState& s) { detail::write_jets(os, "state", s); }
inline void write_displacement(std::ostream& os, const DisplacementField& d) {
  detail::write_jets(os, "displacement", d);
}
inline KinematicalState read_state(std::istream& is) { return detail::read_jets<KinematicalState>(is, "state"); }
inline DisplacementField read_displacement(std::istream& is) {
  return detail::read_jets<DisplacementField>(is, "displacement");
}

}  // namespace cosserat
