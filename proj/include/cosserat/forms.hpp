#pragma once

// Lattice exterior calculus for forms with scalar, vector, matrix or iso(1,3)
// values over a body O in R^p, 1 <= p <= 4.
//
// A k-form stores one value per strictly increasing multi-index a_1 < ... < a_k
// at every lattice point. Derivatives are second-order central differences in
// the interior and second-order one-sided differences on the boundary.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "cosserat/algebra.hpp"

namespace cosserat {

using Point = std::array<double, 4>;

class Lattice {
 public:
  Lattice() = default;

  Lattice(int p, std::array<int, 4> shape, std::array<double, 4> spacing,
          std::array<double, 4> origin = {0, 0, 0, 0})
      : p_(p), shape_(shape), spacing_(spacing), origin_(origin) {
    if (p < 1 || p > 4) throw std::invalid_argument("Lattice: dimension must lie in 1..4");
    for (int a = 0; a < 4; ++a) {
      if (a >= p) {
        shape_[a] = 1;
        spacing_[a] = 1.0;
        origin_[a] = 0.0;
        continue;
      }
      if (shape_[a] < 3) throw std::invalid_argument("Lattice: every axis needs at least 3 points");
      if (!(spacing_[a] > 0.0)) throw std::invalid_argument("Lattice: spacing must be positive");
    }
    stride_[0] = 1;
    for (int a = 1; a < 4; ++a) stride_[a] = stride_[a - 1] * static_cast<std::size_t>(shape_[a - 1]);
    size_ = stride_[3] * static_cast<std::size_t>(shape_[3]);
  }

  /// n points per axis spanning [lo, hi].
  static Lattice cube(int p, int n, double lo = 0.0, double hi = 1.0) {
    const double h = (hi - lo) / (n - 1);
    return Lattice(p, {n, n, n, n}, {h, h, h, h}, {lo, lo, lo, lo});
  }

  int dim() const { return p_; }
  int shape(int a) const { return shape_[a]; }
  double spacing(int a) const { return spacing_[a]; }
  double origin(int a) const { return origin_[a]; }
  std::size_t size() const { return size_; }
  std::size_t stride(int a) const { return stride_[a]; }

  int coord(std::size_t pt, int a) const { return static_cast<int>((pt / stride_[a]) % shape_[a]); }

  std::size_t index(const std::array<int, 4>& c) const {
    std::size_t pt = 0;
    for (int a = 0; a < p_; ++a) pt += stride_[a] * static_cast<std::size_t>(c[a]);
    return pt;
  }

  /// Material coordinates of a lattice point; unused axes are zero.
  Point point(std::size_t pt) const {
    Point rho{0, 0, 0, 0};
    for (int a = 0; a < p_; ++a) rho[a] = origin_[a] + spacing_[a] * coord(pt, a);
    return rho;
  }

  /// True when the point is at least `margin` steps away from every face.
  bool is_interior(std::size_t pt, int margin = 1) const {
    for (int a = 0; a < p_; ++a) {
      const int i = coord(pt, a);
      if (i < margin || i > shape_[a] - 1 - margin) return false;
    }
    return true;
  }

  friend bool operator==(const Lattice& l, const Lattice& r) {
    return l.p_ == r.p_ && l.shape_ == r.shape_ && l.spacing_ == r.spacing_ && l.origin_ == r.origin_;
  }

 private:
  int p_ = 1;
  std::array<int, 4> shape_{3, 1, 1, 1};
  std::array<double, 4> spacing_{1, 1, 1, 1};
  std::array<double, 4> origin_{0, 0, 0, 0};
  std::array<std::size_t, 4> stride_{1, 3, 3, 3};
  std::size_t size_ = 3;
};

inline void require_same_lattice(const Lattice& a, const Lattice& b, const char* who) {
  if (!(a == b)) throw std::invalid_argument(std::string(who) + ": lattice mismatch");
}

// Centered where possible, one-sided second order at the two faces.
template <class V, class Get>
V partial(const Lattice& lat, const Get& get, std::size_t pt, int a) {
  const int i = lat.coord(pt, a);
  const int n = lat.shape(a);
  const std::size_t s = lat.stride(a);
  const double f = 0.5 / lat.spacing(a);
  V r;
  if (i == 0) {
    r = (-3.0 * get(pt) + 4.0 * get(pt + s) - get(pt + 2 * s)) * f;
  } else if (i == n - 1) {
    r = (3.0 * get(pt) - 4.0 * get(pt - s) + get(pt - 2 * s)) * f;
  } else {
    r = (get(pt + s) - get(pt - s)) * f;
  }
  return r;
}

template <class V>
struct ValueTraits;

template <>
struct ValueTraits<double> {
  static constexpr int width = 1;
  static constexpr const char* kind = "scalar";
  static double zero() { return 0.0; }
  static double norm(double x) { return std::abs(x); }
  static void write(const double& x, double* out) { out[0] = x; }
  static double read(const double* in) { return in[0]; }
};

template <>
struct ValueTraits<Vec4> {
  static constexpr int width = 4;
  static constexpr const char* kind = "vector";
  static Vec4 zero() { return Vec4::Zero(); }
  static double norm(const Vec4& x) { return max_abs(x); }
  static void write(const Vec4& x, double* out) { std::copy(x.data(), x.data() + 4, out); }
  static Vec4 read(const double* in) { return Vec4(in[0], in[1], in[2], in[3]); }
};

template <>
struct ValueTraits<Mat4> {
  static constexpr int width = 16;
  static constexpr const char* kind = "matrix";
  static Mat4 zero() { return Mat4::Zero(); }
  static double norm(const Mat4& x) { return max_abs(x); }
  static void write(const Mat4& x, double* out) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out[4 * r + c] = x(r, c);
  }
  static Mat4 read(const double* in) {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = in[4 * r + c];
    return m;
  }
};

template <>
struct ValueTraits<AlgebraElement> {
  static constexpr int width = 20;
  static constexpr const char* kind = "algebra";
  static AlgebraElement zero() { return AlgebraElement::zero(); }
  static double norm(const AlgebraElement& x) { return max_abs(x); }
  static void write(const AlgebraElement& x, double* out) {
    ValueTraits<Vec4>::write(x.v, out);
    ValueTraits<Mat4>::write(x.w, out + 4);
  }
  static AlgebraElement read(const double* in) {
    return {ValueTraits<Vec4>::read(in), ValueTraits<Mat4>::read(in + 4)};
  }
};

template <class V>
concept FormValue = requires { ValueTraits<V>::width; };

/// Strictly increasing multi-index a_1 < ... < a_k (0-based axes).
struct MultiIndex {
  int k = 0;
  std::array<int, 4> a{0, 0, 0, 0};

  bool contains(int axis) const { return std::find(a.begin(), a.begin() + k, axis) != a.begin() + k; }
  friend bool operator==(const MultiIndex& l, const MultiIndex& r) {
    return l.k == r.k && std::equal(l.a.begin(), l.a.begin() + l.k, r.a.begin());
  }
};

/// All k-subsets of {0..p-1} in lexicographic order.
inline const std::vector<MultiIndex>& multi_indices(int p, int k) {
  static const auto table = [] {
    std::array<std::array<std::vector<MultiIndex>, 5>, 5> t;
    for (int p = 1; p <= 4; ++p)
      for (unsigned mask = 0; mask < (1u << p); ++mask) {
        MultiIndex m;
        for (int a = 0; a < p; ++a)
          if (mask & (1u << a)) m.a[m.k++] = a;
        t[p][m.k].push_back(m);
      }
    for (auto& row : t)
      for (auto& v : row)
        std::sort(v.begin(), v.end(), [](const MultiIndex& l, const MultiIndex& r) {
          return std::lexicographical_compare(l.a.begin(), l.a.begin() + l.k, r.a.begin(), r.a.begin() + r.k);
        });
    return t;
  }();
  if (p < 1 || p > 4 || k < 0 || k > p) throw std::out_of_range("multi_indices: degree out of range");
  return table[p][k];
}

inline int component_of(int p, const MultiIndex& m) {
  const auto& list = multi_indices(p, m.k);
  for (std::size_t c = 0; c < list.size(); ++c)
    if (list[c] == m) return static_cast<int>(c);
  throw std::invalid_argument("component_of: indices must be strictly increasing and below p");
}

template <FormValue V>
class FormField {
 public:
  using value_type = V;

  FormField() = default;

  FormField(const Lattice& lat, int degree) : lat_(lat), degree_(degree) {
    if (degree < 0 || degree > lat.dim()) throw std::invalid_argument("FormField: degree out of range");
    ncomp_ = static_cast<int>(multi_indices(lat.dim(), degree).size());
    data_.assign(lat.size() * ncomp_, ValueTraits<V>::zero());
  }

  /// Fills every component from fn(rho, multi_index).
  template <class F>
  static FormField sample(const Lattice& lat, int degree, F&& fn) {
    FormField f(lat, degree);
    for (std::size_t pt = 0; pt < lat.size(); ++pt) {
      const Point rho = lat.point(pt);
      for (int c = 0; c < f.ncomp_; ++c) f.at(pt, c) = fn(rho, f.index(c));
    }
    return f;
  }

  const Lattice& lattice() const { return lat_; }
  int degree() const { return degree_; }
  int components() const { return ncomp_; }
  const MultiIndex& index(int c) const { return multi_indices(lat_.dim(), degree_)[c]; }

  V& at(std::size_t pt, int c) { return data_[pt * ncomp_ + c]; }
  const V& at(std::size_t pt, int c) const { return data_[pt * ncomp_ + c]; }

  /// Component by increasing axis list, e.g. at(pt, {0, 2}) for the drho^1 ^ drho^3 slot.
  const V& at(std::size_t pt, std::initializer_list<int> axes) const {
    return at(pt, component_of(lat_.dim(), to_index(axes)));
  }
  V& at(std::size_t pt, std::initializer_list<int> axes) {
    return at(pt, component_of(lat_.dim(), to_index(axes)));
  }

  template <class F>
  auto map(F&& fn) const {
    using W = std::decay_t<decltype(fn(std::declval<const V&>()))>;
    FormField<W> out(lat_, degree_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.raw()[i] = fn(data_[i]);
    return out;
  }

  std::vector<V>& raw() { return data_; }
  const std::vector<V>& raw() const { return data_; }

  FormField& operator+=(const FormField& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = data_[i] + o.data_[i];
    return *this;
  }
  FormField& operator-=(const FormField& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = data_[i] - o.data_[i];
    return *this;
  }
  FormField& operator*=(double s) {
    for (auto& x : data_) x = s * x;
    return *this;
  }
  friend FormField operator+(FormField a, const FormField& b) { return a += b; }
  friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
  friend FormField operator*(double s, FormField a) { return a *= s; }

 private:
  static MultiIndex to_index(std::initializer_list<int> axes) {
    MultiIndex m;
    for (int x : axes) m.a.at(m.k++) = x;
    return m;
  }
  void check_compatible(const FormField& o) const {
    require_same_lattice(lat_, o.lat_, "FormField");
    if (degree_ != o.degree_) throw std::invalid_argument("FormField: degree mismatch");
  }

  Lattice lat_;
  int degree_ = 0;
  int ncomp_ = 1;
  std::vector<V> data_;
};

/// Max norm over points at least `margin` steps from the boundary. With
/// stride > 1 only points whose coordinates are multiples of stride are
/// visited and the margin counts in units of stride, so a grid refined by
/// that factor is measured at the same physical points as the coarse one.
template <FormValue V>
double max_norm(const FormField<V>& f, int margin = 0, int stride = 1) {
  double m = 0.0;
  const auto& lat = f.lattice();
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    if (!lat.is_interior(pt, margin * stride)) continue;
    bool on_coarse = true;
    for (int a = 0; a < lat.dim(); ++a) on_coarse = on_coarse && lat.coord(pt, a) % stride == 0;
    if (!on_coarse) continue;
    for (int c = 0; c < f.components(); ++c) m = std::max(m, ValueTraits<V>::norm(f.at(pt, c)));
  }
  return m;
}

/// (d alpha)_{a0..ak} = sum_j (-1)^j D_{aj} alpha_{a0..^aj..ak}
template <FormValue V>
FormField<V> ext_d(const FormField<V>& f) {
  const Lattice& lat = f.lattice();
  const int p = lat.dim();
  const int k = f.degree();
  if (k >= p) throw std::invalid_argument("ext_d: form already has top degree");
  FormField<V> out(lat, k + 1);
  for (int c = 0; c < out.components(); ++c) {
    const MultiIndex A = out.index(c);
    for (int j = 0; j <= k; ++j) {
      MultiIndex sub;
      for (int i = 0; i <= k; ++i)
        if (i != j) sub.a[sub.k++] = A.a[i];
      const int sc = component_of(p, sub);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      auto get = [&](std::size_t q) -> const V& { return f.at(q, sc); };
      for (std::size_t pt = 0; pt < lat.size(); ++pt) {
        const V d = partial<V>(lat, get, pt, A.a[j]);
        out.at(pt, c) = out.at(pt, c) + sign * d;
      }
    }
  }
  return out;
}

// Value products used by the wedge.
inline double value_product(double a, double b) { return a * b; }
template <class V>
  requires(!std::is_same_v<V, double>)
V value_product(double s, const V& x) { return s * x; }
template <class V>
  requires(!std::is_same_v<V, double>)
V value_product(const V& x, double s) { return s * x; }
inline Mat4 value_product(const Mat4& a, const Mat4& b) { return a * b; }
inline Vec4 value_product(const Mat4& a, const Vec4& b) { return a * b; }

template <class A, class B>
concept Pairable = requires(const A& a, const B& b) { value_product(a, b); };

/// Pointwise wedge with the value product above; components are summed over
/// shuffles, so for 1-forms (a ^ b)_{xy} = a_x b_y - a_y b_x.
template <FormValue A, FormValue B>
  requires Pairable<A, B>
auto wedge(const FormField<A>& alpha, const FormField<B>& beta) {
  using R = std::decay_t<decltype(value_product(std::declval<A>(), std::declval<B>()))>;
  require_same_lattice(alpha.lattice(), beta.lattice(), "wedge");
  const Lattice& lat = alpha.lattice();
  const int p = lat.dim();
  const int k = alpha.degree(), l = beta.degree();
  if (k + l > p) throw std::invalid_argument("wedge: degrees sum beyond body dimension");
  FormField<R> out(lat, k + l);

  struct Term {
    int out, a, b;
    double sign;
  };
  std::vector<Term> terms;
  for (int c = 0; c < out.components(); ++c) {
    const MultiIndex C = out.index(c);
    for (int ia = 0; ia < alpha.components(); ++ia) {
      const MultiIndex I = alpha.index(ia);
      bool subset = true;
      for (int i = 0; i < k; ++i) subset = subset && C.contains(I.a[i]);
      if (!subset) continue;
      MultiIndex J;
      for (int i = 0; i < C.k; ++i)
        if (!I.contains(C.a[i])) J.a[J.k++] = C.a[i];
      int inversions = 0;
      for (int i = 0; i < I.k; ++i)
        for (int j = 0; j < J.k; ++j)
          if (I.a[i] > J.a[j]) ++inversions;
      terms.push_back({c, ia, component_of(p, J), inversions % 2 == 0 ? 1.0 : -1.0});
    }
  }
  for (std::size_t pt = 0; pt < lat.size(); ++pt)
    for (const Term& t : terms)
      out.at(pt, t.out) = out.at(pt, t.out) + t.sign * value_product(alpha.at(pt, t.a), beta.at(pt, t.b));
  return out;
}

inline FormField<Vec4> translation_part(const FormField<AlgebraElement>& f) {
  return f.map([](const AlgebraElement& x) -> Vec4 { return x.v; });
}

inline FormField<Mat4> lorentz_part(const FormField<AlgebraElement>& f) {
  return f.map([](const AlgebraElement& x) -> Mat4 { return x.w; });
}

inline FormField<AlgebraElement> combine(const FormField<Vec4>& v, const FormField<Mat4>& w) {
  require_same_lattice(v.lattice(), w.lattice(), "combine");
  if (v.degree() != w.degree()) throw std::invalid_argument("combine: degree mismatch");
  FormField<AlgebraElement> out(v.lattice(), v.degree());
  for (std::size_t i = 0; i < out.raw().size(); ++i) out.raw()[i] = {v.raw()[i], w.raw()[i]};
  return out;
}

/// A Poincare displacement g(rho) = (a(rho), L(rho)) sampled on a lattice.
struct GroupField {
  Lattice lattice;
  std::vector<PoincareElement> g;

  template <class F>
  static GroupField sample(const Lattice& lat, F&& fn, double tol = kLorentzTol) {
    GroupField out{lat, {}};
    out.g.reserve(lat.size());
    for (std::size_t pt = 0; pt < lat.size(); ++pt) {
      PoincareElement e = fn(lat.point(pt));
      if (!is_lorentz(e.L, tol)) throw std::invalid_argument("GroupField: non-Lorentz L at a lattice point");
      out.g.push_back(e);
    }
    return out;
  }
};

/// E = dg g^{-1}: omega_a = (D_a L) L^{-1}, xi_a = D_a a - omega_a a.
inline FormField<AlgebraElement> nabla_group(const GroupField& field) {
  const Lattice& lat = field.lattice;
  if (field.g.size() != lat.size()) throw std::invalid_argument("nabla_group: field size mismatch");
  FormField<AlgebraElement> E(lat, 1);
  auto get_a = [&](std::size_t q) -> const Vec4& { return field.g[q].a; };
  auto get_L = [&](std::size_t q) -> const Mat4& { return field.g[q].L; };
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    const Mat4 Linv = lorentz_adjoint(field.g[pt].L);
    for (int a = 0; a < lat.dim(); ++a) {
      AlgebraElement& e = E.at(pt, a);
      e.w = partial<Mat4>(lat, get_L, pt, a) * Linv;
      e.v = partial<Vec4>(lat, get_a, pt, a) - e.w * field.g[pt].a;
    }
  }
  return E;
}

/// Omega_T = d xi - omega ^ xi,  Omega_L = d omega - omega ^ omega.
inline FormField<AlgebraElement> dislocation(const FormField<AlgebraElement>& E) {
  if (E.lattice().dim() < 2) throw std::invalid_argument("dislocation: needs a body of dimension >= 2");
  if (E.degree() != 1) throw std::invalid_argument("dislocation: expects a 1-form");
  const auto xi = translation_part(E);
  const auto om = lorentz_part(E);
  return combine(ext_d(xi) - wedge(om, xi), ext_d(om) - wedge(om, om));
}

/// Psi_T = d Omega_T + Omega_L ^ xi - omega ^ Omega_T,
/// Psi_L = d Omega_L + Omega_L ^ omega - omega ^ Omega_L.
inline FormField<AlgebraElement> incompatibility(const FormField<AlgebraElement>& Omega,
                                                 const FormField<AlgebraElement>& E) {
  if (Omega.lattice().dim() < 3) throw std::invalid_argument("incompatibility: needs a body of dimension >= 3");
  require_same_lattice(Omega.lattice(), E.lattice(), "incompatibility");
  if (Omega.degree() != 2 || E.degree() != 1)
    throw std::invalid_argument("incompatibility: expects a 2-form and a 1-form");
  const auto xi = translation_part(E);
  const auto om = lorentz_part(E);
  const auto OT = translation_part(Omega);
  const auto OL = lorentz_part(Omega);
  return combine(ext_d(OT) + wedge(OL, xi) - wedge(om, OT), ext_d(OL) + wedge(OL, om) - wedge(om, OL));
}

/// Interior max norm of d applied to both parts of a 1-form.
inline double closedness_residual(const FormField<AlgebraElement>& E, int margin = 1, int stride = 1) {
  if (E.lattice().dim() < 2) throw std::invalid_argument("closedness_residual: needs a body of dimension >= 2");
  return max_norm(ext_d(E), margin, stride);
}

}  // namespace cosserat
