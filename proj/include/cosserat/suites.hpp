#pragma once

// Verification suites run by the command-line tool, their configuration, and
// the structured report they produce.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "cosserat/dirac.hpp"
#include "cosserat/random_fields.hpp"
#include "cosserat/studies.hpp"
#include "cosserat/weyssenhoff.hpp"

namespace cosserat::suites {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::uint64_t seed = 0;
  Units units;

  int random_triples = 1000;
  int exp_samples = 1000;

  int coarse_grid = 17;
  int fine_grid = 33;

  double kappa = 1.3;
  int sample_points = 16;
  int random_states = 20;

  int steps = 10000;
  double dtau = 0.01;
  weyssenhoff::WorldlineOptions worldline;

  Vec4 x0 = Vec4::Zero();
  std::optional<Vec4> u0;
  std::array<double, 6> spin0{0, 0, 0, 1, 0, 0};
  double rho0 = 1.0;
  Vec4 pi0 = Vec4(0, 0.3, 0.2, 0);

  Vec4 initial_velocity() const { return u0 ? *u0 : Vec4(units.c, 0, 0, 0); }
};

namespace detail {

inline std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  std::vector<double> out;
  for (auto& p : parts) {
    boost::trim(p);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw ConfigError("config: '" + key + "' is not a number list: " + text);
    }
  }
  return out;
}

template <std::size_t N>
std::array<double, N> fixed_list(const boost::property_tree::ptree& pt, const std::string& key,
                                 const std::array<double, N>& fallback) {
  const auto text = pt.get_optional<std::string>(key);
  if (!text) return fallback;
  const auto v = parse_list(*text, key);
  if (v.size() != N) throw ConfigError("config: '" + key + "' needs " + std::to_string(N) + " values");
  std::array<double, N> out;
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

inline Vec4 vec_of(const std::array<double, 4>& a) { return Vec4(a[0], a[1], a[2], a[3]); }
inline std::array<double, 4> arr_of(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

template <class T>
T get(const boost::property_tree::ptree& pt, const std::string& key, T fallback) {
  if (!pt.get_optional<std::string>(key)) return fallback;
  try {
    return pt.get<T>(key);
  } catch (const boost::property_tree::ptree_error&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

}  // namespace detail

/// Checks grid sizes: the fine grid must refine the coarse one by two.
inline void set_grids(Config& cfg, const std::vector<int>& sizes) {
  if (sizes.empty() || sizes.size() > 2) throw ConfigError("grid: expected one or two sizes");
  const int coarse = sizes[0];
  const int fine = sizes.size() == 2 ? sizes[1] : studies::refined(coarse);
  if (coarse < 5 || fine != studies::refined(coarse))
    throw ConfigError("grid: need coarse n >= 5 and fine = 2n - 1, got " + std::to_string(coarse) + "," +
                      std::to_string(fine));
  cfg.coarse_grid = coarse;
  cfg.fine_grid = fine;
}

inline void validate(const Config& cfg) {
  if (!(cfg.units.c > 0.0) || !(cfg.units.hbar > 0.0)) throw ConfigError("config: c and hbar must be positive");
  if (cfg.random_triples < 1 || cfg.exp_samples < 1 || cfg.random_states < 1 || cfg.sample_points < 1)
    throw ConfigError("config: sample counts must be positive");
  if (!(cfg.kappa > 0.0)) throw ConfigError("config: kappa must be positive");
  if (cfg.steps < 1 || !(cfg.dtau > 0.0)) throw ConfigError("config: need steps >= 1 and dtau > 0");
  if (cfg.worldline.record_every < 1) throw ConfigError("config: record_every must be >= 1");
}

/// Reads an INI file; absent keys keep their defaults.
///
///   [general]      seed, c, hbar
///   [algebra]      triples, exp_samples
///   [grid]         sizes = coarse[,fine]
///   [dirac]        kappa, sample_points, random_states
///   [worldline]    steps, dtau, project, closure_tol, drift_limit, record_every
///   [initial]      x, u, spin (s_01,s_02,s_03,s_12,s_13,s_23), rho0, pi
inline Config load_config(const std::string& path) {
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::ini_parser::read_ini(path, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config: cannot read '" + path + "': " + e.message());
  }
  static const std::vector<std::string> sections{"general", "algebra", "grid", "dirac", "worldline", "initial"};
  for (const auto& [name, _] : pt)
    if (std::find(sections.begin(), sections.end(), name) == sections.end())
      throw ConfigError("config: unknown section [" + name + "]");

  Config c;
  using detail::get;
  c.seed = get<std::uint64_t>(pt, "general.seed", c.seed);
  c.units.c = get(pt, "general.c", c.units.c);
  c.units.hbar = get(pt, "general.hbar", c.units.hbar);
  c.random_triples = get(pt, "algebra.triples", c.random_triples);
  c.exp_samples = get(pt, "algebra.exp_samples", c.exp_samples);
  if (const auto g = pt.get_optional<std::string>("grid.sizes")) {
    std::vector<int> sizes;
    for (double v : detail::parse_list(*g, "grid.sizes")) sizes.push_back(int(v));
    set_grids(c, sizes);
  }
  c.kappa = get(pt, "dirac.kappa", c.kappa);
  c.sample_points = get(pt, "dirac.sample_points", c.sample_points);
  c.random_states = get(pt, "dirac.random_states", c.random_states);
  c.steps = get(pt, "worldline.steps", c.steps);
  c.dtau = get(pt, "worldline.dtau", c.dtau);
  c.worldline.project = get(pt, "worldline.project", c.worldline.project);
  c.worldline.closure_tol = get(pt, "worldline.closure_tol", c.worldline.closure_tol);
  c.worldline.drift_limit = get(pt, "worldline.drift_limit", c.worldline.drift_limit);
  c.worldline.record_every = get(pt, "worldline.record_every", c.worldline.record_every);
  c.x0 = detail::vec_of(detail::fixed_list<4>(pt, "initial.x", detail::arr_of(c.x0)));
  if (pt.get_optional<std::string>("initial.u"))
    c.u0 = detail::vec_of(detail::fixed_list<4>(pt, "initial.u", {}));
  c.spin0 = detail::fixed_list<6>(pt, "initial.spin", c.spin0);
  c.rho0 = get(pt, "initial.rho0", c.rho0);
  c.pi0 = detail::vec_of(detail::fixed_list<4>(pt, "initial.pi", detail::arr_of(c.pi0)));
  validate(c);
  return c;
}

/// The worldline initial element described by the [initial] block.
inline weyssenhoff::WeyssenhoffElement initial_element(const Config& c) {
  weyssenhoff::WeyssenhoffElement e;
  e.x = c.x0;
  e.u = c.initial_velocity();
  e.s = weyssenhoff::spin_from_components(c.spin0);
  const double c2 = c.units.c * c.units.c;
  if (std::abs(minkowski_inner(e.u, c.pi0)) > 1e-12 * std::max(1.0, c2 * max_abs(c.pi0)))
    throw std::invalid_argument("initial: pi is not orthogonal to u (u.pi = " +
                                std::to_string(minkowski_inner(e.u, c.pi0)) + ")");
  e.g = lower(c.rho0 * e.u + c.pi0);
  return e;
}

// ---------------------------------------------------------------- reports

enum class Comparison { AtMost, AtLeast };

struct Check {
  std::string id;
  std::string tag;  // identity under test, or "plumbing"
  double norm = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::AtMost;
  std::optional<double> estimate;  // raw ratio or order behind a derived norm
  bool pass = false;
  double runtime_ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  void sort() {
    std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
  }

  void append(const SuiteReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

  nlohmann::json to_json(bool with_runtime = true) const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const Check& c : checks) {
      nlohmann::json e{{"id", c.id},
                       {"tag", c.tag},
                       {"norm", c.norm},
                       {"tolerance", c.tolerance},
                       {"comparison", c.comparison == Comparison::AtMost ? "<=" : ">="},
                       {"pass", c.pass}};
      if (c.estimate) e["estimate"] = *c.estimate;
      if (with_runtime) e["runtime_ms"] = c.runtime_ms;
      j["checks"].push_back(e);
    }
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    for (const Check& c : checks) {
      os << (c.pass ? "PASS " : "FAIL ") << c.id << "  " << c.norm << (c.comparison == Comparison::AtMost ? " <= " : " >= ")
         << c.tolerance;
      if (c.estimate) os << "  (estimate " << *c.estimate << ")";
      os << "  [" << c.tag << "]  " << c.runtime_ms << " ms\n";
    }
    os << suite << ": " << (passed() ? "all checks passed" : "FAILED") << " (" << checks.size() << " checks, seed "
       << seed << ")\n";
    return os.str();
  }
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : report_(r) {}

  void at_most(const std::string& id, const std::string& tag, double tol, const std::function<double()>& fn) {
    run(id, tag, tol, Comparison::AtMost, [&] { return std::pair<double, std::optional<double>>{fn(), {}}; });
  }

  void at_least(const std::string& id, const std::string& tag, double bound, const std::function<double()>& fn) {
    run(id, tag, bound, Comparison::AtLeast, [&] {
      const double v = fn();
      return std::pair<double, std::optional<double>>{v, v};
    });
  }

  /// |estimate - target| <= tol.
  void near(const std::string& id, const std::string& tag, double target, double tol,
            const std::function<double()>& fn) {
    run(id, tag, tol, Comparison::AtMost, [&] {
      const double v = fn();
      return std::pair<double, std::optional<double>>{std::abs(v - target), v};
    });
  }

 private:
  template <class F>
  void run(const std::string& id, const std::string& tag, double tol, Comparison cmp, F&& fn) {
    Check c{id, tag, 0.0, tol, cmp};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto [norm, est] = fn();
      c.norm = norm;
      c.estimate = est;
      c.pass = std::isfinite(norm) && (cmp == Comparison::AtMost ? norm <= tol : norm >= tol);
    } catch (const std::exception&) {
      c.norm = std::numeric_limits<double>::infinity();
      c.pass = false;
    }
    c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!std::isfinite(c.norm)) c.norm = std::numeric_limits<double>::max();
    report_.checks.push_back(std::move(c));
  }

  SuiteReport& report_;
};

inline Rng suite_rng(const Config& cfg, int salt) {
  std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(salt)};
  return Rng(seq);
}

using IMat5 = Eigen::Matrix<int, 5, 5>;

inline IMat5 embed_int(const IntAlgebraElement& x) {
  IMat5 m = IMat5::Zero();
  m.block<4, 1>(1, 0) = x.v;
  m.block<4, 4>(1, 1) = x.w;
  return m;
}

}  // namespace detail

// ---------------------------------------------------------------- suites

inline SuiteReport algebra_suite(const Config& cfg) {
  SuiteReport r{"algebra", cfg.seed};
  detail::Recorder rec(r);
  for (int a = 0; a < basis::kSize; ++a)
    for (int b = a + 1; b < basis::kSize; ++b) {
      rec.at_most("algebra.bracket." + basis::name(a) + "." + basis::name(b), "poincare-bracket-table", 0.0, [&] {
        const auto x = basis::generator<int>(a), y = basis::generator<int>(b);
        const detail::IMat5 X = detail::embed_int(x), Y = detail::embed_int(y);
        const detail::IMat5 diff = detail::embed_int(bracket(x, y)) - (X * Y - Y * X);
        return double(diff.cwiseAbs().maxCoeff());
      });
    }
  Rng rng = detail::suite_rng(cfg, 1);
  rec.at_most("algebra.jacobi", "jacobi-identity", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k < cfg.random_triples; ++k) {
      const auto x = random_algebra(rng), y = random_algebra(rng), z = random_algebra(rng);
      const auto j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
      worst = std::max(worst, max_abs(j));
    }
    return worst;
  });
  std::vector<AlgebraElement> xs;
  std::vector<std::pair<double, double>> st;
  for (int k = 0; k < cfg.exp_samples; ++k) {
    xs.push_back(random_algebra(rng));
    st.emplace_back(uniform(rng), uniform(rng));
  }
  rec.at_most("algebra.exp.lorentz", "exp-into-poincare-group", 1e-10, [&] {
    double worst = 0.0;
    for (const auto& x : xs) worst = std::max(worst, lorentz_defect(exp(x).L));
    return worst;
  });
  rec.at_most("algebra.exp.determinant", "exp-into-poincare-group", 1e-9, [&] {
    double worst = 0.0;
    for (const auto& x : xs) worst = std::max(worst, std::abs(exp(x).L.determinant() - 1.0));
    return worst;
  });
  rec.at_most("algebra.exp.one_parameter_subgroup", "one-parameter-subgroup", 1e-9, [&] {
    double worst = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const auto [s, t] = st[k];
      const PoincareElement lhs = exp((s + t) * xs[k]);
      const PoincareElement rhs = exp(s * xs[k]) * exp(t * xs[k]);
      worst = std::max({worst, max_abs(Vec4(lhs.a - rhs.a)), max_abs(Mat4(lhs.L - rhs.L))});
    }
    return worst;
  });
  rec.at_most("algebra.polarization.reconstruct", "rotation-boost-polarization", 1e-15, [&] {
    double worst = 0.0;
    for (const auto& x : xs) {
      const auto p = polarize(x);
      worst = std::max({worst, max_abs(Mat4(p.rotation.w + p.boost.w - x.w)), max_abs(p.rotation.w.row(0)),
                        max_abs(Mat4(p.boost.w - p.boost.w.transpose()))});
    }
    return worst;
  });
  r.sort();
  return r;
}

inline SuiteReport forms_suite(const Config& cfg) {
  SuiteReport r{"forms", cfg.seed};
  detail::Recorder rec(r);
  const int n = cfg.coarse_grid;
  for (int p : {2, 3}) {
    std::vector<studies::Refinement> studies_p;
    rec.at_most("forms.dislocation.p" + std::to_string(p) + ".sampled", "plumbing", 0.0, [&] {
      studies_p = studies::dislocation_of_displacements(p, n);
      return 0.0;
    });
    for (std::size_t i = 0; i < studies_p.size(); ++i) {
      const auto& s = studies_p[i];
      const std::string base = "forms.dislocation.g" + std::to_string(i + 1) + ".p" + std::to_string(p);
      rec.near(base + ".ratio", "nabla-squared-vanishes", 4.0, 0.5, [&] { return s.ratio(); });
      rec.at_most(base + ".fine_norm", "nabla-squared-vanishes", 1e-3, [&] { return s.fine; });
    }
  }
  rec.near("forms.incompatibility.p3.order", "bianchi-identity", 2.0, 0.3,
           [&] { return studies::incompatibility_of_dislocation(n).order(); });
  rec.at_most("forms.exterior.dd_zero", "exterior-derivative-squares-to-zero", 1e-10, [&] {
    const auto E = manufactured::sample_smooth_one_form(Lattice::cube(3, n));
    return max_norm(ext_d(ext_d(E)));
  });
  r.sort();
  return r;
}

inline SuiteReport cosserat_suite(const Config& cfg) {
  SuiteReport r{"cosserat", cfg.seed};
  detail::Recorder rec(r);
  for (int p = 1; p <= 3; ++p) {
    std::vector<studies::Refinement> res;
    rec.at_most("cosserat.manufactured.p" + std::to_string(p) + ".sampled", "plumbing", 0.0, [&] {
      res = studies::cosserat_manufactured(p, cfg.coarse_grid);
      return 0.0;
    });
    for (const auto& s : res) {
      const std::string kind = s.name.find("force") != std::string::npos ? "force" : "couple";
      rec.near("cosserat.manufactured." + kind + ".p" + std::to_string(p) + ".order", "cosserat-balance", 2.0, 0.3,
               [&] { return s.order(); });
    }
  }
  Rng rng = detail::suite_rng(cfg, 3);
  rec.at_most("cosserat.invariant.force", "poincare-invariant-construction", 1e-12, [&] {
    double worst = 0.0;
    for (int p = 1; p <= 4; ++p) {
      const auto lat = Lattice::cube(p, 3);
      const auto s = random_state(lat, rng);
      const auto phi = make_poincare_invariant(random_dynamical_state(lat, rng), s);
      worst = std::max(worst, poincare_invariance_residual(phi, s).force);
    }
    return worst;
  });
  rec.at_most("cosserat.invariant.couple", "poincare-invariant-construction", 1e-12, [&] {
    double worst = 0.0;
    for (int p = 1; p <= 4; ++p) {
      const auto lat = Lattice::cube(p, 3);
      const auto s = random_state(lat, rng);
      const auto phi = make_poincare_invariant(random_dynamical_state(lat, rng), s);
      worst = std::max(worst, poincare_invariance_residual(phi, s).couple);
    }
    return worst;
  });
  rec.at_most("cosserat.virtual_work.lagrangian_eulerian", "virtual-work-pictures", 1e-12, [&] {
    double worst = 0.0;
    for (int p = 1; p <= 4; ++p) {
      const auto lat = Lattice::cube(p, 3);
      const auto s = random_state(lat, rng);
      const auto phi = random_dynamical_state(lat, rng);
      const auto ds = random_eulerian_variation(lat, rng);
      const auto we = virtual_work_density(phi, s, ds);
      const auto wl = virtual_work_density(phi, s, to_lagrangian(ds, s));
      worst = std::max(worst, max_norm(we - wl));
    }
    return worst;
  });
  r.sort();
  return r;
}

namespace detail {

inline dirac::PlaneWaveState random_wave(Rng& rng, const Config& cfg) {
  std::normal_distribution<double> n(0.0, 0.8);
  const double p1 = n(rng), p2 = n(rng), p3 = n(rng);
  const Vec4 p(std::sqrt(cfg.kappa * cfg.kappa + p1 * p1 + p2 * p2 + p3 * p3), p1, p2, p3);
  const int spin = int(rng() % 2);
  const int sign = rng() % 2 ? 1 : -1;
  auto w = dirac::make_plane_wave(p, cfg.kappa, spin, sign, cfg.units);
  const double re = n(rng), im = n(rng);
  w.w *= dirac::Complex(re, im);
  return w;
}

inline std::vector<Vec4> random_events(Rng& rng, int count) {
  std::vector<Vec4> out;
  for (int k = 0; k < count; ++k) out.push_back(random_vec4(rng, 2.0));
  return out;
}

}  // namespace detail

inline SuiteReport dirac_suite(const Config& cfg) {
  using namespace dirac;
  SuiteReport r{"dirac", cfg.seed};
  detail::Recorder rec(r);
  Rng rng = detail::suite_rng(cfg, 4);
  std::vector<SpinorField> singles, pairs;
  std::vector<Vec4> events;
  for (int k = 0; k < cfg.random_states; ++k) {
    singles.emplace_back(detail::random_wave(rng, cfg));
    pairs.emplace_back(std::vector<PlaneWaveState>{detail::random_wave(rng, cfg), detail::random_wave(rng, cfg)});
  }
  events = detail::random_events(rng, cfg.sample_points);
  const double c2 = cfg.units.c * cfg.units.c;

  rec.at_most("dirac.clifford", "clifford-relations", 1e-14, [] { return gammas().clifford_defect(); });
  rec.at_most("dirac.hermiticity", "gamma-hermiticity", 1e-14, [] { return gammas().hermiticity_defect(); });
  rec.at_most("dirac.plane_wave.residual", "dirac-equation", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& f : singles)
      for (const Vec4& x : events) worst = std::max(worst, dirac_residual(f, x).max());
    return worst;
  });
  auto over_all = [&](auto&& fn) {
    double worst = 0.0;
    for (const auto* set : {&singles, &pairs})
      for (const auto& f : *set)
        for (int k = 0; k < 4; ++k) worst = std::max(worst, fn(f, events[k % events.size()]));
    return worst;
  };
  rec.at_most("dirac.constraints.normalization", "dirac-velocity-normalization", 1e-10, [&] {
    return over_all([&](const SpinorField& f, const Vec4& x) {
      const auto dv = density_velocity(current_j(f, x), cfg.units);
      return std::abs(minkowski_inner(dv.u, dv.u) - c2) / c2;
    });
  });
  rec.at_most("dirac.constraints.frenkel", "dirac-frenkel-constraint", 1e-10, [&] {
    return over_all([&](const SpinorField& f, const Vec4& x) {
      const auto st = spin_tensor(f, x);
      const auto dv = density_velocity(current_j(f, x), cfg.units);
      return max_abs(Vec4(st.S.transpose() * lower(dv.u)));
    });
  });
  rec.at_most("dirac.spin.reduced_form", "spin-tensor-reduced-form", 1e-12, [&] {
    return over_all([&](const SpinorField& f, const Vec4& x) { return spin_tensor(f, x).reduced_form_defect; });
  });
  rec.at_most("dirac.energy_momentum.antisymmetric_part", "energy-momentum-antisymmetric-part", 1e-12, [&] {
    return over_all([&](const SpinorField& f, const Vec4& x) {
      const Mat4 Tl = eta() * energy_momentum(f, x);
      return max_abs(Mat4(energy_momentum_antisym(f, x) - 0.5 * (Tl - Tl.transpose())));
    });
  });
  const SpinorField& two = pairs.front();
  rec.at_most("dirac.conservation.current", "dirac-conservation-laws", 1e-10,
              [&] { return conservation_report(two, events).current; });
  rec.at_most("dirac.conservation.energy_momentum", "dirac-conservation-laws", 1e-10,
              [&] { return conservation_report(two, events).energy; });
  rec.at_most("dirac.conservation.angular_momentum", "dirac-conservation-laws", 1e-10,
              [&] { return conservation_report(two, events).spin; });
  rec.at_most("dirac.conservation.single_wave", "dirac-conservation-laws", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& f : singles) worst = std::max(worst, conservation_report(f, events).max());
    return worst;
  });
  rec.at_most("dirac.takabayasi.identity", "takabayasi-identity", 1e-10, [&] {
    return over_all([&](const SpinorField& f, const Vec4& x) {
      const auto t = takabayasi(f, x);
      return std::abs(t.omega * t.omega + t.omega_hat * t.omega_hat - t.rho * t.rho) / std::max(1.0, t.rho * t.rho);
    });
  });
  rec.at_most("dirac.takabayasi.duality", "spin-duality", 1e-12, [&] {
    return over_all([&](const SpinorField& f, const Vec4& x) {
      const auto t = takabayasi(f, x);
      // the roundtrip multiplies any residual u.S by (|u|/c)^2
      const double gain = std::pow(t.u.cwiseAbs().sum() / cfg.units.c, 2);
      return max_abs(Mat4(dual_of(t.u, t.S_hat) - t.S_low)) / (std::max(1.0, max_abs(t.S_low)) * std::max(1.0, gain));
    });
  });
  r.sort();
  return r;
}

inline SuiteReport weyssenhoff_suite(const Config& cfg) {
  using namespace weyssenhoff;
  SuiteReport r{"weyssenhoff", cfg.seed};
  detail::Recorder rec(r);
  Rng rng = detail::suite_rng(cfg, 5);
  const Units un = cfg.units;
  const double c2 = un.c * un.c;
  std::vector<WeyssenhoffElement> elements;
  std::vector<double> rho0s;
  std::vector<Vec4> accels;
  for (int k = 0; k < 100; ++k) {
    const double rho0 = uniform(rng, 0.2, 2.0);
    const Vec4 pi(0, uniform(rng), uniform(rng), uniform(rng));
    std::array<double, 6> spin{0, 0, 0, uniform(rng), uniform(rng), uniform(rng)};
    elements.push_back(boosted_element(random_lorentz(rng), rho0, pi, spin, un));
    rho0s.push_back(rho0);
    Vec4 a = random_vec4(rng);
    accels.push_back(a - minkowski_inner(elements.back().u, a) / c2 * elements.back().u);
  }
  rec.at_most("weyssenhoff.stress.trace", "weyssenhoff-trace-identity", 1e-12, [&] {
    double worst = 0.0;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      const auto t = stress_tensors(elements[k]);
      worst = std::max(worst, std::abs(t.trace - rho0s[k] * c2) / std::max(1.0, max_abs(t.T)));
    }
    return worst;
  });
  rec.at_most("weyssenhoff.stress.rest_frame_layout", "weyssenhoff-rest-frame-stress", 1e-12, [&] {
    WeyssenhoffElement e;
    e.u = Vec4(un.c, 0, 0, 0);
    e.g = Vec4(1.5 * un.c, 0.4, -0.1, 0.7);
    Mat4 expect = Mat4::Zero();
    expect(0, 0) = 1.5 * c2;
    for (int j = 1; j < 4; ++j) expect(0, j) = un.c * e.g[j];
    return max_abs(Mat4(stress_tensors(e).T - expect));
  });
  rec.at_most("weyssenhoff.stress.antisymmetric_part", "weyssenhoff-transverse-stress", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& e : elements) {
      const auto m = split_momentum(e.g, e.u, un);
      const Vec4 pl = lower(m.pi), ul = lower(e.u);
      const Mat4 expect = 0.5 * (pl * ul.transpose() - ul * pl.transpose());
      worst = std::max(worst, max_abs(Mat4(stress_tensors(e).antisym - expect)) / std::max(1.0, max_abs(e.g) * max_abs(e.u)));
    }
    return worst;
  });
  rec.at_most("weyssenhoff.momentum.split_roundtrip", "weyssenhoff-momentum-split", 1e-12, [&] {
    double worst = 0.0;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      const auto& e = elements[k];
      const Vec4 g = momentum_from_state(rho0s[k], e.u, e.s, accels[k], un);
      const auto m = split_momentum(g, e.u, un);
      const double scale = std::max(1.0, max_abs(g) * max_abs(e.u));
      worst = std::max({worst, std::abs(m.rho0 - rho0s[k]) / scale,
                        max_abs(Vec4(m.pi - transverse_momentum(e.u, e.s, accels[k], un))) / scale});
    }
    return worst;
  });

  const auto generic = initial_element(cfg);
  Trajectory coarse, fine;
  rec.at_most("weyssenhoff.worldline.integrated", "plumbing", 0.0, [&] {
    coarse = integrate_worldline(generic, cfg.steps, cfg.dtau, un, cfg.worldline);
    fine = integrate_worldline(generic, 2 * cfg.steps, 0.5 * cfg.dtau, un, cfg.worldline);
    return 0.0;
  });
  rec.at_least("weyssenhoff.worldline.drift_order.normalization", "worldline-constraint-drift", 3.7, [&] {
    return manufactured::convergence_order(coarse.diagnostics.max_u2, fine.diagnostics.max_u2);
  });
  rec.at_least("weyssenhoff.worldline.drift_order.frenkel", "worldline-constraint-drift", 3.7, [&] {
    return manufactured::convergence_order(coarse.diagnostics.max_su, fine.diagnostics.max_su);
  });
  rec.at_most("weyssenhoff.worldline.spinless_straight", "free-dust-worldline", 1e-10, [&] {
    WeyssenhoffElement e;
    e.u = un.c * boost(1, 0.5).col(0);
    e.g = lower(1.3 * e.u);
    const auto tr = integrate_worldline(e, 1000, cfg.dtau, un);
    double worst = 0.0;
    for (const auto& rec_ : tr.records)
      worst = std::max({worst, max_abs(Vec4(rec_.u - e.u)), max_abs(Vec4(rec_.x - rec_.tau * e.u))});
    return worst;
  });
  rec.at_most("weyssenhoff.worldline.stationary_spin", "stationary-spinning-worldline", 1e-10, [&] {
    const auto e = boosted_element(boost(2, 0.3) * rotation(1, 0.4), 1.0, Vec4::Zero(), {0, 0, 0, 1.5, 0, 0}, un);
    const auto tr = integrate_worldline(e, 1000, cfg.dtau, un);
    return tr.diagnostics.max_velocity_change;
  });
  r.sort();
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "forms", "cosserat", "dirac", "weyssenhoff", "all"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const Config& cfg) {
  if (name == "algebra") return algebra_suite(cfg);
  if (name == "forms") return forms_suite(cfg);
  if (name == "cosserat") return cosserat_suite(cfg);
  if (name == "dirac") return dirac_suite(cfg);
  if (name == "weyssenhoff") return weyssenhoff_suite(cfg);
  if (name == "all") {
    SuiteReport all{"all", cfg.seed};
    for (const auto& n : suite_names())
      if (n != "all") all.append(run_suite(n, cfg));
    all.sort();
    return all;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace cosserat::suites
