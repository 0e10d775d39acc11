#pragma once

// Experiment suites run by the command-line tool. Each suite returns an
// ExperimentReport holding its checks, convergence fits and CSV tables.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "scaledgauge/config.hpp"
#include "scaledgauge/convergence.hpp"
#include "scaledgauge/field_calculus.hpp"
#include "scaledgauge/fixtures.hpp"
#include "scaledgauge/gauge_field.hpp"
#include "scaledgauge/gauge_theory.hpp"
#include "scaledgauge/lattice.hpp"
#include "scaledgauge/matrix.hpp"
#include "scaledgauge/random.hpp"
#include "scaledgauge/report.hpp"
#include "scaledgauge/scaled_hilbert.hpp"
#include "scaledgauge/scaled_numbers.hpp"

namespace scaledgauge {

namespace detail {

inline std::string fmt(double v) { return format_double(v); }
inline std::string fmt(std::size_t v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }

inline std::string site_label(const Site& s, int dims) {
  std::string out;
  for (int mu = 0; mu < dims; ++mu) {
    if (mu) out += ' ';
    out += std::to_string(s[mu]);
  }
  return out;
}

inline std::string step_label(const std::vector<Step>& steps) {
  std::string out;
  for (const Step& st : steps) {
    out += std::to_string(st.axis);
    out += st.orientation > 0 ? '+' : '-';
  }
  return out;
}

inline SmoothFixtureSpec at_spacing(const SmoothFixtureSpec& base, double delta) {
  SmoothFixtureSpec s = base;
  s.spacing = delta;
  return s;
}

inline double max_diff(const MultipletField& a, const MultipletField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

inline FitRecord add_fit(ExperimentReport& rep, const std::string& name, const std::vector<double>& h,
                         const std::vector<double>& err) {
  FitRecord f{name, fit_loglog(h, err)};
  rep.fits.push_back(f);
  return f;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline ExperimentReport experiment_axioms(const ExperimentConfig& cfg) {
  using detail::fmt;
  ExperimentReport rep;
  rep.name = "axioms";

  auto& residuals = rep.table("axiom_residuals", {"scale", "axiom", "samples", "max_residual", "tolerance", "pass"});
  for (std::size_t k = 0; k < cfg.scales.size(); ++k) {
    const double r = cfg.scales[k];
    const ScaledStructure s{ScaleFactor(r)};
    const AxiomReport ar = axiom_suite(s, cfg.samples, derive_seed(cfg.seed, 100 + k), cfg.tol.axiom);
    for (const auto& a : ar.axioms) {
      residuals.add_row({fmt(r), a.name, fmt(cfg.samples), fmt(a.max_residual), fmt(cfg.tol.axiom), a.passed ? "1" : "0"});
    }
    rep.check("axioms worst residual r=" + fmt(r), ar.worst(), Relation::kAtMost, cfg.tol.axiom);
  }

  // element_of(f^r(z^r)) = r f(z) for exp and random polynomials.
  auto& analytic = rep.table("analytic_scaling", {"scale", "function", "samples", "max_residual"});
  for (std::size_t k = 0; k < cfg.scales.size(); ++k) {
    const double r = cfg.scales[k];
    const ScaledStructure s{ScaleFactor(r)};
    Rng rng(derive_seed(cfg.seed, 150 + k));
    const auto exp_c = exp_coefficients();
    double exp_worst = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const ComplexValue z(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
      const ComplexValue got = element_of(eval_analytic(exp_c, StructureValue{z, s.scale}, s)).canonical;
      const ComplexValue want = r * std::exp(z);
      exp_worst = std::max(exp_worst, std::abs(got - want) / std::abs(want));
    }
    double poly_worst = 0.0;
    for (int p = 0; p < cfg.polynomials; ++p) {
      const int degree = rng.index(cfg.polynomial_degree + 1);
      std::vector<ComplexValue> coeffs;
      for (int c = 0; c <= degree; ++c) coeffs.push_back(rng.complex_normal());
      const ComplexValue z(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
      const ComplexValue got = element_of(eval_analytic(coeffs, StructureValue{z, s.scale}, s)).canonical;
      const ComplexValue want = r * detail::horner(coeffs, z);
      // relative to r * sum |c_k| |z|^k, which bounds cancellation in f
      poly_worst = std::max(poly_worst, std::abs(got - want) / (r * detail::abs_series(coeffs, std::abs(z))));
    }
    analytic.add_row({fmt(r), "exp", fmt(cfg.samples), fmt(exp_worst)});
    analytic.add_row({fmt(r), "polynomial", fmt(cfg.polynomials), fmt(poly_worst)});
    rep.check("analytic exp r=" + fmt(r), exp_worst, Relation::kAtMost, cfg.tol.analytic);
    rep.check("analytic polynomial r=" + fmt(r), poly_worst, Relation::kAtMost, cfg.tol.analytic);
  }

  // r = 1 collapses to plain complex arithmetic, bit for bit.
  {
    const ScaledStructure one = reference_structure();
    Rng rng(derive_seed(cfg.seed, 199));
    std::size_t mismatches = 0;
    for (int i = 0; i < cfg.samples; ++i) {
      const ComplexValue u = rng.complex_log_magnitude(1e-3, 1e3);
      const ComplexValue v = rng.complex_log_magnitude(1e-3, 1e3);
      const BaseElement a{u}, b{v};
      mismatches += add_s(a, b, one).canonical != u + v;
      mismatches += sub_s(a, b, one).canonical != u - v;
      mismatches += mul_s(a, b, one).canonical != u * v;
      mismatches += div_s(a, b, one).canonical != u / v;
      mismatches += conj_s(a, one).canonical != std::conj(u);
    }
    mismatches += one_s(one).canonical != ComplexValue(1.0);
    rep.check("collapse r=1 bitwise mismatches", static_cast<double>(mismatches), Relation::kEqual, 0.0);
    auto& collapse = rep.table("collapse", {"samples", "mismatches"});
    collapse.add_row({fmt(cfg.samples), fmt(mismatches)});
  }
  return rep;
}

// ---------------------------------------------------------------------------

inline ExperimentReport experiment_transport(const ExperimentConfig& cfg) {
  using detail::fmt;
  ExperimentReport rep;
  rep.name = "transport";
  const Lattice lattice(cfg.lattice);
  const RealGaugeField a = cfg.make_field();
  const int dims = lattice.dims();

  // Dual form on random walks.
  {
    auto& paths = rep.table("transport_paths", {"path", "start", "steps", "exp_sum", "product", "rel_diff"});
    Rng rng(derive_seed(cfg.seed, 200));
    int total_extent = 0;
    for (int mu = 0; mu < dims; ++mu) total_extent += lattice.extent(mu);
    double worst = 0.0;
    for (int p = 0; p < cfg.random_paths; ++p) {
      LatticePath path{lattice.site(static_cast<std::size_t>(rng.index(static_cast<int>(lattice.volume())))), {}};
      const int length = 1 + rng.index(2 * total_extent);
      Site at = path.start;
      for (int k = 0; k < length; ++k) {
        Step st{rng.index(dims), rng.index(2) == 0 ? +1 : -1};
        if (lattice.boundary() == Boundary::kClamped) {
          const int c = at[st.axis] + st.orientation;
          if (c < 0 || c >= lattice.extent(st.axis)) st = st.reversed();
        }
        path.steps.push_back(st);
        at = neighbor(at, st, lattice);
      }
      const double e = path_transport(a, path).value;
      const double prod = path_transport_product(a, path);
      const double rel = std::abs(prod - e) / e;
      worst = std::max(worst, rel);
      paths.add_row({fmt(p), fmt(lattice.index(path.start)), fmt(path.steps.size()), fmt(e), fmt(prod), fmt(rel)});
    }
    rep.check("dual form max relative difference", worst, Relation::kAtMost, cfg.tol.transport);
  }

  // Reverse-link inversion on every link.
  {
    std::size_t links = 0, inexact = 0;
    double value_product = 0.0;
    for (std::size_t i = 0; i < lattice.volume(); ++i) {
      const Site s = lattice.site(i);
      for (int mu = 0; mu < dims; ++mu) {
        if (lattice.boundary() == Boundary::kClamped && s[mu] + 1 >= lattice.extent(mu)) continue;
        const Site next = neighbor(s, forward(mu), lattice);
        const LinkFactor fwd = link_factor(a, s, forward(mu));
        const LinkFactor rev = link_factor(a, next, backward(mu));
        ++links;
        inexact += (fwd * rev).value() != 1.0;
        value_product = std::max(value_product, std::abs(fwd.value() * rev.value() - 1.0));
      }
    }
    auto& inv = rep.table("link_inversion", {"links", "inexact_compositions", "max_value_product_deviation"});
    inv.add_row({fmt(links), fmt(inexact), fmt(value_product)});
    rep.check("forward x reverse link inexact count", static_cast<double>(inexact), Relation::kEqual, 0.0);
    rep.check("forward x reverse link value product deviation", value_product, Relation::kAtMost, cfg.tol.exact);
  }

  // First-order link form 1 + A dx.
  {
    auto& first = rep.table("link_first_order", {"delta", "max_error"});
    std::vector<double> h, err;
    for (double d : cfg.delta_series) {
      double worst = 0.0;
      for (double comp : a.components()) worst = std::max(worst, std::abs(std::exp(comp * d) - (1.0 + comp * d)));
      if (worst == 0.0) worst = 1e-300;
      first.add_row({fmt(d), fmt(worst)});
      h.push_back(d);
      err.push_back(worst);
    }
    const FitRecord f = detail::add_fit(rep, "link first-order error", h, err);
    rep.check("link first-order convergence slope", f.fit.slope, Relation::kAtLeast, cfg.tol.link_order);
  }

  // Continuous line integral of a gradient field against its closed form.
  {
    auto potential = [](const Point& p) { return std::sin(p[0]) * std::cos(0.5 * p[1]) + 0.3 * p[0] * p[1]; };
    const ContinuousField grad = [](const Point& p) {
      Point g{};
      g[0] = std::cos(p[0]) * std::cos(0.5 * p[1]) + 0.3 * p[1];
      g[1] = -0.5 * std::sin(p[0]) * std::sin(0.5 * p[1]) + 0.3 * p[0];
      return g;
    };
    const Point from{0.1, 0.2, 0.0, 0.0};
    const Point to{1.3, -0.7, 0.0, 0.0};
    const ParamPath straight = straight_path(from, to, 2);
    const ParamPath curved{
        2,
        [from, to](double s) {
          return Point{from[0] + s * (to[0] - from[0]) + 0.4 * std::sin(std::numbers::pi * s),
                       from[1] + s * (to[1] - from[1]) + 0.3 * std::sin(std::numbers::pi * s), 0.0, 0.0};
        },
        [from, to](double s) {
          return Point{to[0] - from[0] + 0.4 * std::numbers::pi * std::cos(std::numbers::pi * s),
                       to[1] - from[1] + 0.3 * std::numbers::pi * std::cos(std::numbers::pi * s), 0.0, 0.0};
        }};
    const double closed = std::exp(potential(to) - potential(from));
    auto& li = rep.table("line_integral", {"path", "n_quad", "transport", "closed_form", "rel_error"});
    double worst_fine = 0.0;
    for (const auto& [label, path] : {std::pair<const char*, const ParamPath*>{"straight", &straight},
                                      std::pair<const char*, const ParamPath*>{"curved", &curved}}) {
      std::vector<double> h, err;
      for (int n : {4, 8, 16, 32, 256}) {
        const double t = line_integral_transport(grad, *path, n);
        const double rel = std::abs(t - closed) / closed;
        li.add_row({label, fmt(n), fmt(t), fmt(closed), fmt(rel)});
        if (n == 256) {
          worst_fine = std::max(worst_fine, rel);
        } else {
          h.push_back(1.0 / n);
          err.push_back(std::max(rel, 1e-300));
        }
      }
      const FitRecord f = detail::add_fit(rep, std::string("simpson error ") + label, h, err);
      rep.check(std::string("simpson order ") + label, f.fit.slope, Relation::kAtLeast, cfg.tol.quadrature_order);
    }
    rep.check("line integral n_quad=256 relative error", worst_fine, Relation::kAtMost, cfg.tol.quadrature);
  }
  return rep;
}

// ---------------------------------------------------------------------------

/// Far corner of the staircase demonstration: at most three steps on each of
/// the first two axes, within the minimal-image range on periodic lattices.
inline Site staircase_target(const Lattice& lattice) {
  Site t;
  for (int mu = 0; mu < std::min(2, lattice.dims()); ++mu) {
    const int reach = lattice.boundary() == Boundary::kPeriodic ? lattice.extent(mu) / 2 : lattice.extent(mu) - 1;
    t[mu] = std::min(reach, 3);
  }
  return t;
}

inline ExperimentReport experiment_integrability(const ExperimentConfig& cfg) {
  using detail::fmt;
  ExperimentReport rep;
  rep.name = "integrability";
  const Lattice lattice(cfg.lattice);
  const RealGaugeField a = cfg.make_field();
  const int dims = lattice.dims();

  {
    auto& plaq = rep.table("plaquettes", {"site", "mu", "nu", "curl", "loop", "exp_curl", "rel_residual"});
    double worst = 0.0;
    const double dx2 = lattice.spacing() * lattice.spacing();
    for (const Plaquette& q : enumerate_plaquettes(lattice)) {
      const double curl = plaquette_curl(a, q);
      const double loop = plaquette_loop_factor(a, q).value();
      const double expected = std::exp(dx2 * curl);
      const double rel = std::abs(loop - expected) / expected;
      worst = std::max(worst, rel);
      plaq.add_row({fmt(lattice.index(q.corner)), fmt(q.mu), fmt(q.nu), fmt(curl), fmt(loop), fmt(expected), fmt(rel)});
    }
    rep.check("loop = exp(dx^2 curl) max relative residual", worst, Relation::kAtMost, cfg.tol.loop);
  }

  const IntegrabilityReport ir = is_integrable(a, cfg.tol.integrability);
  {
    auto& t = rep.table("integrability",
                        {"plaquettes", "integrable", "worst_deviation", "worst_site", "worst_mu", "worst_nu", "expect_nonintegrable"});
    const Plaquette w = ir.worst_plaquette.value_or(Plaquette{});
    t.add_row({fmt(ir.plaquettes), ir.integrable ? "1" : "0", fmt(ir.worst_deviation),
               ir.worst_plaquette ? detail::site_label(w.corner, dims) : "", ir.worst_plaquette ? fmt(w.mu) : "",
               ir.worst_plaquette ? fmt(w.nu) : "", cfg.expect_nonintegrable ? "1" : "0"});
    if (cfg.expect_nonintegrable) {
      rep.check("worst loop deviation (nonintegrable expected)", ir.worst_deviation, Relation::kGreater, cfg.tol.integrability);
    } else {
      rep.check("worst loop deviation", ir.worst_deviation, Relation::kAtMost, cfg.tol.integrability);
    }
  }

  if (dims >= 2) {
    const Site from;
    const Site to = staircase_target(lattice);
    const std::vector<LatticePath> paths = enumerate_staircase_paths(from, to, lattice);
    auto& st = rep.table("staircase_paths", {"path", "steps", "transport"});
    for (std::size_t p = 0; p < paths.size(); ++p) {
      st.add_row({fmt(p), detail::step_label(paths[p].steps), fmt(path_transport(a, paths[p]).value)});
    }
    const double spread = transport_spread(a, paths);
    if (cfg.expect_nonintegrable) {
      rep.check("staircase transport spread (nonintegrable expected)", spread, Relation::kGreater, cfg.tol.nonintegrable_spread);
    } else {
      rep.check("staircase transport spread", spread, Relation::kAtMost, cfg.tol.path_spread);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

inline ExperimentReport experiment_derivative_convergence(const ExperimentConfig& cfg) {
  using detail::fmt;
  ExperimentReport rep;
  rep.name = "derivative-convergence";
  auto& table = rep.table("derivative_convergence",
                          {"delta", "extent", "cov_first_residual", "second_order_remainder", "plane_wave_error"});
  std::vector<double> h, e_first, e_rem, e_plane;
  std::size_t collapse_mismatch = 0;
  for (double d : cfg.delta_series) {
    const Lattice lattice = smooth_lattice(detail::at_spacing(cfg.couplings, d));
    const RealGaugeField a = smooth_gauge_field(lattice, 0.4, 0.3, 1.0, 0.0);
    const ComplexLatticeField phi = smooth_scalar(lattice);
    const std::vector<double> k{detail::base_wavenumber(lattice, 0), 2.0 * detail::base_wavenumber(lattice, 1)};
    const ComplexLatticeField wave = plane_wave(lattice, k);
    const RealGaugeField zero(lattice);
    double first = 0.0, rem = 0.0, plane = 0.0;
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      const DerivativeResult cov = covariant_derivative(phi, a, mu);
      const DerivativeResult fo = first_order_covariant(phi, a, mu);
      const DerivativeResult plain = plain_derivative(phi, mu);
      const DerivativeResult wave_d = plain_derivative(wave, mu);
      const DerivativeResult cov_zero = covariant_derivative(phi, zero, mu);
      for (std::size_t i = 0; i < lattice.volume(); ++i) {
        const double am = a.at(i, mu);
        const ComplexValue next = phi.at(neighbor(lattice.site(i), forward(mu), lattice));
        first = std::max(first, std::abs(cov[i] - fo[i]));
        const ComplexValue predicted = d * (am * plain[i] + 0.5 * am * am * next);
        rem = std::max(rem, std::abs(cov[i] - fo[i] - predicted));
        plane = std::max(plane, std::abs(wave_d[i] - ComplexValue(0.0, k[static_cast<std::size_t>(mu)]) * wave[i]));
        collapse_mismatch += cov_zero[i] != plain[i];
      }
    }
    table.add_row({fmt(d), fmt(lattice.extent(0)), fmt(first), fmt(rem), fmt(plane)});
    h.push_back(d);
    e_first.push_back(first);
    e_rem.push_back(rem);
    e_plane.push_back(plane);
  }
  const FitRecord f1 = detail::add_fit(rep, "covariant - first-order", h, e_first);
  const FitRecord f2 = detail::add_fit(rep, "second-order remainder", h, e_rem);
  const FitRecord f3 = detail::add_fit(rep, "plane wave derivative error", h, e_plane);
  rep.check("covariant vs first-order slope", f1.fit.slope, Relation::kAtLeast, cfg.tol.slope);
  rep.check("second-order remainder slope", f2.fit.slope, Relation::kAtLeast, cfg.tol.link_order);
  rep.check("plane wave derivative slope", f3.fit.slope, Relation::kAtLeast, cfg.tol.slope);
  rep.check("A = 0 covariant vs plain mismatches", static_cast<double>(collapse_mismatch), Relation::kEqual, 0.0);
  return rep;
}

// ---------------------------------------------------------------------------

inline ExperimentReport experiment_hilbert(const ExperimentConfig& cfg) {
  using detail::fmt;
  ExperimentReport rep;
  rep.name = "hilbert";
  const auto n = static_cast<std::size_t>(cfg.hilbert_dim);
  Rng rng(derive_seed(cfg.seed, 500));

  auto random_vector = [&rng](std::size_t dim) {
    HilbertVector v(dim);
    for (auto& c : v) c = rng.complex_normal();
    return v;
  };
  auto norm = [](const HilbertVector& v) { return std::sqrt(std::abs(detail::inner(v, v))); };

  double correspondence = 0.0, reading = 0.0, unit_norm = 0.0, conj_sym = 0.0, linear = 0.0, scalar = 0.0,
         three_step = 0.0;
  std::size_t equivalence_disagreements = 0, positivity_violations = 0, reduction_mismatches = 0;
  for (int k = 0; k < cfg.samples; ++k) {
    const double r = std::pow(10.0, rng.uniform(-3.0, 3.0));
    const ScaledHilbertStructure s = make_hilbert_structure(r, random_unitary(n, rng));
    const HilbertVector psi = random_vector(n);
    const HilbertVector phi = random_vector(n);
    const HilbertVector chi = random_vector(n);
    const double scale_ab = norm(psi) * norm(phi);

    const HilbertVector cpsi = vector_correspondence(psi, s);
    const HilbertVector cphi = vector_correspondence(phi, s);
    const ComplexValue plain = detail::inner(psi, phi);
    correspondence = std::max(correspondence, std::abs(detail::inner(cpsi, cphi) / (r * r) - plain) / scale_ab);
    reading = std::max(reading, std::abs(scaled_inner(cpsi, cphi, s).value - plain) / scale_ab);

    // Norm preservation: |psi| = 1 iff the scaled norm of r V psi is the
    // scaled structure's unit.
    HilbertVector unit = psi;
    const double len = norm(psi);
    for (auto& c : unit) c /= len;
    HilbertVector stretched = unit;
    for (auto& c : stretched) c *= 1.5;
    const double one = one_s(s.numbers()).canonical.real();
    const ComplexValue unit_sq = element_of(scaled_inner(vector_correspondence(unit, s), vector_correspondence(unit, s), s)).canonical;
    const ComplexValue stretched_sq =
        element_of(scaled_inner(vector_correspondence(stretched, s), vector_correspondence(stretched, s), s)).canonical;
    unit_norm = std::max(unit_norm, std::abs(unit_sq - one) / one);
    const bool unit_is_one = std::abs(unit_sq - one) <= cfg.tol.hilbert * one;
    const bool stretched_is_one = std::abs(stretched_sq - one) <= cfg.tol.hilbert * one;
    equivalence_disagreements += !unit_is_one;
    equivalence_disagreements += stretched_is_one;

    // Inner-product axioms in the scaled structure, on base-frame vectors.
    const StructureValue ab = scaled_inner(cpsi, cphi, s);
    const StructureValue ba = scaled_inner(cphi, cpsi, s);
    conj_sym = std::max(conj_sym, std::abs(ab.value - std::conj(ba.value)) / scale_ab);
    const HilbertVector cchi = vector_correspondence(chi, s);
    const StructureValue lhs = scaled_inner(cpsi, scaled_add(cphi, cchi, s), s);
    const BaseElement rhs = add_s(element_of(ab), element_of(scaled_inner(cpsi, cchi, s)), s.numbers());
    linear = std::max(linear, std::abs(element_of(lhs).canonical - rhs.canonical) /
                                  (r * norm(psi) * (norm(phi) + norm(chi))));
    const StructureValue alpha{rng.complex_normal(), s.scale};
    const BaseElement via_vector = element_of(scaled_inner(cpsi, scaled_scalar_mul(alpha, cphi, s), s));
    const BaseElement via_number = mul_s(element_of(alpha), element_of(ab), s.numbers());
    scalar = std::max(scalar, std::abs(via_vector.canonical - via_number.canonical) /
                                  (std::abs(element_of(alpha).canonical) * scale_ab));
    const ComplexValue self = scaled_inner(cpsi, cpsi, s).value;
    positivity_violations += !(self.real() > 0.0) || std::abs(self.imag()) > cfg.tol.hilbert * self.real();

    // One-dimensional structure with V = 1 is the scaled number field.
    {
      const ScaledHilbertStructure line = make_hilbert_structure(r, ComplexMatrix::identity(1));
      const ComplexValue u = rng.complex_normal();
      const ComplexValue v = rng.complex_normal();
      const StructureValue via_hilbert = scaled_inner({u}, {v}, line);
      const StructureValue via_numbers =
          value_of(mul_s(conj_s(BaseElement{u}, line.numbers()), BaseElement{v}, line.numbers()), line.numbers());
      reduction_mismatches += via_hilbert.value != via_numbers.value;
    }

    const ThreeStepTransport tr = three_step_transport(psi, s);
    three_step = std::max(three_step, std::abs(norm(tr.final_vector()) / r - norm(psi)) / norm(psi));
  }

  auto& t = rep.table("hilbert_checks", {"check", "samples", "observed", "tolerance"});
  auto record = [&](const std::string& name, double observed, Relation rel, double tol) {
    t.add_row({name, fmt(cfg.samples), fmt(observed), fmt(tol)});
    rep.check(name, observed, rel, tol);
  };
  record("<rVpsi, rVphi>/r^2 = <psi, phi>", correspondence, Relation::kAtMost, cfg.tol.hilbert);
  record("scaled inner of correspondents reads <psi, phi>", reading, Relation::kAtMost, cfg.tol.hilbert);
  record("unit norm maps to the scaled unit", unit_norm, Relation::kAtMost, cfg.tol.hilbert);
  record("norm preservation equivalence disagreements", static_cast<double>(equivalence_disagreements), Relation::kEqual, 0.0);
  record("conjugate symmetry", conj_sym, Relation::kAtMost, cfg.tol.hilbert);
  record("additivity in the second argument", linear, Relation::kAtMost, cfg.tol.hilbert);
  record("scalar homogeneity", scalar, Relation::kAtMost, cfg.tol.hilbert);
  record("positive definiteness violations", static_cast<double>(positivity_violations), Relation::kEqual, 0.0);
  record("n=1 reduction mismatches", static_cast<double>(reduction_mismatches), Relation::kEqual, 0.0);
  record("three-step transport norm", three_step, Relation::kAtMost, cfg.tol.hilbert);
  return rep;
}

// ---------------------------------------------------------------------------

inline ExperimentReport experiment_gauge_abelian(const ExperimentConfig& cfg) {
  using detail::fmt;
  ExperimentReport rep;
  rep.name = "gauge-abelian";
  const std::size_t n_density = cfg.lagrangian == LagrangianKind::kDirac ? 4 : 1;
  auto& table = rep.table("abelian_covariance", {"delta", "extent", "first_order_residual", "exponential_residual",
                                                 "mode_difference", "density_change_first_order",
                                                 "density_change_exponential"});
  std::vector<double> h, e_first, e_modes;
  double exponential_worst = 0.0;
  std::size_t a_changed = 0, a_mass_changed = 0;
  for (std::size_t k = 0; k < cfg.delta_series.size(); ++k) {
    const double d = cfg.delta_series[k];
    const SmoothFixtureSpec spec = detail::at_spacing(cfg.couplings, d);
    const Lattice lattice = smooth_lattice(spec);
    const AbelianConfig theory = smooth_abelian_config(lattice, spec);
    const MultipletField psi = smooth_multiplet(lattice, 2);
    const GaugeTransformation t = smooth_transformation(lattice, PhaseProfile::kLocal, ThetaProfile::kZero);

    const CovarianceResiduals res = covariance_residuals_abelian(psi, theory, t);
    const AbelianTransformed tr = gauge_transform_abelian(psi, theory, t);
    a_changed += !(tr.cfg.a == theory.a);

    double modes = 0.0;
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      modes = std::max(modes, detail::max_diff(abelian_cov_derivative(psi, theory, mu, DerivativeMode::kExponential),
                                               abelian_cov_derivative(psi, theory, mu, DerivativeMode::kFirstOrder)));
    }

    const MultipletField psi_d = smooth_multiplet(lattice, n_density);
    const AbelianTransformed tr_d = gauge_transform_abelian(psi_d, theory, t);
    double change[2] = {0.0, 0.0};
    int slot = 0;
    for (DerivativeMode mode : {DerivativeMode::kFirstOrder, DerivativeMode::kExponential}) {
      const auto before = lagrangian_density(psi_d, theory, cfg.lagrangian, mode);
      const auto after = lagrangian_density(tr_d.psi, tr_d.cfg, cfg.lagrangian, mode);
      for (std::size_t i = 0; i < before.size(); ++i) {
        change[slot] = std::max(change[slot], std::abs(after[i].total - before[i].total));
        a_mass_changed += after[i].a_mass != before[i].a_mass;
      }
      if (k == 0 && mode == DerivativeMode::kFirstOrder) {
        auto& dens = rep.table("densities", {"site", "x0", "x1", "kinetic_re", "kinetic_im", "mass", "a_mass",
                                             "yang_mills", "total_re", "total_im"});
        for (std::size_t i = 0; i < before.size(); ++i) {
          const Site s = lattice.site(i);
          const auto& rec = before[i];
          dens.add_row({fmt(i), fmt(lattice.position(s, 0)), fmt(lattice.dims() > 1 ? lattice.position(s, 1) : 0.0),
                        fmt(rec.kinetic.real()), fmt(rec.kinetic.imag()), fmt(rec.mass), fmt(rec.a_mass),
                        fmt(rec.yang_mills), fmt(rec.total.real()), fmt(rec.total.imag())});
        }
      }
      ++slot;
    }

    if (k == 0) {
      const GaugeTransformation global = smooth_transformation(lattice, PhaseProfile::kGlobal, ThetaProfile::kZero);
      const CovarianceResiduals g = covariance_residuals_abelian(psi, theory, global);
      rep.check("global phase covariance, first-order", g.first_order, Relation::kAtMost, cfg.tol.exact);
      rep.check("global phase covariance, exponential", g.exponential, Relation::kAtMost, cfg.tol.exact);

      const FieldStrength before = field_strength(theory.gamma);
      const FieldStrength after = field_strength(tr.cfg.gamma);
      std::size_t antisym = 0;
      double invariance = 0.0;
      for (std::size_t i = 0; i < lattice.volume(); ++i)
        for (int mu = 0; mu < lattice.dims(); ++mu)
          for (int nu = 0; nu < lattice.dims(); ++nu) {
            antisym += before.at(i, mu, nu) != -before.at(i, nu, mu);
            invariance = std::max(invariance, std::abs(after.at(i, mu, nu) - before.at(i, mu, nu)));
          }
      rep.check("field strength antisymmetry mismatches", static_cast<double>(antisym), Relation::kEqual, 0.0);
      rep.check("field strength gauge invariance", invariance, Relation::kAtMost, cfg.tol.exact);
    }

    exponential_worst = std::max(exponential_worst, res.exponential);
    table.add_row({fmt(d), fmt(lattice.extent(0)), fmt(res.first_order), fmt(res.exponential), fmt(modes),
                   fmt(change[0]), fmt(change[1])});
    h.push_back(d);
    e_first.push_back(res.first_order);
    e_modes.push_back(modes);
  }
  const FitRecord f1 = detail::add_fit(rep, "first-order covariance residual", h, e_first);
  const FitRecord f2 = detail::add_fit(rep, "exponential vs first-order derivative", h, e_modes);
  rep.check("A' = A bitwise (mismatching fixtures)", static_cast<double>(a_changed), Relation::kEqual, 0.0);
  rep.check("A-mass term unchanged bitwise (mismatches)", static_cast<double>(a_mass_changed), Relation::kEqual, 0.0);
  rep.check("exponential covariance residual", exponential_worst, Relation::kAtMost, cfg.tol.exact);
  rep.check("first-order covariance slope", f1.fit.slope, Relation::kAtLeast, cfg.tol.slope);
  rep.check("derivative modes agree slope", f2.fit.slope, Relation::kAtLeast, cfg.tol.slope);
  return rep;
}

// ---------------------------------------------------------------------------

inline ExperimentReport experiment_gauge_su2(const ExperimentConfig& cfg) {
  using detail::fmt;
  ExperimentReport rep;
  rep.name = "gauge-su2";
  const auto& taus = pauli();
  const Complex i_unit(0.0, 1.0);

  {
    std::size_t mismatches = 0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const auto ju = static_cast<std::size_t>(j);
        const auto ku = static_cast<std::size_t>(k);
        const ComplexMatrix lhs = taus[ju] * taus[ku] - taus[ku] * taus[ju];
        ComplexMatrix rhs(2);
        for (int l = 0; l < 3; ++l) {
          const int eps = structure_constant(j, k, l);
          if (eps != 0) rhs = rhs + (2.0 * eps * i_unit) * taus[static_cast<std::size_t>(l)];
        }
        mismatches += !(lhs == rhs);
      }
    rep.check("Pauli commutation mismatches", static_cast<double>(mismatches), Relation::kEqual, 0.0);
  }

  {
    Rng rng(derive_seed(cfg.seed, 700));
    double series = 0.0, unitarity = 0.0, det = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
      const Vec3 theta{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
      const ComplexMatrix closed = su2_exponential(theta);
      const ComplexMatrix generator = Complex(0.0, -0.5) * dot_tau(theta);
      series = std::max(series, (closed - matrix_exponential_series(generator, 40)).max_abs());
      unitarity = std::max(unitarity, unitarity_defect(closed));
      det = std::max(det, std::abs(determinant2(closed) - 1.0));
    }
    auto& t = rep.table("su2_exponential", {"samples", "closed_vs_series", "unitarity_defect", "determinant_defect"});
    t.add_row({fmt(cfg.samples), fmt(series), fmt(unitarity), fmt(det)});
    rep.check("closed-form exponential vs series", series, Relation::kAtMost, cfg.tol.series);
    rep.check("random SU(2) unitarity defect", unitarity, Relation::kAtMost, cfg.tol.exact);
    rep.check("random SU(2) determinant defect", det, Relation::kAtMost, cfg.tol.exact);
  }

  auto& table = rep.table("su2_covariance", {"delta", "extent", "first_order_residual", "link_level_residual",
                                             "identity_component", "gamma_discrepancy", "mode_difference",
                                             "link_unitarity", "link_determinant"});
  std::vector<double> h, e_first, e_modes;
  double link_worst = 0.0, unitarity = 0.0, det = 0.0, series_worst = 0.0;
  for (std::size_t k = 0; k < cfg.delta_series.size(); ++k) {
    const double d = cfg.delta_series[k];
    const SmoothFixtureSpec spec = detail::at_spacing(cfg.couplings, d);
    const Lattice lattice = smooth_lattice(spec);
    const SU2Config theory = smooth_su2_config(lattice, spec);
    const MultipletField psi = smooth_multiplet(lattice, 2);
    const GaugeTransformation t = smooth_transformation(lattice, PhaseProfile::kLocal, ThetaProfile::kLocal);
    const SU2CovarianceResiduals res = covariance_residuals_su2(psi, theory, t);

    double u_defect = 0.0, d_defect = 0.0, series_link = 0.0;
    for (std::size_t i = 0; i < lattice.volume(); ++i) {
      for (int mu = 0; mu < lattice.dims(); ++mu) {
        const ComplexMatrix u = su2_link(theory, i, mu, false);
        const ComplexMatrix generator = Complex(0.0, -theory.g * d) * dot_tau(theory.omega_at(i, mu));
        const Complex phase_factor = std::polar(1.0, theory.base.g_i * theory.base.gamma.at(i, mu) * d);
        series_link = std::max(series_link, (u - phase_factor * matrix_exponential_series(generator, 12)).max_abs());
        u_defect = std::max(u_defect, unitarity_defect(u));
        const Complex phase = std::polar(1.0, theory.base.g_i * theory.base.gamma.at(i, mu) * d);
        d_defect = std::max(d_defect, std::abs(determinant2(u) / (phase * phase) - 1.0));
      }
    }
    double modes = 0.0;
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      modes = std::max(modes, detail::max_diff(su2_cov_derivative(psi, theory, mu, DerivativeMode::kExponential),
                                               su2_cov_derivative(psi, theory, mu, DerivativeMode::kFirstOrder)));
    }

    if (k == 0) {
      // Global Theta rotates Omega in the adjoint and keeps |Omega|.
      const GaugeTransformation global = smooth_transformation(lattice, PhaseProfile::kGlobal, ThetaProfile::kGlobal);
      const SU2Transformed g = gauge_transform_su2(psi, theory, global);
      double norm_change = 0.0;
      for (std::size_t s = 0; s < theory.omega.size(); ++s) {
        const Vec3& a = theory.omega[s];
        const Vec3& b = g.cfg.omega[s];
        const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        const double nb = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        norm_change = std::max(norm_change, std::abs(na - nb));
      }
      rep.check("global Theta preserves |Omega|", norm_change, Relation::kAtMost, cfg.tol.exact);

      // Theta = 0 is the Abelian transformation with Omega untouched.
      const GaugeTransformation abelian = smooth_transformation(lattice, PhaseProfile::kLocal, ThetaProfile::kZero);
      const SU2Transformed z = gauge_transform_su2(psi, theory, abelian);
      const AbelianTransformed ab = gauge_transform_abelian(psi, theory.base, abelian);
      std::size_t mismatch = 0;
      mismatch += !(z.psi == ab.psi);
      mismatch += !(z.cfg.base.gamma == ab.cfg.gamma);
      mismatch += z.cfg.omega != theory.omega;
      rep.check("Theta = 0 reduces to the Abelian law (mismatches)", static_cast<double>(mismatch), Relation::kEqual, 0.0);
    }

    series_worst = std::max(series_worst, series_link);
    link_worst = std::max(link_worst, res.link_level);
    unitarity = std::max(unitarity, u_defect);
    det = std::max(det, d_defect);
    table.add_row({fmt(d), fmt(lattice.extent(0)), fmt(res.first_order), fmt(res.link_level),
                   fmt(res.max_identity_component), fmt(res.max_gamma_discrepancy), fmt(modes), fmt(u_defect),
                   fmt(d_defect)});
    h.push_back(d);
    e_first.push_back(res.first_order);
    e_modes.push_back(modes);
  }
  const FitRecord f1 = detail::add_fit(rep, "first-order SU(2) covariance residual", h, e_first);
  const FitRecord f2 = detail::add_fit(rep, "exponential vs first-order SU(2) derivative", h, e_modes);
  rep.check("link closed form vs 12-term series", series_worst, Relation::kAtMost, cfg.tol.series);
  rep.check("link unitarity defect", unitarity, Relation::kAtMost, cfg.tol.exact);
  rep.check("link SU(2) determinant defect", det, Relation::kAtMost, cfg.tol.exact);
  rep.check("link-level covariance residual", link_worst, Relation::kAtMost, cfg.tol.exact);
  rep.check("first-order SU(2) covariance slope", f1.fit.slope, Relation::kAtLeast, cfg.tol.slope);
  rep.check("SU(2) derivative modes agree slope", f2.fit.slope, Relation::kAtLeast, cfg.tol.slope);
  return rep;
}

// ---------------------------------------------------------------------------

/// Five distinct anchors spread over the lattice.
inline std::vector<Site> default_anchors(const Lattice& lattice) {
  std::vector<Site> out(5);
  for (int mu = 0; mu < lattice.dims(); ++mu) {
    const int e = lattice.extent(mu);
    out[1][mu] = std::min(1 + mu, e - 1);
    out[2][mu] = e / 2;
    out[3][mu] = mu == 0 ? e - 1 : 0;
    out[4][mu] = e - 1;
  }
  return out;
}

inline ExperimentReport experiment_action(const ExperimentConfig& cfg) {
  using detail::fmt;
  ExperimentReport rep;
  rep.name = "action";
  const Lattice lattice(cfg.lattice);
  const std::size_t n = cfg.lagrangian == LagrangianKind::kDirac ? 4 : 1;
  AbelianConfig theory{cfg.make_field(), smooth_gauge_field(lattice, 0.2, 0.5, 0.0, 1.0), cfg.couplings.g_r,
                       cfg.couplings.g_i, cfg.couplings.mass, cfg.couplings.lambda};
  const MultipletField psi = smooth_multiplet(lattice, n);
  const auto density = lagrangian_density(psi, theory, cfg.lagrangian);
  ComplexLatticeField integrand(lattice);
  for (std::size_t i = 0; i < density.size(); ++i) integrand.set(i, density[i].total);

  const std::vector<Site> anchors = cfg.anchors.empty() ? default_anchors(lattice) : cfg.anchors;
  const IntegrabilityReport ir = is_integrable(theory.a, cfg.tol.integrability);
  rep.check("gauge field integrable", ir.integrable ? 1.0 : 0.0, Relation::kEqual, 1.0);

  auto& integrals = rep.table("action_integrals", {"anchor", "site", "canonical_re", "canonical_im", "reverse_re",
                                                   "reverse_im", "path_rule_difference"});
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    const ComplexValue canon = transported_integral(integrand, theory.a, anchors[k], PathRule::kCanonicalStaircase);
    const ComplexValue rev = transported_integral(integrand, theory.a, anchors[k], PathRule::kReverseStaircase);
    integrals.add_row({fmt(k), detail::site_label(anchors[k], lattice.dims()), fmt(canon.real()), fmt(canon.imag()),
                       fmt(rev.real()), fmt(rev.imag()), fmt(std::abs(rev - canon) / std::abs(canon))});
  }
  if (ir.integrable) {
    const AnchorReport report = anchor_dependence_report(integrand, theory.a, anchors, cfg.tol.integrability);
    auto& pairs = rep.table("anchor_pairs", {"from", "to", "ratio_re", "ratio_im", "expected", "deviation"});
    for (const auto& p : report.pairs) {
      pairs.add_row({fmt(p.from), fmt(p.to), fmt(p.ratio.real()), fmt(p.ratio.imag()), fmt(p.expected), fmt(p.deviation)});
    }
    rep.check("anchor covariance worst relative deviation", report.worst_deviation(), Relation::kAtMost, cfg.tol.anchor);
  }
  return rep;
}

}  // namespace scaledgauge
