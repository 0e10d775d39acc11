// Acceptance criteria, one PASS/FAIL line each. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scaledgauge/config.hpp"
#include "scaledgauge/convergence.hpp"
#include "scaledgauge/field_calculus.hpp"
#include "scaledgauge/fixtures.hpp"
#include "scaledgauge/gauge_field.hpp"
#include "scaledgauge/gauge_theory.hpp"
#include "scaledgauge/random.hpp"
#include "scaledgauge/runner.hpp"
#include "scaledgauge/scaled_hilbert.hpp"
#include "scaledgauge/scaled_numbers.hpp"

namespace sg = scaledgauge;
using C = std::complex<double>;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const std::vector<double> kScales{1e-3, 1e-1, 1.0, 10.0, 1e3};
const std::vector<double> kDeltas{0.1, 0.05, 0.025, 0.0125};

sg::Lattice lattice(int dims, int n, double spacing, sg::Boundary b) {
  sg::LatticeSpec spec;
  spec.dims = dims;
  for (int mu = 0; mu < dims; ++mu) spec.extent[static_cast<std::size_t>(mu)] = n;
  spec.spacing = spacing;
  spec.boundary = b;
  return sg::Lattice(spec);
}

std::size_t fwd(const sg::Lattice& l, std::size_t i, int mu) {
  return l.index(sg::neighbor(l.site(i), sg::forward(mu), l));
}

// 1
Outcome axioms() {
  double worst = 0.0;
  bool all = true;
  for (std::size_t k = 0; k < kScales.size(); ++k) {
    const auto rep = sg::axiom_suite({sg::ScaleFactor(kScales[k])}, 1000, sg::derive_seed(20240601, k), 1e-9);
    worst = std::max(worst, rep.worst());
    all = all && rep.passed();
  }
  return {all && worst <= 1e-9, "worst relative residual " + num(worst) + " (<= 1e-9)"};
}

// 2
Outcome collapse() {
  const sg::ScaledStructure one{sg::ScaleFactor(1.0)};
  sg::Rng rng(7);
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const C u = rng.complex_log_magnitude(1e-3, 1e3);
    const C v = rng.complex_log_magnitude(1e-3, 1e3);
    mismatches += sg::add_s({u}, {v}, one).canonical != u + v;
    mismatches += sg::sub_s({u}, {v}, one).canonical != u - v;
    mismatches += sg::mul_s({u}, {v}, one).canonical != u * v;
    mismatches += sg::div_s({u}, {v}, one).canonical != u / v;
    mismatches += sg::conj_s({u}, one).canonical != std::conj(u);
    mismatches += sg::value_of({u}, one).value != u;
  }

  const auto l = sg::smooth_lattice({2, 1.6, 0.1});
  const auto phi = sg::smooth_scalar(l);
  const sg::RealGaugeField zero(l);
  for (int mu = 0; mu < 2; ++mu) {
    const auto plain = sg::plain_derivative(phi, mu);
    mismatches += !(sg::covariant_derivative(phi, zero, mu) == plain);
    mismatches += !(sg::first_order_covariant(phi, zero, mu) == plain);
  }

  // Lagrangian with A = 0 against an independently coded scalar QED density.
  const double gi = 1.3, m = 0.5, dx = 0.1;
  const auto gamma = sg::smooth_gauge_field(l, 0.2, 0.5, 0, 1);
  const sg::AbelianConfig cfg{zero, gamma, 0.8, gi, m, 0.4};
  sg::MultipletField psi(l, 1);
  std::vector<C> f(l.volume());
  for (std::size_t i = 0; i < l.volume(); ++i) f[i] = psi.at(i, 0) = phi[i];
  auto d = [&](const std::vector<C>& g, int mu) {
    std::vector<C> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      out[i] = (g[fwd(l, i, mu)] - g[i]) / dx + C(0.0, gi * gamma.at(i, mu)) * g[i];
    return out;
  };
  const auto dd0 = d(d(f, 0), 0);
  const auto dd1 = d(d(f, 1), 1);
  const auto dens = sg::lagrangian_density(psi, cfg, sg::LagrangianKind::kKleinGordon);
  double worst = 0.0;
  for (std::size_t i = 0; i < l.volume(); ++i) {
    const C kinetic = std::conj(f[i]) * dd0[i] - std::conj(f[i]) * dd1[i];
    const double g01 = (gamma.at(fwd(l, i, 0), 1) - gamma.at(i, 1)) / dx - (gamma.at(fwd(l, i, 1), 0) - gamma.at(i, 0)) / dx;
    const double mass = -m * m * std::norm(f[i]);
    const double ym = -0.25 * (2.0 * -1.0 * g01 * g01);
    auto rel = [](C a, C b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    worst = std::max({worst, rel(dens[i].kinetic, kinetic), rel(dens[i].mass, mass), rel(dens[i].yang_mills, ym),
                      std::abs(dens[i].a_mass)});
  }
  return {mismatches == 0 && worst <= 1e-15,
          std::to_string(mismatches) + " bitwise mismatches, Lagrangian terms " + num(worst) + " (<= 1e-15)"};
}

// 3
Outcome analytic_scaling() {
  sg::Rng rng(33);
  double worst = 0.0;
  const auto exp_c = sg::exp_coefficients();
  for (double r : kScales) {
    const sg::ScaledStructure s{sg::ScaleFactor(r)};
    for (int t = 0; t < 20; ++t) {
      const C z = rng.complex_log_magnitude(1e-2, 2.0);
      const C got = sg::element_of(sg::eval_analytic(exp_c, {z, s.scale}, s)).canonical;
      worst = std::max(worst, std::abs(got - r * std::exp(z)) / (r * std::abs(std::exp(z))));
    }
    for (int p = 0; p < 100; ++p) {
      const int degree = rng.index(9);
      std::vector<C> c(static_cast<std::size_t>(degree) + 1);
      for (auto& x : c) x = rng.complex_normal();
      const C z = rng.complex_log_magnitude(1e-1, 2.0);
      C naive = 0.0;
      double bound = 0.0;
      for (int k = 0; k <= degree; ++k) {
        naive += c[static_cast<std::size_t>(k)] * std::pow(z, k);
        bound += std::abs(c[static_cast<std::size_t>(k)]) * std::pow(std::abs(z), k);
      }
      const C got = sg::element_of(sg::eval_analytic(c, {z, s.scale}, s)).canonical;
      worst = std::max(worst, std::abs(got - r * naive) / (r * bound));
    }
  }
  return {worst <= 1e-9, "worst relative residual " + num(worst) + " (<= 1e-9)"};
}

// 4
Outcome link_loop() {
  const auto l = lattice(4, 8, 0.25, sg::Boundary::kPeriodic);
  sg::FieldParams p;
  p.amplitude = 0.5;
  p.seed = 99;
  const auto a = sg::generate_field(sg::FieldKind::kSeededRandom, p, l);
  std::size_t inexact = 0;
  for (std::size_t i = 0; i < l.volume(); ++i) {
    const auto s = l.site(i);
    for (int mu = 0; mu < 4; ++mu) {
      const auto there = sg::neighbor(s, sg::forward(mu), l);
      inexact += (sg::link_factor(a, s, sg::forward(mu)) * sg::link_factor(a, there, sg::backward(mu))).value() != 1.0;
    }
  }
  double worst = 0.0;
  std::size_t count = 0;
  const double dx = l.spacing();
  for (const auto& q : sg::enumerate_plaquettes(l)) {
    const std::size_t i = l.index(q.corner);
    const double curl = (a.at(fwd(l, i, q.mu), q.nu) - a.at(i, q.nu)) / dx - (a.at(fwd(l, i, q.nu), q.mu) - a.at(i, q.mu)) / dx;
    const double expected = std::exp(dx * dx * curl);
    worst = std::max(worst, std::abs(sg::path_transport_product(a, sg::plaquette_loop(q)) - expected) / expected);
    ++count;
  }
  return {inexact == 0 && worst <= 1e-12, std::to_string(inexact) + " inexact link inversions, loop residual " +
                                              num(worst) + " over " + std::to_string(count) + " plaquettes (<= 1e-12)"};
}

// 5
Outcome path_independence() {
  const auto l = lattice(2, 4, 0.5, sg::Boundary::kClamped);
  sg::Site from, to;
  to[0] = 3;
  to[1] = 3;
  const auto paths = sg::enumerate_staircase_paths(from, to, l);
  sg::FieldParams p;
  double gradient_spread = 0.0;
  for (double amp : {0.1, 0.3, 1.0}) {
    p.amplitude = amp;
    gradient_spread = std::max(gradient_spread, sg::transport_spread(sg::generate_field(sg::FieldKind::kGradient, p, l), paths));
  }
  const auto custom = sg::gradient_field(l, [](const sg::Site& s) { return std::sin(s[0] * 0.7) * s[1] + 0.2 * s[1]; });
  gradient_spread = std::max(gradient_spread, sg::transport_spread(custom, paths));
  p.vortex_strength = 0.1;
  const double vortex_spread = sg::transport_spread(sg::generate_field(sg::FieldKind::kVortex, p, l), paths);
  return {paths.size() <= 70 && gradient_spread <= 1e-12 && vortex_spread > 1e-3,
          std::to_string(paths.size()) + " paths, gradient spread " + num(gradient_spread) + " (<= 1e-12), vortex spread " +
              num(vortex_spread) + " (> 1e-3)"};
}

// 6
Outcome derivative_consistency() {
  std::vector<double> err;
  for (double d : kDeltas) {
    const auto l = sg::smooth_lattice({2, 1.6, d});
    const auto a = sg::smooth_gauge_field(l, 0.4, 0.3, 1, 0);
    const auto phi = sg::smooth_scalar(l);
    double worst = 0.0;
    for (int mu = 0; mu < 2; ++mu) {
      const auto cov = sg::covariant_derivative(phi, a, mu);
      const auto fo = sg::first_order_covariant(phi, a, mu);
      for (std::size_t i = 0; i < l.volume(); ++i) worst = std::max(worst, std::abs(cov[i] - fo[i]));
    }
    err.push_back(worst);
  }
  const double slope = sg::fit_loglog(kDeltas, err).slope;
  return {slope >= 0.9, "slope " + num(slope) + " (>= 0.9)"};
}

sg::MultipletField singlet(const sg::Lattice& l) {
  const auto phi = sg::smooth_scalar(l);
  sg::MultipletField psi(l, 1);
  for (std::size_t i = 0; i < l.volume(); ++i) psi.at(i, 0) = phi[i];
  return psi;
}

// 7
Outcome abelian_laws() {
  std::vector<double> err;
  double exp_worst = 0.0;
  bool a_same = true;
  for (double d : kDeltas) {
    const auto l = sg::smooth_lattice({2, 1.6, d});
    const auto cfg = sg::smooth_abelian_config(l, {});
    const auto t = sg::smooth_transformation(l, sg::PhaseProfile::kLocal, sg::ThetaProfile::kZero);
    a_same = a_same && sg::gauge_transform_abelian(singlet(l), cfg, t).cfg.a == cfg.a;
    const auto res = sg::covariance_residuals_abelian(singlet(l), cfg, t);
    exp_worst = std::max(exp_worst, res.exponential);
    err.push_back(res.first_order);
  }
  const double slope = sg::fit_loglog(kDeltas, err).slope;
  return {a_same && exp_worst <= 1e-12 && slope >= 0.9,
          std::string("A' == A ") + (a_same ? "bitwise" : "differs") + ", exponential residual " + num(exp_worst) +
              " (<= 1e-12), first-order slope " + num(slope) + " (>= 0.9)"};
}

// 8
Outcome su2_laws() {
  const auto& t = sg::pauli();
  bool pauli_exact = true;
  const C i2(0.0, 2.0);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      sg::ComplexMatrix rhs(2);
      for (int m = 0; m < 3; ++m) rhs = rhs + (i2 * static_cast<double>(sg::structure_constant(j, k, m))) * t[m];
      pauli_exact = pauli_exact && (t[j] * t[k] - t[k] * t[j]) == rhs;
    }

  double link_defect = 0.0, norm_defect = 0.0;
  std::vector<double> err;
  for (double d : kDeltas) {
    const auto l = sg::smooth_lattice({2, 1.6, d});
    const auto cfg = sg::smooth_su2_config(l, {});
    for (std::size_t i = 0; i < l.volume(); ++i) {
      for (int mu = 0; mu < 2; ++mu) {
        // full U(2) link unitary; its SU(2) factor exp(-i g Omega.tau dx) has unit determinant
        const auto& om = cfg.omega_at(i, mu);
        const double k = 2.0 * cfg.g * d;
        const auto s = sg::su2_exponential({k * om[0], k * om[1], k * om[2]});
        link_defect = std::max({link_defect, sg::unitarity_defect(sg::su2_link(cfg, i, mu)), sg::unitarity_defect(s),
                                std::abs(sg::determinant2(s) - C(1.0))});
      }
    }
    const auto psi = sg::smooth_multiplet(l, 2);
    const auto global = sg::gauge_transform_su2(
        psi, cfg, sg::smooth_transformation(l, sg::PhaseProfile::kGlobal, sg::ThetaProfile::kGlobal));
    for (std::size_t k = 0; k < cfg.omega.size(); ++k) {
      auto n = [](const sg::Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); };
      norm_defect = std::max(norm_defect, std::abs(n(global.cfg.omega[k]) - n(cfg.omega[k])));
    }
    err.push_back(sg::covariance_residuals_su2(
                      psi, cfg, sg::smooth_transformation(l, sg::PhaseProfile::kLocal, sg::ThetaProfile::kLocal))
                      .first_order);
  }
  const double slope = sg::fit_loglog(kDeltas, err).slope;
  return {pauli_exact && link_defect <= 1e-12 && norm_defect <= 1e-12 && slope >= 0.9,
          std::string("Pauli commutators ") + (pauli_exact ? "exact" : "inexact") + ", link unitarity/det " +
              num(link_defect) + " (<= 1e-12), |Omega| drift " + num(norm_defect) + " (<= 1e-12), first-order slope " +
              num(slope) + " (>= 0.9)"};
}

// 9
Outcome hilbert() {
  sg::Rng rng(909);
  double worst = 0.0;
  std::size_t broken_equivalence = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.index(3));
    const double r = 1e-3 * std::pow(1e6, rng.uniform());
    const auto v = sg::random_unitary(n, rng);
    const auto s = sg::make_hilbert_structure(r, v);
    sg::HilbertVector psi(n), phi(n);
    for (auto& c : psi) c = rng.complex_normal();
    for (auto& c : phi) c = rng.complex_normal();
    C ip = 0.0;
    double np = 0.0, nf = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      ip += std::conj(psi[k]) * phi[k];
      np += std::norm(psi[k]);
      nf += std::norm(phi[k]);
    }
    const auto cp = sg::vector_correspondence(psi, s);
    const auto cf = sg::vector_correspondence(phi, s);
    const double scale = std::sqrt(np * nf);
    worst = std::max(worst, std::abs(sg::scaled_inner(cp, cf, s).value - ip) / scale);
    worst = std::max(worst, std::abs(sg::scaled_inner(cp, cp, s).value - np) / np);

    // Norm preservation holds for the unitary map and fails once it is
    // pushed off the unitary group.
    sg::ComplexMatrix skew = v;
    skew(0, 0) += 0.1;
    sg::HilbertVector moved = skew * psi;
    double nm = 0.0;
    for (const auto& c : moved) nm += std::norm(c);
    if (std::abs(nm - np) / np <= 1e-12) ++broken_equivalence;
  }
  return {worst <= 1e-12 && broken_equivalence == 0,
          "inner/norm residual " + num(worst) + " (<= 1e-12), " + std::to_string(broken_equivalence) +
              " non-unitary maps preserving norm"};
}

// 10
Outcome anchors() {
  const auto l = lattice(2, 6, 0.4, sg::Boundary::kPeriodic);
  sg::FieldParams p;
  const auto a = sg::generate_field(sg::FieldKind::kGradient, p, l);
  const auto phi = sg::smooth_scalar(l);
  std::vector<sg::Site> anchor_sites;
  for (auto [x, y] : std::vector<std::pair<int, int>>{{0, 0}, {1, 4}, {2, 2}, {5, 1}, {3, 5}}) {
    sg::Site s;
    s[0] = x;
    s[1] = y;
    anchor_sites.push_back(s);
  }
  std::vector<C> integrals;
  for (const auto& s : anchor_sites) integrals.push_back(sg::transported_integral(phi, a, s));
  double worst = 0.0;
  for (std::size_t x = 0; x < anchor_sites.size(); ++x) {
    for (std::size_t y = 0; y < anchor_sites.size(); ++y) {
      if (x == y) continue;
      // transport(x' -> x) along a straight axis-ordered path
      const double tr = sg::path_transport(a, sg::axis_ordered_path(anchor_sites[y], anchor_sites[x], l)).value;
      const C expect = tr * integrals[x];
      worst = std::max(worst, std::abs(integrals[y] - expect) / std::abs(expect));
    }
  }
  const auto report = sg::anchor_dependence_report(phi, a, anchor_sites);
  worst = std::max(worst, report.worst_deviation());
  return {worst <= 1e-10, "5 anchors on 6x6, worst relative deviation " + num(worst) + " (<= 1e-10)"};
}

std::map<std::string, std::string> read_csvs(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.path().extension() != ".csv") continue;
    std::ifstream in(e.path(), std::ios::binary);
    out[std::filesystem::relative(e.path(), root).string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return out;
}

// 11
Outcome determinism() {
  const auto base = std::filesystem::temp_directory_path() / ("scaledgauge-acceptance-" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  std::filesystem::remove_all(base);
  sg::ExperimentConfig cfg;
  std::ostringstream log;
  const int first = sg::run_subcommand("all", cfg, base / "a", 1, log);
  const int second = sg::run_subcommand("all", cfg, base / "b", 4, log);
  const auto a = read_csvs(base / "a");
  const auto b = read_csvs(base / "b");
  std::filesystem::remove_all(base);
  const bool same = !a.empty() && a == b;
  return {same && first == 0 && second == 0,
          std::to_string(a.size()) + " CSV files " + (same ? "byte-identical" : "differ") + ", exit codes " +
              std::to_string(first) + "/" + std::to_string(second)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"scaled-field axioms", 5, axioms},
      {"collapse at r = 1, A = 0", 5, collapse},
      {"analytic scaling", 2, analytic_scaling},
      {"link and loop exactness", 10, link_loop},
      {"path independence iff zero curl", 5, path_independence},
      {"derivative consistency", 10, derivative_consistency},
      {"abelian gauge laws", 20, abelian_laws},
      {"SU(2) gauge laws", 30, su2_laws},
      {"scaled Hilbert invariants", 5, hilbert},
      {"transported-integral anchor covariance", 5, anchors},
      {"determinism", 120, determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs < criteria[k].limit_seconds;
    failed += !pass;
    std::printf("%s %2zu %s: %s; %.2f s (< %g s)\n", pass ? "PASS" : "FAIL", k + 1, criteria[k].name, o.detail.c_str(),
                secs, criteria[k].limit_seconds);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
