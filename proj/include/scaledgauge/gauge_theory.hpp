#pragma once

// Abelian GL(1,R) x U(1) and nonabelian GL(1,R) x U(2) gauge theory on the
// lattice: covariant derivatives, gauge transformations, field strength and
// Lagrangian densities.
//
// Conventions
//   metric         (+, -, -, -), axis 0 is time
//   gamma matrices Dirac representation
//   derivative     forward differences on a periodic lattice
//   couplings      D = d' + g_R A + i g_I Gamma - i g Omega.tau
//                  link  e^{g_R A dx} e^{i g_I Gamma dx} e^{-i g Omega.tau dx}

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "scaledgauge/error.hpp"
#include "scaledgauge/field_calculus.hpp"
#include "scaledgauge/gauge_field.hpp"
#include "scaledgauge/lattice.hpp"
#include "scaledgauge/matrix.hpp"

namespace scaledgauge {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

struct AbelianConfig {
  RealGaugeField a;
  RealGaugeField gamma;
  double g_r = 1.0;
  double g_i = 1.0;
  double mass = 0.0;
  double lambda = 0.0;
};

struct SU2Config {
  AbelianConfig base;
  std::vector<Vec3> omega;  // indexed site * dims + axis
  double g = 1.0;

  const Vec3& omega_at(std::size_t site, int axis) const {
    return omega[site * static_cast<std::size_t>(base.a.lattice().dims()) + static_cast<std::size_t>(axis)];
  }
};

inline std::vector<Vec3> zero_omega(const Lattice& lattice) {
  return std::vector<Vec3>(lattice.volume() * static_cast<std::size_t>(lattice.dims()), Vec3{0.0, 0.0, 0.0});
}

/// n complex components per site.
class MultipletField {
 public:
  MultipletField(const Lattice& lattice, std::size_t components)
      : lattice_(lattice), n_(components), data_(lattice.volume() * components, 0.0) {}

  const Lattice& lattice() const { return lattice_; }
  std::size_t components() const { return n_; }

  Complex& at(std::size_t site, std::size_t c) { return data_[site * n_ + c]; }
  const Complex& at(std::size_t site, std::size_t c) const { return data_[site * n_ + c]; }

  HilbertVector spinor(std::size_t site) const {
    return HilbertVector(data_.begin() + static_cast<std::ptrdiff_t>(site * n_),
                         data_.begin() + static_cast<std::ptrdiff_t>((site + 1) * n_));
  }

  void set_spinor(std::size_t site, const HilbertVector& v) {
    if (v.size() != n_) throw Error(ErrorKind::kDimensionMismatch, "spinor size");
    for (std::size_t c = 0; c < n_; ++c) at(site, c) = v[c];
  }

  const std::vector<Complex>& data() const { return data_; }

  friend bool operator==(const MultipletField& a, const MultipletField& b) { return a.data_ == b.data_; }

 private:
  Lattice lattice_;
  std::size_t n_;
  std::vector<Complex> data_;
};

struct GaugeTransformation {
  std::vector<double> phase;  // phi(x)
  std::vector<Vec3> theta;    // Theta(x), zero for Abelian transformations
};

enum class DerivativeMode { kExponential, kFirstOrder };

namespace detail {

inline double metric(int mu) { return mu == 0 ? 1.0 : -1.0; }

inline void require_periodic_theory(const Lattice& lattice) {
  if (lattice.boundary() != Boundary::kPeriodic) {
    throw Error(ErrorKind::kInvalidArgument, "gauge theory operations need a periodic lattice");
  }
}

inline std::size_t forward_index(const Lattice& lattice, std::size_t i, int axis) {
  return lattice.index(neighbor(lattice.site(i), forward(axis), lattice));
}

inline void require_coupling(double g, const char* name) {
  if (g == 0.0 || !std::isfinite(g)) {
    throw Error(ErrorKind::kInvalidCoupling, std::string(name) + " must be finite and nonzero");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Abelian theory

inline MultipletField abelian_cov_derivative(const MultipletField& psi, const AbelianConfig& cfg, int axis,
                                             DerivativeMode mode) {
  const Lattice& lattice = psi.lattice();
  detail::require_periodic_theory(lattice);
  detail::require_same_lattice(lattice, cfg.a.lattice());
  lattice.check_step(forward(axis));
  const double dx = lattice.spacing();
  MultipletField out(lattice, psi.components());
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const std::size_t next = detail::forward_index(lattice, i, axis);
    const double a = cfg.a.at(i, axis);
    const double gamma = cfg.gamma.at(i, axis);
    if (mode == DerivativeMode::kExponential) {
      const Complex link = std::exp(cfg.g_r * a * dx) * std::polar(1.0, cfg.g_i * gamma * dx);
      for (std::size_t c = 0; c < psi.components(); ++c) {
        out.at(i, c) = (link * psi.at(next, c) - psi.at(i, c)) / dx;
      }
    } else {
      const Complex potential(cfg.g_r * a, cfg.g_i * gamma);
      for (std::size_t c = 0; c < psi.components(); ++c) {
        out.at(i, c) = (psi.at(next, c) - psi.at(i, c)) / dx + potential * psi.at(i, c);
      }
    }
  }
  return out;
}

struct AbelianTransformed {
  MultipletField psi;
  AbelianConfig cfg;
};

/// psi' = e^{i phi} psi, A' = A, Gamma' = Gamma - d'phi / g_I.
inline AbelianTransformed gauge_transform_abelian(const MultipletField& psi, const AbelianConfig& cfg,
                                                  const GaugeTransformation& t) {
  detail::require_coupling(cfg.g_i, "g_I");
  const Lattice& lattice = psi.lattice();
  detail::require_periodic_theory(lattice);
  if (t.phase.size() != lattice.volume()) throw Error(ErrorKind::kDimensionMismatch, "phase field size");
  AbelianTransformed out{MultipletField(lattice, psi.components()), cfg};
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Complex lambda = std::polar(1.0, t.phase[i]);
    for (std::size_t c = 0; c < psi.components(); ++c) out.psi.at(i, c) = lambda * psi.at(i, c);
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      const std::size_t next = detail::forward_index(lattice, i, mu);
      const double dphi = (t.phase[next] - t.phase[i]) / lattice.spacing();
      out.cfg.gamma.set(i, mu, cfg.gamma.at(i, mu) - dphi / cfg.g_i);
    }
  }
  return out;
}

struct CovarianceResiduals {
  double first_order = 0.0;
  double exponential = 0.0;
};

/// max over sites and axes of |D'(Lambda psi) - Lambda D psi| in both modes.
inline CovarianceResiduals covariance_residuals_abelian(const MultipletField& psi, const AbelianConfig& cfg,
                                                        const GaugeTransformation& t) {
  const AbelianTransformed tr = gauge_transform_abelian(psi, cfg, t);
  const Lattice& lattice = psi.lattice();
  CovarianceResiduals out;
  for (int mu = 0; mu < lattice.dims(); ++mu) {
    for (DerivativeMode mode : {DerivativeMode::kFirstOrder, DerivativeMode::kExponential}) {
      const MultipletField lhs = abelian_cov_derivative(tr.psi, tr.cfg, mu, mode);
      const MultipletField d = abelian_cov_derivative(psi, cfg, mu, mode);
      double worst = 0.0;
      for (std::size_t i = 0; i < lattice.volume(); ++i) {
        const Complex lambda = std::polar(1.0, t.phase[i]);
        for (std::size_t c = 0; c < psi.components(); ++c) {
          worst = std::max(worst, std::abs(lhs.at(i, c) - lambda * d.at(i, c)));
        }
      }
      double& slot = mode == DerivativeMode::kFirstOrder ? out.first_order : out.exponential;
      slot = std::max(slot, worst);
    }
  }
  return out;
}

/// Antisymmetric forward-difference curl of a real gauge field per site.
class FieldStrength {
 public:
  explicit FieldStrength(const Lattice& lattice)
      : lattice_(lattice), data_(lattice.volume() * static_cast<std::size_t>(lattice.dims() * lattice.dims()), 0.0) {}

  const Lattice& lattice() const { return lattice_; }

  double at(std::size_t site, int mu, int nu) const { return data_[slot(site, mu, nu)]; }
  double& at(std::size_t site, int mu, int nu) { return data_[slot(site, mu, nu)]; }

 private:
  std::size_t slot(std::size_t site, int mu, int nu) const {
    const auto d = static_cast<std::size_t>(lattice_.dims());
    return (site * d + static_cast<std::size_t>(mu)) * d + static_cast<std::size_t>(nu);
  }

  Lattice lattice_;
  std::vector<double> data_;
};

/// G_{mu nu} = d'_mu Gamma_nu - d'_nu Gamma_mu, every ordered pair evaluated
/// directly from the differences.
inline FieldStrength field_strength(const RealGaugeField& gamma) {
  const Lattice& lattice = gamma.lattice();
  detail::require_periodic_theory(lattice);
  if (lattice.dims() < 2) throw Error(ErrorKind::kInvalidArgument, "field strength needs dims >= 2");
  const double dx = lattice.spacing();
  FieldStrength g(lattice);
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      for (int nu = 0; nu < lattice.dims(); ++nu) {
        if (mu == nu) continue;
        const std::size_t next_mu = detail::forward_index(lattice, i, mu);
        const std::size_t next_nu = detail::forward_index(lattice, i, nu);
        g.at(i, mu, nu) = (gamma.at(next_mu, nu) - gamma.at(i, nu)) / dx -
                          (gamma.at(next_nu, mu) - gamma.at(i, mu)) / dx;
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Lagrangian densities

enum class LagrangianKind { kKleinGordon, kDirac };

inline LagrangianKind parse_lagrangian_kind(const std::string& name) {
  if (name == "klein-gordon") return LagrangianKind::kKleinGordon;
  if (name == "dirac") return LagrangianKind::kDirac;
  throw Error(ErrorKind::kUnknownKind, "unknown Lagrangian kind '" + name + "'");
}

/// Dirac-representation gamma^mu, mu = 0..3.
inline const std::array<ComplexMatrix, 4>& dirac_gammas() {
  static const std::array<ComplexMatrix, 4> gammas = [] {
    const Complex i(0.0, 1.0);
    std::array<ComplexMatrix, 4> g{ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4)};
    g[0] = ComplexMatrix(4, {1, 0, 0, 0,  0, 1, 0, 0,  0, 0, -1, 0,  0, 0, 0, -1});
    g[1] = ComplexMatrix(4, {0, 0, 0, 1,  0, 0, 1, 0,  0, -1, 0, 0,  -1, 0, 0, 0});
    g[2] = ComplexMatrix(4, {0, 0, 0, -i,  0, 0, i, 0,  0, i, 0, 0,  -i, 0, 0, 0});
    g[3] = ComplexMatrix(4, {0, 0, 1, 0,  0, 0, 0, -1,  -1, 0, 0, 0,  0, 1, 0, 0});
    return g;
  }();
  return gammas;
}

struct DensityRecord {
  Complex kinetic;
  double mass = 0.0;
  double a_mass = 0.0;
  double yang_mills = 0.0;
  Complex total;
};

/// Per-site Lagrangian density terms with covariant derivatives in place of
/// partial derivatives.
///
/// Klein-Gordon: psi^dag D^mu D_mu psi - m^2 psi^dag psi
/// Dirac:        psibar i gamma^mu D_mu psi - m psibar psi   (n = 4)
/// both add      -1/2 lambda^2 A^mu A_mu - 1/4 G_{mu nu} G^{mu nu}
inline std::vector<DensityRecord> lagrangian_density(const MultipletField& psi, const AbelianConfig& cfg,
                                                     LagrangianKind kind,
                                                     DerivativeMode mode = DerivativeMode::kFirstOrder) {
  const Lattice& lattice = psi.lattice();
  const int dims = lattice.dims();
  if (kind == LagrangianKind::kDirac && psi.components() != 4) {
    throw Error(ErrorKind::kDimensionMismatch, "Dirac density needs a 4-component spinor");
  }
  std::vector<MultipletField> d;
  std::vector<MultipletField> dd;
  for (int mu = 0; mu < dims; ++mu) {
    d.push_back(abelian_cov_derivative(psi, cfg, mu, mode));
    if (kind == LagrangianKind::kKleinGordon) dd.push_back(abelian_cov_derivative(d.back(), cfg, mu, mode));
  }
  const bool has_strength = dims >= 2;
  const FieldStrength g = has_strength ? field_strength(cfg.gamma) : FieldStrength(lattice);
  const auto& gammas = dirac_gammas();

  std::vector<DensityRecord> out(lattice.volume());
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    DensityRecord rec;
    const HilbertVector p = psi.spinor(i);
    if (kind == LagrangianKind::kKleinGordon) {
      for (int mu = 0; mu < dims; ++mu) {
        Complex term = 0.0;
        for (std::size_t c = 0; c < p.size(); ++c) term += std::conj(p[c]) * dd[static_cast<std::size_t>(mu)].at(i, c);
        rec.kinetic += detail::metric(mu) * term;
      }
      double norm = 0.0;
      for (const auto& c : p) norm += std::norm(c);
      rec.mass = -cfg.mass * cfg.mass * norm;
    } else {
      const HilbertVector bar = gammas[0] * p;  // gamma^0 psi; psibar = (gamma^0 psi)^dag
      for (int mu = 0; mu < dims; ++mu) {
        const HilbertVector gd = gammas[static_cast<std::size_t>(mu)] * d[static_cast<std::size_t>(mu)].spinor(i);
        Complex term = 0.0;
        for (std::size_t c = 0; c < 4; ++c) term += std::conj(bar[c]) * gd[c];
        rec.kinetic += Complex(0.0, 1.0) * term;
      }
      Complex scalar = 0.0;
      for (std::size_t c = 0; c < 4; ++c) scalar += std::conj(bar[c]) * p[c];
      rec.mass = -cfg.mass * scalar.real();
    }
    double a2 = 0.0;
    for (int mu = 0; mu < dims; ++mu) a2 += detail::metric(mu) * cfg.a.at(i, mu) * cfg.a.at(i, mu);
    rec.a_mass = -0.5 * cfg.lambda * cfg.lambda * a2;
    double gg = 0.0;
    if (has_strength) {
      for (int mu = 0; mu < dims; ++mu)
        for (int nu = 0; nu < dims; ++nu)
          if (mu != nu) gg += detail::metric(mu) * detail::metric(nu) * g.at(i, mu, nu) * g.at(i, mu, nu);
    }
    rec.yang_mills = -0.25 * gg;
    rec.total = rec.kinetic + rec.mass + rec.a_mass + rec.yang_mills;
    out[i] = rec;
  }
  return out;
}

// ---------------------------------------------------------------------------
// SU(2)

/// Pauli matrices tau_1, tau_2, tau_3.
inline const std::array<ComplexMatrix, 3>& pauli() {
  static const std::array<ComplexMatrix, 3> taus = [] {
    const Complex i(0.0, 1.0);
    return std::array<ComplexMatrix, 3>{ComplexMatrix(2, {0, 1, 1, 0}), ComplexMatrix(2, {0, -i, i, 0}),
                                        ComplexMatrix(2, {1, 0, 0, -1})};
  }();
  return taus;
}

/// Totally antisymmetric structure constants, indices 0..2.
inline int structure_constant(int j, int k, int l) {
  if (j == k || k == l || j == l) return 0;
  return ((j + 1) % 3 == k) ? 1 : -1;
}

/// v . tau.
inline ComplexMatrix dot_tau(const Vec3& v) {
  const Complex i(0.0, 1.0);
  return ComplexMatrix(2, {Complex(v[2]), v[0] - i * v[1], v[0] + i * v[1], Complex(-v[2])});
}

/// exp(-i theta . tau / 2) = cos(|theta|/2) I - i sin(|theta|/2) n.tau.
inline ComplexMatrix su2_exponential(const Vec3& theta) {
  const double angle = std::sqrt(theta[0] * theta[0] + theta[1] * theta[1] + theta[2] * theta[2]);
  const double c = std::cos(0.5 * angle);
  // sin(angle/2)/angle, continuous at zero
  const double s = angle > 1e-8 ? std::sin(0.5 * angle) / angle : 0.5 - angle * angle / 48.0;
  const Complex i(0.0, 1.0);
  const Vec3 n{s * theta[0], s * theta[1], s * theta[2]};
  return ComplexMatrix(2, {c - i * n[2], -i * n[0] - n[1], -i * n[0] + n[1], c + i * n[2]});
}

/// U(2) link e^{i g_I Gamma dx} e^{-i g Omega.tau dx}, optionally times the
/// real scale factor e^{g_R A dx}.
inline ComplexMatrix su2_link(const SU2Config& cfg, std::size_t site, int axis, bool with_scale = false) {
  const Lattice& lattice = cfg.base.a.lattice();
  const double dx = lattice.spacing();
  const Vec3& om = cfg.omega_at(site, axis);
  const Vec3 theta{2.0 * cfg.g * om[0] * dx, 2.0 * cfg.g * om[1] * dx, 2.0 * cfg.g * om[2] * dx};
  Complex phase = std::polar(1.0, cfg.base.g_i * cfg.base.gamma.at(site, axis) * dx);
  if (with_scale) phase *= std::exp(cfg.base.g_r * cfg.base.a.at(site, axis) * dx);
  return phase * su2_exponential(theta);
}

inline MultipletField su2_cov_derivative(const MultipletField& psi, const SU2Config& cfg, int axis,
                                         DerivativeMode mode) {
  const Lattice& lattice = psi.lattice();
  if (psi.components() != 2) throw Error(ErrorKind::kDimensionMismatch, "SU(2) derivative needs a doublet");
  detail::require_periodic_theory(lattice);
  detail::require_same_lattice(lattice, cfg.base.a.lattice());
  lattice.check_step(forward(axis));
  const double dx = lattice.spacing();
  MultipletField out(lattice, 2);
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const std::size_t next = detail::forward_index(lattice, i, axis);
    HilbertVector v;
    if (mode == DerivativeMode::kExponential) {
      const HilbertVector moved = su2_link(cfg, i, axis, true) * psi.spinor(next);
      v = {(moved[0] - psi.at(i, 0)) / dx, (moved[1] - psi.at(i, 1)) / dx};
    } else {
      const Complex potential(cfg.base.g_r * cfg.base.a.at(i, axis), cfg.base.g_i * cfg.base.gamma.at(i, axis));
      const HilbertVector here = psi.spinor(i);
      const HilbertVector rot = dot_tau(cfg.omega_at(i, axis)) * here;
      const Complex mig(0.0, -cfg.g);
      for (std::size_t c = 0; c < 2; ++c) {
        v.push_back((psi.at(next, c) - here[c]) / dx + potential * here[c] + mig * rot[c]);
      }
    }
    out.set_spinor(i, v);
  }
  return out;
}

/// Covariant derivative built from explicit link matrices (indexed
/// site * dims + axis): [U psi(x + mu) - psi(x)] / dx.
inline MultipletField link_cov_derivative(const MultipletField& psi, const std::vector<ComplexMatrix>& links,
                                          int axis) {
  const Lattice& lattice = psi.lattice();
  detail::require_periodic_theory(lattice);
  const double dx = lattice.spacing();
  MultipletField out(lattice, psi.components());
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const std::size_t next = detail::forward_index(lattice, i, axis);
    const HilbertVector moved =
        links[i * static_cast<std::size_t>(lattice.dims()) + static_cast<std::size_t>(axis)] * psi.spinor(next);
    for (std::size_t c = 0; c < psi.components(); ++c) out.at(i, c) = (moved[c] - psi.at(i, c)) / dx;
  }
  return out;
}

inline std::vector<ComplexMatrix> su2_links(const SU2Config& cfg, bool with_scale = true) {
  const Lattice& lattice = cfg.base.a.lattice();
  std::vector<ComplexMatrix> links;
  links.reserve(lattice.volume() * static_cast<std::size_t>(lattice.dims()));
  for (std::size_t i = 0; i < lattice.volume(); ++i)
    for (int mu = 0; mu < lattice.dims(); ++mu) links.push_back(su2_link(cfg, i, mu, with_scale));
  return links;
}

/// Lambda(x) = e^{i phi(x)} e^{-i Theta(x).tau/2}.
inline ComplexMatrix gauge_matrix(const GaugeTransformation& t, std::size_t site) {
  return std::polar(1.0, t.phase[site]) * su2_exponential(t.theta[site]);
}

/// U'(x, mu) = Lambda(x) U(x, mu) Lambda(x + mu)^dagger.
inline std::vector<ComplexMatrix> transform_links(const std::vector<ComplexMatrix>& links, const Lattice& lattice,
                                                  const GaugeTransformation& t) {
  std::vector<ComplexMatrix> out;
  out.reserve(links.size());
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const ComplexMatrix here = gauge_matrix(t, i);
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      const ComplexMatrix there = gauge_matrix(t, detail::forward_index(lattice, i, mu));
      out.push_back(here * links[i * static_cast<std::size_t>(lattice.dims()) + static_cast<std::size_t>(mu)] *
                    there.adjoint());
    }
  }
  return out;
}

struct SU2Transformed {
  MultipletField psi;
  SU2Config cfg;
  double max_identity_component = 0.0;  // |tr(Omega'.tau)/2| dropped by the projection
  double max_gamma_discrepancy = 0.0;   // |(i/g_I) d'(Lambda_1) Lambda_1^{-1} + d'phi/g_I|
};

/// psi' = Lambda_1 Lambda_2 psi; A' = A; Gamma' = Gamma - d'phi / g_I;
/// Omega'.tau = Lambda_2 (Omega.tau) Lambda_2^{-1} - (i/g) d'(Lambda_2) Lambda_2^{-1},
/// projected back onto the Pauli basis.
inline SU2Transformed gauge_transform_su2(const MultipletField& psi, const SU2Config& cfg,
                                          const GaugeTransformation& t) {
  detail::require_coupling(cfg.base.g_i, "g_I");
  detail::require_coupling(cfg.g, "g");
  const Lattice& lattice = psi.lattice();
  detail::require_periodic_theory(lattice);
  if (psi.components() != 2) throw Error(ErrorKind::kDimensionMismatch, "SU(2) transformation needs a doublet");
  if (t.phase.size() != lattice.volume() || t.theta.size() != lattice.volume()) {
    throw Error(ErrorKind::kDimensionMismatch, "gauge transformation size");
  }
  const double dx = lattice.spacing();
  const Complex i_unit(0.0, 1.0);
  SU2Transformed out{MultipletField(lattice, 2), cfg};
  const auto& taus = pauli();

  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Complex lambda1 = std::polar(1.0, t.phase[i]);
    const ComplexMatrix lambda2 = su2_exponential(t.theta[i]);
    const ComplexMatrix lambda2_inv = lambda2.adjoint();
    const HilbertVector rotated = lambda2 * psi.spinor(i);
    out.psi.set_spinor(i, {lambda1 * rotated[0], lambda1 * rotated[1]});

    for (int mu = 0; mu < lattice.dims(); ++mu) {
      const std::size_t next = detail::forward_index(lattice, i, mu);
      const double dphi = (t.phase[next] - t.phase[i]) / dx;
      const double gamma_new = cfg.base.gamma.at(i, mu) - dphi / cfg.base.g_i;
      out.cfg.base.gamma.set(i, mu, gamma_new);

      const Complex dlambda1 = (std::polar(1.0, t.phase[next]) - lambda1) / dx;
      const Complex gamma_matrix_form = cfg.base.gamma.at(i, mu) + (i_unit / cfg.base.g_i) * dlambda1 / lambda1;
      out.max_gamma_discrepancy = std::max(out.max_gamma_discrepancy, std::abs(gamma_matrix_form - gamma_new));

      const ComplexMatrix dlambda2 = (1.0 / dx) * (su2_exponential(t.theta[next]) - lambda2);
      const ComplexMatrix omega_tau = lambda2 * dot_tau(cfg.omega_at(i, mu)) * lambda2_inv -
                                      (i_unit / cfg.g) * (dlambda2 * lambda2_inv);
      Vec3 projected{};
      for (int j = 0; j < 3; ++j) {
        projected[static_cast<std::size_t>(j)] = 0.5 * (omega_tau * taus[static_cast<std::size_t>(j)]).trace().real();
      }
      out.max_identity_component = std::max(out.max_identity_component, std::abs(0.5 * omega_tau.trace()));
      out.cfg.omega[i * static_cast<std::size_t>(lattice.dims()) + static_cast<std::size_t>(mu)] = projected;
    }
  }
  return out;
}

struct SU2CovarianceResiduals {
  double first_order = 0.0;
  double link_level = 0.0;
  double max_identity_component = 0.0;
  double max_gamma_discrepancy = 0.0;
};

/// First-order residual |D'(Lambda psi) - Lambda D psi| using the transformed
/// (A, Gamma', Omega'), and the exact link-level residual with
/// U' = Lambda(x) U Lambda(x+mu)^dagger.
inline SU2CovarianceResiduals covariance_residuals_su2(const MultipletField& psi, const SU2Config& cfg,
                                                       const GaugeTransformation& t) {
  const Lattice& lattice = psi.lattice();
  const SU2Transformed tr = gauge_transform_su2(psi, cfg, t);
  const std::vector<ComplexMatrix> links = su2_links(cfg);
  const std::vector<ComplexMatrix> links_t = transform_links(links, lattice, t);
  SU2CovarianceResiduals out;
  out.max_identity_component = tr.max_identity_component;
  out.max_gamma_discrepancy = tr.max_gamma_discrepancy;
  for (int mu = 0; mu < lattice.dims(); ++mu) {
    const MultipletField lhs = su2_cov_derivative(tr.psi, tr.cfg, mu, DerivativeMode::kFirstOrder);
    const MultipletField d = su2_cov_derivative(psi, cfg, mu, DerivativeMode::kFirstOrder);
    const MultipletField lhs_link = link_cov_derivative(tr.psi, links_t, mu);
    const MultipletField d_link = link_cov_derivative(psi, links, mu);
    for (std::size_t i = 0; i < lattice.volume(); ++i) {
      const ComplexMatrix lambda = gauge_matrix(t, i);
      const HilbertVector expect = lambda * d.spinor(i);
      const HilbertVector expect_link = lambda * d_link.spinor(i);
      for (std::size_t c = 0; c < 2; ++c) {
        out.first_order = std::max(out.first_order, std::abs(lhs.at(i, c) - expect[c]));
        out.link_level = std::max(out.link_level, std::abs(lhs_link.at(i, c) - expect_link[c]));
      }
    }
  }
  return out;
}

}  // namespace scaledgauge
