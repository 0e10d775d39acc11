#pragma once

// Smooth periodic fixtures for convergence studies. Every fixture is a
// trigonometric polynomial in the physical coordinates with period equal to
// the lattice length, so forward differences wrap without a seam and
// discretisation errors shrink with the spacing alone.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "scaledgauge/field_calculus.hpp"
#include "scaledgauge/gauge_field.hpp"
#include "scaledgauge/gauge_theory.hpp"
#include "scaledgauge/lattice.hpp"

namespace scaledgauge {

struct SmoothFixtureSpec {
  int dims = 2;
  double length = 1.6;
  double spacing = 0.1;
  double g_r = 0.8;
  double g_i = 1.3;
  double g = 0.9;
  double mass = 0.5;
  double lambda = 0.4;
};

enum class ThetaProfile { kLocal, kGlobal, kZero };
enum class PhaseProfile { kLocal, kGlobal };

inline Lattice smooth_lattice(const SmoothFixtureSpec& spec) {
  LatticeSpec ls;
  ls.dims = spec.dims;
  const int n = static_cast<int>(std::lround(spec.length / spec.spacing));
  for (int mu = 0; mu < spec.dims; ++mu) ls.extent[static_cast<std::size_t>(mu)] = n;
  ls.spacing = spec.spacing;
  ls.boundary = Boundary::kPeriodic;
  return Lattice(ls);
}

namespace detail {

/// Wave number of one period across the lattice along an axis.
inline double base_wavenumber(const Lattice& lattice, int axis) {
  return 2.0 * std::numbers::pi / (lattice.extent(axis) * lattice.spacing());
}

/// Phase k_mu x_mu summed with integer weights over the first two axes.
inline double phase(const Lattice& lattice, const Site& s, double w0, double w1) {
  double p = w0 * base_wavenumber(lattice, 0) * lattice.position(s, 0);
  if (lattice.dims() > 1) p += w1 * base_wavenumber(lattice, 1) * lattice.position(s, 1);
  return p;
}

}  // namespace detail

/// Non-integrable smooth real field, a_mu = offset + amp cos(k x + mu).
inline RealGaugeField smooth_gauge_field(const Lattice& lattice, double offset, double amplitude, double w0, double w1) {
  return field_from_function(lattice, [&](const Site& s, int mu) {
    return offset + 0.1 * mu + amplitude * std::cos(detail::phase(lattice, s, w0, w1) + mu);
  });
}

inline ComplexLatticeField smooth_scalar(const Lattice& lattice) {
  return ComplexLatticeField(lattice, [&](const Site& s) {
    const double p = detail::phase(lattice, s, 1.0, 2.0);
    return std::polar(1.0, p) * (1.0 + 0.3 * std::cos(detail::phase(lattice, s, 0.0, 1.0)));
  });
}

inline MultipletField smooth_multiplet(const Lattice& lattice, std::size_t components) {
  MultipletField psi(lattice, components);
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Site s = lattice.site(i);
    for (std::size_t c = 0; c < components; ++c) {
      const double w = 1.0 + static_cast<double>(c);
      psi.at(i, c) = std::polar(1.0 / w, detail::phase(lattice, s, w, 2.0 - w)) *
                     (1.0 + 0.25 * std::sin(detail::phase(lattice, s, 1.0, 1.0) + static_cast<double>(c)));
    }
  }
  return psi;
}

inline GaugeTransformation smooth_transformation(const Lattice& lattice, PhaseProfile phase_profile,
                                                 ThetaProfile theta_profile) {
  GaugeTransformation t;
  t.phase.resize(lattice.volume());
  t.theta.resize(lattice.volume(), Vec3{0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Site s = lattice.site(i);
    t.phase[i] = phase_profile == PhaseProfile::kGlobal
                     ? 0.9
                     : 0.8 * std::sin(detail::phase(lattice, s, 1.0, 0.0)) + 0.5 * std::cos(detail::phase(lattice, s, 0.0, 1.0));
    switch (theta_profile) {
      case ThetaProfile::kZero:
        break;
      case ThetaProfile::kGlobal:
        t.theta[i] = Vec3{0.7, -0.4, 1.1};
        break;
      case ThetaProfile::kLocal:
        t.theta[i] = Vec3{0.6 * std::sin(detail::phase(lattice, s, 1.0, 0.0)),
                          0.4 * std::cos(detail::phase(lattice, s, 0.0, 1.0)),
                          0.3 * std::sin(detail::phase(lattice, s, 1.0, 1.0))};
        break;
    }
  }
  return t;
}

inline AbelianConfig smooth_abelian_config(const Lattice& lattice, const SmoothFixtureSpec& spec) {
  return AbelianConfig{smooth_gauge_field(lattice, 0.4, 0.3, 1.0, 0.0), smooth_gauge_field(lattice, 0.2, 0.5, 0.0, 1.0),
                       spec.g_r, spec.g_i, spec.mass, spec.lambda};
}

inline SU2Config smooth_su2_config(const Lattice& lattice, const SmoothFixtureSpec& spec) {
  SU2Config cfg{smooth_abelian_config(lattice, spec), zero_omega(lattice), spec.g};
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Site s = lattice.site(i);
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      const double p = detail::phase(lattice, s, 1.0, 1.0);
      cfg.omega[i * static_cast<std::size_t>(lattice.dims()) + static_cast<std::size_t>(mu)] =
          Vec3{0.3 * std::cos(p + mu), 0.2 + 0.1 * mu, -0.25 * std::sin(p - 0.5 * mu)};
    }
  }
  return cfg;
}

}  // namespace scaledgauge
