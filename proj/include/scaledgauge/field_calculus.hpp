#pragma once

// Complex scalar fields on the lattice: plain and covariant forward
// derivatives, and spacetime integrals transported to an anchor site.
//
// Field values are stored as structure-local numbers. Moving a value from a
// neighbour to x keeps the number and multiplies by the link factor; there is
// no other conversion.

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "scaledgauge/error.hpp"
#include "scaledgauge/gauge_field.hpp"
#include "scaledgauge/lattice.hpp"
#include "scaledgauge/scaled_numbers.hpp"

namespace scaledgauge {

class ComplexLatticeField {
 public:
  explicit ComplexLatticeField(const Lattice& lattice) : lattice_(lattice), values_(lattice.volume()) {}

  ComplexLatticeField(const Lattice& lattice, const std::function<ComplexValue(const Site&)>& fn)
      : ComplexLatticeField(lattice) {
    for (std::size_t i = 0; i < lattice_.volume(); ++i) set(i, fn(lattice_.site(i)));
  }

  const Lattice& lattice() const { return lattice_; }

  const ComplexValue& operator[](std::size_t i) const { return values_[i]; }
  const ComplexValue& at(const Site& s) const { return values_[lattice_.index(s)]; }

  void set(std::size_t i, ComplexValue v) {
    if (!is_finite(v)) throw Error(ErrorKind::kNonFinite, "complex lattice field value");
    values_[i] = v;
  }

  const std::vector<ComplexValue>& values() const { return values_; }

  friend bool operator==(const ComplexLatticeField& a, const ComplexLatticeField& b) {
    return a.values_ == b.values_;
  }

 private:
  Lattice lattice_;
  std::vector<ComplexValue> values_;
};

/// One derivative component per site.
using DerivativeResult = ComplexLatticeField;

// Fixtures ------------------------------------------------------------------

inline ComplexLatticeField constant_field(const Lattice& lattice, ComplexValue c) {
  return ComplexLatticeField(lattice, [c](const Site&) { return c; });
}

/// exp(i k . x) with x the physical site position.
inline ComplexLatticeField plane_wave(const Lattice& lattice, const std::vector<double>& k) {
  return ComplexLatticeField(lattice, [&](const Site& s) {
    double phase = 0.0;
    for (int mu = 0; mu < lattice.dims() && mu < static_cast<int>(k.size()); ++mu) {
      phase += k[static_cast<std::size_t>(mu)] * lattice.position(s, mu);
    }
    return std::polar(1.0, phase);
  });
}

inline ComplexLatticeField gaussian_bump(const Lattice& lattice, const Point& center, double width) {
  return ComplexLatticeField(lattice, [&](const Site& s) {
    double r2 = 0.0;
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      const double d = lattice.position(s, mu) - center[static_cast<std::size_t>(mu)];
      r2 += d * d;
    }
    return ComplexValue(std::exp(-r2 / (2.0 * width * width)), 0.0);
  });
}

inline ComplexLatticeField coordinate_field(const Lattice& lattice, int axis) {
  return ComplexLatticeField(lattice, [&](const Site& s) { return ComplexValue(lattice.position(s, axis), 0.0); });
}

// Derivatives ---------------------------------------------------------------

namespace detail {

inline void require_periodic(const Lattice& lattice) {
  if (lattice.boundary() != Boundary::kPeriodic) {
    throw Error(ErrorKind::kInvalidArgument, "forward-difference derivatives need a periodic lattice");
  }
}

inline void require_same_lattice(const Lattice& a, const Lattice& b) {
  if (a.dims() != b.dims() || a.volume() != b.volume() || a.spacing() != b.spacing()) {
    throw Error(ErrorKind::kDimensionMismatch, "fields live on different lattices");
  }
}

}  // namespace detail

inline DerivativeResult plain_derivative(const ComplexLatticeField& phi, int axis) {
  const Lattice& lattice = phi.lattice();
  detail::require_periodic(lattice);
  lattice.check_step(forward(axis));
  DerivativeResult out(lattice);
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Site next = neighbor(lattice.site(i), forward(axis), lattice);
    out.set(i, (phi.at(next) - phi[i]) / lattice.spacing());
  }
  return out;
}

/// [r_{x+mu,x} Phi(x+mu) - Phi(x)] / spacing.
inline DerivativeResult covariant_derivative(const ComplexLatticeField& phi, const RealGaugeField& a,
                                             int axis) {
  const Lattice& lattice = phi.lattice();
  detail::require_periodic(lattice);
  detail::require_same_lattice(lattice, a.lattice());
  lattice.check_step(forward(axis));
  DerivativeResult out(lattice);
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Site s = lattice.site(i);
    const Site next = neighbor(s, forward(axis), lattice);
    const double r = link_factor(a, s, forward(axis)).value();
    out.set(i, (r * phi.at(next) - phi[i]) / lattice.spacing());
  }
  return out;
}

/// (d' + A_mu) Phi, the first-order expansion of the covariant derivative.
inline DerivativeResult first_order_covariant(const ComplexLatticeField& phi, const RealGaugeField& a,
                                              int axis) {
  detail::require_same_lattice(phi.lattice(), a.lattice());
  DerivativeResult out = plain_derivative(phi, axis);
  for (std::size_t i = 0; i < phi.lattice().volume(); ++i) {
    out.set(i, out[i] + a.at(i, axis) * phi[i]);
  }
  return out;
}

// Transported integrals -----------------------------------------------------

enum class PathRule { kCanonicalStaircase, kReverseStaircase, kRequireIntegrable };

inline PathRule parse_path_rule(const std::string& name) {
  if (name == "canonical-staircase") return PathRule::kCanonicalStaircase;
  if (name == "reverse-staircase") return PathRule::kReverseStaircase;
  if (name == "require-integrable") return PathRule::kRequireIntegrable;
  throw Error(ErrorKind::kUnknownKind, "unknown path rule '" + name + "'");
}

inline LatticePath integration_path(const Site& anchor, const Site& y, const Lattice& lattice, PathRule rule) {
  return rule == PathRule::kReverseStaircase ? reverse_axis_ordered_path(anchor, y, lattice)
                                             : axis_ordered_path(anchor, y, lattice);
}

/// Sum over sites y of r^{P(y)}_{y,anchor} Phi(y) spacing^dims.
inline ComplexValue transported_integral(const ComplexLatticeField& phi, const RealGaugeField& a,
                                         const Site& anchor, PathRule rule = PathRule::kCanonicalStaircase,
                                         double integrability_tol = 1e-10) {
  const Lattice& lattice = phi.lattice();
  detail::require_same_lattice(lattice, a.lattice());
  if (!lattice.contains(anchor)) throw Error(ErrorKind::kOutOfRange, "anchor outside the lattice");
  if (rule == PathRule::kRequireIntegrable) {
    const IntegrabilityReport check = is_integrable(a, integrability_tol);
    if (!check.integrable) {
      throw Error(ErrorKind::kNotIntegrable,
                  "gauge field is not integrable (worst loop deviation " +
                      std::to_string(check.worst_deviation) + ")");
    }
  }
  const double measure = std::pow(lattice.spacing(), lattice.dims());
  ComplexValue sum = 0.0;
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Site y = lattice.site(i);
    const double r = path_transport(a, integration_path(anchor, y, lattice, rule)).value;
    sum += r * phi[i] * measure;
  }
  return sum;
}

struct AnchorPairRecord {
  std::size_t from = 0;  // index into the anchor list (x)
  std::size_t to = 0;    // x'
  ComplexValue ratio;    // integral at x' / integral at x
  double expected = 1.0; // transport from x' to x
  double deviation = 0.0;
};

struct AnchorReport {
  std::vector<Site> anchors;
  std::vector<ComplexValue> integrals;
  std::vector<AnchorPairRecord> pairs;

  double worst_deviation() const {
    double w = 0.0;
    for (const auto& p : pairs) w = std::max(w, p.deviation);
    return w;
  }
};

/// Compares integrals anchored at different sites against the transport law
/// integral_{x'} = r_{x,x'} * integral_{x}.
inline AnchorReport anchor_dependence_report(const ComplexLatticeField& phi, const RealGaugeField& a,
                                             const std::vector<Site>& anchors,
                                             double integrability_tol = 1e-10) {
  const IntegrabilityReport check = is_integrable(a, integrability_tol);
  if (!check.integrable) {
    throw Error(ErrorKind::kNotIntegrable, "anchor report needs an integrable gauge field");
  }
  const Lattice& lattice = phi.lattice();
  AnchorReport report;
  report.anchors = anchors;
  for (const Site& x : anchors) report.integrals.push_back(transported_integral(phi, a, x));
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      AnchorPairRecord rec;
      rec.from = i;
      rec.to = j;
      rec.ratio = report.integrals[j] / report.integrals[i];
      rec.expected = path_transport(a, axis_ordered_path(anchors[j], anchors[i], lattice)).value;
      rec.deviation = std::abs(rec.ratio - rec.expected) / rec.expected;
      report.pairs.push_back(rec);
    }
  }
  return report;
}

}  // namespace scaledgauge
