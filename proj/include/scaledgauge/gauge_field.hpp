#pragma once

// Real gauge field A_mu(x) on a lattice and the scale transports it induces.
//
// The link x -> x + mu carries the scale factor exp(A_mu(x) * spacing); the
// opposite orientation of the same link carries exp(-A_mu(x) * spacing).
// Transports along paths multiply link factors, equivalently exponentiate
// the signed sum of A * spacing.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "scaledgauge/error.hpp"
#include "scaledgauge/lattice.hpp"
#include "scaledgauge/random.hpp"

namespace scaledgauge {

class RealGaugeField {
 public:
  explicit RealGaugeField(const Lattice& lattice)
      : lattice_(lattice), components_(lattice.volume() * static_cast<std::size_t>(lattice.dims()), 0.0) {}

  const Lattice& lattice() const { return lattice_; }

  double at(const Site& s, int axis) const { return components_[slot(lattice_.index(s), axis)]; }
  double at(std::size_t site_index, int axis) const { return components_[slot(site_index, axis)]; }

  void set(const Site& s, int axis, double value) { set(lattice_.index(s), axis, value); }
  void set(std::size_t site_index, int axis, double value) {
    if (!std::isfinite(value)) throw Error(ErrorKind::kNonFinite, "gauge field component");
    components_[slot(site_index, axis)] = value;
  }

  const std::vector<double>& components() const { return components_; }

  /// Site potential f when the field was built as a discrete gradient.
  const std::optional<std::vector<double>>& potential() const { return potential_; }
  void set_potential(std::vector<double> f) { potential_ = std::move(f); }

  friend bool operator==(const RealGaugeField& a, const RealGaugeField& b) {
    return a.components_ == b.components_;
  }

 private:
  std::size_t slot(std::size_t site_index, int axis) const {
    return site_index * static_cast<std::size_t>(lattice_.dims()) + static_cast<std::size_t>(axis);
  }

  Lattice lattice_;
  std::vector<double> components_;
  std::optional<std::vector<double>> potential_;
};

/// Positive scale factor of a directed link, held as its logarithm so that
/// group composition (and inversion) is exact addition of exponents.
class LinkFactor {
 public:
  LinkFactor() = default;
  explicit LinkFactor(double exponent) : exponent_(exponent) {}

  double exponent() const { return exponent_; }
  double value() const { return std::exp(exponent_); }

  LinkFactor inverse() const { return LinkFactor(-exponent_); }

  friend LinkFactor operator*(LinkFactor a, LinkFactor b) {
    return LinkFactor(a.exponent_ + b.exponent_);
  }

 private:
  double exponent_ = 0.0;
};

inline LinkFactor link_factor(const RealGaugeField& a, const Site& s, const Step& step) {
  const Lattice& lattice = a.lattice();
  lattice.check_step(step);
  if (step.orientation > 0) return LinkFactor(a.at(s, step.axis) * lattice.spacing());
  const Site tail = neighbor(s, step, lattice);
  return LinkFactor(-(a.at(tail, step.axis) * lattice.spacing()));
}

struct PathTransport {
  double value = 1.0;
  double exponent = 0.0;
  LatticePath path;
};

/// exp of the signed sum of A * spacing along the path.
inline PathTransport path_transport(const RealGaugeField& a, const LatticePath& path) {
  const Lattice& lattice = a.lattice();
  double exponent = 0.0;
  Site s = path.start;
  for (const Step& step : path.steps) {
    exponent += link_factor(a, s, step).exponent();
    s = neighbor(s, step, lattice);
  }
  return PathTransport{std::exp(exponent), exponent, path};
}

/// Product of the individual link factor values along the path.
inline double path_transport_product(const RealGaugeField& a, const LatticePath& path) {
  const Lattice& lattice = a.lattice();
  double product = 1.0;
  Site s = path.start;
  for (const Step& step : path.steps) {
    product *= link_factor(a, s, step).value();
    s = neighbor(s, step, lattice);
  }
  return product;
}

// ---------------------------------------------------------------------------
// Continuous paths

using Point = std::array<double, kMaxDims>;

struct ParamPath {
  int dims = 2;
  std::function<Point(double)> position;
  std::function<Point(double)> tangent;
};

inline ParamPath straight_path(const Point& from, const Point& to, int dims) {
  Point delta{};
  for (int mu = 0; mu < dims; ++mu) delta[static_cast<std::size_t>(mu)] = to[static_cast<std::size_t>(mu)] - from[static_cast<std::size_t>(mu)];
  return ParamPath{
      dims,
      [from, delta, dims](double s) {
        Point p{};
        for (int mu = 0; mu < dims; ++mu) {
          const auto i = static_cast<std::size_t>(mu);
          p[i] = from[i] + s * delta[i];
        }
        return p;
      },
      [delta](double) { return delta; }};
}

using ContinuousField = std::function<Point(const Point&)>;

/// exp of the line integral of A along P, with the exponent computed by
/// composite Simpson quadrature over n_quad (a power of two) panels.
inline double line_integral_transport(const ContinuousField& field, const ParamPath& path,
                                      int n_quad = 256) {
  if (n_quad < 2 || (n_quad & (n_quad - 1)) != 0) {
    throw Error(ErrorKind::kInvalidArgument, "n_quad must be a power of two >= 2");
  }
  auto integrand = [&](double s) {
    const Point p = path.position(s);
    const Point a = field(p);
    const Point dp = path.tangent(s);
    double dot = 0.0;
    for (int mu = 0; mu < path.dims; ++mu) {
      dot += a[static_cast<std::size_t>(mu)] * dp[static_cast<std::size_t>(mu)];
    }
    if (!std::isfinite(dot)) throw Error(ErrorKind::kNonFinite, "line integrand sample");
    return dot;
  };
  const double h = 1.0 / n_quad;
  double sum = integrand(0.0) + integrand(1.0);
  for (int k = 1; k < n_quad; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * integrand(k * h);
  return std::exp(sum * h / 3.0);
}

// ---------------------------------------------------------------------------
// Curl and integrability

inline double plaquette_curl(const RealGaugeField& a, const Plaquette& q) {
  const Lattice& lattice = a.lattice();
  const double dx = lattice.spacing();
  const Site x_mu = neighbor(q.corner, forward(q.mu), lattice);
  const Site x_nu = neighbor(q.corner, forward(q.nu), lattice);
  return (a.at(x_mu, q.nu) - a.at(q.corner, q.nu)) / dx -
         (a.at(x_nu, q.mu) - a.at(q.corner, q.mu)) / dx;
}

inline LinkFactor plaquette_loop_factor(const RealGaugeField& a, const Plaquette& q) {
  const Lattice& lattice = a.lattice();
  const LatticePath loop = plaquette_loop(q);
  LinkFactor total;
  Site s = loop.start;
  for (const Step& step : loop.steps) {
    total = total * link_factor(a, s, step);
    s = neighbor(s, step, lattice);
  }
  return total;
}

struct IntegrabilityReport {
  bool integrable = true;
  std::optional<Plaquette> worst_plaquette;
  double worst_deviation = 0.0;
  std::size_t plaquettes = 0;
};

inline IntegrabilityReport is_integrable(const RealGaugeField& a, double tol = 1e-10) {
  IntegrabilityReport report;
  for (const Plaquette& q : enumerate_plaquettes(a.lattice())) {
    ++report.plaquettes;
    const double deviation = std::abs(plaquette_loop_factor(a, q).value() - 1.0);
    if (!report.worst_plaquette || deviation > report.worst_deviation) {
      report.worst_deviation = deviation;
      report.worst_plaquette = q;
    }
  }
  report.integrable = report.worst_deviation <= tol;
  return report;
}

/// Relative spread (max - min) / max|t| of the transports along a set of paths.
inline double transport_spread(const RealGaugeField& a, const std::vector<LatticePath>& paths) {
  if (paths.empty()) return 0.0;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& p : paths) {
    const double t = path_transport(a, p).value;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return (hi - lo) / std::max(std::abs(hi), std::abs(lo));
}

// ---------------------------------------------------------------------------
// Fixture generators

enum class FieldKind { kZero, kConstant, kGradient, kVortex, kSeededRandom };

inline FieldKind parse_field_kind(const std::string& name) {
  if (name == "zero") return FieldKind::kZero;
  if (name == "constant") return FieldKind::kConstant;
  if (name == "gradient") return FieldKind::kGradient;
  if (name == "vortex") return FieldKind::kVortex;
  if (name == "seeded-random") return FieldKind::kSeededRandom;
  throw Error(ErrorKind::kUnknownKind, "unknown field kind '" + name + "'");
}

inline const char* to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::kZero: return "zero";
    case FieldKind::kConstant: return "constant";
    case FieldKind::kGradient: return "gradient";
    case FieldKind::kVortex: return "vortex";
    case FieldKind::kSeededRandom: return "seeded-random";
  }
  return "unknown";
}

struct FieldParams {
  std::vector<double> constant;     // per-axis value for kConstant
  double amplitude = 0.3;           // gradient potential / random half-width
  int wavenumber = 1;               // gradient potential periods per extent
  double vortex_strength = 0.1;
  std::optional<std::array<double, 2>> vortex_center;  // physical coords; default lattice centre
  std::uint64_t seed = 1;
};

/// A_mu(x) = [f(x + mu) - f(x)] / spacing for a per-site potential f.
inline RealGaugeField gradient_field(const Lattice& lattice, const std::function<double(const Site&)>& f) {
  RealGaugeField a(lattice);
  std::vector<double> potential(lattice.volume());
  for (std::size_t i = 0; i < lattice.volume(); ++i) potential[i] = f(lattice.site(i));
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Site s = lattice.site(i);
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      if (lattice.boundary() == Boundary::kClamped && s[mu] + 1 >= lattice.extent(mu)) continue;
      const Site next = neighbor(s, forward(mu), lattice);
      a.set(i, mu, (potential[lattice.index(next)] - potential[i]) / lattice.spacing());
    }
  }
  a.set_potential(std::move(potential));
  return a;
}

inline RealGaugeField field_from_function(const Lattice& lattice,
                                          const std::function<double(const Site&, int)>& fn) {
  RealGaugeField a(lattice);
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Site s = lattice.site(i);
    for (int mu = 0; mu < lattice.dims(); ++mu) a.set(i, mu, fn(s, mu));
  }
  return a;
}

inline RealGaugeField generate_field(FieldKind kind, const FieldParams& params, const Lattice& lattice) {
  switch (kind) {
    case FieldKind::kZero:
      return RealGaugeField(lattice);
    case FieldKind::kConstant: {
      if (static_cast<int>(params.constant.size()) != lattice.dims()) {
        throw Error(ErrorKind::kInvalidArgument, "constant field needs one value per axis");
      }
      return field_from_function(lattice, [&](const Site&, int mu) {
        return params.constant[static_cast<std::size_t>(mu)];
      });
    }
    case FieldKind::kGradient: {
      return gradient_field(lattice, [&](const Site& s) {
        double f = 0.0;
        for (int mu = 0; mu < lattice.dims(); ++mu) {
          const double phase = 2.0 * std::numbers::pi * params.wavenumber * s[mu] / lattice.extent(mu);
          f += std::sin(phase + 0.7 * mu) + 0.5 * std::cos(2.0 * phase - 0.3 * mu);
        }
        return params.amplitude * f;
      });
    }
    case FieldKind::kVortex: {
      if (lattice.dims() < 2) throw Error(ErrorKind::kInvalidArgument, "vortex field needs dims >= 2");
      const double dx = lattice.spacing();
      const std::array<double, 2> center = params.vortex_center.value_or(
          std::array<double, 2>{0.5 * (lattice.extent(0) - 1) * dx, 0.5 * (lattice.extent(1) - 1) * dx});
      const double c = params.vortex_strength;
      return field_from_function(lattice, [&](const Site& s, int mu) {
        if (mu == 0) return -c * (s[1] * dx - center[1]);
        if (mu == 1) return c * (s[0] * dx - center[0]);
        return 0.0;
      });
    }
    case FieldKind::kSeededRandom: {
      Rng rng(params.seed);
      return field_from_function(lattice, [&](const Site&, int) {
        return rng.uniform(-params.amplitude, params.amplitude);
      });
    }
  }
  throw Error(ErrorKind::kUnknownKind, "unknown field kind");
}

}  // namespace scaledgauge
