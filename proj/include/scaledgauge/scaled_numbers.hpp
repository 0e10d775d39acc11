#pragma once

// Scaled complex-number structures.
//
// A structure with scale r reads every element of the common base set at
// 1/r of its reference-frame value, and compensates its operations so the
// field axioms keep holding:
//
//   value a in scale r  <->  reference value r*a
//   add/sub unchanged, mul -> mul/r, div -> r*div, conj(a) -> r*conj(a/r)
//
// Elements are stored by their reference (scale-1) value. Structure-local
// values are views computed on demand.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scaledgauge/error.hpp"
#include "scaledgauge/random.hpp"

namespace scaledgauge {

using ComplexValue = std::complex<double>;

inline bool is_finite(const ComplexValue& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Positive, finite, real scale factor r.
class ScaleFactor {
 public:
  explicit ScaleFactor(double r) : r_(r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw Error(ErrorKind::kInvalidArgument, "scale factor must be positive and finite");
    }
  }

  double value() const noexcept { return r_; }

  friend bool operator==(const ScaleFactor&, const ScaleFactor&) = default;

 private:
  double r_;
};

struct ScaledStructure {
  ScaleFactor scale{1.0};

  double r() const noexcept { return scale.value(); }
};

inline ScaledStructure reference_structure() { return ScaledStructure{ScaleFactor(1.0)}; }

/// An element of the base set, labelled by its value in the reference frame.
struct BaseElement {
  ComplexValue canonical;

  friend bool operator==(const BaseElement&, const BaseElement&) = default;
};

/// A number value together with the structure it is read in.
struct StructureValue {
  ComplexValue value;
  ScaleFactor scale{1.0};
};

namespace detail {

inline BaseElement checked(ComplexValue z, const char* op) {
  if (!is_finite(z)) {
    throw Error(ErrorKind::kArithmeticOverflow, std::string(op) + " produced a non-finite value");
  }
  return BaseElement{z};
}

}  // namespace detail

inline StructureValue value_of(const BaseElement& e, const ScaledStructure& s) {
  return StructureValue{e.canonical / s.r(), s.scale};
}

inline BaseElement element_of(const StructureValue& a) {
  return BaseElement{a.scale.value() * a.value};
}

inline BaseElement zero_s(const ScaledStructure&) { return BaseElement{0.0}; }

/// Multiplicative identity of the structure; its reference value is r.
inline BaseElement one_s(const ScaledStructure& s) { return BaseElement{s.r()}; }

inline BaseElement add_s(const BaseElement& u, const BaseElement& v, const ScaledStructure&) {
  return detail::checked(u.canonical + v.canonical, "add_s");
}

inline BaseElement sub_s(const BaseElement& u, const BaseElement& v, const ScaledStructure&) {
  return detail::checked(u.canonical - v.canonical, "sub_s");
}

inline BaseElement neg_s(const BaseElement& u, const ScaledStructure&) {
  return BaseElement{-u.canonical};
}

inline BaseElement mul_s(const BaseElement& u, const BaseElement& v, const ScaledStructure& s) {
  return detail::checked(u.canonical * v.canonical / s.r(), "mul_s");
}

inline BaseElement div_s(const BaseElement& u, const BaseElement& v, const ScaledStructure& s) {
  if (v.canonical == ComplexValue(0.0)) {
    throw Error(ErrorKind::kDivisionByZero, "div_s by the zero element");
  }
  return detail::checked(s.r() * (u.canonical / v.canonical), "div_s");
}

/// r * conj(u / r). Exact for real r since conj only flips the sign of the
/// imaginary part; computed as conj(u) to keep the involution bitwise.
inline BaseElement conj_s(const BaseElement& u, const ScaledStructure&) {
  return BaseElement{std::conj(u.canonical)};
}

/// Same-number map: keeps the numeric value, changes the structure it is read
/// in. Covers both the F and W maps between structures.
inline StructureValue same_number_map(const StructureValue& a, const ScaledStructure& target) {
  return StructureValue{a.value, target.scale};
}

struct SeriesOptions {
  int n_max = 30;
  double divergence_threshold = 1e150;
};

/// Truncated exponential series coefficients 1/k!, k = 0..n_max.
inline std::vector<ComplexValue> exp_coefficients(int n_max = SeriesOptions{}.n_max) {
  std::vector<ComplexValue> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n_max) + 1);
  double c = 1.0;
  for (int k = 0; k <= n_max; ++k) {
    if (k > 0) c /= k;
    coeffs.emplace_back(c);
  }
  return coeffs;
}

/// Evaluates sum_k c_k z^k entirely with the structure's compensated
/// operations. Coefficients are number values in `s`.
inline StructureValue eval_analytic(std::span<const ComplexValue> coeffs, const StructureValue& z,
                                    const ScaledStructure& s, const SeriesOptions& options = {}) {
  if (!(z.scale == s.scale)) {
    throw Error(ErrorKind::kScaleMismatch, "argument does not live in the evaluation structure");
  }
  const BaseElement z_el = element_of(z);
  BaseElement power = one_s(s);
  BaseElement sum = zero_s(s);
  const std::size_t n_terms =
      std::min(coeffs.size(), static_cast<std::size_t>(std::max(options.n_max, 0)) + 1);
  const double limit = options.divergence_threshold * s.r();
  for (std::size_t k = 0; k < n_terms; ++k) {
    if (k > 0) {
      if (std::abs(power.canonical) > limit) {
        throw Error(ErrorKind::kSeriesDivergence, "power of the argument exceeds the guard");
      }
      power = mul_s(power, z_el, s);
    }
    const BaseElement coeff = element_of(StructureValue{coeffs[k], s.scale});
    sum = add_s(sum, mul_s(coeff, power, s), s);
    if (std::abs(sum.canonical) > limit) {
      throw Error(ErrorKind::kSeriesDivergence, "partial sum exceeds the guard");
    }
  }
  return value_of(sum, s);
}

// ---------------------------------------------------------------------------
// Axiom suite

struct AxiomResidual {
  std::string name;
  double max_residual = 0.0;
  bool passed = true;
};

struct AxiomReport {
  double scale = 1.0;
  int samples = 0;
  double tolerance = 0.0;
  std::vector<AxiomResidual> axioms;

  bool passed() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const auto& a) { return a.passed; });
  }

  double worst() const {
    double w = 0.0;
    for (const auto& a : axioms) w = std::max(w, a.max_residual);
    return w;
  }
};

namespace detail {

// Reference-frame Horner evaluation, used to cross-check the structure path.
inline ComplexValue horner(std::span<const ComplexValue> coeffs, ComplexValue z) {
  ComplexValue acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline double abs_series(std::span<const ComplexValue> coeffs, double z_abs) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z_abs + std::abs(*it);
  return acc;
}

class ResidualTable {
 public:
  void record(const std::string& name, double residual) {
    for (auto& entry : entries_) {
      if (entry.name == name) {
        entry.max_residual = std::max(entry.max_residual, residual);
        return;
      }
    }
    entries_.push_back(AxiomResidual{name, residual, true});
  }

  std::vector<AxiomResidual> finish(double tol) {
    for (auto& entry : entries_) entry.passed = entry.max_residual <= tol;
    return entries_;
  }

 private:
  std::vector<AxiomResidual> entries_;
};

}  // namespace detail

/// Property check of the field axioms in `s` on seeded random operands whose
/// structure-local magnitudes lie in [1e-3, 1e3]. Residuals are normalised by
/// the magnitude of the terms on each side so a single tolerance applies to
/// every identity.
inline AxiomReport axiom_suite(const ScaledStructure& s, int n_samples, std::uint64_t seed,
                               double tol) {
  if (n_samples < 1) throw Error(ErrorKind::kInvalidArgument, "axiom_suite needs n_samples >= 1");
  Rng rng(seed);
  const double r = s.r();
  detail::ResidualTable table;

  auto draw = [&] {
    return element_of(StructureValue{rng.complex_log_magnitude(1e-3, 1e3), s.scale});
  };
  auto rel = [](ComplexValue a, ComplexValue b, double norm) {
    return std::abs(a - b) / norm;
  };

  for (int i = 0; i < n_samples; ++i) {
    const BaseElement u = draw();
    const BaseElement v = draw();
    const BaseElement w = draw();
    const double au = std::abs(u.canonical);
    const double av = std::abs(v.canonical);
    const double aw = std::abs(w.canonical);

    table.record("add_commutative",
                 rel(add_s(u, v, s).canonical, add_s(v, u, s).canonical, au + av));
    table.record("add_associative", rel(add_s(add_s(u, v, s), w, s).canonical,
                                        add_s(u, add_s(v, w, s), s).canonical, au + av + aw));
    table.record("mul_commutative",
                 rel(mul_s(u, v, s).canonical, mul_s(v, u, s).canonical, au * av / r));
    table.record("mul_associative", rel(mul_s(mul_s(u, v, s), w, s).canonical,
                                        mul_s(u, mul_s(v, w, s), s).canonical, au * av * aw / r / r));
    table.record("distributive",
                 rel(mul_s(u, add_s(v, w, s), s).canonical,
                     add_s(mul_s(u, v, s), mul_s(u, w, s), s).canonical, au * (av + aw) / r));
    table.record("additive_identity", rel(add_s(u, zero_s(s), s).canonical, u.canonical, au));
    table.record("multiplicative_identity",
                 rel(mul_s(one_s(s), u, s).canonical, u.canonical, au));
    table.record("additive_inverse",
                 rel(add_s(u, neg_s(u, s), s).canonical, zero_s(s).canonical, au));
    table.record("multiplicative_inverse",
                 rel(mul_s(u, div_s(one_s(s), u, s), s).canonical, one_s(s).canonical, r));
    table.record("zero_absorbing", rel(mul_s(zero_s(s), u, s).canonical, 0.0, au));
    table.record("involution", rel(conj_s(conj_s(u, s), s).canonical, u.canonical, au));
    table.record("conj_over_add",
                 rel(conj_s(add_s(u, v, s), s).canonical,
                     add_s(conj_s(u, s), conj_s(v, s), s).canonical, au + av));
    table.record("conj_over_mul",
                 rel(conj_s(mul_s(u, v, s), s).canonical,
                     mul_s(conj_s(u, s), conj_s(v, s), s).canonical, au * av / r));

    // Polynomial of degree <= 8 with structure-local coefficients; the
    // structure evaluation must read as r * f(a) in the reference frame.
    const int degree = 1 + rng.index(8);
    std::vector<ComplexValue> coeffs(static_cast<std::size_t>(degree) + 1);
    for (auto& c : coeffs) c = rng.complex_normal();
    const ComplexValue a = rng.complex_log_magnitude(1e-1, 2.0);
    const StructureValue a_s{a, s.scale};
    const ComplexValue f_a = detail::horner(coeffs, a);
    const double cond = detail::abs_series(coeffs, std::abs(a));
    const ComplexValue f_s = element_of(eval_analytic(coeffs, a_s, s)).canonical;
    table.record("equation_scaling", rel(f_s, r * f_a, r * cond));

    // f^r(a^r) = b^r  <=>  f(a) = b, for a true and a false right-hand side.
    const double decision_tol = 1e-9 * cond;
    const ComplexValue b_false = f_a + ComplexValue(1e-3 * cond, 0.0);
    int disagreements = 0;
    for (ComplexValue b : {f_a, b_false}) {
      const bool scaled_holds = std::abs(f_s - r * b) <= r * decision_tol;
      const bool plain_holds = std::abs(f_a - b) <= decision_tol;
      if (scaled_holds != plain_holds) ++disagreements;
    }
    table.record("equation_equivalence", static_cast<double>(disagreements));

    // Roots of P map to roots of P^r.
    const int root_count = 1 + rng.index(4);
    std::vector<ComplexValue> roots(static_cast<std::size_t>(root_count));
    for (auto& z : roots) z = rng.complex_log_magnitude(1e-1, 3.0);
    std::vector<ComplexValue> poly{1.0};
    for (const auto& z : roots) {
      std::vector<ComplexValue> next(poly.size() + 1, 0.0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= z * poly[k];
      }
      poly = std::move(next);
    }
    for (const auto& z : roots) {
      const ComplexValue p_s = element_of(eval_analytic(poly, StructureValue{z, s.scale}, s)).canonical;
      table.record("root_correspondence", std::abs(p_s) / (r * detail::abs_series(poly, std::abs(z))));
    }
  }

  AxiomReport report;
  report.scale = r;
  report.samples = n_samples;
  report.tolerance = tol;
  report.axioms = table.finish(tol);
  return report;
}

}  // namespace scaledgauge
