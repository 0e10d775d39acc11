#pragma once

// Scaled Hilbert structures.
//
// The local representation of a neighbouring Hilbert space is described in
// the base frame by
//
//   vectors      psi     -> r V psi
//   +, -         unchanged
//   scalar mult  .       -> . / r
//   inner prod   <,>     -> <,> / r
//
// Vectors are stored in the base (scale 1, untransformed basis) frame.

#include <complex>
#include <string>
#include <vector>

#include "scaledgauge/error.hpp"
#include "scaledgauge/matrix.hpp"
#include "scaledgauge/scaled_numbers.hpp"

namespace scaledgauge {

struct ScaledHilbertStructure {
  ScaleFactor scale{1.0};
  ComplexMatrix basis_map = ComplexMatrix::identity(2);

  double r() const { return scale.value(); }
  std::size_t dimension() const { return basis_map.size(); }
  ScaledStructure numbers() const { return ScaledStructure{scale}; }
};

inline ScaledHilbertStructure make_hilbert_structure(double r, ComplexMatrix v, double unitarity_tol = 1e-12) {
  if (unitarity_defect(v) > unitarity_tol) {
    throw Error(ErrorKind::kInvalidArgument, "basis map is not unitary");
  }
  return ScaledHilbertStructure{ScaleFactor(r), std::move(v)};
}

namespace detail {

inline void require_dimension(const HilbertVector& v, std::size_t n) {
  if (v.size() != n) throw Error(ErrorKind::kDimensionMismatch, "vector dimension does not match structure");
}

inline std::complex<double> inner(const HilbertVector& a, const HilbertVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::kDimensionMismatch, "inner product operands");
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

}  // namespace detail

/// Base-frame vector corresponding to psi in the scaled structure: r V psi.
inline HilbertVector vector_correspondence(const HilbertVector& psi, const ScaledHilbertStructure& s) {
  detail::require_dimension(psi, s.dimension());
  HilbertVector out = s.basis_map * psi;
  for (auto& c : out) c *= s.r();
  return out;
}

/// Scalar-vector product of the scaled structure, acting on base-frame
/// representatives: (element_of(alpha) * psi) / r.
inline HilbertVector scaled_scalar_mul(const StructureValue& alpha, const HilbertVector& psi_base,
                                       const ScaledHilbertStructure& s) {
  if (!(alpha.scale == s.scale)) {
    throw Error(ErrorKind::kScaleMismatch, "scalar does not belong to the structure's number field");
  }
  detail::require_dimension(psi_base, s.dimension());
  const ComplexValue a = element_of(alpha).canonical;
  HilbertVector out(psi_base.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * psi_base[i] / s.r();
  return out;
}

/// Inner product of the scaled structure. Its reference-frame reading is
/// <psi_base, phi_base> / r; the returned StructureValue therefore has
/// value <psi_base, phi_base> / r^2 in the scale-r number field.
inline StructureValue scaled_inner(const HilbertVector& psi_base, const HilbertVector& phi_base,
                                   const ScaledHilbertStructure& s) {
  detail::require_dimension(psi_base, s.dimension());
  detail::require_dimension(phi_base, s.dimension());
  const BaseElement element{detail::inner(psi_base, phi_base) / s.r()};
  return value_of(element, s.numbers());
}

inline HilbertVector scaled_add(const HilbertVector& psi_base, const HilbertVector& phi_base,
                                const ScaledHilbertStructure& s) {
  detail::require_dimension(psi_base, s.dimension());
  detail::require_dimension(phi_base, s.dimension());
  HilbertVector out(psi_base.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = psi_base[i] + phi_base[i];
  return out;
}

inline HilbertVector scaled_sub(const HilbertVector& psi_base, const HilbertVector& phi_base,
                                const ScaledHilbertStructure& s) {
  detail::require_dimension(psi_base, s.dimension());
  detail::require_dimension(phi_base, s.dimension());
  HilbertVector out(psi_base.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = psi_base[i] - phi_base[i];
  return out;
}

struct TransportStage {
  std::string label;
  HilbertVector components;
  double scale = 1.0;  // scale of the number field the components are read in
};

struct ThreeStepTransport {
  TransportStage basis_change;    // V psi, reference numbers
  TransportStage rescaled;        // r V psi, representing psi in the scaled structure
  TransportStage target;          // same components, relabelled to the target point
  const HilbertVector& final_vector() const { return target.components; }
};

inline ThreeStepTransport three_step_transport(const HilbertVector& psi, const ScaledHilbertStructure& s) {
  detail::require_dimension(psi, s.dimension());
  ThreeStepTransport out;
  out.basis_change = TransportStage{"basis-change", s.basis_map * psi, 1.0};
  HilbertVector scaled = out.basis_change.components;
  for (auto& c : scaled) c *= s.r();
  out.rescaled = TransportStage{"rescale", scaled, s.r()};
  out.target = TransportStage{"relabel-to-target", std::move(scaled), s.r()};
  return out;
}

}  // namespace scaledgauge
