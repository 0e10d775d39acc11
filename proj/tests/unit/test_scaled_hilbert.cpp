#include <gtest/gtest.h>

#include <complex>
#include <vector>

#include "scaledgauge/random.hpp"
#include "scaledgauge/scaled_hilbert.hpp"

namespace sg = scaledgauge;
using C = std::complex<double>;

namespace {

double dist(const sg::HilbertVector& a, const sg::HilbertVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

sg::HilbertVector random_vector(std::size_t n, sg::Rng& rng) {
  sg::HilbertVector v(n);
  for (auto& c : v) c = rng.complex_normal();
  return v;
}

C plain_inner(const sg::HilbertVector& a, const sg::HilbertVector& b) {
  C s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

TEST(HilbertStructure, Examples) {
  const auto s = sg::make_hilbert_structure(2.0, sg::ComplexMatrix::identity(2));
  EXPECT_EQ(sg::vector_correspondence({1.0, 0.0}, s), (sg::HilbertVector{2.0, 0.0}));
  EXPECT_EQ(sg::scaled_scalar_mul({3.0, sg::ScaleFactor(2.0)}, {2.0, 0.0}, s), (sg::HilbertVector{6.0, 0.0}));
  EXPECT_EQ(sg::scaled_inner({2.0, 0.0}, {2.0, 0.0}, s).value, C(1.0));

  const C i(0.0, 1.0);
  const auto sw = sg::make_hilbert_structure(1.0, sg::ComplexMatrix(2, {0, 1, 1, 0}));
  EXPECT_EQ(sg::vector_correspondence({1.0, i}, sw), (sg::HilbertVector{i, 1.0}));
  EXPECT_EQ(sg::scaled_add({1.0, 2.0}, {C(0, 1), -1.0}, s), (sg::HilbertVector{C(1, 1), 1.0}));
  EXPECT_EQ(sg::scaled_sub({1.0, 2.0}, {C(0, 1), -1.0}, s), (sg::HilbertVector{C(1, -1), 3.0}));
}

TEST(HilbertStructure, Errors) {
  EXPECT_THROW(sg::make_hilbert_structure(1.0, sg::ComplexMatrix(2, {1, 1, 0, 1})), sg::Error);
  EXPECT_THROW(sg::make_hilbert_structure(0.0, sg::ComplexMatrix::identity(2)), sg::Error);
  const auto s = sg::make_hilbert_structure(2.0, sg::ComplexMatrix::identity(2));
  try {
    (void)sg::scaled_scalar_mul({1.0, sg::ScaleFactor(3.0)}, {1.0, 0.0}, s);
    FAIL();
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.kind(), sg::ErrorKind::kScaleMismatch);
  }
  try {
    (void)sg::vector_correspondence({1.0, 0.0, 0.0}, s);
    FAIL();
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.kind(), sg::ErrorKind::kDimensionMismatch);
  }
}

TEST(HilbertStructure, CorrespondenceIsStructurePreserving) {
  sg::Rng rng(11);
  for (std::size_t n : {2u, 3u, 5u}) {
    for (double r : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
      const auto s = sg::make_hilbert_structure(r, sg::random_unitary(n, rng));
      for (int t = 0; t < 20; ++t) {
        const auto psi = random_vector(n, rng);
        const auto phi = random_vector(n, rng);
        const C alpha = rng.complex_normal();
        const auto cp = sg::vector_correspondence(psi, s);
        const auto cf = sg::vector_correspondence(phi, s);
        const double scale = r * std::max(1.0, std::abs(alpha)) * 10.0;

        sg::HilbertVector sum(n), diff(n), prod(n);
        for (std::size_t k = 0; k < n; ++k) {
          sum[k] = psi[k] + phi[k];
          diff[k] = psi[k] - phi[k];
          prod[k] = alpha * psi[k];
        }
        EXPECT_LE(dist(sg::scaled_add(cp, cf, s), sg::vector_correspondence(sum, s)), 1e-12 * scale);
        EXPECT_LE(dist(sg::scaled_sub(cp, cf, s), sg::vector_correspondence(diff, s)), 1e-12 * scale);
        EXPECT_LE(dist(sg::scaled_scalar_mul({alpha, s.scale}, cp, s), sg::vector_correspondence(prod, s)),
                  1e-12 * scale);

        // The scaled inner product of corresponding vectors reads the same number.
        const C ip = plain_inner(psi, phi);
        const auto got = sg::scaled_inner(cp, cf, s);
        EXPECT_TRUE(got.scale == s.scale);
        EXPECT_LE(std::abs(got.value - ip), 1e-12 * std::max(1.0, std::abs(ip)));
      }
    }
  }
}

TEST(HilbertStructure, OrthonormalBasisStaysOrthonormal) {
  sg::Rng rng(5);
  const auto s = sg::make_hilbert_structure(7.5, sg::random_unitary(3, rng));
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      sg::HilbertVector ea(3, 0.0), eb(3, 0.0);
      ea[a] = 1.0;
      eb[b] = 1.0;
      const auto v = sg::scaled_inner(sg::vector_correspondence(ea, s), sg::vector_correspondence(eb, s), s).value;
      EXPECT_NEAR(std::abs(v - (a == b ? 1.0 : 0.0)), 0.0, 1e-14);
    }
  }
}

TEST(HilbertStructure, OneDimensionalReducesToScaledNumbers) {
  sg::Rng rng(3);
  for (double r : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
    const auto s = sg::make_hilbert_structure(r, sg::ComplexMatrix::identity(1));
    const sg::ScaledStructure numbers{sg::ScaleFactor(r)};
    for (int t = 0; t < 100; ++t) {
      const C u = rng.complex_normal();
      const C v = rng.complex_normal();
      EXPECT_EQ(sg::scaled_inner({u}, {v}, s).value,
                sg::value_of(sg::mul_s(sg::conj_s({u}, numbers), {v}, numbers), numbers).value);
      const C alpha = rng.complex_normal();
      EXPECT_EQ(sg::scaled_scalar_mul({alpha, s.scale}, {u}, s)[0],
                sg::mul_s(sg::element_of({alpha, s.scale}), {u}, numbers).canonical);
    }
  }
}

TEST(ThreeStepTransport, StagesCompose) {
  sg::Rng rng(9);
  const auto s = sg::make_hilbert_structure(0.25, sg::random_unitary(2, rng));
  const auto psi = random_vector(2, rng);
  const auto tr = sg::three_step_transport(psi, s);
  EXPECT_EQ(tr.basis_change.components, s.basis_map * psi);
  EXPECT_EQ(tr.basis_change.scale, 1.0);
  EXPECT_EQ(tr.rescaled.scale, 0.25);
  EXPECT_EQ(tr.final_vector(), sg::vector_correspondence(psi, s));
  EXPECT_EQ(tr.target.components, tr.rescaled.components);

  const auto id = sg::make_hilbert_structure(1.0, sg::ComplexMatrix::identity(2));
  EXPECT_EQ(sg::three_step_transport(psi, id).final_vector(), psi);
}
