#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "scaledgauge/lattice.hpp"

namespace sg = scaledgauge;

namespace {

sg::Lattice make(int dims, std::array<int, 4> extent, sg::Boundary b, double spacing = 0.5) {
  sg::LatticeSpec spec;
  spec.dims = dims;
  spec.extent = extent;
  spec.spacing = spacing;
  spec.boundary = b;
  return sg::Lattice(spec);
}

sg::Site site(int x, int y = 0) {
  sg::Site s;
  s[0] = x;
  s[1] = y;
  return s;
}

}  // namespace

TEST(Lattice, ValidatesSpec) {
  EXPECT_THROW(make(0, {2, 2, 1, 1}, sg::Boundary::kPeriodic), sg::Error);
  EXPECT_THROW(make(5, {2, 2, 1, 1}, sg::Boundary::kPeriodic), sg::Error);
  EXPECT_THROW(make(2, {1, 2, 1, 1}, sg::Boundary::kPeriodic), sg::Error);
  EXPECT_THROW(make(2, {2, 2, 1, 1}, sg::Boundary::kPeriodic, 0.0), sg::Error);
  sg::LatticeSpec big;
  big.dims = 4;
  big.extent = {100, 100, 100, 100};
  EXPECT_THROW(sg::Lattice{big}, sg::Error);
  EXPECT_THROW(sg::parse_boundary("open"), sg::Error);
}

TEST(Lattice, IndexRoundTrip) {
  const auto lat = make(3, {3, 4, 5, 1}, sg::Boundary::kPeriodic);
  EXPECT_EQ(lat.volume(), 60u);
  for (std::size_t i = 0; i < lat.volume(); ++i) EXPECT_EQ(lat.index(lat.site(i)), i);
  sg::Site s;
  s[0] = 1;
  s[1] = 2;
  s[2] = 3;
  EXPECT_EQ(lat.index(s), static_cast<std::size_t>((1 * 4 + 2) * 5 + 3));
}

TEST(Neighbor, Examples) {
  const auto per = make(2, {4, 4, 1, 1}, sg::Boundary::kPeriodic);
  EXPECT_EQ(sg::neighbor(site(0, 0), sg::forward(0), per), site(1, 0));
  EXPECT_EQ(sg::neighbor(site(3, 0), sg::forward(0), per), site(0, 0));
  EXPECT_EQ(sg::neighbor(site(0, 0), sg::backward(0), per), site(3, 0));
  const auto cl = make(2, {4, 4, 1, 1}, sg::Boundary::kClamped);
  try {
    (void)sg::neighbor(site(0, 0), sg::backward(0), cl);
    FAIL();
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.kind(), sg::ErrorKind::kOutOfRange);
  }
}

TEST(PathEndpoint, Examples) {
  const auto lat = make(2, {4, 4, 1, 1}, sg::Boundary::kPeriodic);
  EXPECT_EQ(sg::path_endpoint({site(2, 3), {}}, lat), site(2, 3));
  EXPECT_EQ(sg::path_endpoint({site(0, 0), {sg::forward(0), sg::forward(1)}}, lat), site(1, 1));
  EXPECT_EQ(sg::path_endpoint({site(1, 2), {sg::forward(0), sg::backward(0)}}, lat), site(1, 2));
}

TEST(Plaquettes, Counts) {
  EXPECT_EQ(sg::enumerate_plaquettes(make(2, {3, 3, 1, 1}, sg::Boundary::kPeriodic)).size(), 9u);
  EXPECT_EQ(sg::enumerate_plaquettes(make(2, {3, 3, 1, 1}, sg::Boundary::kClamped)).size(), 4u);
  EXPECT_TRUE(sg::enumerate_plaquettes(make(1, {5, 1, 1, 1}, sg::Boundary::kPeriodic)).empty());
  // sites * C(4, 2)
  EXPECT_EQ(sg::enumerate_plaquettes(make(4, {3, 3, 3, 3}, sg::Boundary::kPeriodic)).size(), 81u * 6u);
}

TEST(AxisOrderedPath, Examples) {
  const auto lat = make(2, {5, 5, 1, 1}, sg::Boundary::kClamped);
  const auto p = sg::axis_ordered_path(site(0, 0), site(2, 1), lat);
  ASSERT_EQ(p.steps.size(), 3u);
  EXPECT_EQ(p.steps[0], sg::forward(0));
  EXPECT_EQ(p.steps[1], sg::forward(0));
  EXPECT_EQ(p.steps[2], sg::forward(1));
  EXPECT_TRUE(sg::axis_ordered_path(site(3, 3), site(3, 3), lat).steps.empty());
  const auto back = sg::axis_ordered_path(site(2, 1), site(0, 0), lat);
  ASSERT_EQ(back.steps.size(), 3u);
  EXPECT_EQ(back.steps[0], sg::backward(0));
  EXPECT_EQ(back.steps[1], sg::backward(0));
  EXPECT_EQ(back.steps[2], sg::backward(1));
}

TEST(AxisOrderedPath, PeriodicUsesMinimalImage) {
  const auto lat = make(2, {6, 6, 1, 1}, sg::Boundary::kPeriodic);
  const auto p = sg::axis_ordered_path(site(0, 0), site(5, 0), lat);
  ASSERT_EQ(p.steps.size(), 1u);
  EXPECT_EQ(p.steps[0], sg::backward(0));
  for (std::size_t i = 0; i < lat.volume(); ++i) {
    const auto q = sg::axis_ordered_path(site(1, 4), lat.site(i), lat);
    EXPECT_EQ(sg::path_endpoint(q, lat), lat.site(i));
    EXPECT_LE(q.steps.size(), 6u);
  }
}

TEST(StaircasePaths, MatchBruteForcePermutations) {
  const auto lat = make(2, {4, 4, 1, 1}, sg::Boundary::kClamped);
  const auto paths = sg::enumerate_staircase_paths(site(0, 0), site(3, 3), lat);
  // Oracle: distinct orderings of the multiset {x,x,x,y,y,y}.
  std::vector<int> axes{0, 0, 0, 1, 1, 1};
  std::set<std::vector<int>> oracle;
  do oracle.insert(axes);
  while (std::next_permutation(axes.begin(), axes.end()));
  std::set<std::vector<int>> got;
  for (const auto& p : paths) {
    std::vector<int> seq;
    for (const auto& st : p.steps) {
      EXPECT_EQ(st.orientation, 1);
      seq.push_back(st.axis);
    }
    got.insert(seq);
    EXPECT_EQ(sg::path_endpoint(p, lat), site(3, 3));
  }
  EXPECT_EQ(paths.size(), 20u);
  EXPECT_EQ(got, oracle);
}
