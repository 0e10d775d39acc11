#pragma once

// Finite hypercubic lattice: sites, directed steps, paths and plaquettes.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "scaledgauge/error.hpp"

namespace scaledgauge {

inline constexpr int kMaxDims = 4;

enum class Boundary { kPeriodic, kClamped };

inline const char* to_string(Boundary b) { return b == Boundary::kPeriodic ? "periodic" : "clamped"; }

inline Boundary parse_boundary(const std::string& name) {
  if (name == "periodic") return Boundary::kPeriodic;
  if (name == "clamped") return Boundary::kClamped;
  throw Error(ErrorKind::kUnknownKind, "unknown boundary '" + name + "'");
}

struct LatticeSpec {
  int dims = 2;
  std::array<int, kMaxDims> extent{4, 4, 1, 1};
  double spacing = 1.0;
  Boundary boundary = Boundary::kPeriodic;
  std::int64_t max_sites = 1'000'000;
};

struct Site {
  std::array<int, kMaxDims> coords{};

  int operator[](int axis) const { return coords[static_cast<std::size_t>(axis)]; }
  int& operator[](int axis) { return coords[static_cast<std::size_t>(axis)]; }

  friend bool operator==(const Site&, const Site&) = default;
};

struct Step {
  int axis = 0;
  int orientation = +1;

  Step reversed() const { return Step{axis, -orientation}; }

  friend bool operator==(const Step&, const Step&) = default;
};

inline Step forward(int axis) { return Step{axis, +1}; }
inline Step backward(int axis) { return Step{axis, -1}; }

struct LatticePath {
  Site start;
  std::vector<Step> steps;
};

struct Plaquette {
  Site corner;
  int mu = 0;
  int nu = 1;
};

/// Validated lattice geometry. Immutable after construction.
class Lattice {
 public:
  explicit Lattice(const LatticeSpec& spec) : spec_(spec) {
    if (spec.dims < 1 || spec.dims > kMaxDims) {
      throw Error(ErrorKind::kInvalidArgument, "lattice dims must be in [1, 4]");
    }
    if (!(spec.spacing > 0.0) || !std::isfinite(spec.spacing)) {
      throw Error(ErrorKind::kInvalidArgument, "lattice spacing must be positive and finite");
    }
    std::int64_t total = 1;
    for (int mu = 0; mu < spec.dims; ++mu) {
      if (spec.extent[static_cast<std::size_t>(mu)] < 2) {
        throw Error(ErrorKind::kInvalidArgument, "every lattice extent must be >= 2");
      }
      total *= spec.extent[static_cast<std::size_t>(mu)];
      if (total > spec.max_sites) {
        throw Error(ErrorKind::kInvalidArgument, "lattice exceeds the configured site maximum");
      }
    }
    for (int mu = spec.dims; mu < kMaxDims; ++mu) spec_.extent[static_cast<std::size_t>(mu)] = 1;
    volume_ = static_cast<std::size_t>(total);
  }

  const LatticeSpec& spec() const { return spec_; }
  int dims() const { return spec_.dims; }
  double spacing() const { return spec_.spacing; }
  Boundary boundary() const { return spec_.boundary; }
  int extent(int axis) const { return spec_.extent[static_cast<std::size_t>(axis)]; }
  std::size_t volume() const { return volume_; }

  bool contains(const Site& s) const {
    for (int mu = 0; mu < kMaxDims; ++mu) {
      const int limit = mu < dims() ? extent(mu) : 1;
      if (s[mu] < 0 || s[mu] >= limit) return false;
    }
    return true;
  }

  /// Row-major index with axis 0 slowest.
  std::size_t index(const Site& s) const {
    std::size_t idx = 0;
    for (int mu = 0; mu < dims(); ++mu) {
      idx = idx * static_cast<std::size_t>(extent(mu)) + static_cast<std::size_t>(s[mu]);
    }
    return idx;
  }

  Site site(std::size_t idx) const {
    Site s;
    for (int mu = dims() - 1; mu >= 0; --mu) {
      const auto e = static_cast<std::size_t>(extent(mu));
      s[mu] = static_cast<int>(idx % e);
      idx /= e;
    }
    return s;
  }

  /// Physical coordinate of a site along an axis.
  double position(const Site& s, int axis) const { return s[axis] * spacing(); }

  void check_step(const Step& step) const {
    if (step.axis < 0 || step.axis >= dims() || (step.orientation != 1 && step.orientation != -1)) {
      throw Error(ErrorKind::kInvalidArgument, "invalid step for this lattice");
    }
  }

 private:
  LatticeSpec spec_;
  std::size_t volume_ = 0;
};

inline Site neighbor(const Site& s, const Step& step, const Lattice& lattice) {
  lattice.check_step(step);
  Site out = s;
  const int e = lattice.extent(step.axis);
  int c = s[step.axis] + step.orientation;
  if (lattice.boundary() == Boundary::kPeriodic) {
    c = ((c % e) + e) % e;
  } else if (c < 0 || c >= e) {
    throw Error(ErrorKind::kOutOfRange, "step leaves a clamped lattice");
  }
  out[step.axis] = c;
  return out;
}

inline Site path_endpoint(const LatticePath& path, const Lattice& lattice) {
  Site s = path.start;
  for (const Step& step : path.steps) s = neighbor(s, step, lattice);
  return s;
}

/// Every elementary square once: all sites times all axis pairs on a periodic
/// lattice, only squares with all corners in range on a clamped one.
inline std::vector<Plaquette> enumerate_plaquettes(const Lattice& lattice) {
  std::vector<Plaquette> out;
  if (lattice.dims() < 2) return out;
  for (std::size_t i = 0; i < lattice.volume(); ++i) {
    const Site s = lattice.site(i);
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      for (int nu = mu + 1; nu < lattice.dims(); ++nu) {
        if (lattice.boundary() == Boundary::kClamped &&
            (s[mu] + 1 >= lattice.extent(mu) || s[nu] + 1 >= lattice.extent(nu))) {
          continue;
        }
        out.push_back(Plaquette{s, mu, nu});
      }
    }
  }
  return out;
}

/// Signed displacement from `from` to `to` along an axis. Periodic lattices
/// use the minimal image with ties resolved toward positive orientation.
inline int displacement(const Site& from, const Site& to, int axis, const Lattice& lattice) {
  int d = to[axis] - from[axis];
  if (lattice.boundary() == Boundary::kPeriodic) {
    const int e = lattice.extent(axis);
    d = ((d % e) + e) % e;
    if (2 * d > e) d -= e;
  }
  return d;
}

/// Staircase path stepping axis 0 fully, then axis 1, and so on.
inline LatticePath axis_ordered_path(const Site& from, const Site& to, const Lattice& lattice) {
  LatticePath path{from, {}};
  for (int mu = 0; mu < lattice.dims(); ++mu) {
    const int d = displacement(from, to, mu, lattice);
    const Step step{mu, d >= 0 ? +1 : -1};
    for (int k = 0; k < std::abs(d); ++k) path.steps.push_back(step);
  }
  return path;
}

/// Staircase path stepping the highest axis first.
inline LatticePath reverse_axis_ordered_path(const Site& from, const Site& to,
                                             const Lattice& lattice) {
  LatticePath path{from, {}};
  for (int mu = lattice.dims() - 1; mu >= 0; --mu) {
    const int d = displacement(from, to, mu, lattice);
    const Step step{mu, d >= 0 ? +1 : -1};
    for (int k = 0; k < std::abs(d); ++k) path.steps.push_back(step);
  }
  return path;
}

/// Steps tracing the plaquette boundary counter-clockwise in the (mu, nu) plane.
inline LatticePath plaquette_loop(const Plaquette& q) {
  return LatticePath{q.corner, {forward(q.mu), forward(q.nu), backward(q.mu), backward(q.nu)}};
}

/// All monotone staircase paths between two sites with per-axis displacement
/// taken from `displacement`. The count is the multinomial coefficient of the
/// displacements; callers bound it before asking.
inline std::vector<LatticePath> enumerate_staircase_paths(const Site& from, const Site& to,
                                                          const Lattice& lattice) {
  std::array<int, kMaxDims> remaining{};
  std::array<int, kMaxDims> sign{};
  for (int mu = 0; mu < lattice.dims(); ++mu) {
    const int d = displacement(from, to, mu, lattice);
    remaining[static_cast<std::size_t>(mu)] = std::abs(d);
    sign[static_cast<std::size_t>(mu)] = d >= 0 ? +1 : -1;
  }
  std::vector<LatticePath> out;
  std::vector<Step> current;
  auto recurse = [&](auto&& self) -> void {
    bool done = true;
    for (int mu = 0; mu < lattice.dims(); ++mu) {
      auto& left = remaining[static_cast<std::size_t>(mu)];
      if (left == 0) continue;
      done = false;
      --left;
      current.push_back(Step{mu, sign[static_cast<std::size_t>(mu)]});
      self(self);
      current.pop_back();
      ++left;
    }
    if (done) out.push_back(LatticePath{from, current});
  };
  recurse(recurse);
  return out;
}

}  // namespace scaledgauge
