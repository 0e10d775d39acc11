#pragma once

// Experiment configuration, read from a JSON document.
//
// Every key is optional; unknown keys are rejected. See README.md for the
// schema. Validation runs completely before any experiment starts.

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "scaledgauge/error.hpp"
#include "scaledgauge/fixtures.hpp"
#include "scaledgauge/gauge_field.hpp"
#include "scaledgauge/gauge_theory.hpp"
#include "scaledgauge/lattice.hpp"
#include "scaledgauge/random.hpp"

namespace scaledgauge {

struct Tolerances {
  double axiom = 1e-9;
  double analytic = 1e-9;
  double transport = 1e-12;
  double loop = 1e-12;
  double integrability = 1e-10;
  double path_spread = 1e-12;
  double nonintegrable_spread = 1e-3;
  double slope = 0.9;
  double link_order = 1.9;
  double quadrature_order = 3.5;
  double quadrature = 1e-10;
  double exact = 1e-12;
  double hilbert = 1e-12;
  double anchor = 1e-10;
  double series = 1e-10;
  double collapse = 1e-15;
};

struct ExperimentConfig {
  std::uint64_t seed = 20240601;
  int workers = 1;
  LatticeSpec lattice = [] {
    LatticeSpec s;
    s.dims = 2;
    s.extent = {8, 8, 1, 1};
    s.spacing = 0.5;
    return s;
  }();
  FieldKind field_kind = FieldKind::kGradient;
  FieldParams field;
  bool field_seed_explicit = false;
  std::vector<double> scales{1e-3, 1e-1, 1.0, 10.0, 1e3};
  int samples = 1000;
  int polynomials = 100;
  int polynomial_degree = 8;
  int random_paths = 1000;
  int hilbert_dim = 2;
  SmoothFixtureSpec couplings;
  std::vector<double> delta_series{0.1, 0.05, 0.025, 0.0125};
  std::vector<Site> anchors;
  LagrangianKind lagrangian = LagrangianKind::kKleinGordon;
  bool expect_nonintegrable = false;
  Tolerances tol;
  std::string output = "out";

  /// Field parameters with the seed resolved against the run seed.
  FieldParams resolved_field() const {
    FieldParams p = field;
    if (!field_seed_explicit) p.seed = derive_seed(seed, 0x6669656cULL);
    return p;
  }

  RealGaugeField make_field() const { return generate_field(field_kind, resolved_field(), Lattice(lattice)); }
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void config_error(const std::string& msg) { throw Error(ErrorKind::kConfig, msg); }

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) config_error("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_as(const json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    config_error("wrong type for " + where);
  }
}

inline double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) config_error(where + " must be a number");
  return v.get<double>();
}

inline int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) config_error(where + " must be an integer");
  return v.get<int>();
}

inline std::vector<double> get_number_list(const json& v, const std::string& where) {
  if (!v.is_array()) config_error(where + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(get_number(x, where));
  return out;
}

inline void parse_lattice(const json& j, LatticeSpec& spec) {
  check_keys(j, {"dims", "extent", "spacing", "boundary", "max_sites"}, "lattice");
  if (j.contains("dims")) spec.dims = get_int(j["dims"], "lattice.dims");
  if (spec.dims < 1 || spec.dims > kMaxDims) config_error("lattice.dims must be in [1, 4]");
  if (j.contains("extent")) {
    const auto& e = j["extent"];
    if (!e.is_array() || static_cast<int>(e.size()) != spec.dims) {
      config_error("lattice.extent must list one extent per axis");
    }
    spec.extent = {1, 1, 1, 1};
    for (int mu = 0; mu < spec.dims; ++mu) spec.extent[static_cast<std::size_t>(mu)] = get_int(e[static_cast<std::size_t>(mu)], "lattice.extent");
  }
  if (j.contains("spacing")) spec.spacing = get_number(j["spacing"], "lattice.spacing");
  if (j.contains("boundary")) {
    try {
      spec.boundary = parse_boundary(get_as<std::string>(j["boundary"], "lattice.boundary"));
    } catch (const Error& e) {
      config_error(e.what());
    }
  }
  if (j.contains("max_sites")) spec.max_sites = get_as<std::int64_t>(j["max_sites"], "lattice.max_sites");
}

inline void parse_field(const json& j, ExperimentConfig& cfg) {
  check_keys(j, {"kind", "constant", "amplitude", "wavenumber", "vortex_strength", "vortex_center", "seed"}, "field");
  if (j.contains("kind")) {
    try {
      cfg.field_kind = parse_field_kind(get_as<std::string>(j["kind"], "field.kind"));
    } catch (const Error& e) {
      config_error(e.what());
    }
  }
  if (j.contains("constant")) cfg.field.constant = get_number_list(j["constant"], "field.constant");
  if (j.contains("amplitude")) cfg.field.amplitude = get_number(j["amplitude"], "field.amplitude");
  if (j.contains("wavenumber")) cfg.field.wavenumber = get_int(j["wavenumber"], "field.wavenumber");
  if (j.contains("vortex_strength")) cfg.field.vortex_strength = get_number(j["vortex_strength"], "field.vortex_strength");
  if (j.contains("vortex_center")) {
    const auto c = get_number_list(j["vortex_center"], "field.vortex_center");
    if (c.size() != 2) config_error("field.vortex_center needs two coordinates");
    cfg.field.vortex_center = std::array<double, 2>{c[0], c[1]};
  }
  if (j.contains("seed")) {
    cfg.field.seed = get_as<std::uint64_t>(j["seed"], "field.seed");
    cfg.field_seed_explicit = true;
  }
}

inline void parse_couplings(const json& j, SmoothFixtureSpec& c) {
  check_keys(j, {"g_R", "g_I", "g", "mass", "lambda"}, "couplings");
  if (j.contains("g_R")) c.g_r = get_number(j["g_R"], "couplings.g_R");
  if (j.contains("g_I")) c.g_i = get_number(j["g_I"], "couplings.g_I");
  if (j.contains("g")) c.g = get_number(j["g"], "couplings.g");
  if (j.contains("mass")) c.mass = get_number(j["mass"], "couplings.mass");
  if (j.contains("lambda")) c.lambda = get_number(j["lambda"], "couplings.lambda");
}

inline void parse_tolerances(const json& j, Tolerances& t) {
  check_keys(j, {"axiom", "analytic", "transport", "loop", "integrability", "path_spread", "nonintegrable_spread",
                 "slope", "link_order", "quadrature_order", "quadrature", "exact", "hilbert", "anchor", "series",
                 "collapse"},
             "tolerances");
  auto read = [&](const char* key, double& slot) {
    if (j.contains(key)) slot = get_number(j[key], std::string("tolerances.") + key);
  };
  read("axiom", t.axiom);
  read("analytic", t.analytic);
  read("transport", t.transport);
  read("loop", t.loop);
  read("integrability", t.integrability);
  read("path_spread", t.path_spread);
  read("nonintegrable_spread", t.nonintegrable_spread);
  read("slope", t.slope);
  read("link_order", t.link_order);
  read("quadrature_order", t.quadrature_order);
  read("quadrature", t.quadrature);
  read("exact", t.exact);
  read("hilbert", t.hilbert);
  read("anchor", t.anchor);
  read("series", t.series);
  read("collapse", t.collapse);
}

inline void validate(const ExperimentConfig& cfg) {
  Lattice lattice = [&] {
    try {
      return Lattice(cfg.lattice);
    } catch (const Error& e) {
      config_error(std::string("lattice: ") + e.what());
    }
  }();
  try {
    (void)generate_field(cfg.field_kind, cfg.resolved_field(), lattice);
  } catch (const Error& e) {
    config_error(std::string("field: ") + e.what());
  }
  if (cfg.workers < 1) config_error("workers must be >= 1");
  if (cfg.scales.empty()) config_error("scales must not be empty");
  for (double r : cfg.scales) {
    if (!(r > 0.0) || !std::isfinite(r)) config_error("scales must be positive and finite");
  }
  if (cfg.samples < 1 || cfg.polynomials < 1 || cfg.random_paths < 1) {
    config_error("samples, polynomials and random_paths must be >= 1");
  }
  if (cfg.polynomial_degree < 0 || cfg.polynomial_degree > 30) config_error("polynomial_degree must be in [0, 30]");
  if (cfg.hilbert_dim < 1 || cfg.hilbert_dim > 16) config_error("hilbert_dim must be in [1, 16]");
  if (cfg.delta_series.size() < 2) config_error("delta_series needs at least two spacings");
  if (!(cfg.couplings.length > 0.0)) config_error("fixture_length must be positive");
  for (double d : cfg.delta_series) {
    if (!(d > 0.0) || std::lround(cfg.couplings.length / d) < 2) {
      config_error("every delta must be positive and leave at least two sites per axis");
    }
  }
  if (cfg.couplings.g_i == 0.0 || cfg.couplings.g == 0.0) config_error("couplings g_I and g must be nonzero");
  for (const Site& a : cfg.anchors) {
    if (!lattice.contains(a)) config_error("anchor outside the lattice");
  }
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  using detail::config_error;
  ExperimentConfig cfg;
  detail::check_keys(j,
                     {"seed", "workers", "lattice", "field", "scales", "samples", "polynomials", "polynomial_degree",
                      "random_paths", "hilbert_dim", "couplings", "fixture_length", "delta_series", "anchors",
                      "lagrangian", "expect_nonintegrable", "tolerances", "output"},
                     "configuration");
  if (j.contains("seed")) cfg.seed = detail::get_as<std::uint64_t>(j["seed"], "seed");
  if (j.contains("workers")) cfg.workers = detail::get_int(j["workers"], "workers");
  if (j.contains("lattice")) detail::parse_lattice(j["lattice"], cfg.lattice);
  if (j.contains("field")) detail::parse_field(j["field"], cfg);
  if (j.contains("scales")) cfg.scales = detail::get_number_list(j["scales"], "scales");
  if (j.contains("samples")) cfg.samples = detail::get_int(j["samples"], "samples");
  if (j.contains("polynomials")) cfg.polynomials = detail::get_int(j["polynomials"], "polynomials");
  if (j.contains("polynomial_degree")) cfg.polynomial_degree = detail::get_int(j["polynomial_degree"], "polynomial_degree");
  if (j.contains("random_paths")) cfg.random_paths = detail::get_int(j["random_paths"], "random_paths");
  if (j.contains("hilbert_dim")) cfg.hilbert_dim = detail::get_int(j["hilbert_dim"], "hilbert_dim");
  if (j.contains("couplings")) detail::parse_couplings(j["couplings"], cfg.couplings);
  if (j.contains("fixture_length")) cfg.couplings.length = detail::get_number(j["fixture_length"], "fixture_length");
  if (j.contains("delta_series")) cfg.delta_series = detail::get_number_list(j["delta_series"], "delta_series");
  if (j.contains("anchors")) {
    if (!j["anchors"].is_array()) config_error("anchors must be an array of coordinate lists");
    for (const auto& a : j["anchors"]) {
      if (!a.is_array() || static_cast<int>(a.size()) != cfg.lattice.dims) {
        config_error("each anchor needs one coordinate per lattice axis");
      }
      Site s;
      for (int mu = 0; mu < cfg.lattice.dims; ++mu) s[mu] = detail::get_int(a[static_cast<std::size_t>(mu)], "anchors");
      cfg.anchors.push_back(s);
    }
  }
  if (j.contains("lagrangian")) {
    try {
      cfg.lagrangian = parse_lagrangian_kind(detail::get_as<std::string>(j["lagrangian"], "lagrangian"));
    } catch (const Error& e) {
      config_error(e.what());
    }
  }
  if (j.contains("expect_nonintegrable")) {
    if (!j["expect_nonintegrable"].is_boolean()) config_error("expect_nonintegrable must be a boolean");
    cfg.expect_nonintegrable = j["expect_nonintegrable"].get<bool>();
  }
  if (j.contains("tolerances")) detail::parse_tolerances(j["tolerances"], cfg.tol);
  if (j.contains("output")) cfg.output = detail::get_as<std::string>(j["output"], "output");
  detail::validate(cfg);
  return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorKind::kConfig, "configuration is empty");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kConfig, std::string("configuration is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kConfig, "cannot read configuration '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

}  // namespace scaledgauge
