#include "ceam/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "ceam/error.hpp"
#include "ceam/scattering.hpp"
#include "ceam/sensitivity.hpp"

namespace ceam::cli {

using nlohmann::json;

namespace {

constexpr std::pair<Mode, const char*> kModeNames[] = {
    {Mode::Sweep, "sweep"},
    {Mode::Scaling, "scaling"},
    {Mode::WorkingPoint, "working-point"},
    {Mode::Disorder, "disorder"},
    {Mode::Estimate, "estimate"},
    {Mode::ValidateLinearResponse, "validate-linear-response"},
};

/// Reads typed fields out of one JSON object and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
  }

  std::string child(const std::string& key) const { return path_ + "/" + key; }
  bool has(const std::string& key) const { return obj_.contains(key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::optional<double> number(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) throw ConfigError(child(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(child(key), "expected a finite number");
    return d;
  }

  void number(const std::string& key, double& out) {
    if (auto v = number(key)) out = *v;
  }

  void positive(const std::string& key, double& out) {
    number(key, out);
    if (has(key) && !(out > 0.0)) throw ConfigError(child(key), "must be positive");
  }

  void non_negative(const std::string& key, double& out) {
    number(key, out);
    if (has(key) && out < 0.0) throw ConfigError(child(key), "must be non-negative");
  }

  template <class Int>
  void integer(const std::string& key, Int& out, Int min_value) {
    const json* v = get(key);
    if (!v) return;
    if (!v->is_number_integer()) throw ConfigError(child(key), "expected an integer");
    if constexpr (std::is_unsigned_v<Int>) {
      if (v->is_number_unsigned() || v->get<std::int64_t>() >= 0) {
        out = v->get<Int>();
      } else {
        throw ConfigError(child(key), "expected a non-negative integer");
      }
    } else {
      out = v->get<Int>();
    }
    if (out < min_value) {
      throw ConfigError(child(key), "must be >= " + std::to_string(min_value));
    }
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw ConfigError(child(key), "expected a string");
    return v->get<std::string>();
  }

  Units units() {
    auto u = string("units");
    if (!u) throw ConfigError(child("units"), "missing required key \"units\" (\"internal\" or \"si\")");
    if (*u == "internal") return Units::Internal;
    if (*u == "si") return Units::SI;
    throw ConfigError(child("units"), "units must be \"internal\" or \"si\"");
  }

  /// Every key must have been read exactly under the active units.
  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError(child(it.key()), "unknown key \"" + it.key() + "\"");
      }
    }
  }

  void forbid(std::initializer_list<const char*> keys, const char* why) {
    for (const char* k : keys) {
      if (has(k)) throw ConfigError(child(k), std::string("key not allowed ") + why);
      seen_.insert(k);
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

AtomOverride parse_atom(const json& obj, const std::string& path, Units units) {
  ObjectReader r(obj, path);
  AtomOverride a;
  if (units == Units::Internal) {
    a.detuning = r.number("detuning");
    a.gamma = r.number("gamma");
    a.gamma_prime = r.number("gamma_prime");
    a.position = r.number("position");
  } else {
    a.transition_frequency_hz = r.number("transition_frequency_hz");
    a.gamma_over_2pi_hz = r.number("gamma_over_2pi_hz");
    a.gamma_prime_over_2pi_hz = r.number("gamma_prime_over_2pi_hz");
    a.position_m = r.number("position_m");
  }
  r.finish();
  return a;
}

SystemBlock parse_system(const json& obj, const std::string& path) {
  ObjectReader r(obj, path);
  SystemBlock b;
  b.units = r.units();
  r.integer("n_atoms", b.n_atoms, 1);
  if (b.units == Units::Internal) {
    r.positive("gamma", b.gamma);
    r.non_negative("gamma_prime", b.gamma_prime);
    r.number("detuning", b.detuning);
    r.positive("spacing", b.spacing);
    r.positive("probe_frequency", b.probe_frequency);
    b.boundary_distance = r.number("boundary_distance");
    if (b.boundary_distance && !(*b.boundary_distance > 0.0)) {
      throw ConfigError(r.child("boundary_distance"), "must be positive");
    }
  } else {
    b.si.n_atoms = b.n_atoms;
    r.positive("transition_frequency_hz", b.si.transition_frequency_hz);
    r.positive("gamma_over_2pi_hz", b.si.gamma_over_2pi_hz);
    r.non_negative("gamma_prime_over_2pi_hz", b.si.gamma_prime_over_2pi_hz);
    r.number("detuning_over_2pi_hz", b.si.detuning_over_2pi_hz);
    r.positive("wavelength_m", b.si.wavelength_m);
    b.si.spacing_m = b.si.wavelength_m;
    r.positive("spacing_m", b.si.spacing_m);
    b.boundary_distance_m = r.number("boundary_distance_m");
    if (b.boundary_distance_m && !(*b.boundary_distance_m > 0.0)) {
      throw ConfigError(r.child("boundary_distance_m"), "must be positive");
    }
  }
  if (const json* atoms = r.get("atoms")) {
    if (!atoms->is_array()) throw ConfigError(r.child("atoms"), "expected an array");
    if (static_cast<int>(atoms->size()) != b.n_atoms) {
      throw ConfigError(r.child("atoms"), "expected exactly n_atoms entries");
    }
    for (std::size_t i = 0; i < atoms->size(); ++i) {
      b.atoms.push_back(parse_atom((*atoms)[i], r.child("atoms") + "/" + std::to_string(i), b.units));
    }
  }
  r.finish();
  return b;
}

DisorderBlock parse_disorder(const json& obj, const std::string& path) {
  ObjectReader r(obj, path);
  DisorderBlock d;
  d.units = r.units();
  if (d.units == Units::Internal) {
    r.non_negative("sigma_omega", d.sigma_omega);
    r.non_negative("sigma_gamma", d.sigma_gamma);
    r.non_negative("sigma_x", d.sigma_x);
  } else {
    r.non_negative("sigma_frequency_hz", d.sigma_frequency_hz);
    r.non_negative("sigma_gamma_over_2pi_hz", d.sigma_gamma_over_2pi_hz);
    r.non_negative("sigma_position_m", d.sigma_position_m);
  }
  r.positive("truncation", d.truncation);
  r.integer("n_samples", d.n_samples, 1);
  r.finish();
  return d;
}

GridBlock parse_grid(const json& obj, const std::string& path) {
  ObjectReader r(obj, path);
  GridBlock g;
  r.integer("points", g.points, 2);
  g.kx_min = r.number("kx_min");
  g.kx_max = r.number("kx_max");
  if (g.kx_min.has_value() != g.kx_max.has_value()) {
    throw ConfigError(r.child(g.kx_min ? "kx_max" : "kx_min"), "kx_min and kx_max go together");
  }
  if (g.kx_min && !(*g.kx_max > *g.kx_min)) {
    throw ConfigError(r.child("kx_max"), "kx_max must exceed kx_min");
  }
  if (g.kx_min && r.has("span")) throw ConfigError(r.child("span"), "span conflicts with kx_min/kx_max");
  r.positive("span", g.span);
  r.finish();
  return g;
}

EstimationBlock parse_estimation(const json& obj, const std::string& path) {
  ObjectReader r(obj, path);
  EstimationBlock e;
  r.integer<std::int64_t>("shots", e.shots, 1);
  r.integer("repetitions", e.repetitions, 1);
  r.positive("prior_half_width", e.prior_half_width);
  e.reference_phase = r.number("reference_phase");
  r.finish();
  return e;
}

OutputBlock parse_output(const json& obj, const std::string& path) {
  ObjectReader r(obj, path);
  OutputBlock o;
  o.dir = r.string("dir");
  o.prefix = r.string("prefix");
  if (auto f = r.string("format")) {
    if (*f != "csv") throw ConfigError(r.child("format"), "only \"csv\" output is supported");
    o.format = *f;
  }
  r.finish();
  return o;
}

}  // namespace

const char* to_string(Mode mode) {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "unknown";
}

std::optional<Mode> parse_mode(const std::string& name) {
  for (const auto& [m, n] : kModeNames) {
    if (name == n) return m;
  }
  return std::nullopt;
}

RunConfig parse_config(const json& doc) {
  ObjectReader r(doc, "");
  RunConfig cfg;
  auto mode = r.string("mode");
  if (!mode) throw ConfigError("/mode", "missing required key \"mode\"");
  auto parsed = parse_mode(*mode);
  if (!parsed) throw ConfigError("/mode", "unknown mode \"" + *mode + "\"");
  cfg.mode = *parsed;

  r.integer<std::uint64_t>("master_seed", cfg.master_seed, 0);
  r.integer<unsigned>("threads", cfg.threads, 1);

  const json* system = r.get("system");
  if (!system) throw ConfigError("/system", "missing required block \"system\"");
  cfg.system = parse_system(*system, "/system");

  if (const json* d = r.get("disorder")) cfg.disorder = parse_disorder(*d, "/disorder");
  if (const json* g = r.get("grid")) cfg.grid = parse_grid(*g, "/grid");
  if (const json* e = r.get("estimation")) cfg.estimation = parse_estimation(*e, "/estimation");
  if (const json* o = r.get("output")) cfg.output = parse_output(*o, "/output");
  if (const json* s = r.get("scaling")) {
    ObjectReader sr(*s, "/scaling");
    if (const json* list = sr.get("n_list")) {
      if (!list->is_array() || list->empty()) {
        throw ConfigError("/scaling/n_list", "expected a non-empty array of integers");
      }
      cfg.n_list.clear();
      for (std::size_t i = 0; i < list->size(); ++i) {
        const auto& v = (*list)[i];
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
          throw ConfigError("/scaling/n_list/" + std::to_string(i), "expected an integer >= 1");
        }
        cfg.n_list.push_back(v.get<int>());
      }
    }
    sr.finish();
  }
  if (const json* lr = r.get("linear_response")) {
    ObjectReader lrr(*lr, "/linear_response");
    lrr.positive("scale", cfg.linear_response_scale);
    lrr.finish();
  }
  r.finish();

  if (cfg.mode == Mode::Disorder && !cfg.disorder) {
    throw ConfigError("/disorder", "mode \"disorder\" requires a \"disorder\" block");
  }
  if (cfg.mode == Mode::Estimate && !cfg.estimation) {
    throw ConfigError("/estimation", "mode \"estimate\" requires an \"estimation\" block");
  }
  if (cfg.disorder && cfg.disorder->units == Units::SI && cfg.system.units != Units::SI) {
    throw ConfigError("/disorder/units", "SI disorder widths need an SI system block");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("parse error: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  json doc;
  doc["mode"] = to_string(cfg.mode);
  doc["master_seed"] = cfg.master_seed;
  doc["threads"] = cfg.threads;

  const auto& s = cfg.system;
  json sys;
  sys["n_atoms"] = s.n_atoms;
  if (s.units == Units::Internal) {
    sys["units"] = "internal";
    sys["gamma"] = s.gamma;
    sys["gamma_prime"] = s.gamma_prime;
    sys["detuning"] = s.detuning;
    sys["spacing"] = s.spacing;
    sys["probe_frequency"] = s.probe_frequency;
    if (s.boundary_distance) sys["boundary_distance"] = *s.boundary_distance;
  } else {
    sys["units"] = "si";
    sys["transition_frequency_hz"] = s.si.transition_frequency_hz;
    sys["gamma_over_2pi_hz"] = s.si.gamma_over_2pi_hz;
    sys["gamma_prime_over_2pi_hz"] = s.si.gamma_prime_over_2pi_hz;
    sys["detuning_over_2pi_hz"] = s.si.detuning_over_2pi_hz;
    sys["wavelength_m"] = s.si.wavelength_m;
    sys["spacing_m"] = s.si.spacing_m;
    if (s.boundary_distance_m) sys["boundary_distance_m"] = *s.boundary_distance_m;
  }
  if (!s.atoms.empty()) {
    json atoms = json::array();
    for (const auto& a : s.atoms) {
      json o = json::object();
      auto put = [&](const char* k, const std::optional<double>& v) {
        if (v) o[k] = *v;
      };
      put("detuning", a.detuning);
      put("gamma", a.gamma);
      put("gamma_prime", a.gamma_prime);
      put("position", a.position);
      put("transition_frequency_hz", a.transition_frequency_hz);
      put("gamma_over_2pi_hz", a.gamma_over_2pi_hz);
      put("gamma_prime_over_2pi_hz", a.gamma_prime_over_2pi_hz);
      put("position_m", a.position_m);
      atoms.push_back(o);
    }
    sys["atoms"] = atoms;
  }
  doc["system"] = sys;

  if (cfg.disorder) {
    const auto& d = *cfg.disorder;
    json dj;
    if (d.units == Units::Internal) {
      dj["units"] = "internal";
      dj["sigma_omega"] = d.sigma_omega;
      dj["sigma_gamma"] = d.sigma_gamma;
      dj["sigma_x"] = d.sigma_x;
    } else {
      dj["units"] = "si";
      dj["sigma_frequency_hz"] = d.sigma_frequency_hz;
      dj["sigma_gamma_over_2pi_hz"] = d.sigma_gamma_over_2pi_hz;
      dj["sigma_position_m"] = d.sigma_position_m;
    }
    dj["truncation"] = d.truncation;
    dj["n_samples"] = d.n_samples;
    doc["disorder"] = dj;
  }

  json grid;
  grid["points"] = cfg.grid.points;
  if (cfg.grid.kx_min) {
    grid["kx_min"] = *cfg.grid.kx_min;
    grid["kx_max"] = *cfg.grid.kx_max;
  } else {
    grid["span"] = cfg.grid.span;
  }
  doc["grid"] = grid;

  if (cfg.estimation) {
    json e;
    e["shots"] = cfg.estimation->shots;
    e["repetitions"] = cfg.estimation->repetitions;
    e["prior_half_width"] = cfg.estimation->prior_half_width;
    if (cfg.estimation->reference_phase) e["reference_phase"] = *cfg.estimation->reference_phase;
    doc["estimation"] = e;
  }
  doc["scaling"] = {{"n_list", cfg.n_list}};
  doc["linear_response"] = {{"scale", cfg.linear_response_scale}};

  json out;
  if (cfg.output.dir) out["dir"] = *cfg.output.dir;
  if (cfg.output.prefix) out["prefix"] = *cfg.output.prefix;
  out["format"] = cfg.output.format;
  doc["output"] = out;
  return doc;
}

SystemSpec build_system(const SystemBlock& b) {
  SystemSpec spec;
  if (b.units == Units::Internal) {
    spec = make_ideal_system({b.n_atoms, b.gamma, b.detuning}, 1.0, b.gamma_prime, b.spacing,
                             b.probe_frequency);
    for (std::size_t i = 0; i < b.atoms.size(); ++i) {
      const auto& o = b.atoms[i];
      auto& a = spec.atoms[i];
      if (o.detuning) a.transition_frequency = spec.probe_frequency + *o.detuning;
      if (o.gamma) a.guided_decay = *o.gamma;
      if (o.gamma_prime) a.nonguided_decay = *o.gamma_prime;
      if (o.position) a.position = *o.position;
    }
  } else {
    SIConfig si = b.si;
    si.n_atoms = b.n_atoms;
    si.boundary_distance_m = si.wavelength_m / 4.0;
    spec = to_internal_units(si);
    const double unit_hz = spec.scale.rate_unit / kTwoPi;
    for (std::size_t i = 0; i < b.atoms.size(); ++i) {
      const auto& o = b.atoms[i];
      auto& a = spec.atoms[i];
      if (o.transition_frequency_hz) a.transition_frequency = *o.transition_frequency_hz / unit_hz;
      if (o.gamma_over_2pi_hz) a.guided_decay = *o.gamma_over_2pi_hz / unit_hz;
      if (o.gamma_prime_over_2pi_hz) a.nonguided_decay = *o.gamma_prime_over_2pi_hz / unit_hz;
      if (o.position_m) a.position = *o.position_m * spec.scale.wavenumber;
    }
  }

  std::optional<double> distance;
  if (b.units == Units::Internal && b.boundary_distance) distance = *b.boundary_distance;
  if (b.units == Units::SI && b.boundary_distance_m) {
    distance = *b.boundary_distance_m * spec.scale.wavenumber;
  }
  if (!distance) distance = find_working_point(ceam_coeffs(ideal_of(spec))).kx_opt;
  spec.boundary_distance = *distance;

  const auto check = validate(spec);
  if (!check.ok()) {
    std::string all;
    for (const auto& v : check.violations) all += (all.empty() ? "" : "; ") + v;
    throw ConfigError("/system", "invalid system: " + all);
  }
  return spec;
}

IdealArraySpec ideal_of(const SystemSpec& spec) {
  if (spec.atoms.empty()) throw Error(ErrorKind::InvalidArgument, "system has no atoms");
  return {static_cast<int>(spec.size()), spec.atoms[0].guided_decay, spec.detuning(0)};
}

DisorderSpec build_disorder(const DisorderBlock& b, const SystemSpec& system,
                            std::uint64_t master_seed) {
  DisorderSpec d;
  d.truncation = b.truncation;
  d.n_samples = b.n_samples;
  d.master_seed = master_seed;
  if (b.units == Units::Internal) {
    d.sigma_omega = b.sigma_omega;
    d.sigma_gamma = b.sigma_gamma;
    d.sigma_x = b.sigma_x;
  } else {
    const double unit = system.scale.rate_unit;
    d.sigma_omega = kTwoPi * b.sigma_frequency_hz / unit;
    d.sigma_gamma = kTwoPi * b.sigma_gamma_over_2pi_hz / unit;
    d.sigma_x = b.sigma_position_m * system.scale.wavenumber;
  }
  return d;
}

std::vector<double> build_grid(const GridBlock& grid, const SystemSpec& spec) {
  if (grid.kx_min) return uniform_grid(*grid.kx_min, *grid.kx_max, grid.points);
  const double center = find_working_point(ceam_coeffs(ideal_of(spec))).kx_opt;
  return uniform_grid(center - grid.span / 2.0, center + grid.span / 2.0, grid.points);
}

json config_schema() {
  const json number = {{"type", "number"}};
  const json positive = {{"type", "number"}, {"exclusiveMinimum", 0}};
  const json non_negative = {{"type", "number"}, {"minimum", 0}};
  const json units = {{"enum", {"internal", "si"}}};

  json atom_internal = {{"type", "object"},
                        {"additionalProperties", false},
                        {"properties",
                         {{"detuning", number},
                          {"gamma", positive},
                          {"gamma_prime", non_negative},
                          {"position", number}}}};
  json atom_si = {{"type", "object"},
                  {"additionalProperties", false},
                  {"properties",
                   {{"transition_frequency_hz", positive},
                    {"gamma_over_2pi_hz", positive},
                    {"gamma_prime_over_2pi_hz", non_negative},
                    {"position_m", number}}}};

  json system_internal = {
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"units"}},
      {"properties",
       {{"units", {{"const", "internal"}}},
        {"n_atoms", {{"type", "integer"}, {"minimum", 1}, {"default", 10}}},
        {"gamma", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", 1.0}}},
        {"gamma_prime", {{"type", "number"}, {"minimum", 0}, {"default", 0.0}}},
        {"detuning", {{"type", "number"}, {"default", 1.0}}},
        {"spacing", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", kTwoPi}}},
        {"probe_frequency", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", kDefaultProbeFrequency}}},
        {"boundary_distance", {{"type", "number"}, {"exclusiveMinimum", 0},
                               {"description", "k*x; defaults to the working point"}}},
        {"atoms", {{"type", "array"}, {"items", atom_internal}}}}}};
  json system_si = {
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"units"}},
      {"properties",
       {{"units", {{"const", "si"}}},
        {"n_atoms", {{"type", "integer"}, {"minimum", 1}, {"default", 10}}},
        {"transition_frequency_hz", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", 6e9}}},
        {"gamma_over_2pi_hz", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", 100e6}}},
        {"gamma_prime_over_2pi_hz", {{"type", "number"}, {"minimum", 0}, {"default", 0.0}}},
        {"detuning_over_2pi_hz", {{"type", "number"}, {"default", 0.0}}},
        {"wavelength_m", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", 0.05}}},
        {"spacing_m", {{"type", "number"}, {"exclusiveMinimum", 0},
                       {"description", "defaults to wavelength_m"}}},
        {"boundary_distance_m", {{"type", "number"}, {"exclusiveMinimum", 0},
                                 {"description", "defaults to the working point"}}},
        {"atoms", {{"type", "array"}, {"items", atom_si}}}}}};

  json disorder = {
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"units"}},
      {"properties",
       {{"units", units},
        {"sigma_omega", non_negative},
        {"sigma_gamma", non_negative},
        {"sigma_x", non_negative},
        {"sigma_frequency_hz", non_negative},
        {"sigma_gamma_over_2pi_hz", non_negative},
        {"sigma_position_m", non_negative},
        {"truncation", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", 3.0}}},
        {"n_samples", {{"type", "integer"}, {"minimum", 1}, {"default", 20}}}}}};

  json modes = json::array();
  for (const auto& [m, name] : kModeNames) modes.push_back(name);

  return {
      {"$schema", "https://json-schema.org/draft/2020-12/schema"},
      {"title", "ceam-sim run configuration"},
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"mode", "system"}},
      {"properties",
       {{"mode", {{"enum", modes}}},
        {"master_seed", {{"type", "integer"}, {"minimum", 0}, {"default", 0}}},
        {"threads", {{"type", "integer"}, {"minimum", 1}, {"default", 1}}},
        {"system", {{"oneOf", {system_internal, system_si}}}},
        {"disorder", disorder},
        {"grid",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"points", {{"type", "integer"}, {"minimum", 2}, {"default", 2001}}},
            {"kx_min", number},
            {"kx_max", number},
            {"span", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", 3.141592653589793}}}}}}},
        {"estimation",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"shots", {{"type", "integer"}, {"minimum", 1}, {"default", 100000}}},
            {"repetitions", {{"type", "integer"}, {"minimum", 1}, {"default", 500}}},
            {"prior_half_width", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", 1e-3}}},
            {"reference_phase", {{"type", "number"},
                                 {"description", "defaults to quadrature readout"}}}}}}},
        {"scaling",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"n_list", {{"type", "array"},
                        {"items", {{"type", "integer"}, {"minimum", 1}}},
                        {"default", {4, 8, 16, 32, 64}}}}}}}},
        {"linear_response",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties", {{"scale", {{"type", "number"}, {"exclusiveMinimum", 0}, {"default", 1e-6}}}}}}},
        {"output",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"dir", {{"type", "string"}}},
            {"prefix", {{"type", "string"}}},
            {"format", {{"const", "csv"}}}}}}}}}};
}

}  // namespace ceam::cli
