#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace zakharov::cli {

namespace {

Json reals(std::initializer_list<double> v) { return Json(std::vector<double>(v)); }
Json seeds(int n) {
  std::vector<std::uint64_t> s;
  for (int i = 1; i <= n; ++i) s.push_back(static_cast<std::uint64_t>(i));
  return Json(s);
}

const Schema kCommon{
    {"output_dir", KeyKind::String, "runs", false, "parent directory of run directories"},
};

Schema with_common(Schema s) {
  s.insert(s.end(), kCommon.begin(), kCommon.end());
  return s;
}

const std::map<std::string, Schema>& all_schemas() {
  static const std::map<std::string, Schema> schemas{
      {"simulate",
       with_common({
           {"N", KeyKind::Int, nullptr, true, "truncation radius"},
           {"alpha", KeyKind::Alpha, "3/4", false, "dispersion coefficient, p/q or decimal"},
           {"gamma", KeyKind::Real, 0.0, false, "damping rate"},
           {"nonlinearity", KeyKind::Real, 1.0, false, "coupling switch, 0 = linear"},
           {"dt", KeyKind::Real, 0.0, false, "time step, 0 = 0.5/N^2"},
           {"t_end", KeyKind::Real, 1.0, false, "final time"},
           {"sample_stride", KeyKind::Real, 0.1, false, "output interval"},
           {"initial", KeyKind::String, "random", false, "random | zero"},
           {"s0", KeyKind::Real, 1.0, false, "regularity of u0"},
           {"s1", KeyKind::Real, 0.0, false, "regularity of n_+"},
           {"seed", KeyKind::Int, 1, false, "random data seed"},
           {"amplitude", KeyKind::Real, 1.0, false, "scale of the random data"},
           {"forcing", KeyKind::Forcing, Json::array(), false, "list of {k, re, im}"},
           {"s_list", KeyKind::RealList, reals({0.0, 1.0, 2.0}), false, "Sobolev indices tracked"},
           {"growth_threshold", KeyKind::Real, 0.05, false, "max exponential slope for the growth verdict"},
           {"write_trajectory", KeyKind::Bool, true, false, "write all coefficients"},
       })},
      {"normalform-check",
       with_common({
           {"N", KeyKind::Int, nullptr, true, "truncation radius"},
           {"alpha", KeyKind::Alpha, "3/4", false, "dispersion coefficient"},
           {"seed", KeyKind::Int, 1, false, "random state seed"},
           {"s0", KeyKind::Real, 1.0, false, "regularity of u"},
           {"s1", KeyKind::Real, 0.0, false, "regularity of n_+"},
           {"with_rho", KeyKind::Bool, true, false, "include the resonant terms"},
           {"rho2_variant", KeyKind::String, "substitution", false, "substitution | as_printed"},
           {"interior_fraction", KeyKind::Real, 0.5, false, "modes |k| <= fraction * N are checked"},
           {"tolerance", KeyKind::Real, 1e-10, false, "pass threshold on both residuals"},
       })},
      {"smoothing",
       with_common({
           {"N", KeyKind::Int, nullptr, true, "truncation radius"},
           {"alpha", KeyKind::Alpha, "3/4", false, "dispersion coefficient"},
           {"s0", KeyKind::Real, 1.0, false, "regularity of u0"},
           {"s1", KeyKind::Real, 0.0, false, "regularity of n_+"},
           {"dt", KeyKind::Real, 0.0, false, "time step, 0 = min(N^-1.5, 3/N^2)"},
           {"times", KeyKind::RealList, reals({1.0, 5.0, 20.0}), false, "sample times"},
           {"seeds", KeyKind::SeedList, seeds(8), false, "ensemble seeds"},
           {"ensemble_size", KeyKind::Int, 0, false, "if > 0, seeds 1..ensemble_size"},
           {"epsilon", KeyKind::Real, 0.05, false, "extra decay of the random data"},
           {"fit_lo", KeyKind::Int, 0, false, "fit window start, 0 = N/16"},
           {"fit_hi", KeyKind::Int, 0, false, "fit window end, 0 = N/2"},
           {"noise_floor", KeyKind::Real, 1e-13, false, "relative floor for shell fits"},
           {"min_gain", KeyKind::Real, 0.5, false, "threshold for the gain verdict"},
       })},
      {"attractor",
       with_common({
           {"N", KeyKind::Int, nullptr, true, "truncation radius"},
           {"alpha", KeyKind::Alpha, "3/4", false, "dispersion coefficient"},
           {"gamma", KeyKind::Real, 0.1, false, "damping rate"},
           {"dt", KeyKind::Real, 0.0, false, "time step, 0 = automatic"},
           {"t_end", KeyKind::Real, 50.0, false, "attractor horizon"},
           {"sample_stride", KeyKind::Real, 0.1, false, "sample spacing, <= 0.01/gamma at alpha = 1"},
           {"seeds", KeyKind::SeedList, seeds(8), false, "first ensemble"},
           {"second_seeds", KeyKind::SeedList, Json({101, 102, 103, 104, 105, 106, 107, 108}), false,
            "second, disjoint ensemble"},
           {"ensemble_size", KeyKind::Int, 0, false, "if > 0, seeds 1..n and 101..100+n"},
           {"amplitude", KeyKind::Real, 1.0, false, "scale of the random data"},
           {"s0", KeyKind::Real, 1.0, false, "regularity of u0"},
           {"s1", KeyKind::Real, 0.0, false, "regularity of n_+"},
           {"a_list", KeyKind::RealList, reals({0.25, 0.5, 0.75}), false, "smoothing exponents probed"},
           {"window_start", KeyKind::Real, 5.0, false, "start of the sup window"},
           {"forcing", KeyKind::Forcing, Json::array(), false, "list of {k, re, im}; empty = cos(K x)"},
           {"forcing_K", KeyKind::Int, 3, false, "mode of the default forcing, 0 = unforced"},
           {"forcing_h1", KeyKind::Real, 1.0, false, "H^1 norm of the default forcing"},
           {"absorbing_t_end", KeyKind::Real, 100.0, false, "horizon of the decay fit, 0 = skip"},
           {"absorbing_stride", KeyKind::Real, 0.5, false, "sample spacing of the decay fit"},
       })},
      {"bounds",
       with_common({
           {"K", KeyKind::Int, 1024, false, "largest |k| of the sup-sum sweeps"},
           {"alpha", KeyKind::Alpha, "3/4", false, "dispersion coefficient"},
           {"s0", KeyKind::Real, 1.0, false, "regularity of u"},
           {"s1", KeyKind::Real, 0.0, false, "regularity of n"},
           {"b", KeyKind::Real, 0.55, false, "X^{s,b} exponent"},
           {"delta", KeyKind::Real, 0.01, false, "epsilon loss"},
           {"inner_factor", KeyKind::Int, 8, false, "inner cutoff in units of K"},
           {"kinds", KeyKind::StringList, Json({"R1", "R2", "R3", "R4"}), false, "sup-sums to sweep"},
           {"lemmas", KeyKind::Bool, true, false, "run the summation-lemma sweeps"},
           {"sharpness", KeyKind::Bool, true, false, "probe s + 1"},
           {"slope_max", KeyKind::Real, 0.1, false, "boundedness threshold for sup-sums"},
           {"lemma_slope_max", KeyKind::Real, 0.05, false, "boundedness threshold for lemmas"},
           {"sharpness_min", KeyKind::Real, 0.5, false, "growth threshold for probes"},
       })},
      {"gauge",
       with_common({
           {"N", KeyKind::Int, nullptr, true, "truncation radius"},
           {"alpha", KeyKind::Alpha, "3/4", false, "dispersion coefficient"},
           {"seed", KeyKind::Int, 1, false, "random data seed"},
           {"s0", KeyKind::Real, 1.0, false, "regularity of u0"},
           {"s1", KeyKind::Real, 0.0, false, "regularity of n0"},
           {"mean_n0", KeyKind::Real, 0.0, false, "spatial mean added to n0"},
           {"mean_n1", KeyKind::Real, 0.0, false, "spatial mean added to n1"},
           {"u0_file", KeyKind::String, "", false, "field CSV for u0 (overrides random data)"},
           {"n0_file", KeyKind::String, "", false, "field CSV for n0"},
           {"n1_file", KeyKind::String, "", false, "field CSV for n1"},
           {"t_end", KeyKind::Real, 0.0, false, "if > 0, evolve and ungauge"},
           {"dt", KeyKind::Real, 0.0, false, "time step, 0 = 0.5/N^2"},
       })},
  };
  return schemas;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
}

// Flag text -> JSON value of the key's kind.
Json from_flag(const KeySpec& spec, const std::string& text) {
  switch (spec.kind) {
    case KeyKind::Int: {
      const double v = parse_real(spec.name, text);
      if (v != std::floor(v)) throw ConfigError("key '" + spec.name + "': expected an integer");
      return static_cast<std::int64_t>(v);
    }
    case KeyKind::Real:
      return parse_real(spec.name, text);
    case KeyKind::Alpha:
    case KeyKind::String:
      return text;
    case KeyKind::Bool:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw ConfigError("key '" + spec.name + "': expected true or false");
    case KeyKind::RealList: {
      Json a = Json::array();
      for (const auto& item : split(text, ',')) a.push_back(parse_real(spec.name, item));
      return a;
    }
    case KeyKind::SeedList: {
      Json a = Json::array();
      for (const auto& item : split(text, ',')) a.push_back(static_cast<std::int64_t>(parse_real(spec.name, item)));
      return a;
    }
    case KeyKind::StringList: {
      Json a = Json::array();
      for (const auto& item : split(text, ',')) a.push_back(item);
      return a;
    }
    case KeyKind::Forcing: {
      // k:re:im,k:re:im
      Json a = Json::array();
      for (const auto& item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 3) throw ConfigError("key 'forcing': expected k:re:im entries");
        a.push_back({{"k", static_cast<std::int64_t>(parse_real("forcing", parts[0]))},
                     {"re", parse_real("forcing", parts[1])},
                     {"im", parse_real("forcing", parts[2])}});
      }
      return a;
    }
    case KeyKind::Object:
      return Json::parse(text);
  }
  return text;
}

void check_kind(const KeySpec& spec, const Json& v) {
  auto fail = [&](const char* what) { throw ConfigError("key '" + spec.name + "': expected " + what); };
  switch (spec.kind) {
    case KeyKind::Int:
      if (!v.is_number() || v.get<double>() != std::floor(v.get<double>())) fail("an integer");
      break;
    case KeyKind::Real:
      if (!v.is_number()) fail("a number");
      break;
    case KeyKind::Alpha:
      if (!v.is_number() && !v.is_string()) fail("a number or a \"p/q\" string");
      try {
        if (v.is_string()) Alpha::parse(v.get<std::string>());
        else Alpha(v.get<double>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError("key '" + spec.name + "': " + e.what());
      }
      break;
    case KeyKind::Bool:
      if (!v.is_boolean()) fail("true or false");
      break;
    case KeyKind::String:
      if (!v.is_string()) fail("a string");
      break;
    case KeyKind::RealList:
      if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_number(); }))
        fail("a list of numbers");
      break;
    case KeyKind::SeedList:
      if (!v.is_array() || v.empty() ||
          !std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_number_integer() && x.get<std::int64_t>() >= 0; }))
        fail("a nonempty list of nonnegative integers");
      break;
    case KeyKind::StringList:
      if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_string(); }))
        fail("a list of strings");
      break;
    case KeyKind::Forcing:
      if (!v.is_array()) fail("a list of {k, re, im}");
      for (const Json& e : v) {
        if (!e.is_object() || !e.contains("k") || !e["k"].is_number_integer()) fail("a list of {k, re, im}");
        for (const auto& [name, _] : e.items()) {
          if (name != "k" && name != "re" && name != "im") fail("a list of {k, re, im}");
        }
      }
      break;
    case KeyKind::Object:
      if (!v.is_object()) fail("an object");
      break;
  }
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"simulate", "normalform-check", "smoothing", "attractor", "bounds", "gauge"};
  return names;
}

const Schema& schema_for(const std::string& subcommand) {
  const auto& all = all_schemas();
  const auto it = all.find(subcommand);
  if (it == all.end()) throw ConfigError("unknown subcommand '" + subcommand + "'");
  return it->second;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    Json j = Json::parse(in);
    if (!j.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

Json resolve_config(const Schema& schema, const Json& file, const std::map<std::string, std::string>& flags) {
  auto find = [&](const std::string& key) -> const KeySpec* {
    for (const KeySpec& s : schema)
      if (s.name == key) return &s;
    return nullptr;
  };
  std::vector<std::string> unknown;
  for (const auto& [key, _] : file.items())
    if (!find(key)) unknown.push_back(key);
  for (const auto& [key, _] : flags)
    if (!find(key)) unknown.push_back(key);
  if (!unknown.empty()) {
    std::string msg = "unknown configuration keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }

  Json cfg = Json::object();
  std::vector<std::string> missing;
  for (const KeySpec& s : schema) {
    Json v = s.default_value;
    if (file.contains(s.name)) v = file.at(s.name);
    if (const auto it = flags.find(s.name); it != flags.end()) v = from_flag(s, it->second);
    if (v.is_null()) {
      if (s.required) missing.push_back(s.name);
      continue;
    }
    check_kind(s, v);
    cfg[s.name] = v;
  }
  if (!missing.empty()) {
    std::string msg = "missing required key:";
    for (const auto& k : missing) msg += " " + k;
    throw ConfigError(msg);
  }
  return cfg;
}

int get_int(const Json& cfg, const std::string& key) { return static_cast<int>(cfg.at(key).get<double>()); }
double get_real(const Json& cfg, const std::string& key) { return cfg.at(key).get<double>(); }
bool get_bool(const Json& cfg, const std::string& key) { return cfg.at(key).get<bool>(); }
std::string get_string(const Json& cfg, const std::string& key) { return cfg.at(key).get<std::string>(); }

Alpha get_alpha(const Json& cfg, const std::string& key) {
  const Json& v = cfg.at(key);
  return v.is_string() ? Alpha::parse(v.get<std::string>()) : Alpha(v.get<double>());
}

std::vector<double> get_reals(const Json& cfg, const std::string& key) {
  return cfg.at(key).get<std::vector<double>>();
}

std::vector<std::uint64_t> get_seeds(const Json& cfg, const std::string& key) {
  return cfg.at(key).get<std::vector<std::uint64_t>>();
}

std::vector<std::string> get_strings(const Json& cfg, const std::string& key) {
  return cfg.at(key).get<std::vector<std::string>>();
}

FourierField get_forcing(const Json& cfg, const std::string& key, int radius) {
  const Json& list = cfg.at(key);
  if (list.empty()) return {};
  FourierField f(radius);
  for (const Json& e : list) {
    const int k = e.at("k").get<int>();
    if (std::abs(k) > radius) throw ConfigError("forcing mode " + std::to_string(k) + " exceeds N");
    f[k] += Complex(e.value("re", 0.0), e.value("im", 0.0));
  }
  return f;
}

}  // namespace zakharov::cli
