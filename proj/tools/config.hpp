#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "zakharov/alpha.hpp"
#include "zakharov/fourier_field.hpp"

namespace zakharov::cli {

using Json = nlohmann::ordered_json;

/// Invalid configuration or flags; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class KeyKind { Int, Real, Alpha, Bool, String, RealList, SeedList, StringList, Forcing, Object };

struct KeySpec {
  std::string name;
  KeyKind kind;
  Json default_value;  // null: no default
  bool required = false;
  std::string help;
};

using Schema = std::vector<KeySpec>;

/// Keys for one subcommand, in documentation order.
const Schema& schema_for(const std::string& subcommand);
const std::vector<std::string>& subcommands();

/// Reads a JSON object from a file. Throws ConfigError on I/O or syntax errors.
Json load_config_file(const std::string& path);

/// Merges file values and command-line values (flags win) over the schema
/// defaults. Unknown keys, missing required keys and ill-typed values throw
/// ConfigError; the message names every offending key.
Json resolve_config(const Schema& schema, const Json& file, const std::map<std::string, std::string>& flags);

/// Typed accessors on a resolved config.
int get_int(const Json& cfg, const std::string& key);
double get_real(const Json& cfg, const std::string& key);
bool get_bool(const Json& cfg, const std::string& key);
std::string get_string(const Json& cfg, const std::string& key);
Alpha get_alpha(const Json& cfg, const std::string& key);
std::vector<double> get_reals(const Json& cfg, const std::string& key);
std::vector<std::uint64_t> get_seeds(const Json& cfg, const std::string& key);
std::vector<std::string> get_strings(const Json& cfg, const std::string& key);

/// Forcing given as [{"k": 3, "re": 0.1, "im": 0.0}, ...]; empty list: none.
FourierField get_forcing(const Json& cfg, const std::string& key, int radius);

}  // namespace zakharov::cli
