#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "commands.hpp"
#include "config.hpp"
#include "run_dir.hpp"
#include "zakharov/errors.hpp"

namespace zakharov::cli {

namespace {

std::string dashed(std::string s) {
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

using Handler = std::function<void(const Json&, RunDirectory&, std::ostream&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"simulate", run_simulate},   {"normalform-check", run_normalform_check},
      {"smoothing", run_smoothing}, {"attractor", run_attractor},
      {"bounds", run_bounds},       {"gauge", run_gauge},
  };
  return h;
}

struct SubcommandFlags {
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> bools;
  std::map<std::string, CLI::Option*> bool_options;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral workbench for the periodic Zakharov system"};
  app.require_subcommand(1);
  std::map<std::string, SubcommandFlags> flags;
  for (const std::string& name : subcommands()) {
    SubcommandFlags& f = flags[name];
    f.app = app.add_subcommand(name);
    f.app->add_option("--config", f.config_path, "JSON config file");
    for (const KeySpec& spec : schema_for(name)) {
      if (spec.kind == KeyKind::Bool) {
        const std::string opt = spec.name == "with_rho" ? "--with-rho,!--without-rho"
                                                        : "--" + dashed(spec.name) + ",!--no-" + dashed(spec.name);
        f.bool_options[spec.name] = f.app->add_flag(opt, f.bools[spec.name], spec.help);
      } else {
        f.app->add_option("--" + dashed(spec.name), f.values[spec.name], spec.help);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    for (CLI::App* sub : app.get_subcommands()) out << sub->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  SubcommandFlags& f = flags[name];
  std::map<std::string, std::string> given;
  for (const KeySpec& spec : schema_for(name)) {
    if (spec.kind == KeyKind::Bool) {
      if (f.bool_options[spec.name]->count() > 0) given[spec.name] = f.bools[spec.name] ? "true" : "false";
    } else if (chosen->get_option("--" + dashed(spec.name))->count() > 0) {
      given[spec.name] = f.values[spec.name];
    }
  }

  try {
    const Json file = f.config_path.empty() ? Json::object() : load_config_file(f.config_path);
    const Json cfg = resolve_config(schema_for(name), file, given);
    RunDirectory dir(get_string(cfg, "output_dir"), name);
    handlers().at(name)(cfg, dir, out);
    out << "run directory: " << dir.commit(cfg).string() << "\n";
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace zakharov::cli
