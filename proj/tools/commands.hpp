#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"
#include "run_dir.hpp"

namespace zakharov::cli {

/// Each command writes its artifacts into `dir` and a short summary to `out`.
void run_simulate(const Json& cfg, RunDirectory& dir, std::ostream& out);
void run_normalform_check(const Json& cfg, RunDirectory& dir, std::ostream& out);
void run_smoothing(const Json& cfg, RunDirectory& dir, std::ostream& out);
void run_attractor(const Json& cfg, RunDirectory& dir, std::ostream& out);
void run_bounds(const Json& cfg, RunDirectory& dir, std::ostream& out);
void run_gauge(const Json& cfg, RunDirectory& dir, std::ostream& out);

}  // namespace zakharov::cli
