// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhm/report.hpp"

namespace qhm
{

// Bad flags, malformed config text, or inputs a command rejects. Exit code 2.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Resolved configuration. Config files are flat `key = value` lines; `#`
// starts a comment. Keys:
//   c mu nu nx ny pmax                  algebra parameters
//   connection                          grassmannian | nabla0 | nabla1 | nabla2 | nabla3
//   nabla1.profile                      admissible | literal
//   alpha                               nabla3 frequency
//   smoothstep                          septic | cubic (profile of the Kang generator)
//   dirac.K dirac.model dirac.scope     modes |m|,|n| <= K; full | flat; all | p0
//   hochschild.K                        0 skips the Hochschild energy in `dirac`
//   example4.N
//   scan.c scan.mu scan.alpha           comma-separated grids for `ym --format csv`
//   out format                          same as the flags
struct Config
{
  Params params;
  std::string connection = "nabla0";
  std::string nabla1_profile = "admissible";
  double alpha = 1.0;
  Smoothstep smoothstep = Smoothstep::septic;
  int dirac_K = 16;
  std::string dirac_model = "full";
  std::string dirac_scope = "all";
  int hochschild_K = 0;
  int example4_N = 7;
  std::vector<int> scan_c = {1, 2};
  std::vector<double> scan_mu = {0.1, 0.2};
  std::vector<double> scan_alpha = {1.0, 2.0};
  std::string out;
  std::string format = "json";
};

// Both throw UsageError naming the offending key or line.
void apply_setting(Config &config, const std::string &key, const std::string &value);
void apply_config_text(Config &config, const std::string &text);
// Params::validate plus the enumerated keys; throws UsageError.
void validate(const Config &config);

Json to_json(const Config &config);
ConnectionKind make_connection(const Config &config);

struct CheckResult
{
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};
// The invariant suite behind `verify`: algebra, Kang structure, connections,
// sigma model and Dirac identities that hold exactly. Requires 0 < mu < 1/4
// (std::domain_error "mu out of range").
std::vector<CheckResult> invariant_suite(const Config &config);

struct CommandOutput
{
  int exit_code = 0;
  std::string text;  // the report, JSON or CSV
  std::string log;   // human-readable lines for stderr
};
// Runs one of verify | ym | energy | charge | bound | dirac | example4.
// Throws UsageError for unknown commands and rejected inputs, with a
// message prefixed by the command name.
CommandOutput run_command(const std::string &command, const Config &config);

// Full driver: flag parsing, config loading, output routing, exit codes
// (0 success, 1 invariant failure, 2 usage error).
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qhm
