#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace oscillat::cli {

enum class Command { validate, geometry, maximal, oscillation, convolve, verify, gallery };

std::string to_string(Command c);

struct RunConfig {
  Command command = Command::validate;
  std::string space_path;
  std::string function_path;
  double alpha = 0.0;
  double p = 1.0;
  double lambda = 4.0;
  double delta = 0.25;
  double rmin = 0.0;  // 0: family default
  double rmax = 0.0;
  std::string convention = "intrinsic";
  std::size_t N = 1024;
  double L = 64.0;
  int n = 0;
  double Q = 0.0;  // 0: engine default
  std::string suite = "all";
  std::string name;
  std::string format;  // csv | json | svg; empty picks the command's default
  std::string out_path;
  std::uint64_t seed = 1;
};

/// Range checks that need no input files. Throws std::invalid_argument.
void check_config(const RunConfig& config);

/// Canonical text of every field that influences the output, plus the bytes of
/// the input files.
std::string canonical_config(const RunConfig& config);

/// Runs one command. Artifacts go to config.out_path, or to `out` when empty;
/// diagnostics go to `err`. Returns 0 on success, 1 when a verify suite fails,
/// 2 on invalid input.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace oscillat::cli
