#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frax/grid.hpp"
#include "frax/params.hpp"

namespace frax::cli {

/// Everything a single invocation needs. Each command-line flag sets exactly
/// one field.
struct RunConfig {
  std::string command;  // kernel | constants | extend | verify | carleson | capacity

  Params params;
  GridSpec grid;
  int quad_count = 200;
  std::optional<double> tolerance;

  std::string function = "gaussian";  // catalog entry
  std::string input;                  // grid file (.csv or .json) instead of a catalog entry
  std::string measure;                // measure CSV
  std::string family;                 // open-set JSON
  std::string out;                    // report destination; stdout when empty
  std::string format = "json";        // json | csv
  std::string export_path;            // extend: write the sampled datum here

  std::string check = "identity-gradient";
  std::string variant = "grad";
  std::string which = "time-derivative";
  std::string condition = "vi";  // vi | v | minimizing | embedding
  std::string capacity_case = "case1";

  std::optional<double> a;
  double r = 1.0;
  double t = 1.0;
  std::vector<double> x;
  std::vector<double> lambdas;
  int directions = 64;
  std::optional<double> max_radius;
};

/// Thrown for malformed command lines; maps to exit code 1.
struct UsageError {
  std::string message;
  int exit_code = 1;  // 0 for --help
};

/// Parses argv into a RunConfig. Unknown flags and missing values are usage
/// errors. `help_text` receives the --help output when requested.
RunConfig parse_args(int argc, const char* const* argv, std::string* help_text = nullptr);

struct RunResult {
  int exit_code = 0;
  std::string output;  // serialized reports
  std::string error;   // message for exit code 1
};

/// Executes the command without touching stdout; files named by the config
/// (input, measure, family, export) are read or written.
RunResult execute(const RunConfig& config);

/// execute() plus emission: writes the output to config.out or stdout and the
/// error to stderr. Returns the exit code: 0 pass or warn, 2 fail, 1 error.
int run(const RunConfig& config);

/// Entry point used by the frax executable.
int main(int argc, const char* const* argv);

}  // namespace frax::cli
