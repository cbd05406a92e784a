#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qqe/privacy.hpp"

namespace qqe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitInputError = 2;

enum class Command { Analyze, Surface, Privacy, Decompose, Verify };
enum class OutputFormat { Csv, Structured };

struct RunConfig {
  Command command = Command::Verify;
  std::optional<std::filesystem::path> input_path;
  int grid_n = 21;
  std::uint64_t seed = 42;
  int trials = 1000;
  std::optional<double> tol;  // unset: each command's pinned default
  std::optional<std::filesystem::path> output;
  OutputFormat format = OutputFormat::Csv;
  MixtureCase mixture_case = MixtureCase::Symmetric;
  AsymmetricAxis axis = AsymmetricAxis::EPrime;
  int m = 4;
  int restarts = 20;
};

/// Throws Error{OutOfRange} when grid_n < 2, trials < 1, tol <= 0, m < 1 or restarts < 1.
void validate(const RunConfig& config);

/// Dispatches the command and maps library errors onto exit codes:
/// 0 success, 1 verification failure (including a decomposition that misses
/// its tolerance), 2 input error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int run_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_surface(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_privacy(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_decompose(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// 12 significant digits, '.' separator.
std::string csv_number(double x);

struct SuiteResult {
  std::string name;
  int trials = 0;
  int passed = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  std::optional<std::string> first_failure;  // serialized instance

  bool ok() const { return passed == trials; }
};

/// Randomized identity audits; deterministic for a given (seed, trials, tol).
/// The decomposition certificate runs on max(1, trials / 50) densities.
std::vector<SuiteResult> run_verification(std::uint64_t seed, int trials, std::optional<double> tol_override);

}  // namespace qqe::cli
