#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qqe/cli.hpp"

namespace {

using qqe::cli::Command;
using qqe::cli::OutputFormat;
using qqe::cli::RunConfig;

void add_output_options(CLI::App* sub, RunConfig& config, std::string& output) {
  sub->add_option("--output", output, "Write to this file instead of standard output");
  sub->add_option("--format", config.format, "csv or structured")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, int>{{"csv", static_cast<int>(OutputFormat::Csv)},
                                     {"structured", static_cast<int>(OutputFormat::Structured)}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energetic structure and entanglement of two-qubit states"};
  app.require_subcommand(1);

  RunConfig config;
  std::string input;
  std::string output;
  double tol = 0.0;

  auto* analyze = app.add_subcommand("analyze", "Energetics, concurrence and deficit report for a state file");
  analyze->add_option("input", input, "State file (pure, density or ensemble)")->required();
  add_output_options(analyze, config, output);

  auto* surface = app.add_subcommand("surface", "Maximal C^2 and efficiency over the (E_A, E_B) grid");
  surface->add_option("--grid-n", config.grid_n, "Grid points per axis");
  add_output_options(surface, config, output);

  auto* privacy = app.add_subcommand("privacy", "Energy-encoded entanglement distribution sweep");
  std::string mixture_case;
  privacy->add_option("--case", mixture_case, "symmetric or asymmetric")
      ->check(CLI::IsMember({"symmetric", "asymmetric"}))
      ->required();
  privacy->add_option("--grid-n", config.grid_n, "Number of sweep points");
  std::string axis = "eprime";
  privacy->add_option("--asym-axis", axis, "Asymmetric sweep variable: eprime (E' in [0,1/2]) or e (E in [1/2,2/3])")
      ->check(CLI::IsMember({"eprime", "e"}));
  add_output_options(privacy, config, output);

  auto* decompose = app.add_subcommand("decompose", "Minimize the average squared concurrence over decompositions");
  decompose->add_option("input", input, "Density or ensemble file")->required();
  decompose->add_option("--m", config.m, "Number of ensemble members searched over");
  decompose->add_option("--restarts", config.restarts, "Random restarts");
  decompose->add_option("--seed", config.seed, "Seed of the first restart");
  decompose->add_option("--tol", tol, "Accepted gap to C^2[rho]");
  add_output_options(decompose, config, output);

  auto* verify = app.add_subcommand("verify", "Randomized identity audits");
  verify->add_option("--seed", config.seed, "Base seed");
  verify->add_option("--trials", config.trials, "Trials per suite");
  verify->add_option("--tol", tol, "Override every suite tolerance");
  add_output_options(verify, config, output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qqe::cli::kExitInputError;
  }

  if (analyze->parsed()) config.command = Command::Analyze;
  if (surface->parsed()) config.command = Command::Surface;
  if (privacy->parsed()) config.command = Command::Privacy;
  if (decompose->parsed()) config.command = Command::Decompose;
  if (verify->parsed()) config.command = Command::Verify;

  config.mixture_case = mixture_case == "asymmetric" ? qqe::MixtureCase::Asymmetric : qqe::MixtureCase::Symmetric;
  config.axis = axis == "e" ? qqe::AsymmetricAxis::E : qqe::AsymmetricAxis::EPrime;
  if (!input.empty()) config.input_path = input;
  if (!output.empty()) config.output = output;
  for (auto* sub : {decompose, verify}) {
    if (sub->parsed() && sub->count("--tol") > 0) config.tol = tol;
  }

  return qqe::cli::run(config, std::cout, std::cerr);
}
