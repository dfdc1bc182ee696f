// cascade-synth: command-line front end for cascade realization of linear
// quantum stochastic systems. Every invocation prints one JSON value.

#include <iostream>

#include <CLI11.hpp>

#include "cascade/io/commands.hpp"

namespace io = lqss::io;

int main(int argc, char** argv) {
  CLI::App app{"Pure-cascade synthesis of linear quantum stochastic systems"};
  app.require_subcommand(1);

  double tol = 0.0;
  double equiv_tol = io::kDefaultEquivalenceTolerance;
  std::uint64_t seed = 0;
  std::size_t samples = io::kDefaultSamples;
  std::string input, input_b, out, points;

  auto* check = app.add_subcommand("check", "Test pure-cascade realizability");
  check->add_option("path", input, "System document")->required();
  check->add_option("--tol", tol, "Relative block-triangularity tolerance");

  auto* decompose = app.add_subcommand("decompose", "Split a realizable system into stages");
  decompose->add_option("path", input, "System document")->required();
  decompose->add_option("--out", out, "Realization document to write");
  decompose->add_option("--tol", tol, "Relative block-triangularity tolerance");

  auto* passive = app.add_subcommand("passive-realize",
                                     "Transfer-function realization of a passive system");
  passive->add_option("path", input, "System document")->required();
  passive->add_option("--out", out, "Realization document to write");
  passive->add_option("--seed", seed, "Sampling seed for the equivalence check");
  passive->add_option("--samples", samples, "Number of transfer-function samples");
  passive->add_option("--tol", tol, "Relative block-triangularity tolerance");
  passive->add_option("--equiv-tol", equiv_tol, "Transfer-function mismatch tolerance");

  auto* tf = app.add_subcommand("tf", "Evaluate the doubled-up transfer function");
  tf->add_option("path", input, "System document")->required();
  tf->add_option("--points", points, "Comma-separated points, e.g. 1+2j,0.5-1j")->required();

  auto* verify = app.add_subcommand("verify", "Certify transfer-function equivalence");
  verify->add_option("path_a", input, "First system document")->required();
  verify->add_option("path_b", input_b, "Second system document")->required();
  verify->add_option("--samples", samples, "Number of sample points");
  verify->add_option("--tol", tol, "Relative mismatch tolerance");
  verify->add_option("--seed", seed, "Sampling seed");

  auto* casc = app.add_subcommand("cascade", "Re-cascade a realization document");
  casc->add_option("path", input, "Realization document")->required();
  casc->add_option("--out", out, "System document to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << io::json{{"error", {{"kind", "UsageError"}, {"message", e.what()}}}} << "\n";
    return io::kExitInputError;
  }

  io::CommandResult result;
  try {
    const auto out_path = out.empty() ? std::nullopt : std::optional<std::filesystem::path>(out);
    const auto tolerance = [&](double fallback) {
      return tol > 0.0 ? tol : io::default_tolerance(fallback);
    };
    if (*check) {
      result = io::cmd_check(input, tolerance(io::kDefaultTolerance));
    } else if (*decompose) {
      result = io::cmd_decompose(input, out_path, tolerance(io::kDefaultTolerance));
    } else if (*passive) {
      io::PassiveRealizeOptions opts;
      opts.triangular_tol = tolerance(io::kDefaultTolerance);
      opts.equivalence_tol = equiv_tol;
      opts.samples = samples;
      opts.seed = seed;
      result = io::cmd_passive_realize(input, out_path, opts);
    } else if (*tf) {
      result = io::cmd_tf(input, io::parse_points(points));
    } else if (*verify) {
      result = io::cmd_verify(input, input_b, samples,
                              tolerance(io::kDefaultEquivalenceTolerance), seed);
    } else if (*casc) {
      result = io::cmd_cascade(input, out_path);
    }
  } catch (const lqss::Error& e) {
    result = io::error_result(e);
  }
  std::cout << result.output.dump(2) << "\n";
  return result.exit_code;
}
