#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "maxent/cli.hpp"
#include "maxent/verification.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Maximum relative-entropy updating of distributions and density matrices"};
  app.require_subcommand(1);

  std::string problem;
  std::string update_out;
  auto* update = app.add_subcommand("update", "Solve a problem file and write the report JSON");
  update->add_option("problem", problem, "Problem file (JSON)")->required();
  update->add_option("--out", update_out, "Report path (default: standard output)");

  std::uint64_t seed = maxent::verification::kDefaultSeed;
  long long trials = 1;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Run the design-criteria property suite");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--trials", trials, "Random instances per check");
  verify->add_option("--out", verify_out, "Report path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : maxent::cli::kInputError;
  }

  auto opt = [](const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<std::string>(s);
  };
  if (*update) return maxent::cli::run_update(problem, opt(update_out), std::cout, std::cerr);
  return maxent::cli::run_verify(seed, trials, opt(verify_out), std::cout, std::cerr);
}
