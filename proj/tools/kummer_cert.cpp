// kummer-cert: recompute the invariants and check the torsion ledger.
#include "kummer/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
  using namespace kummer::cli;

  CLI::App app{"Exact certificate that H^*(K_2(A), Z) is torsion free", "kummer-cert"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string convention = "forward";
  std::string script;
  std::uint64_t seed = kDefaultSeed;

  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--convention", convention, "Generator of the action on A x A")
      ->check(CLI::IsMember({"forward", "backward"}));
  auto* seed_opt = app.add_option("--seed", seed, "Seed of the randomized cross-check");
  app.fallthrough();

  const std::map<std::string, std::string> help{
      {"ell-table", "Jordan types of H^k(A x A, F_3) for k = 1..4 by both routes"},
      {"cohomology", "H^p(A3; H^q(A x A)) by Smith normal form and closed form"},
      {"verify-proposition", "Compare the Jordan types with the expected table"},
      {"check-ledger", "Replay a torsion ledger script"},
      {"full-cert", "Run every stage and certify torsion-freeness in all degrees"},
  };
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    if (name == "check-ledger") sub->add_option("--script", script, "Ledger script (JSON)")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kBadInput;
  }

  RunConfig config;
  config.command = *parse_command(app.get_subcommands().front()->get_name());
  config.format = format == "json" ? Format::Json : Format::Text;
  config.convention =
      convention == "backward" ? kummer::model::CycleConvention::Backward : kummer::model::CycleConvention::Forward;
  if (config.command == Command::CheckLedger) config.script_path = script;
  if (*seed_opt) config.seed = seed;
  return run(config, std::cout, std::cerr);
}
