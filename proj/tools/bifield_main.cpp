#include <CLI11.hpp>

#include <iostream>

#include "bifield/harness.hpp"

int main(int argc, char** argv) {
  namespace h = bifield::harness;
  CLI::App app{"Blip and biorthogonal field quantisation engine"};
  app.require_subcommand(1, 1);

  std::string config;
  std::string out = ".";
  std::uint64_t seed = 12345;
  for (const char* name : {"verify", "propagate", "kernel", "blipfield", "energy", "counterexample"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "scenario JSON")->required();
    sub->add_option("--out", out, "output directory")->required();
    sub->add_option("--seed", seed, "seed for randomised checks");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string kind = app.get_subcommands().front()->get_name();
  return h::run(h::kind_from_name(kind), config, out, seed, std::cout, std::cerr);
}
