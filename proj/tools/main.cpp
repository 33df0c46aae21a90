#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "command.hpp"

int main(int argc, char** argv) {
  using namespace circleforge::cli;
  std::optional<CommandConfig> parsed;
  try {
    parsed = parse_arguments(argc, argv, std::cout);
  } catch (const CLI::ParseError& e) {
    write_error(std::cerr, "json", "usage", e.what());
    return kPrecondition;
  }
  if (!parsed) return kSuccess;
  CommandConfig config = *parsed;
  apply_environment(config);
  if (config.out.empty()) return run(config, std::cout, std::cerr);
  std::ofstream file(config.out, std::ios::trunc);
  if (!file) {
    write_error(std::cerr, config.format, "failure", "cannot open " + config.out);
    return kFailure;
  }
  return run(config, file, std::cerr);
}
