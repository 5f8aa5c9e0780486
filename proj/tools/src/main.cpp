#include <iostream>

#include "miquel_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = miquel::cli::run_command(args);
  (result.exit_code <= miquel::cli::kExitValidation ? std::cout : std::cerr) << result.report;
  return result.exit_code;
}
