#pragma once

#include <string>
#include <vector>

#include "miquel/circle_pattern.hpp"

namespace miquel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitUsage = 64;

struct CommandResult {
  int exit_code = kExitOk;
  std::string report;  // text, or JSON under --json
};

// argv without the program name.
CommandResult run_command(const std::vector<std::string>& args);

struct SvgLayers {
  bool circles = true;
  bool centers = true;
  bool edges = true;
  bool dual = false;
};

SvgLayers parse_layers(const std::string& spec);  // comma separated layer names
std::string export_svg(const CirclePattern& p, const SvgLayers& layers);

}  // namespace miquel::cli
