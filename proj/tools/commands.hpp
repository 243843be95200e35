#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include <json.hpp>

namespace kerrqnd::cli {

struct GlobalOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  bool svg = false;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

// Each command merges `overrides` over the config file (flags win), validates,
// prints a human report, a blank line, then key=value lines. With --out the
// resolved parameters and results are also written there as JSON.
void cmd_error(const GlobalOptions& g, const nlohmann::json& overrides, std::ostream& out);
void cmd_sweep(const GlobalOptions& g, const nlohmann::json& overrides, std::ostream& out);
void cmd_thresholds(const GlobalOptions& g, const nlohmann::json& overrides, std::ostream& out);
void cmd_resonator(const GlobalOptions& g, const nlohmann::json& overrides, std::ostream& out);
void cmd_mc(const GlobalOptions& g, const nlohmann::json& overrides, std::ostream& out);

}  // namespace kerrqnd::cli
