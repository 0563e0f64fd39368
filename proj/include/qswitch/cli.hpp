// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: subcommand dispatch, key=value config files,
// deterministic CSV sweeps and companion gnuplot scripts.
//
// Exit status contract: 0 success, 1 property-suite failure or internal
// error, 2 usage/parse error (unknown flag or subcommand, malformed config
// line), 3 invalid parameter range, 4 I/O failure.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qswitch {

inline constexpr const char* kToolVersion = "0.1.0";

// Name of the environment variable giving the default output directory for
// CSV and plot files when --out is not passed.
inline constexpr const char* kOutDirEnvVar = "QSWITCH_OUT_DIR";

// Parameters accumulated from a config file, in file order. Flags given on
// the command line override entries loaded from the file.
struct RunConfig {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> params;
  std::string output_path;
  std::uint64_t seed = 0;
};

// Parses a flat key=value file ('#' comments and blank lines allowed; keys
// are long flag names without the leading dashes). Throws IoError when the
// file cannot be read and std::invalid_argument, naming the line, when a
// line is malformed.
RunConfig load_config(const std::string& path);

// Full driver: parses argv, runs one subcommand, writes its CSV and plot
// script, and returns the exit status described above.
int run(int argc, const char* const* argv);

}  // namespace qswitch
