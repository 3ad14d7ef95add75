#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sct/ridge.hpp"

namespace sct::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kNumerical = 3 };

/// Runs one command line; args excludes the program name.
/// Subcommands: transform, sct, ridge, reconstruct, synth, compare, info.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Ridge CSV: t_s, then omega_k_hz, mu_k_hzps, valid_k for k = 1..K.
std::string ridges_csv(const RidgeSet& ridges);
RidgeSet parse_ridges_csv(const std::string& text);

}  // namespace sct::cli
