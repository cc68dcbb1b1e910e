#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "cli/config.hpp"

namespace imcf::cli {

enum ExitCode : int { kPass = 0, kVerifyFail = 1, kInvalidInput = 2, kNumerical = 3 };

/// 2 for input/parameter errors, 3 for numerical failures.
int exit_code_for(const Error& e) noexcept;

/// The family on the config grid, optionally built on a box padded by
/// (s_pad, t_pad) on each side.
GeneratedFamily build_from_config(const ExperimentConfig& cfg, double s_pad = 0.0, double t_pad = 0.0);

/// Each command prints its summary to `out` and returns the exit code.
/// `out_path` (possibly empty) is the --out override for the primary output.
int cmd_generate(const ExperimentConfig& cfg, const std::string& out_path, const std::string& format, std::ostream& out);
int cmd_verify(const ExperimentConfig& cfg, const std::string& out_path, std::ostream& out);
int cmd_flowcheck(const ExperimentConfig& cfg, const std::string& out_path, std::ostream& out);
int cmd_export(const ExperimentConfig& cfg, const std::string& out_path, std::ostream& out);
int cmd_selftest(std::uint64_t seed, std::ostream& out);

} // namespace imcf::cli
