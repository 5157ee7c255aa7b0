#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "helson/outputs.hpp"
#include "helson/run_config.hpp"

namespace helson {

/// Runs the operation mapped to config.command; no files are touched.
ResultDocument run_command(const RunConfig& config);

/// Operator matrix of the matrix/spectrum commands.
SymmetricMatrix operator_matrix(const RunConfig& config);

/// Full command-line entry point. Exit codes: 0 success, 1 numeric, iteration
/// or filesystem error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helson
