// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_CLI_RUN_HPP
#define CHAINPULSE_CLI_RUN_HPP

#include <string>
#include <vector>

namespace chainpulse::cli {

// Entry point behind main(): parses argv (program name excluded), runs the
// subcommand and returns the process exit status. 0 on success; 2 on usage
// errors and module precondition violations (one "error[code]: text" line on
// stderr); 1 on unexpected internal failures.
int run(const std::vector<std::string>& args);

} // namespace chainpulse::cli

#endif // CHAINPULSE_CLI_RUN_HPP
