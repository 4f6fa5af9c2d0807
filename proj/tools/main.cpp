// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/cli/run.hpp"

int main(int argc, char** argv) {
    return chainpulse::cli::run({argv + 1, argv + argc});
}
