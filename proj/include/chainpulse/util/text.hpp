// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_UTIL_TEXT_HPP
#define CHAINPULSE_UTIL_TEXT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace chainpulse {

// Shortest representation that parses back to the same double. All file
// output goes through this so that identical data yields identical bytes.
std::string format_double(double value);

// Strict full-string parsers; throw Error("bad-number") on any leftover.
double parse_double(std::string_view text);
std::int64_t parse_i64(std::string_view text);

std::vector<std::string_view> split(std::string_view line, char sep);

std::string_view trim(std::string_view text);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it into place, so readers never
// observe a half-written file.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

} // namespace chainpulse

#endif // CHAINPULSE_UTIL_TEXT_HPP
