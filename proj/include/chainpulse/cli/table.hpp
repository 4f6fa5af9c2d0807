// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_CLI_TABLE_HPP
#define CHAINPULSE_CLI_TABLE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace chainpulse::cli {

// CSV-shaped data shuttled between the statistics code, report files and
// the plot renderer. Values are kept as strings so emitted files are
// byte-stable; numeric access parses on demand.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    static Table from_csv(const std::string& text);

    void add_row(std::vector<std::string> row);
    std::size_t col(std::string_view name) const; // throws Error("bad-column")
    double number(std::size_t row, std::size_t column) const;
    std::size_t n_rows() const { return rows.size(); }
};

} // namespace chainpulse::cli

#endif // CHAINPULSE_CLI_TABLE_HPP
