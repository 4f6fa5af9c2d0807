// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/cli/table.hpp"

#include "chainpulse/util/error.hpp"
#include "chainpulse/util/text.hpp"

#include <utility>

namespace chainpulse::cli {

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c > 0) {
            out += ',';
        }
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out += ',';
            }
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

Table Table::from_csv(const std::string& text) {
    Table table;
    std::size_t start = 0;
    bool header = true;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::string_view line(text.data() + start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        start = end + 1;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        for (auto piece : split(line, ',')) {
            cells.emplace_back(piece);
        }
        if (header) {
            table.columns = std::move(cells);
            header = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.columns.empty()) {
        throw Error("bad-table", "CSV table has no header");
    }
    return table;
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) {
        throw Error("bad-table", "row arity does not match the header");
    }
    rows.push_back(std::move(row));
}

std::size_t Table::col(std::string_view name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == name) {
            return c;
        }
    }
    throw Error("bad-column", "missing column '" + std::string(name) + "'");
}

double Table::number(std::size_t row, std::size_t column) const {
    return parse_double(rows.at(row).at(column));
}

} // namespace chainpulse::cli
