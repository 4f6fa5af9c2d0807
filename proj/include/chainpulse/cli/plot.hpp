// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_CLI_PLOT_HPP
#define CHAINPULSE_CLI_PLOT_HPP

#include "chainpulse/cli/table.hpp"

#include <string>

namespace chainpulse::cli {

// Figure kinds and the table columns each expects:
//   Ecdf          value, cumulative
//   HistogramFit  bin_lo, bin_hi, count, fit
//   Acf           lag, correlation, band
//   Scatter       x, y
//   SeriesOverlay index, measured, predicted
//   Roc           fpr, tpr
enum class PlotKind { Ecdf, HistogramFit, Acf, Scatter, SeriesOverlay, Roc };

PlotKind plot_kind_from_string(const std::string& name);

// Standalone SVG document, labeled axes, deterministic bytes for identical
// input. Throws Error("bad-column") when the table does not match the kind.
std::string render_plot(const Table& table, PlotKind kind);

} // namespace chainpulse::cli

#endif // CHAINPULSE_CLI_PLOT_HPP
