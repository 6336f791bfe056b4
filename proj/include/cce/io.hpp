#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "cce/series.hpp"

namespace cce {

/// Shortest round-trip decimal form of a double ("1e+300" style for
/// extremes); deterministic across runs, parses back to the same bits.
std::string format_double(double value);

/// One score per line; an optional single non-numeric header line is
/// skipped. Throws std::runtime_error with "file:line:" diagnostics.
ScoreSeries read_score_file(const std::filesystem::path& path);

/// One 0/1 label per line, same header rule and diagnostics.
LabelSeries read_label_file(const std::filesystem::path& path);

/// Writes to a temporary sibling then renames, so failed runs never leave a
/// partial file behind.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace cce
