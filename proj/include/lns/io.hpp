#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "lns/mass.hpp"

namespace lns::io {

/// Files tolerate more rounding than the in-memory API before rejecting a row.
inline constexpr double kFileMassTolerance = 1e-6;

enum class Format { csv, json };

Format parse_format(std::string_view name);
/// Picks the format from a ".csv" / ".json" extension.
Format format_for(const std::filesystem::path& path);

struct BbaSet {
  Frame frame;
  std::vector<MassFunction> masses;
};

// Dense CSV: optional "# frame: a,b,c" line, a header of n-bit subset masks
// (most significant bit = last label), then one bba per row.
BbaSet read_csv(std::istream& in);
void write_csv(std::ostream& out, const Frame& frame, std::span<const MassFunction> ms);

// Sparse JSON: {"frame": [...], "bbas": [{"focal elements": [[...]], "masses": [...]}]}.
BbaSet read_json(std::istream& in);
void write_json(std::ostream& out, const Frame& frame, std::span<const MassFunction> ms);

BbaSet read(std::istream& in, Format format);
void write(std::ostream& out, Format format, const Frame& frame, std::span<const MassFunction> ms);

BbaSet read_file(const std::filesystem::path& path, Format format);
void write_file(const std::filesystem::path& path, Format format, const Frame& frame,
                std::span<const MassFunction> ms);

}  // namespace lns::io
