#include "lns/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lns/errors.hpp"

namespace lns::io {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw FusionError(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string mask_string(Subset s, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (s >> i & 1u) out[static_cast<std::size_t>(n - 1 - i)] = '1';
  return out;
}

MassFunction ingest(const Frame& frame, std::vector<double> values, std::size_t line) {
  try {
    return MassFunction::from_values(frame, std::move(values), kFileMassTolerance);
  } catch (const FusionError& e) {
    parse_fail(line, e.what());
  }
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw FusionError(ErrorKind::parameter, "unknown format '" + std::string(name) + "'");
}

Format format_for(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".json") return Format::json;
  if (ext == ".csv") return Format::csv;
  throw FusionError(ErrorKind::parameter, "cannot infer the format of '" + path.string() + "'");
}

BbaSet read_csv(std::istream& in) {
  std::optional<std::vector<std::string>> labels;
  std::optional<Frame> frame;
  std::vector<Subset> columns;
  std::vector<MassFunction> masses;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = std::string_view(line).substr(1);
      const auto colon = body.find(':');
      if (colon != std::string_view::npos && trim(body.substr(0, colon)) == "frame") {
        if (frame) parse_fail(line_no, "frame declaration after the header row");
        labels = split(body.substr(colon + 1), ',');
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (!frame) {
      const std::size_t n = cells.front().size();
      if (n == 0 || n > static_cast<std::size_t>(kMaxFrameSize) || cells.size() != (std::size_t{1} << n))
        parse_fail(line_no, "header must list all 2^n subset bitmasks");
      try {
        frame = labels ? Frame(*labels) : Frame::with_size(static_cast<int>(n));
      } catch (const FusionError& e) {
        parse_fail(line_no, e.what());
      }
      if (static_cast<std::size_t>(frame->size()) != n)
        parse_fail(line_no, "bitmask width does not match the declared frame");
      std::vector<bool> seen(cells.size(), false);
      for (const auto& cell : cells) {
        if (cell.size() != n || cell.find_first_not_of("01") != std::string::npos)
          parse_fail(line_no, "bad bitmask '" + cell + "'");
        Subset s = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (cell[n - 1 - i] == '1') s |= Subset{1} << i;
        if (seen[s]) parse_fail(line_no, "duplicate bitmask '" + cell + "'");
        seen[s] = true;
        columns.push_back(s);
      }
      continue;
    }
    if (cells.size() != columns.size())
      parse_fail(line_no, "expected " + std::to_string(columns.size()) + " values, got " +
                              std::to_string(cells.size()));
    std::vector<double> values(columns.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      const auto& cell = cells[c];
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty())
        parse_fail(line_no, "malformed number '" + cell + "'");
      values[columns[c]] = v;
    }
    masses.push_back(ingest(*frame, std::move(values), line_no));
  }
  if (!frame) throw FusionError(ErrorKind::parse, "missing header row");
  return {*frame, std::move(masses)};
}

void write_csv(std::ostream& out, const Frame& frame, std::span<const MassFunction> ms) {
  out << "# frame: ";
  for (int i = 0; i < frame.size(); ++i) out << (i ? "," : "") << frame.label(i);
  out << '\n';
  for (Subset s = 0; s <= frame.full(); ++s) out << (s ? "," : "") << mask_string(s, frame.size());
  out << '\n';
  for (const auto& m : ms) {
    require_same_frame(frame, m.frame());
    for (Subset s = 0; s <= frame.full(); ++s) out << (s ? "," : "") << format_double(m[s]);
    out << '\n';
  }
}

BbaSet read_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FusionError(ErrorKind::parse, e.what());
  }
  try {
    Frame frame(doc.at("frame").get<std::vector<std::string>>());
    std::vector<MassFunction> masses;
    const auto& bbas = doc.at("bbas");
    for (std::size_t i = 0; i < bbas.size(); ++i) {
      const auto& entry = bbas[i];
      const auto focal = entry.at("focal elements").get<std::vector<std::vector<std::string>>>();
      const auto values = entry.at("masses").get<std::vector<double>>();
      const std::string where = "bba #" + std::to_string(i) + ": ";
      if (focal.size() != values.size())
        throw FusionError(ErrorKind::parse, where + "focal elements and masses differ in length");
      std::vector<double> dense(frame.powerset_size(), 0.0);
      for (std::size_t k = 0; k < focal.size(); ++k) dense[frame.subset_of(focal[k])] += values[k];
      try {
        masses.push_back(MassFunction::from_values(frame, std::move(dense), kFileMassTolerance));
      } catch (const FusionError& e) {
        throw FusionError(ErrorKind::parse, where + e.what());
      }
    }
    return {frame, std::move(masses)};
  } catch (const nlohmann::json::exception& e) {
    throw FusionError(ErrorKind::parse, e.what());
  } catch (const FusionError& e) {
    if (e.kind() == ErrorKind::parse) throw;
    throw FusionError(ErrorKind::parse, e.what());
  }
}

void write_json(std::ostream& out, const Frame& frame, std::span<const MassFunction> ms) {
  nlohmann::json doc;
  doc["frame"] = frame.labels();
  auto& bbas = doc["bbas"] = nlohmann::json::array();
  for (const auto& m : ms) {
    require_same_frame(frame, m.frame());
    nlohmann::json focal = nlohmann::json::array();
    nlohmann::json values = nlohmann::json::array();
    for (Subset s : m.focal_elements()) {
      focal.push_back(frame.labels_of(s));
      values.push_back(m[s]);
    }
    bbas.push_back({{"focal elements", std::move(focal)}, {"masses", std::move(values)}});
  }
  out << doc.dump(2) << '\n';
}

BbaSet read(std::istream& in, Format format) {
  return format == Format::csv ? read_csv(in) : read_json(in);
}

void write(std::ostream& out, Format format, const Frame& frame, std::span<const MassFunction> ms) {
  if (format == Format::csv) write_csv(out, frame, ms);
  else write_json(out, frame, ms);
}

BbaSet read_file(const std::filesystem::path& path, Format format) {
  std::ifstream in(path);
  if (!in) throw FusionError(ErrorKind::parse, "cannot open '" + path.string() + "'");
  return read(in, format);
}

void write_file(const std::filesystem::path& path, Format format, const Frame& frame,
                std::span<const MassFunction> ms) {
  std::ofstream out(path);
  if (!out) throw FusionError(ErrorKind::parameter, "cannot write '" + path.string() + "'");
  write(out, format, frame, ms);
}

}  // namespace lns::io
