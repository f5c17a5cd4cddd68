#include "comogphog/structure_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <tuple>

#include "comogphog/error.hpp"
#include "text_util.hpp"

namespace comogphog {

namespace {

// PDB fixed columns (0-based): name 12-15, altLoc 16, chain 21, resSeq 22-25,
// iCode 26, x 30-37, y 38-45, z 46-53.
constexpr std::size_t kCoordEnd = 54;

double parse_coordinate(std::string_view field, std::size_t line_no) {
  field = detail::trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::MalformedRecord,
                "line " + std::to_string(line_no) + ": bad coordinate '" + std::string(field) + "'");
  }
  return value;
}

std::string_view record_name(std::string_view line) {
  return detail::trim(line.substr(0, std::min<std::size_t>(6, line.size())));
}

}  // namespace

CaTrace parse_structure(std::string_view text, std::string id, StructureFormat format) {
  if (format != StructureFormat::Pdb)
    throw Error(ErrorCode::InvalidArgument, "unsupported structure format");
  if (text.empty())
    throw Error(ErrorCode::NoCaAtoms, "empty structure text");

  CaTrace trace;
  trace.id = std::move(id);

  using ResidueKey = std::tuple<char, std::string, char>;
  std::set<ResidueKey> seen;
  bool in_first_model = false;
  bool saw_model = false;
  std::size_t line_no = 0;

  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const std::string_view record = record_name(line);
    if (record == "MODEL") {
      if (saw_model)
        break;
      saw_model = true;
      in_first_model = true;
      continue;
    }
    if (record == "ENDMDL") {
      if (in_first_model)
        break;
      continue;
    }
    if (record != "ATOM")
      continue;
    if (line.size() < kCoordEnd) {
      throw Error(ErrorCode::MalformedRecord,
                  "line " + std::to_string(line_no) + ": ATOM record has " +
                      std::to_string(line.size()) + " columns, coordinates need " +
                      std::to_string(kCoordEnd));
    }
    if (detail::trim(line.substr(12, 4)) != "CA")
      continue;

    const char alt_loc = line[16];
    ResidueKey key{line[21], std::string(detail::trim(line.substr(22, 4))), line[26]};
    const bool first_for_residue = seen.insert(key).second;
    if (alt_loc != ' ' && !first_for_residue)
      continue;

    trace.coords.push_back({parse_coordinate(line.substr(30, 8), line_no),
                            parse_coordinate(line.substr(38, 8), line_no),
                            parse_coordinate(line.substr(46, 8), line_no)});
  }

  if (trace.coords.size() < 2) {
    throw Error(ErrorCode::NoCaAtoms,
                "found " + std::to_string(trace.coords.size()) + " CA atoms, need at least 2");
  }
  return trace;
}

std::string structure_id_from_path(const std::filesystem::path& path) {
  return path.stem().string();
}

CaTrace read_structure_file(const std::filesystem::path& path) {
  return parse_structure(detail::read_file(path), structure_id_from_path(path));
}

std::string ScopLabel::sccs() const {
  return std::string(1, sccs_class) + "." + std::to_string(fold) + "." +
         std::to_string(superfamily) + "." + std::to_string(family);
}

ScopLabel parse_scop_label(std::string sid, std::string_view sccs) {
  auto bad = [&]() {
    return Error(ErrorCode::BadSccs, "'" + std::string(sccs) + "' is not class.fold.superfamily.family");
  };
  const auto parts = detail::split(sccs, '.');
  if (parts.size() != 4 || parts[0].size() != 1 ||
      !std::isalpha(static_cast<unsigned char>(parts[0][0])))
    throw bad();

  std::array<int, 3> numbers{};
  for (std::size_t i = 0; i < 3; ++i) {
    std::string_view p = parts[i + 1];
    int value = 0;
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), value);
    if (p.empty() || ec != std::errc() || ptr != p.data() + p.size() || value <= 0)
      throw bad();
    numbers[i] = value;
  }
  return ScopLabel{std::move(sid), parts[0][0], numbers[0], numbers[1], numbers[2]};
}

bool family_match(const ScopLabel& a, const ScopLabel& b) {
  return superfamily_match(a, b) && a.family == b.family;
}

bool superfamily_match(const ScopLabel& a, const ScopLabel& b) {
  return a.sccs_class == b.sccs_class && a.fold == b.fold && a.superfamily == b.superfamily;
}

LabelTable parse_label_table(std::string_view text) {
  LabelTable table;
  bool first = true;
  for (std::string_view raw : detail::split_lines(text)) {
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    const char sep = line.find('\t') != std::string_view::npos ? '\t' : ',';
    const auto fields = detail::split(line, sep);
    const bool header_candidate = first;
    first = false;
    if (fields.size() < 2) {
      if (header_candidate)
        continue;
      throw Error(ErrorCode::BadSccs, "label line '" + std::string(line) + "' has no sccs field");
    }
    std::string sid(detail::trim(fields[0]));
    try {
      ScopLabel label = parse_scop_label(sid, detail::trim(fields[1]));
      table.insert_or_assign(sid, std::move(label));
    } catch (const Error&) {
      if (!header_candidate)
        throw;
    }
  }
  return table;
}

LabelTable read_label_table(const std::filesystem::path& path) {
  return parse_label_table(detail::read_file(path));
}

}  // namespace comogphog
