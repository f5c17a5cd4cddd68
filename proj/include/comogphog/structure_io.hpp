#pragma once

// Structure ingestion: PDB alpha-carbon traces and SCOPe classification labels.

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace comogphog {

using Vec3 = std::array<double, 3>;

/// Ordered alpha-carbon coordinates of one structure, in Angstrom.
struct CaTrace {
  std::string id;
  std::vector<Vec3> coords;

  std::size_t size() const { return coords.size(); }
  bool operator==(const CaTrace&) const = default;
};

enum class StructureFormat { Pdb };

/// Extracts the CA trace from fixed-column PDB text.
///
/// Only MODEL 1 is read when MODEL records are present. HETATM records are
/// ignored. For each residue (chain, resSeq, iCode) only the first alternate
/// location of its CA is kept. Throws Error{NoCaAtoms} when fewer than two CA
/// atoms remain and Error{MalformedRecord} for ATOM lines that end before the
/// coordinate columns or carry non-numeric coordinates.
CaTrace parse_structure(std::string_view text, std::string id = {},
                        StructureFormat format = StructureFormat::Pdb);

/// Reads and parses a structure file; the trace id is the file name without
/// its extension.
CaTrace read_structure_file(const std::filesystem::path& path);

/// Identifier derived from a structure file name ("d1n4ja_.ent" -> "d1n4ja_").
std::string structure_id_from_path(const std::filesystem::path& path);

struct ScopLabel {
  std::string sid;
  char sccs_class = '\0';
  int fold = 0;
  int superfamily = 0;
  int family = 0;

  std::string sccs() const;
  bool operator==(const ScopLabel&) const = default;
};

/// Splits an sccs string "a.1.1.1" into its four levels. Throws Error{BadSccs}.
ScopLabel parse_scop_label(std::string sid, std::string_view sccs);

bool family_match(const ScopLabel& a, const ScopLabel& b);
bool superfamily_match(const ScopLabel& a, const ScopLabel& b);

using LabelTable = std::map<std::string, ScopLabel, std::less<>>;

/// Parses `sid,sccs` (or tab separated) lines. A first line whose second field
/// is not a valid sccs is treated as a header; later bad lines throw BadSccs.
/// Blank lines and lines starting with '#' are skipped.
LabelTable parse_label_table(std::string_view text);
LabelTable read_label_table(const std::filesystem::path& path);

}  // namespace comogphog
