#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace comogphog::detail {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string_view> split_lines(std::string_view text);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);
// Shortest-roundtrip is not enough for the CSV contract; this always uses
// `digits` significant digits, independent of the C locale.
std::string format_general(double value, int digits);
std::string format_fixed(double value, int decimals);

}  // namespace comogphog::detail
