#pragma once

// Small text helpers shared by the CSV/JSON readers and writers.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace attoclock::textio {

// Lossless "%.17g" formatting.
std::string format_g17(double value);

// Compact "%g" style formatting for labels and messages.
std::string format_short(double value);

std::string_view trim(std::string_view text);

std::vector<std::string_view> split(std::string_view line, char sep = ',');

// Parses the whole (trimmed) cell as a double; nullopt on any leftover text.
std::optional<double> parse_double(std::string_view cell);

// Splits a file into lines with trailing '\r' removed. Throws IoError.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Writes the whole string, replacing any existing file. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);

// Recognizes "# key: value" comment directives.
struct Directive {
  std::string key;
  std::string value;
};
std::optional<Directive> parse_directive(std::string_view line);

}  // namespace attoclock::textio
