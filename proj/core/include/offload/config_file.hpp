#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace offload {

/// Plain-text `key=value` file contents. Blank lines and lines starting with
/// '#' are skipped; whitespace around keys and values is trimmed.
using KeyValues = std::map<std::string, std::string>;

/// Throws std::invalid_argument on a malformed line or duplicate key.
KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::filesystem::path& path);

/// Comma-separated list helpers. Throw std::invalid_argument on bad tokens.
std::vector<std::string> split_list(const std::string& value);
double parse_double(const std::string& key, const std::string& value);
long long parse_integer(const std::string& key, const std::string& value);
std::uint64_t parse_unsigned(const std::string& key, const std::string& value);
std::vector<double> parse_double_list(const std::string& key, const std::string& value);

}  // namespace offload
