#include "offload/config_file.hpp"

#include <cerrno>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <stdexcept>

#include <fmt/format.h>

namespace offload {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(fmt::format("line {}: expected key=value, got '{}'", line_no, text));
    }
    auto key = trim(text.substr(0, eq));
    auto value = trim(text.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument(fmt::format("line {}: empty key", line_no));
    if (!out.emplace(key, value).second) {
      throw std::invalid_argument(fmt::format("line {}: duplicate key '{}'", line_no, key));
    }
  }
  return out;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  try {
    return parse_key_values(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    out.push_back(trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() == 1 && out.front().empty()) out.clear();
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  // strtod rather than from_chars: libstdc++ 11 lacks floating from_chars on some targets.
  const auto text = trim(value);
  if (text.empty()) throw std::invalid_argument(fmt::format("{}: empty value", key));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE) {
    throw std::invalid_argument(fmt::format("{}: not a number: '{}'", key, text));
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& value) {
  const auto text = trim(value);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(fmt::format("{}: not an integer: '{}'", key, text));
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  const auto text = trim(value);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(fmt::format("{}: not an unsigned integer: '{}'", key, text));
  }
  return v;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& token : split_list(value)) out.push_back(parse_double(key, token));
  return out;
}

}  // namespace offload
