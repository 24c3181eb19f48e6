#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

namespace offload {

/// Shortest round-trippable, locale-independent formatting for CSV cells.
inline std::string csv_number(double v) { return fmt::format("{}", v); }

/// Minimal CSV writer: ',' separator, '\n' line ends, header first.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
      : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
    if (!out_) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    std::vector<std::string> cells(header.begin(), header.end());
    row(cells);
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
      throw std::logic_error(fmt::format("csv row has {} cells, header has {}", cells.size(), columns_));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw std::runtime_error("csv write failed");
  }

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace offload
