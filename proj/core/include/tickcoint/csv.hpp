#pragma once

// Minimal CSV reading and writing with round-trip number formatting.

#include <filesystem>
#include <initializer_list>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace tickcoint::csv {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

class Writer {
 public:
  explicit Writer(std::initializer_list<std::string_view> header);
  explicit Writer(const std::vector<std::string>& header);

  Writer& field(std::string_view s);
  Writer& field(double v);
  Writer& field(std::size_t v);
  Writer& end_row();

  const std::string& str() const noexcept { return buf_; }

 private:
  std::string buf_;
  bool row_open_ = false;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row

  std::size_t column(std::string_view name) const;  // throws InputError if absent
};

// Comma-separated, no quoting. Blank lines are skipped.
Table read(std::istream& in);
Table read_file(const std::filesystem::path& path);

// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace tickcoint::csv
