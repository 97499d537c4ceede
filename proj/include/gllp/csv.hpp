#ifndef GLLP_CSV_HPP
#define GLLP_CSV_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gllp::io {

/// 17 significant digits: round-trip exact for 64-bit doubles, and the same
/// bytes for the same value on every run.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt(std::uint64_t v) { return std::to_string(v); }
inline std::string fmt(bool v) { return v ? "1" : "0"; }
inline std::string fmt(const std::string& v) { return v; }
inline std::string fmt(const char* v) { return v; }

/// Delimited table with a mandatory header row. Separator is ',' for csv
/// and '\t' for tsv.
class Table {
 public:
  Table(std::vector<std::string> header, char sep)
      : header_(std::move(header)), sep_(sep) {}

  template <class... Cells>
  void row(const Cells&... cells) {
    std::vector<std::string> r;
    r.reserve(sizeof...(cells));
    (r.push_back(fmt(cells)), ...);
    if (r.size() != header_.size())
      throw std::logic_error("Table: row width does not match header");
    rows_.push_back(std::move(r));
  }

  void write(std::ostream& out) const {
    write_line(out, header_);
    for (const auto& r : rows_) write_line(out, r);
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write(out);
    if (!out) throw std::runtime_error("write failed: " + path);
  }

  std::size_t size() const { return rows_.size(); }

 private:
  void write_line(std::ostream& out, const std::vector<std::string>& cells) const {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << sep_;
      out << cells[i];
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  char sep_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace gllp::io

#endif
