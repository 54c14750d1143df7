#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qent::csv {

// 12 significant digits, locale-independent ('.' decimal point).
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string fmt(int v) { return std::to_string(v); }

inline std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

class Writer {
 public:
  explicit Writer(std::vector<std::string> header) { row(std::move(header)); }

  void row(std::vector<std::string> fields) {
    buffer_ += join(fields);
    buffer_ += '\n';
  }

  const std::string& str() const { return buffer_; }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("csv: cannot open " + path);
    out << buffer_;
    if (!out) throw std::runtime_error("csv: write failed for " + path);
  }

 private:
  std::string buffer_;
};

}  // namespace qent::csv
