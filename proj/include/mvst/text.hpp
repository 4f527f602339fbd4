#pragma once

#include <charconv>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace mvst::io {

  /// Shortest decimal text that parses back to exactly `v`.
  inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  }

  /// Like format_double but always shows a decimal point ("1" becomes "1.0").
  inline std::string format_real(double v) {
    std::string s = format_double(v);
    if (s.find_first_of(".eEn") == std::string::npos) { s += ".0"; }
    return s;
  }

  /// Emit `text` as '#'-prefixed comment lines (one per input line).
  inline void write_comment_block(std::ostream& out, std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = text.find('\n', start);
      const auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
      out << "# " << line << '\n';
      if (end == std::string_view::npos) { break; }
      start = end + 1;
    }
  }

} // namespace mvst::io
