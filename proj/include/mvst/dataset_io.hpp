#pragma once

// Reader and writer for the `.ts`-style dataset text format:
//
//   @problemName <token>
//   @dimensions <d>
//   @seriesLength <m>
//   @classLabel true <label1> ... <labelc>
//   @data
//   v1,...,vm:v1,...,vm:...:<label>
//
// Lines starting with '#' are comments. CRLF is accepted on read, LF is written.

#include <mvst/data.hpp>
#include <mvst/error.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mvst::io {

  namespace detail {

    inline std::string_view trim(std::string_view s) {
      const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
      while (!s.empty() && is_space(s.front())) { s.remove_prefix(1); }
      while (!s.empty() && is_space(s.back())) { s.remove_suffix(1); }
      return s;
    }

    inline std::vector<std::string_view> split(std::string_view s, char sep) {
      std::vector<std::string_view> out;
      std::size_t start = 0;
      for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
          out.push_back(s.substr(start, i - start));
          start = i + 1;
        }
      }
      return out;
    }

    inline std::vector<std::string_view> split_ws(std::string_view s) {
      std::vector<std::string_view> out;
      std::size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) { ++i; }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') { ++j; }
        if (j > i) { out.push_back(s.substr(i, j - i)); }
        i = j;
      }
      return out;
    }

    inline std::size_t parse_count(std::string_view token, std::string_view key, std::size_t line) {
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
        throw ParseError(std::string(key) + " expects a positive integer, got '" + std::string(token) + "'", line);
      }
      return value;
    }

    inline double parse_value(std::string_view token, std::size_t line) {
      token = trim(token);
      if (!token.empty() && token.front() == '+') { token.remove_prefix(1); }
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
        throw ParseError("invalid value '" + std::string(token) + "'", line);
      }
      return value;
    }

    inline bool is_token(std::string_view s) {
      if (s.empty()) { return false; }
      for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ':' || c == ',' || c == '#') { return false; }
      }
      return true;
    }

  } // namespace detail

  /// Parse a dataset from a stream. All format violations raise ParseError with the line number.
  inline Dataset read_dataset(std::istream& in) {
    std::optional<std::string> name;
    std::optional<std::size_t> dims, length;
    std::optional<std::vector<std::string>> classes;
    bool in_data = false;
    std::vector<MultivariateInstance> instances;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      const std::string_view line = detail::trim(raw);
      if (line.empty() || line.front() == '#') { continue; }

      if (!in_data) {
        if (line.front() != '@') { throw ParseError("expected a header key before @data", line_no); }
        const auto tokens = detail::split_ws(line);
        const std::string_view key = tokens.front();
        auto once = [&](bool already) {
          if (already) { throw ParseError("duplicate header key " + std::string(key), line_no); }
        };
        auto single_arg = [&] {
          if (tokens.size() != 2) { throw ParseError(std::string(key) + " expects exactly one value", line_no); }
          return tokens[1];
        };
        if (key == "@problemName") {
          once(name.has_value());
          name = std::string(single_arg());
        } else if (key == "@dimensions") {
          once(dims.has_value());
          dims = detail::parse_count(single_arg(), key, line_no);
        } else if (key == "@seriesLength") {
          once(length.has_value());
          length = detail::parse_count(single_arg(), key, line_no);
        } else if (key == "@classLabel") {
          once(classes.has_value());
          if (tokens.size() < 3 || tokens[1] != "true") {
            throw ParseError("@classLabel must be 'true' followed by at least one label", line_no);
          }
          std::vector<std::string> labels;
          for (std::size_t t = 2; t < tokens.size(); ++t) {
            std::string label(tokens[t]);
            if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
              throw ParseError("duplicate class label '" + label + "'", line_no);
            }
            labels.push_back(std::move(label));
          }
          classes = std::move(labels);
        } else if (key == "@data") {
          if (tokens.size() != 1) { throw ParseError("@data takes no arguments", line_no); }
          if (!name) { throw ParseError("missing header key @problemName", line_no); }
          if (!dims) { throw ParseError("missing header key @dimensions", line_no); }
          if (!length) { throw ParseError("missing header key @seriesLength", line_no); }
          if (!classes) { throw ParseError("missing header key @classLabel", line_no); }
          in_data = true;
        } else {
          throw ParseError("unknown header key " + std::string(key), line_no);
        }
        continue;
      }

      if (line.front() == '@') { throw ParseError("header key after @data", line_no); }
      const auto blocks = detail::split(line, ':');
      if (blocks.size() != *dims + 1) {
        throw ParseError("expected " + std::to_string(*dims) + " dimensions plus a label, got "
                           + std::to_string(blocks.size()) + " colon-separated fields",
                         line_no);
      }
      const std::string label(detail::trim(blocks.back()));
      if (std::find(classes->begin(), classes->end(), label) == classes->end()) {
        throw ParseError("unknown class label '" + label + "'", line_no);
      }
      std::vector<TimeSeries> series;
      series.reserve(*dims);
      for (std::size_t j = 0; j < *dims; ++j) {
        const auto fields = detail::split(blocks[j], ',');
        if (fields.size() != *length) {
          throw ParseError("dimension " + std::to_string(j) + " has " + std::to_string(fields.size())
                             + " values, expected " + std::to_string(*length),
                           line_no);
        }
        std::vector<double> values;
        values.reserve(fields.size());
        for (auto f : fields) { values.push_back(detail::parse_value(f, line_no)); }
        series.emplace_back(std::move(values));
      }
      instances.emplace_back(std::move(series), label);
    }

    if (!in_data) { throw ParseError("missing @data section", line_no); }
    if (instances.empty()) { throw ParseError("no instances after @data", line_no); }
    return Dataset(*name, std::move(instances), *classes);
  }

  inline Dataset read_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw IoError("cannot open dataset file '" + path + "'"); }
    try {
      return read_dataset(in);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }

  /// Up to 6 significant digits, as the format prescribes.
  inline std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

  inline void write_dataset(std::ostream& out, const Dataset& data) {
    if (!detail::is_token(data.name())) { throw ConfigError("problem name '" + data.name() + "' is not a token"); }
    for (const auto& label : data.classes()) {
      if (!detail::is_token(label)) { throw ConfigError("class label '" + label + "' is not a token"); }
    }
    out << "@problemName " << data.name() << '\n';
    out << "@dimensions " << data.dimensions() << '\n';
    out << "@seriesLength " << data.length() << '\n';
    out << "@classLabel true";
    for (const auto& label : data.classes()) { out << ' ' << label; }
    out << "\n@data\n";
    for (const auto& inst : data) {
      for (const auto& series : inst.dims()) {
        for (std::size_t i = 0; i < series.size(); ++i) {
          if (i > 0) { out << ','; }
          out << format_value(series[i]);
        }
        out << ':';
      }
      out << inst.label() << '\n';
    }
  }

  inline void write_dataset_file(const std::string& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw IoError("cannot write dataset file '" + path + "'"); }
    write_dataset(out, data);
    if (!out) { throw IoError("write failed for '" + path + "'"); }
  }

} // namespace mvst::io
