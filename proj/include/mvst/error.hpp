#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvst {

  /// Base class of every error thrown by the library.
  struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  /// Series lengths or dimension counts disagree.
  struct DimensionError : Error {
    using Error::Error;
  };

  /// A coordinate (dimension, start, length) lies outside a series.
  struct BoundsError : Error {
    using Error::Error;
  };

  /// Degenerate input to a statistic (too few items, mismatched lengths).
  struct StatisticsError : Error {
    using Error::Error;
  };

  /// Invalid configuration (empty training set, bad search bounds, ...).
  struct ConfigError : Error {
    using Error::Error;
  };

  /// A contracted search finished without evaluating a single candidate.
  struct ContractError : Error {
    using Error::Error;
  };

  /// Resampling cannot preserve class strata.
  struct StratificationError : Error {
    using Error::Error;
  };

  /// Malformed input file. Carries the 1-based line number when known (0 otherwise).
  struct ParseError : Error {
    std::size_t line;
    ParseError(const std::string& msg, std::size_t line_no = 0)
      : Error(line_no == 0 ? msg : "line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  };

  /// File could not be opened or written.
  struct IoError : Error {
    using Error::Error;
  };

} // namespace mvst
