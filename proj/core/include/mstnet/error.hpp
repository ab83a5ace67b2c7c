#pragma once

#include <stdexcept>
#include <string>

namespace mstnet {

// Failure categories surfaced by the library. The CLI maps them onto process
// exit codes: validation -> 2, numerical -> 3, I/O -> 4.
enum class Errc {
  MalformedCsv,
  DateParse,
  DuplicateCell,
  DuplicateTicker,
  NonPositivePrice,
  NonPositiveCap,
  MissingSector,
  TooFewRows,
  WindowTooShort,
  WindowDropsAll,
  ZeroVariance,
  EmptyUniverse,
  NodeSetMismatch,
  UnknownTicker,
  MissingMarketCaps,
  InvalidArgument,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(Errc errc, std::string message)
      : std::runtime_error(std::move(message)), errc_(errc) {}

  Errc errc() const noexcept { return errc_; }

  int exit_code() const noexcept {
    switch (errc_) {
      case Errc::ZeroVariance:
        return 3;
      case Errc::Io:
        return 4;
      default:
        return 2;
    }
  }

 private:
  Errc errc_;
};

}  // namespace mstnet
