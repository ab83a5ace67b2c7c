#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace mstnet {

// Calendar date; "YYYY-MM-DD" on the wire. ISO ordering makes the default
// comparison chronological.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;

  static Date parse(std::string_view text);  // throws Error(Errc::DateParse)
  std::string to_string() const;
  Date next_day() const;
};

}  // namespace mstnet
