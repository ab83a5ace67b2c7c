#include "mstnet/date.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "mstnet/error.hpp"

namespace mstnet {
namespace {

int parse_component(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(Errc::DateParse,
                "invalid date component '" + std::string(text) + "'");
  }
  return value;
}

std::chrono::year_month_day to_ymd(const Date& date) {
  return std::chrono::year{date.year} /
         std::chrono::month{static_cast<unsigned>(date.month)} /
         std::chrono::day{static_cast<unsigned>(date.day)};
}

}  // namespace

Date Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error(Errc::DateParse,
                "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  const Date date{parse_component(text.substr(0, 4)),
                  parse_component(text.substr(5, 2)),
                  parse_component(text.substr(8, 2))};
  if (!to_ymd(date).ok()) {
    throw Error(Errc::DateParse,
                "invalid calendar date '" + std::string(text) + "'");
  }
  return date;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

Date Date::next_day() const {
  using std::chrono::sys_days;
  const sys_days next = sys_days{to_ymd(*this)} + std::chrono::days{1};
  const std::chrono::year_month_day ymd{next};
  return Date{int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day()))};
}

}  // namespace mstnet
