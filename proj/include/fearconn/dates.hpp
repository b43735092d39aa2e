#pragma once

#include <chrono>
#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "fearconn/errors.hpp"

namespace fearconn {

/// Calendar date, stored as days since 1970-01-01.
class Date {
public:
  Date() : serial_(0) {}
  explicit Date(int serial) : serial_(serial) {}
  Date(int y, unsigned m, unsigned d) {
    using namespace std::chrono;
    year_month_day ymd{year{y}, month{m}, day{d}};
    if (!ymd.ok()) throw std::invalid_argument("invalid calendar date");
    serial_ = sys_days{ymd}.time_since_epoch().count();
  }

  static Date parse_iso(const std::string& s) {
    int y = 0;
    unsigned m = 0, d = 0;
    if (std::sscanf(s.c_str(), "%d-%u-%u", &y, &m, &d) != 3)
      throw FormatError("bad ISO date: '" + s + "'");
    return Date(y, m, d);
  }

  int serial() const { return serial_; }
  int operator-(Date o) const { return serial_ - o.serial_; }
  Date operator+(int days) const { return Date(serial_ + days); }
  auto operator<=>(const Date&) const = default;

  std::string to_iso() const {
    using namespace std::chrono;
    year_month_day ymd{sys_days{days{serial_}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
  }

  /// Months since year 0, identifies the calendar month this date falls in.
  int month_id() const {
    using namespace std::chrono;
    year_month_day ymd{sys_days{days{serial_}}};
    return int(ymd.year()) * 12 + int(unsigned(ymd.month())) - 1;
  }

private:
  int serial_;
};

/// Month resolution identifier ("YYYY-MM"), as months since year 0.
class Month {
public:
  Month() : id_(0) {}
  explicit Month(int id) : id_(id) {}
  Month(int y, unsigned m) : id_(y * 12 + int(m) - 1) {
    if (m < 1 || m > 12) throw std::invalid_argument("invalid month");
  }

  static Month parse(const std::string& s) {
    int y = 0;
    unsigned m = 0;
    if (std::sscanf(s.c_str(), "%d-%u", &y, &m) != 2 || m < 1 || m > 12)
      throw FormatError("bad month: '" + s + "'");
    return Month(y, m);
  }

  int id() const { return id_; }
  int year() const { return id_ >= 0 ? id_ / 12 : (id_ - 11) / 12; }
  unsigned month() const { return unsigned(id_ - year() * 12 + 1); }
  Month operator+(int n) const { return Month(id_ + n); }
  Month operator-(int n) const { return Month(id_ - n); }
  int operator-(Month o) const { return id_ - o.id_; }
  auto operator<=>(const Month&) const = default;

  std::string to_string() const {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02u", year(), month());
    return buf;
  }

private:
  int id_;
};

}  // namespace fearconn
