#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace revlens {

// UTC instant with one-second resolution. Text form is ISO 8601 with a
// trailing 'Z', the form GitHub returns in created_at.
class Timestamp {
public:
  using clock_seconds = std::chrono::sys_seconds;

  constexpr Timestamp() = default;
  constexpr explicit Timestamp(clock_seconds t) : t_(t) {}

  static Timestamp from_unix(std::int64_t secs) {
    return Timestamp(clock_seconds(std::chrono::seconds(secs)));
  }

  static Timestamp now() {
    return Timestamp(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
  }

  // Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS", optional fractional
  // seconds, and a trailing "Z" or "+HH:MM"/"-HH:MM" offset.
  static std::optional<Timestamp> try_parse(std::string_view s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    std::size_t pos = 0;
    auto digits = [&](std::size_t n, int& out) {
      if (pos + n > s.size()) return false;
      int v = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
      }
      out = v;
      pos += n;
      return true;
    };
    auto lit = [&](char c) {
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    };
    if (!digits(4, y) || !lit('-') || !digits(2, mo) || !lit('-') || !digits(2, d)) return std::nullopt;
    std::int64_t offset = 0;
    if (pos < s.size()) {
      if (!(lit('T') || lit(' '))) return std::nullopt;
      if (!digits(2, h) || !lit(':') || !digits(2, mi)) return std::nullopt;
      if (lit(':') && !digits(2, sec)) return std::nullopt;
      if (lit('.')) {
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      }
      if (lit('Z') || lit('z')) {
      } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        const int sign = s[pos] == '-' ? -1 : 1;
        ++pos;
        int oh = 0, om = 0;
        if (!digits(2, oh)) return std::nullopt;
        lit(':');
        if (!digits(2, om)) return std::nullopt;
        offset = sign * (oh * 3600 + om * 60);
      }
      if (pos != s.size()) return std::nullopt;
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;
    const auto t = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} - seconds{offset};
    return Timestamp(time_point_cast<seconds>(t));
  }

  static Timestamp parse(std::string_view s) {
    if (auto t = try_parse(s)) return *t;
    throw std::invalid_argument("invalid timestamp '" + std::string(s) + "'");
  }

  std::string to_string() const {
    using namespace std::chrono;
    const auto day_start = floor<days>(t_);
    const year_month_day ymd{day_start};
    const hh_mm_ss hms{t_ - day_start};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
  }

  std::int64_t unix_seconds() const { return t_.time_since_epoch().count(); }
  clock_seconds time_point() const { return t_; }

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

private:
  clock_seconds t_{};
};

}  // namespace revlens
