#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dgla/dgla.hpp"

namespace dgla::cli {

/// Flat, ordered key/value report. JSON and text come from the same entries
/// and the same number formatting, so they agree digit for digit.
class Report {
 public:
  using Value = std::variant<bool, std::int64_t, double, std::string, std::vector<double>>;

  void add(std::string key, bool value) { set(std::move(key), value); }
  void add(std::string key, double value) { set(std::move(key), value); }
  void add(std::string key, std::string value) { set(std::move(key), std::move(value)); }
  void add(std::string key, const char* value) { set(std::move(key), std::string(value)); }
  void add(std::string key, std::vector<double> value) { set(std::move(key), std::move(value)); }
  template <std::integral T>
    requires(!std::same_as<T, bool>)
  void add(std::string key, T value) {
    set(std::move(key), static_cast<std::int64_t>(value));
  }
  void add_verdict(const Verdict& v);

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }
  const Value* find(const std::string& key) const;

  std::string json() const;
  std::string text(bool color) const;

 private:
  void set(std::string key, Value value);

  std::vector<std::pair<std::string, Value>> entries_;
};

/// Doubles as shortest-round-trip-safe "%.17g"; NaN/inf as null.
std::string format_double(double x);

}  // namespace dgla::cli
