#include "report.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace dgla::cli {

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string render(const Report::Value& v, bool json) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>)
          return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>)
          return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>)
          return format_double(x);
        else if constexpr (std::is_same_v<T, std::string>)
          return json ? quoted(x) : x;
        else {
          std::string out = "[";
          for (std::size_t i = 0; i < x.size(); ++i) out += (i ? (json ? "," : ", ") : "") + format_double(x[i]);
          return out + "]";
        }
      },
      v);
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void Report::set(std::string key, Value value) {
  for (auto& [k, v] : entries_)
    if (k == key) {
      v = std::move(value);
      return;
    }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Report::add_verdict(const Verdict& v) {
  add("criterion", v.criterion);
  add("obstruction", v.obstruction);
  add("obstruction_degree", v.obstruction_degree);
  for (const auto& [deg, dim] : v.cohomology_dims) add("H" + std::to_string(deg), dim);
  add("tangent_dim", v.tangent_dim);
  add("passes", v.passes);
  add("routes_agree", v.routes_agree);
  add("conclusion", v.conclusion());
}

const Report::Value* Report::find(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

std::string Report::json() const {
  std::string out = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out += (i ? ", " : "") + quoted(entries_[i].first) + ": " + render(entries_[i].second, true);
  return out + "}\n";
}

std::string Report::text(bool color) const {
  std::size_t width = 0;
  for (const auto& e : entries_) width = std::max(width, e.first.size());
  std::string out;
  for (const auto& [k, v] : entries_) {
    std::string value = render(v, false);
    if (color && std::holds_alternative<bool>(v))
      value = (std::get<bool>(v) ? "\x1b[32m" : "\x1b[31m") + value + "\x1b[0m";
    std::string key = k + ":";
    key.resize(width + 2, ' ');
    if (color) key = "\x1b[1m" + key + "\x1b[0m";
    out += key + value + "\n";
  }
  return out;
}

}  // namespace dgla::cli
