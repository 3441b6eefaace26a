#include "dgla/rational.hpp"

#include <cctype>

#include "dgla/errors.hpp"

namespace dgla {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_part = text.substr(0, slash);
  if (!is_integer_literal(num_part))
    throw ParseError("invalid rational \"" + std::string(text) + "\"");
  Rational result;
  if (slash == std::string_view::npos) {
    result = Rational(parse_integer(num_part));
    return result;
  }
  const auto den_part = text.substr(slash + 1);
  if (!is_integer_literal(den_part) || den_part.front() == '-' || den_part.front() == '+')
    throw ParseError("invalid rational \"" + std::string(text) + "\"");
  const mpz_class den = parse_integer(den_part);
  if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  result = Rational(parse_integer(num_part), den);
  result.canonicalize();
  return result;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec operator*(const Rational& s, const Vec& v) {
  Vec r(v);
  for (auto& x : r) x *= s;
  return r;
}

std::vector<double> to_double(const Vec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

}  // namespace dgla
