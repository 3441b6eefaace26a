#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace dgla {

/// Exact element of the ground field Q. GMP keeps every value in lowest
/// terms with a positive denominator after each arithmetic operation.
using Rational = mpq_class;

/// Dense exact coordinate vector.
using Vec = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" (q != 0) into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

bool is_zero(const Vec& v);

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& s, const Vec& v);

std::vector<double> to_double(const Vec& v);

}  // namespace dgla
