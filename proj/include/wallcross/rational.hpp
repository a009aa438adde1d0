#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace wallcross {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using VecQ = std::vector<Rational>;

// Parses "a" or "a/b" with optional sign; throws std::invalid_argument on
// malformed input or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical lowest-terms rendering, "a" or "a/b".
std::string to_string(const Rational& q);

double to_double(const Rational& q);

// Exact: every finite double is a dyadic rational.
Rational rational_from_double(double x);

VecQ zero_vec(std::size_t n);
VecQ add(const VecQ& a, const VecQ& b);
VecQ sub(const VecQ& a, const VecQ& b);
VecQ scale(const Rational& s, const VecQ& v);
VecQ negate(const VecQ& v);
Rational dot(const VecQ& a, const VecQ& b);
bool is_zero_vec(const VecQ& v);

// Smallest positive rescaling with integer coprime entries. Direction is
// preserved (rays are R+ classes, the sign carries meaning).
VecQ primitive(const VecQ& v);

// Lexicographic three-way comparison; vectors must have equal length.
int compare_lex(const VecQ& a, const VecQ& b);

std::string to_string(const VecQ& v);

}  // namespace wallcross
