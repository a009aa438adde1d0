#include "wallcross/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace wallcross {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text))
      throw std::invalid_argument("malformed rational '" + text + "'");
    return Rational(Integer(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den))
    throw std::invalid_argument("malformed rational '" + text + "'");
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(Integer(num), d);
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational rational_from_double(double x) { return Rational(x); }

VecQ zero_vec(std::size_t n) { return VecQ(n, Rational(0)); }

VecQ add(const VecQ& a, const VecQ& b) {
  VecQ out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

VecQ sub(const VecQ& a, const VecQ& b) {
  VecQ out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

VecQ scale(const Rational& s, const VecQ& v) {
  VecQ out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

VecQ negate(const VecQ& v) { return scale(Rational(-1), v); }

Rational dot(const VecQ& a, const VecQ& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero_vec(const VecQ& v) {
  for (const auto& q : v)
    if (q != 0) return false;
  return true;
}

VecQ primitive(const VecQ& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer den_lcm = 1;
  for (const auto& q : v) den_lcm = lcm(den_lcm, denominator(q));
  Integer num_gcd = 0;
  std::vector<Integer> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = numerator(v[i]) * (den_lcm / denominator(v[i]));
    num_gcd = gcd(num_gcd, ints[i]);
  }
  if (num_gcd == 0) return zero_vec(v.size());
  VecQ out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / num_gcd);
  return out;
}

int compare_lex(const VecQ& a, const VecQ& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

std::string to_string(const VecQ& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].str();
  }
  os << ")";
  return os.str();
}

}  // namespace wallcross
