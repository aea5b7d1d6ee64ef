#include "c0dynamo/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace c0dynamo {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string s, const std::string& whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (!all_digits(s)) throw std::invalid_argument("bad rational: '" + whole + "'");
  BigInt v(s);
  return neg ? -v : v;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("bad rational: empty");
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_integer(s, text));
  BigInt num = parse_integer(s.substr(0, slash), text);
  std::string den_s = s.substr(slash + 1);
  if (!all_digits(den_s)) throw std::invalid_argument("bad rational: '" + text + "'");
  BigInt den(den_s);
  if (den == 0) throw std::invalid_argument("bad rational: zero denominator in '" + text + "'");
  return Rat(num, den);
}

std::string format_rational(const Rat& value) {
  std::string num = numerator(value).str();
  BigInt den = denominator(value);
  if (den == 1) return num;
  return num + "/" + den.str();
}

double to_double(const Rat& value) { return value.convert_to<double>(); }

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rat_from_double: non-finite input");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // |m| in [1/2, 1)
  auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  exp -= 53;
  Rat r(mant);
  if (exp > 0)
    r *= Rat(BigInt(1) << exp);
  else if (exp < 0)
    r /= Rat(BigInt(1) << -exp);
  return r;
}

Rat rat_abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }

}  // namespace c0dynamo
