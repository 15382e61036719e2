#include "arrspec/rational.hpp"

#include <cctype>

#include "arrspec/error.hpp"

namespace arrspec {

namespace {
bool is_int_token(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}
}  // namespace

Rational parse_rational(const std::string& tok) {
  auto slash = tok.find('/');
  std::string num = tok.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : tok.substr(slash + 1);
  if (!is_int_token(num) || !is_int_token(den) || den.find('-') != std::string::npos)
    throw Error("BadToken", "not a rational number: '" + tok + "'");
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  Integer n(num), dd(den);
  if (dd == 0) throw Error("BadToken", "zero denominator: '" + tok + "'");
  Rational q(n, dd);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer lcm_of_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

}  // namespace arrspec
