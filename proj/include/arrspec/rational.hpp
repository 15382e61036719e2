#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

namespace arrspec {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q", "-p/q"; throws Error("BadToken") otherwise.
Rational parse_rational(const std::string& tok);
std::string to_string(const Rational& q);

Integer lcm_of_denominators(const std::vector<Rational>& v);

}  // namespace arrspec
