#pragma once

#include <gmpxx.h>

#include <string>

namespace fh {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt factorial(int n);
BigInt binomial(int n, int k);

inline std::string to_string(const BigInt& v) { return v.get_str(); }
// "num/den", always with an explicit denominator.
std::string to_fraction_string(const Rational& v);

}  // namespace fh
