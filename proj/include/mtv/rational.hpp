#pragma once

#include <gmpxx.h>

#include <string>

namespace mtv {

using Rat = mpq_class;
using Int = mpz_class;

// "p" or "p/q"
std::string rat_str(const Rat& q);
// accepts "p", "-p", "p/q"; throws std::invalid_argument
Rat parse_rat(const std::string& s);

Int binom(long n, long k);
Int factorial(long n);
// 2^e for any integer e
Rat pow2(long e);
Rat rat_pow(const Rat& q, unsigned long e);

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace mtv
