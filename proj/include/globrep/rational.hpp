#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "util.hpp"

namespace globrep {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Parses "p" or "p/q" into canonical lowest terms. mpq string construction
// keeps the literal verbatim ("4/8" stays "4/8"), so route through integer
// division, which does normalize.
inline Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw input_error("rational with zero denominator: " + s);
    return Rational(num) / Rational(den);
  } catch (const std::runtime_error&) {
    throw input_error("malformed rational literal: " + s);
  }
}

// Canonical rendering: "p" for integers, "p/q" with q > 0 otherwise.
// Round-trips bit-exactly through parse_rational.
inline std::string rational_to_string(const Rational& r) { return r.str(); }

}  // namespace globrep
