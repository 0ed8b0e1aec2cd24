#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cherednik/errors.hpp"

namespace cherednik {

// Exact rational scalar. GMP does canonicalization; helpers here keep the
// string format pinned to "p" / "p/q" with q > 0 and gcd(p, q) = 1.
using Rat = mpq_class;

inline Rat rat_of(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

inline Rat rat_parse(const std::string& s) {
  if (s.empty()) fail(ErrorCode::IncompatibleScalars, "empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0)
    fail(ErrorCode::IncompatibleScalars, "bad rational literal '" + s + "'");
  if (r.get_den() == 0) fail(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline long rat_to_long(const Rat& r) {
  if (!rat_is_integer(r)) fail(ErrorCode::IncompatibleScalars, "expected integer, got " + rat_str(r));
  if (!r.get_num().fits_slong_p())
    fail(ErrorCode::IncompatibleScalars, "integer out of range: " + rat_str(r));
  return r.get_num().get_si();
}

inline unsigned long gcd_ul(unsigned long a, unsigned long b) {
  while (b) { unsigned long t = a % b; a = b; b = t; }
  return a;
}

inline unsigned long lcm_ul(unsigned long a, unsigned long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ul(a, b) * b;
}

}  // namespace cherednik
