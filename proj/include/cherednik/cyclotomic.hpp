#pragma once

#include <string>
#include <vector>

#include "cherednik/rational.hpp"

namespace cherednik {

// Element of the cyclotomic field Q(zeta_n), stored as coordinates over the
// power basis 1, z, ..., z^{phi(n)-1} where z = exp(2*pi*i/n).
//
// The conductor is part of the value: mixed-conductor arithmetic embeds both
// operands into Q(zeta_lcm) and the result keeps the joint conductor. Values
// are never re-expressed at a smaller conductor; equality is tested after a
// common embedding, so 1 at conductor 1 and 1 at conductor 4 compare equal.
class Cyclo {
 public:
  Cyclo() : n_(1), c_(1) {}
  Cyclo(const Rat& r) : n_(1), c_(1, r) {}
  Cyclo(long v) : n_(1), c_(1, rat_of(v)) {}

  // Primitive n-th root of unity, or its p-th power.
  static Cyclo zeta(unsigned n, long p = 1);

  unsigned conductor() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat to_rat() const;  // errors unless is_rational()

  Cyclo embedded(unsigned m) const;  // into Q(zeta_m); requires n_ | m

  Cyclo operator-() const;
  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator/(const Cyclo& o) const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  Cyclo& operator/=(const Cyclo& o) { return *this = *this / o; }

  Cyclo inv() const;
  Cyclo pow(long e) const;
  Cyclo conj() const;  // complex conjugation, z -> z^{n-1}

  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  // Total order compatible with ==, used for canonical term ordering.
  static int cmp(const Cyclo& a, const Cyclo& b);

  std::string str() const;  // "1/2 - z + 3*z^2", parseable by the expression grammar

 private:
  Cyclo(unsigned n, std::vector<Rat> c) : n_(n), c_(std::move(c)) {}
  Cyclo subst_power(unsigned long j) const;  // z -> z^j (j coprime to n for field maps)

  unsigned n_;
  std::vector<Rat> c_;
};

unsigned euler_phi(unsigned n);
// Cyclotomic polynomial Phi_n, monic, as coefficient vector c[0..phi(n)] (c[k] on x^k).
const std::vector<Rat>& cyclotomic_poly(unsigned n);

inline Cyclo operator*(const Rat& r, const Cyclo& c) { return Cyclo(r) * c; }
inline Cyclo operator*(long r, const Cyclo& c) { return Cyclo(r) * c; }

}  // namespace cherednik
