#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace hamfam {

using Rational = mpq_class;

/// Exact element c0 + c1*z + c2*z^2 + c3*z^3 of Q(z), z a primitive 8th
/// root of unity with z^4 = -1. The numeric embedding is z = exp(i*pi/4),
/// so i = z^2, and (-1)^(1/4) on the principal branch is z.
class Cyclo {
 public:
  Cyclo() = default;
  Cyclo(long v) : c_{Rational(v), 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  Cyclo(const Rational& v) : c_{v, 0, 0, 0} { c_[0].canonicalize(); }  // NOLINT(google-explicit-constructor)
  Cyclo(Rational c0, Rational c1, Rational c2, Rational c3);

  /// z^k for any integer k (reduced mod 8).
  static Cyclo zeta_power(long k);
  static Cyclo zeta() { return zeta_power(1); }
  static Cyclo imag_unit() { return zeta_power(2); }

  const Rational& operator[](int k) const { return c_[k]; }

  bool is_zero() const;
  bool is_one() const;
  /// True if only the rational part c0 is nonzero.
  bool is_rational() const;
  /// Number of nonzero components.
  int support() const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o);

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
  friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  /// Galois automorphism z -> z^j, j odd.
  Cyclo galois(int j) const;
  /// Field norm to Q: product of the four Galois conjugates.
  Rational norm() const;
  Cyclo inverse() const;
  Cyclo pow(long e) const;

  std::complex<double> to_complex() const;

  /// Canonical text: nonzero components joined, e.g. "3/2", "-z^2", "1+z^3".
  std::string str() const;

 private:
  std::array<Rational, 4> c_{};
};

}  // namespace hamfam
