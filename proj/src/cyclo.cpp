#include "hamfam/cyclo.hpp"

#include <cmath>

namespace hamfam {

Cyclo::Cyclo(Rational c0, Rational c1, Rational c2, Rational c3)
    : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {
  for (auto& c : c_) c.canonicalize();
}

Cyclo Cyclo::zeta_power(long k) {
  long r = ((k % 8) + 8) % 8;
  Cyclo out;
  if (r < 4) {
    out.c_[r] = 1;
  } else {
    out.c_[r - 4] = -1;
  }
  return out;
}

bool Cyclo::is_zero() const {
  return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

bool Cyclo::is_one() const {
  return c_[0] == 1 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

bool Cyclo::is_rational() const {
  return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

int Cyclo::support() const {
  int n = 0;
  for (const auto& c : c_) n += sgn(c) != 0;
  return n;
}

Cyclo Cyclo::operator-() const {
  Cyclo out;
  for (int k = 0; k < 4; ++k) out.c_[k] = -c_[k];
  return out;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  std::array<Rational, 4> r{};
  for (int a = 0; a < 4; ++a) {
    if (sgn(c_[a]) == 0) continue;
    for (int b = 0; b < 4; ++b) {
      if (sgn(o.c_[b]) == 0) continue;
      Rational prod = c_[a] * o.c_[b];
      int k = a + b;
      if (k < 4) {
        r[k] += prod;
      } else {
        r[k - 4] -= prod;  // z^4 = -1
      }
    }
  }
  c_ = std::move(r);
  return *this;
}

Cyclo& Cyclo::operator/=(const Cyclo& o) { return *this *= o.inverse(); }

Cyclo Cyclo::galois(int j) const {
  if (j % 2 == 0) throw std::invalid_argument("Cyclo::galois: exponent must be odd");
  Cyclo out;
  for (int k = 0; k < 4; ++k) {
    if (sgn(c_[k]) == 0) continue;
    out += Cyclo(c_[k]) * zeta_power(static_cast<long>(k) * j);
  }
  return out;
}

Rational Cyclo::norm() const {
  Cyclo prod = *this * galois(3) * galois(5) * galois(7);
  return prod.c_[0];
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclo::inverse: division by zero");
  Cyclo conj = galois(3) * galois(5) * galois(7);
  Rational n = (*this * conj).c_[0];
  for (auto& c : conj.c_) c /= n;
  return conj;
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo result(1);
  Cyclo base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::complex<double> Cyclo::to_complex() const {
  const double h = std::sqrt(0.5);
  // z = h(1+i), z^2 = i, z^3 = h(-1+i)
  double c0 = c_[0].get_d(), c1 = c_[1].get_d(), c2 = c_[2].get_d(), c3 = c_[3].get_d();
  return {c0 + h * (c1 - c3), c2 + h * (c1 + c3)};
}

std::string Cyclo::str() const {
  if (is_zero()) return "0";
  std::string out;
  static const char* kBasis[4] = {"", "z", "z^2", "z^3"};
  for (int k = 0; k < 4; ++k) {
    const Rational& c = c_[k];
    if (sgn(c) == 0) continue;
    std::string mag;
    Rational a = abs(c);
    if (k == 0) {
      mag = a.get_str();
    } else if (a == 1) {
      mag = kBasis[k];
    } else {
      mag = a.get_str() + "*" + kBasis[k];
    }
    if (sgn(c) < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    out += mag;
  }
  return out;
}

}  // namespace hamfam
