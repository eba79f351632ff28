#include <doctest.h>

#include <cmath>

#include "hamfam/cyclo.hpp"
#include "test_support.hpp"

using hamfam::Cyclo;
using hamfam::Rational;
namespace ht = hamfam::testing;

TEST_CASE("powers of the primitive eighth root") {
  Cyclo z = Cyclo::zeta();
  CHECK(z.pow(8) == Cyclo(1));
  CHECK(z.pow(4) == Cyclo(-1));
  CHECK((z * z) * (z * z) == Cyclo(-1));
  CHECK(Cyclo::imag_unit() * Cyclo::imag_unit() == Cyclo(-1));
  CHECK(z * z.pow(3) == Cyclo(-1));
  CHECK(z.pow(-1) == -z.pow(3));
  for (long k = -20; k <= 20; ++k) CHECK(Cyclo::zeta_power(k) == Cyclo::zeta_power(k + 8));
}

TEST_CASE("coefficients stay in the power basis") {
  Cyclo s = Cyclo::zeta() + Cyclo::zeta_power(3);
  CHECK(s == Cyclo(0, 1, 0, 1));
  CHECK(s.support() == 2);
  auto c = s.to_complex();
  CHECK(std::abs(c - std::complex<double>(0.0, std::sqrt(2.0))) < 1e-15);
  CHECK(Cyclo(Rational(2, 4)) == Cyclo(Rational(1, 2)));
  CHECK(Cyclo(Rational(1, 2))[0].get_den() == 2);
}

TEST_CASE("numeric image of zeta") {
  auto z = Cyclo::zeta().to_complex();
  CHECK(std::abs(z - std::complex<double>(std::sqrt(0.5), std::sqrt(0.5))) < 1e-15);
  CHECK(std::abs(Cyclo::zeta_power(6).to_complex() - std::complex<double>(0, -1)) < 1e-15);
}

TEST_CASE("string form") {
  CHECK(Cyclo(Rational(3, 2)).str() == "3/2");
  CHECK((-Cyclo::zeta_power(2)).str() == "-z^2");
  CHECK((Cyclo(1) + Cyclo::zeta_power(3)).str() == "1+z^3");
  CHECK((Cyclo(Rational(1, 2)) * Cyclo::zeta()).str() == "1/2*z");
  CHECK(Cyclo().str() == "0");
}

TEST_CASE("field axioms on random elements") {
  for (int trial = 0; trial < 300; ++trial) {
    Cyclo a = ht::random_cyclo(), b = ht::random_cyclo(), c = ht::random_cyclo();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Cyclo());
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == Cyclo(1));
      CHECK((b / a) * a == b);
    }
    CHECK((a * b).norm() == a.norm() * b.norm());
  }
}

TEST_CASE("Galois action agrees with the complex embedding") {
  for (int trial = 0; trial < 100; ++trial) {
    Cyclo a = ht::random_cyclo();
    CHECK(std::abs(a.galois(7).to_complex() - std::conj(a.to_complex())) < 1e-12);
    CHECK(a.galois(1) == a);
    auto prod = a.to_complex() * a.galois(3).to_complex() * a.galois(5).to_complex() *
                a.galois(7).to_complex();
    CHECK(std::abs(prod - a.norm().get_d()) < 1e-9 * (1.0 + std::abs(prod)));
  }
}
