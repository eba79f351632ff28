#pragma once

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <algorithm>
#include <random>
#include <set>
#include <tuple>
#include <string>

#include "hamfam/hamiltonian.hpp"
#include "hamfam/laurent.hpp"

namespace hamfam::testing {

/// Seed from HAMFAM_SEED when set, so failures can be replayed.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("HAMFAM_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611u;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(seed());
  return gen;
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline double uniform_real(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Cyclo random_cyclo(int max_num = 5, int max_den = 4) {
  auto r = [&] {
    if (uniform_int(0, 2) == 0) return Rational(0);
    Rational v(uniform_int(-max_num, max_num), uniform_int(1, max_den));
    v.canonicalize();
    return v;
  };
  return Cyclo(r(), r(), r(), r());
}

/// Random polynomial over a family table: q exponents in [-3, 3], other
/// variables in [0, 2], up to `max_terms` terms.
inline LaurentPoly random_poly(const VarTablePtr& vars, int max_terms = 4) {
  LaurentPoly out(vars);
  int terms = uniform_int(0, max_terms);
  for (int k = 0; k < terms; ++k) {
    Monomial m(vars->size(), 0);
    for (std::size_t i = 0; i < vars->size(); ++i) {
      if (uniform_int(0, 2) != 0) continue;
      m[i] = vars->allows_negative(i) ? uniform_int(-3, 3) : uniform_int(0, 2);
    }
    out.add_term(m, random_cyclo());
  }
  return out;
}

/// Well-conditioned random point: |value| in [0.5, 1.5].
inline NumericPoint random_point(const VarTablePtr& vars) {
  NumericPoint pt(vars);
  for (std::size_t i = 0; i < vars->size(); ++i) {
    double r = uniform_real(0.5, 1.5), th = uniform_real(0.0, 6.283185307179586);
    pt.set(i, std::polar(r, th));
  }
  return pt;
}

/// Oracle: term-by-term sum of coefficient times std::pow of every factor.
inline std::complex<double> naive_eval(const LaurentPoly& a, const NumericPoint& pt) {
  std::complex<double> s = 0.0;
  for (const auto& [m, c] : a.terms()) {
    std::complex<double> term = c.to_complex();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0) term *= std::pow(pt.at(i), m[i]);
    }
    s += term;
  }
  return s;
}

/// Number of distinct monomials in (q, p, t), parameters folded into the
/// coefficients.
inline std::size_t dynamical_term_count(const LaurentPoly& a) {
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& [m, c] : a.terms()) seen.insert({m[kQ], m[kP], m[kT]});
  return seen.size();
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace hamfam::testing
