#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamfam/cyclo.hpp"

namespace hamfam {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VarRole { Position, Momentum, Time, Velocity, Parameter };

/// Ordered table of the symbols a polynomial may mention. Only the
/// position slot admits negative exponents.
class VarTable {
 public:
  static constexpr int kDefaultDegreeCap = 64;

  VarTable(std::vector<std::string> names, std::vector<VarRole> roles,
           int degree_cap = kDefaultDegreeCap);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  VarRole role(std::size_t i) const { return roles_.at(i); }
  bool allows_negative(std::size_t i) const { return roles_.at(i) == VarRole::Position; }
  int degree_cap() const { return degree_cap_; }

  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws AlgebraError when the name is not in the table.
  std::size_t index(const std::string& name) const;
  std::vector<std::size_t> parameters() const;

  bool operator==(const VarTable& o) const {
    return names_ == o.names_ && roles_ == o.roles_ && degree_cap_ == o.degree_cap_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<VarRole> roles_;
  int degree_cap_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

/// Exponent vector indexed by a VarTable.
using Monomial = std::vector<int>;

/// Sum of absolute exponents.
int total_degree(const Monomial& m);

/// Sparse Laurent polynomial over Q(z8). Zero coefficients are never stored,
/// so equality is structural.
class LaurentPoly {
 public:
  // Descending lexicographic order on the exponent vector.
  using TermMap = std::map<Monomial, Cyclo, std::greater<>>;

  explicit LaurentPoly(VarTablePtr vars);

  static LaurentPoly constant(VarTablePtr vars, const Cyclo& c);
  static LaurentPoly variable(VarTablePtr vars, std::size_t index, int exponent = 1);
  static LaurentPoly variable(VarTablePtr vars, const std::string& name, int exponent = 1);
  static LaurentPoly monomial(VarTablePtr vars, const Cyclo& c, Monomial m);

  const VarTablePtr& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of an exact monomial (zero when absent).
  Cyclo coefficient(const Monomial& m) const;

  /// Adds c*m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Cyclo& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Cyclo& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Cyclo& c) { return a *= c; }
  friend LaurentPoly operator*(const Cyclo& c, LaurentPoly a) { return a *= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// Non-negative integer power.
  LaurentPoly pow(unsigned e) const;

  /// Single-term polynomial whose monomial only involves Laurent variables
  /// can be inverted exactly.
  bool is_unit() const;
  LaurentPoly unit_inverse() const;

  /// Largest / smallest exponent of a variable among all terms (0 for zero).
  int max_exponent(std::size_t var) const;
  int min_exponent(std::size_t var) const;

  /// Collects the coefficient of var^e as a polynomial free of var.
  LaurentPoly coefficient_of(std::size_t var, int e) const;

  std::string str() const;

 private:
  void check_same_table(const LaurentPoly& o) const;
  void check_monomial(const Monomial& m) const;

  VarTablePtr vars_;
  TermMap terms_;
};

LaurentPoly diff(const LaurentPoly& a, std::size_t var);
LaurentPoly diff(const LaurentPoly& a, const std::string& var);

using Bindings = std::map<std::size_t, LaurentPoly>;

/// Simultaneous substitution. A variable appearing with a negative exponent
/// must be bound to a unit; otherwise any polynomial is accepted.
LaurentPoly substitute(const LaurentPoly& a, const Bindings& bindings);

/// Re-express a polynomial over another table, matching variables by name
/// after applying `rename`. Throws if a used variable has no counterpart.
LaurentPoly translate(const LaurentPoly& a, VarTablePtr target,
                      const std::map<std::string, std::string>& rename = {});

/// Copy of `a` with the sign of its k-th term (in canonical order) flipped.
LaurentPoly flip_term_sign(const LaurentPoly& a, std::size_t k);

/// Complex values for some of the variables of a table.
class NumericPoint {
 public:
  explicit NumericPoint(VarTablePtr vars);
  NumericPoint& set(std::size_t index, std::complex<double> v);
  NumericPoint& set(const std::string& name, std::complex<double> v);
  bool is_bound(std::size_t index) const { return values_.at(index).has_value(); }
  std::complex<double> at(std::size_t index) const;
  const VarTablePtr& vars() const { return vars_; }

 private:
  VarTablePtr vars_;
  std::vector<std::optional<std::complex<double>>> values_;
};

/// Nested Horner evaluation, one variable at a time.
std::complex<double> eval_numeric(const LaurentPoly& a, const NumericPoint& point);

}  // namespace hamfam
