#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hamfam/hamiltonian.hpp"
#include "hamfam/laurent.hpp"

namespace hamfam {

/// new_params[i] = sum_j matrix[i][j] * params[j] + offset[i], indexed over
/// VarTable::parameters().
struct AffineParamMap {
  std::vector<std::vector<Cyclo>> matrix;
  std::vector<Cyclo> offset;

  static AffineParamMap identity(std::size_t dim);
  std::size_t dim() const { return offset.size(); }
  bool is_identity() const;
  /// Apply this map first, then `next`.
  AffineParamMap then(const AffineParamMap& next) const;
  AffineParamMap inverse() const;
  /// Substitution taking each parameter symbol to its image.
  Bindings bindings(const VarTablePtr& vars) const;
  std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& params) const;

  bool operator==(const AffineParamMap&) const = default;
};

/// (q, p, t; params) -> (q_rule, p_rule, t_rule; param_map), the rules being
/// Laurent expressions in the source variables.
struct BirationalMap {
  std::string name;
  VarTablePtr vars;
  LaurentPoly q_rule;
  LaurentPoly p_rule;
  LaurentPoly t_rule;
  AffineParamMap params;

  std::string str() const;
};

BirationalMap identity_map(const VarTablePtr& vars);

/// p -> p + alpha/q + eta1/q^2 + ... (the pole part of dH/dp over q^n),
/// parameters negated. Only for autonomous families.
BirationalMap autonomous_map(const HamSystem& sys);
BirationalMap autonomous_map(int n);

/// With r = z^branch (branch odd, r^4 = -1):
///   q -> -r q,  p -> -(1/r)(p + alpha1/q + t/q^2 + 1/q^5),  t -> r t,
///   (alpha1, alpha2, alpha3) -> (-alpha1, 1 - alpha2, alpha3 - alpha1).
/// For branch 7 the time factor r equals -z^3.
BirationalMap nonautonomous_map(int branch = 1);

/// "s-auto", "s-auto:<n>" or "s-nonauto" for the given system.
BirationalMap map_by_name(const std::string& name, const HamSystem& sys, int branch = 1);

/// Pull a polynomial back along the map: substitute every rule (parameters
/// included) into `a`.
LaurentPoly apply(const BirationalMap& map, const LaurentPoly& a);

/// The composite "a, then b".
BirationalMap compose(const BirationalMap& a, const BirationalMap& b);
BirationalMap power(const BirationalMap& map, int k);
bool is_identity(const BirationalMap& map);

/// Smallest k in [1, max_order] with map^k = identity.
std::optional<int> group_order(const BirationalMap& map, int max_order);

/// Rules expressing (q, p, t) through the image variables with the
/// parameters left untouched. Requires q -> c q, t -> c' t and a rule for p
/// that is affine in p with constant slope.
struct ResolvedRules {
  LaurentPoly q;
  LaurentPoly p;
  LaurentPoly t;
};
ResolvedRules resolve(const BirationalMap& map);

/// Full inverse, parameter action included.
BirationalMap inverse(const BirationalMap& map);

/// H written in the image variables (parameters unchanged).
LaurentPoly pushforward_H(const BirationalMap& map, const HamSystem& sys);

/// H with its parameters replaced by their images.
LaurentPoly apply_param_rule(const BirationalMap& map, const LaurentPoly& a);

struct InvarianceResidual {
  enum class Kind { Hamiltonian, ChainRule };
  Kind kind;
  /// Hamiltonian: pushforward_H - H(mapped params). ChainRule: dQ/dT - dH~/dP.
  LaurentPoly first;
  /// ChainRule only: dP/dT + dH~/dQ.
  LaurentPoly second;

  bool is_zero() const { return first.is_zero() && second.is_zero(); }
  std::string str() const;
};

InvarianceResidual verify_invariance(const BirationalMap& map, const HamSystem& sys);

LaurentPoly jacobian_determinant(const BirationalMap& map);

/// Numeric image of a point; params aligned with VarTable::parameters().
struct MappedPoint {
  std::complex<double> q, p, t;
  std::vector<std::complex<double>> params;
};
MappedPoint apply_numeric(const BirationalMap& map, std::complex<double> q, std::complex<double> p,
                          std::complex<double> t, const std::vector<std::complex<double>>& params);

}  // namespace hamfam
