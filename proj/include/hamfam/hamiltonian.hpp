#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "hamfam/laurent.hpp"

namespace hamfam {

enum class FamilyKind { Autonomous5, GeneralN, NonAutonomous3 };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Autonomous5;
  int n = 5;

  /// "autonomous5", "general:<n>" or "nonautonomous3".
  static FamilySpec parse(std::string_view text);
  std::string name() const;
  bool operator==(const FamilySpec&) const = default;
};

// Fixed slots shared by every family table.
inline constexpr std::size_t kQ = 0;
inline constexpr std::size_t kP = 1;
inline constexpr std::size_t kT = 2;
inline constexpr std::size_t kQDot = 3;

/// q, p, t, qdot followed by the family's parameters:
///   autonomous5     alpha, eta1, eta2
///   general:n       alpha, eta1 .. eta{n-1}
///   nonautonomous3  alpha1, alpha2, alpha3
VarTablePtr family_table(const FamilySpec& family, int degree_cap = VarTable::kDefaultDegreeCap);

struct HamSystem {
  FamilySpec family;
  VarTablePtr vars;
  LaurentPoly H;
  bool autonomous = true;

  LaurentPoly var(const std::string& name) const { return LaurentPoly::variable(vars, name); }
  LaurentPoly constant(const Cyclo& c) const { return LaurentPoly::constant(vars, c); }
};

/// H = (q^5 p + alpha q^4 + eta1 q^3 + eta2) p
HamSystem make_autonomous5();
/// H = (q^n p + alpha q^{n-1} + eta1 q^{n-2} + ... + eta{n-1}) p, n >= 2
HamSystem make_general_n(int n);
/// H = (q^5 p + (alpha1 + 1) q^4 + t q^3 + 1) p + alpha3 q^3 + alpha2 t q^2
HamSystem make_nonautonomous3();
HamSystem make_family(const FamilySpec& family);

/// Split H = lead*p^2 + linear*p + rest. Throws AlgebraError if H has
/// higher powers of p or lead is not an invertible q-monomial.
struct MomentumSplit {
  LaurentPoly lead;
  LaurentPoly linear;
  LaurentPoly rest;
};
MomentumSplit split_momentum(const HamSystem& sys);

struct HamiltonEquations {
  LaurentPoly dq;  // dH/dp
  LaurentPoly dp;  // -dH/dq
};
HamiltonEquations hamilton_equations(const HamSystem& sys);

/// p as a Laurent expression in q, qdot, t and the parameters, obtained by
/// solving qdot = dH/dp.
LaurentPoly eliminate_momentum(const HamSystem& sys);

/// q'' = numerator / (scale * q^q_power).
struct SecondOrderODE {
  LaurentPoly numerator;
  Cyclo scale{1};
  int q_power = 0;

  static SecondOrderODE from_laurent(const LaurentPoly& rhs);
  LaurentPoly to_laurent() const;
};

enum class EliminationRoute {
  /// Differentiate along the flow in (q, p, t, qdot), then eliminate p.
  ChainRuleFirst,
  /// Eliminate p in every partial derivative before combining them.
  SubstituteFirst,
};

SecondOrderODE second_order_form(const HamSystem& sys,
                                 EliminationRoute route = EliminationRoute::ChainRuleFirst);

/// The displayed second-order equation each family is claimed equivalent to,
/// assembled from its factored form (independent of the Hamiltonian).
SecondOrderODE reference_ode(const HamSystem& sys);

/// second_order_form(sys) - target, with q-power denominators cleared.
LaurentPoly verify_equivalence(const HamSystem& sys, const SecondOrderODE& target);

/// dH/dq * f_q + dH/dp * f_p + dH/dt.
LaurentPoly time_derivative_of_H(const HamSystem& sys);

/// Multiply by the smallest power of q that removes negative q exponents.
LaurentPoly clear_q_denominator(const LaurentPoly& a);

}  // namespace hamfam
