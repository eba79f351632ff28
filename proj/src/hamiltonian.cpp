#include "hamfam/hamiltonian.hpp"

#include <charconv>

namespace hamfam {

namespace {

constexpr int kMaxN = 64;

LaurentPoly rational_const(const VarTablePtr& vars, long num, long den = 1) {
  return LaurentPoly::constant(vars, Cyclo(Rational(num, den)));
}

std::string eta(int i) { return "eta" + std::to_string(i); }

}  // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
  if (text == "autonomous5") return {FamilyKind::Autonomous5, 5};
  if (text == "nonautonomous3") return {FamilyKind::NonAutonomous3, 5};
  constexpr std::string_view kGeneral = "general:";
  if (text.substr(0, kGeneral.size()) == kGeneral) {
    std::string_view digits = text.substr(kGeneral.size());
    int n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("bad family order in '" + std::string(text) + "'");
    }
    if (n < 2) throw std::invalid_argument("general family needs n >= 2");
    return {FamilyKind::GeneralN, n};
  }
  throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

std::string FamilySpec::name() const {
  switch (kind) {
    case FamilyKind::Autonomous5:
      return "autonomous5";
    case FamilyKind::NonAutonomous3:
      return "nonautonomous3";
    case FamilyKind::GeneralN:
      return "general:" + std::to_string(n);
  }
  return {};
}

VarTablePtr family_table(const FamilySpec& family, int degree_cap) {
  std::vector<std::string> names{"q", "p", "t", "qdot"};
  std::vector<VarRole> roles{VarRole::Position, VarRole::Momentum, VarRole::Time,
                             VarRole::Velocity};
  auto param = [&](std::string name) {
    names.push_back(std::move(name));
    roles.push_back(VarRole::Parameter);
  };
  switch (family.kind) {
    case FamilyKind::Autonomous5:
      param("alpha");
      param("eta1");
      param("eta2");
      break;
    case FamilyKind::GeneralN:
      if (family.n < 2 || family.n > kMaxN) throw std::invalid_argument("general family needs 2 <= n <= 64");
      param("alpha");
      for (int i = 1; i < family.n; ++i) param(eta(i));
      break;
    case FamilyKind::NonAutonomous3:
      param("alpha1");
      param("alpha2");
      param("alpha3");
      break;
  }
  return std::make_shared<const VarTable>(std::move(names), std::move(roles), degree_cap);
}

HamSystem make_autonomous5() {
  FamilySpec family{FamilyKind::Autonomous5, 5};
  auto vars = family_table(family);
  auto v = [&](const char* name, int e = 1) { return LaurentPoly::variable(vars, name, e); };
  LaurentPoly H = (v("q", 5) * v("p") + v("alpha") * v("q", 4) + v("eta1") * v("q", 3) + v("eta2")) * v("p");
  return {family, vars, std::move(H), true};
}

HamSystem make_general_n(int n) {
  if (n < 2) throw std::invalid_argument("make_general_n: n must be >= 2");
  FamilySpec family{FamilyKind::GeneralN, n};
  auto vars = family_table(family);
  auto q = [&](int e) { return LaurentPoly::variable(vars, kQ, e); };
  LaurentPoly p = LaurentPoly::variable(vars, kP);
  LaurentPoly inner = q(n) * p + LaurentPoly::variable(vars, "alpha") * q(n - 1);
  for (int i = 1; i < n; ++i) inner += LaurentPoly::variable(vars, eta(i)) * q(n - 1 - i);
  return {family, vars, inner * p, true};
}

HamSystem make_nonautonomous3() {
  FamilySpec family{FamilyKind::NonAutonomous3, 5};
  auto vars = family_table(family);
  auto v = [&](const char* name, int e = 1) { return LaurentPoly::variable(vars, name, e); };
  LaurentPoly one = rational_const(vars, 1);
  LaurentPoly H = (v("q", 5) * v("p") + (v("alpha1") + one) * v("q", 4) + v("t") * v("q", 3) + one) * v("p") +
                  v("alpha3") * v("q", 3) + v("alpha2") * v("t") * v("q", 2);
  return {family, vars, std::move(H), false};
}

HamSystem make_family(const FamilySpec& family) {
  switch (family.kind) {
    case FamilyKind::Autonomous5:
      return make_autonomous5();
    case FamilyKind::GeneralN:
      return make_general_n(family.n);
    case FamilyKind::NonAutonomous3:
      return make_nonautonomous3();
  }
  throw std::invalid_argument("unknown family");
}

MomentumSplit split_momentum(const HamSystem& sys) {
  if (sys.H.max_exponent(kP) > 2) throw AlgebraError("H is not quadratic in p");
  MomentumSplit s{sys.H.coefficient_of(kP, 2), sys.H.coefficient_of(kP, 1),
                  sys.H.coefficient_of(kP, 0)};
  if (!s.lead.is_unit()) throw AlgebraError("coefficient of p^2 is not an invertible q-monomial");
  return s;
}

HamiltonEquations hamilton_equations(const HamSystem& sys) {
  return {diff(sys.H, kP), -diff(sys.H, kQ)};
}

LaurentPoly eliminate_momentum(const HamSystem& sys) {
  MomentumSplit s = split_momentum(sys);
  // qdot = 2 lead p + linear
  LaurentPoly qdot = LaurentPoly::variable(sys.vars, kQDot);
  return (qdot - s.linear) * s.lead.unit_inverse() * Cyclo(Rational(1, 2));
}

SecondOrderODE SecondOrderODE::from_laurent(const LaurentPoly& rhs) {
  SecondOrderODE ode{rhs, Cyclo(1), 0};
  int lowest = rhs.min_exponent(kQ);
  if (lowest < 0) {
    ode.q_power = -lowest;
    ode.numerator = rhs * LaurentPoly::variable(rhs.vars(), kQ, ode.q_power);
  }
  return ode;
}

LaurentPoly SecondOrderODE::to_laurent() const {
  LaurentPoly out = numerator * scale.inverse();
  if (q_power != 0) out *= LaurentPoly::variable(numerator.vars(), kQ, -q_power);
  return out;
}

SecondOrderODE second_order_form(const HamSystem& sys, EliminationRoute route) {
  HamiltonEquations eq = hamilton_equations(sys);
  LaurentPoly momentum = eliminate_momentum(sys);
  LaurentPoly qdot = LaurentPoly::variable(sys.vars, kQDot);
  LaurentPoly fq_q = diff(eq.dq, kQ);
  LaurentPoly fq_p = diff(eq.dq, kP);
  LaurentPoly fq_t = diff(eq.dq, kT);
  Bindings elim{{kP, momentum}};

  LaurentPoly rhs(sys.vars);
  if (route == EliminationRoute::ChainRuleFirst) {
    rhs = substitute(fq_q * qdot + fq_p * eq.dp + fq_t, elim);
  } else {
    rhs = substitute(fq_q, elim) * qdot + substitute(fq_p, elim) * substitute(eq.dp, elim) +
          substitute(fq_t, elim);
  }
  return SecondOrderODE::from_laurent(rhs);
}

SecondOrderODE reference_ode(const HamSystem& sys) {
  const VarTablePtr& vars = sys.vars;
  auto v = [&](const std::string& name, int e = 1) { return LaurentPoly::variable(vars, name, e); };
  auto c = [&](long num, long den = 1) { return rational_const(vars, num, den); };
  LaurentPoly qdot = v("qdot");

  switch (sys.family.kind) {
    case FamilyKind::Autonomous5: {
      LaurentPoly a = v("alpha"), e1 = v("eta1"), e2 = v("eta2");
      LaurentPoly rhs = c(5, 2) * v("q", -1) * (qdot + e2) * (qdot - e2) +
                        c(1, 2) * v("q", 2) *
                            (c(3) * a * a * v("q", 5) + c(4) * a * e1 * v("q", 4) + e1 * e1 * v("q", 3) -
                             c(2) * a * e2 * v("q") - c(4) * e1 * e2);
      return SecondOrderODE::from_laurent(rhs);
    }
    case FamilyKind::NonAutonomous3: {
      LaurentPoly a1 = v("alpha1"), a2 = v("alpha2"), a3 = v("alpha3"), t = v("t");
      LaurentPoly one = c(1);
      LaurentPoly rhs = c(5, 2) * v("q", -1) * (qdot + one) * (qdot - one) +
                        c(3, 2) * (a1 * a1 + c(2) * a1 - c(4) * a3 + one) * v("q", 7) +
                        c(2) * (a1 - c(2) * a2 + one) * t * v("q", 6) + c(1, 2) * t * t * v("q", 5) -
                        a1 * v("q", 3) - c(2) * t * v("q", 2);
      return SecondOrderODE::from_laurent(rhs);
    }
    case FamilyKind::GeneralN: {
      const int n = sys.family.n;
      LaurentPoly last = v(eta(n - 1));
      // C = alpha q^{n-2} + eta1 q^{n-3} + ... + eta{n-2}
      LaurentPoly C = v("alpha") * v("q", n - 2);
      for (int i = 1; i <= n - 2; ++i) C += v(eta(i)) * v("q", n - 2 - i);
      // A = alpha q^{n-1} + eta1 q^{n-2} + ... + eta{n-1}
      LaurentPoly A = v("alpha") * v("q", n - 1);
      for (int i = 1; i <= n - 1; ++i) A += v(eta(i)) * v("q", n - 1 - i);
      // D = alpha (n-1) q^{n-2} + eta1 (n-2) q^{n-3} + ... + eta{n-2}
      LaurentPoly D = c(n - 1) * v("alpha") * v("q", n - 2);
      for (int i = 1; i <= n - 2; ++i) D += c(n - 1 - i) * v(eta(i)) * v("q", n - 2 - i);

      LaurentPoly rhs = c(n, 2) * v("q", -1) * (qdot + last) * (qdot - last) -
                        c(n, 2) * C * (v("q") * C + c(2) * last) + A * D;
      return SecondOrderODE::from_laurent(rhs);
    }
  }
  throw std::invalid_argument("unknown family");
}

LaurentPoly clear_q_denominator(const LaurentPoly& a) {
  int lowest = a.min_exponent(kQ);
  if (lowest >= 0) return a;
  return a * LaurentPoly::variable(a.vars(), kQ, -lowest);
}

LaurentPoly verify_equivalence(const HamSystem& sys, const SecondOrderODE& target) {
  LaurentPoly diff = second_order_form(sys).to_laurent() - target.to_laurent();
  return clear_q_denominator(diff);
}

LaurentPoly time_derivative_of_H(const HamSystem& sys) {
  HamiltonEquations eq = hamilton_equations(sys);
  return diff(sys.H, kQ) * eq.dq + diff(sys.H, kP) * eq.dp + diff(sys.H, kT);
}

}  // namespace hamfam
