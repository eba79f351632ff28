#include <doctest.h>

#include "hamfam/hamiltonian.hpp"
#include "hamfam/report.hpp"
#include "test_support.hpp"

using namespace hamfam;
namespace ht = hamfam::testing;

namespace {

LaurentPoly v(const HamSystem& s, const std::string& name, int e = 1) {
  return LaurentPoly::variable(s.vars, name, e);
}

LaurentPoly c(const HamSystem& s, long num, long den = 1) {
  return LaurentPoly::constant(s.vars, Cyclo(Rational(num, den)));
}

}  // namespace

TEST_CASE("family parsing") {
  CHECK(FamilySpec::parse("autonomous5").kind == FamilyKind::Autonomous5);
  CHECK(FamilySpec::parse("general:7") == FamilySpec{FamilyKind::GeneralN, 7});
  CHECK(FamilySpec::parse("nonautonomous3").name() == "nonautonomous3");
  CHECK(FamilySpec::parse("general:3").name() == "general:3");
  CHECK_THROWS(FamilySpec::parse("general:x"));
  CHECK_THROWS(FamilySpec::parse("sixth"));
}

TEST_CASE("Hamiltonian term counts") {
  HamSystem a5 = make_autonomous5();
  CHECK(a5.H.size() == 4);
  CHECK(ht::dynamical_term_count(a5.H) == 4);
  CHECK(a5.autonomous);

  for (int n = 2; n <= 8; ++n) {
    HamSystem g = make_general_n(n);
    CHECK(g.H.size() == static_cast<std::size_t>(n + 1));
    CHECK(g.vars->parameters().size() == static_cast<std::size_t>(n));
  }
  CHECK_THROWS(make_general_n(1));

  HamSystem na = make_nonautonomous3();
  CHECK_FALSE(na.autonomous);
  // (alpha1 + 1) q^4 p is one term in (q, p, t) but two monomials once
  // alpha1 is a variable.
  CHECK(ht::dynamical_term_count(na.H) == 6);
  CHECK(na.H.size() == 7);
}

TEST_CASE("general n = 2 written out") {
  HamSystem g = make_general_n(2);
  LaurentPoly want = v(g, "q", 2) * v(g, "p", 2) + v(g, "alpha") * v(g, "q") * v(g, "p") + v(g, "eta1") * v(g, "p");
  CHECK(g.H == want);
}

TEST_CASE("Hamilton's equations for autonomous5") {
  HamSystem s = make_autonomous5();
  HamiltonEquations eq = hamilton_equations(s);
  LaurentPoly dq_at_p0 = substitute(eq.dq, {{kP, LaurentPoly(s.vars)}});
  CHECK(dq_at_p0 == v(s, "alpha") * v(s, "q", 4) + v(s, "eta1") * v(s, "q", 3) + v(s, "eta2"));
  CHECK(substitute(eq.dp, {{kP, LaurentPoly(s.vars)}}).is_zero());
  CHECK(eq.dq == diff(s.H, kP));
  CHECK(eq.dp == -diff(s.H, kQ));
}

TEST_CASE("Hamilton's equations for nonautonomous3") {
  HamSystem s = make_nonautonomous3();
  HamiltonEquations eq = hamilton_equations(s);
  LaurentPoly dq_at_p0 = substitute(eq.dq, {{kP, LaurentPoly(s.vars)}});
  CHECK(dq_at_p0 == (v(s, "alpha1") + c(s, 1)) * v(s, "q", 4) + v(s, "t") * v(s, "q", 3) + c(s, 1));
}

TEST_CASE("momentum split and elimination") {
  for (int n = 2; n <= 8; ++n) {
    HamSystem g = make_general_n(n);
    MomentumSplit sp = split_momentum(g);
    CHECK(sp.lead == v(g, "q", n));
    CHECK(sp.rest.is_zero());
    LaurentPoly p = eliminate_momentum(g);
    // plugging p back into dH/dp gives qdot
    CHECK(substitute(diff(g.H, kP), {{kP, p}}) == v(g, "qdot"));
  }
  HamSystem na = make_nonautonomous3();
  LaurentPoly p = eliminate_momentum(na);
  CHECK(substitute(diff(na.H, kP), {{kP, p}}) == v(na, "qdot"));
}

TEST_CASE("elimination rejects a Hamiltonian that is not quadratic in p") {
  HamSystem s = make_autonomous5();
  s.H += v(s, "p", 3);
  CHECK_THROWS_AS(eliminate_momentum(s), AlgebraError);
}

TEST_CASE("second-order form matches the reference equations") {
  CHECK(verify_equivalence(make_autonomous5(), reference_ode(make_autonomous5())).is_zero());
  CHECK(verify_equivalence(make_nonautonomous3(), reference_ode(make_nonautonomous3())).is_zero());
  for (int n = 2; n <= 8; ++n) {
    HamSystem g = make_general_n(n);
    CAPTURE(n);
    CHECK(verify_equivalence(g, reference_ode(g)).is_zero());
  }
}

TEST_CASE("general n = 2 second-order form by hand") {
  // q'' = (n/2) (q'^2 - eta1^2)/q - (n/2) alpha (q alpha + 2 eta1) + (alpha q + eta1) alpha
  HamSystem g = make_general_n(2);
  LaurentPoly qd = v(g, "qdot"), a = v(g, "alpha"), e = v(g, "eta1"), q = v(g, "q");
  LaurentPoly want = (qd * qd - e * e) * v(g, "q", -1) - a * (q * a + c(g, 2) * e) + (a * q + e) * a;
  CHECK(second_order_form(g).to_laurent() == want);
}

TEST_CASE("both elimination routes agree") {
  std::vector<HamSystem> systems{make_autonomous5(), make_nonautonomous3()};
  for (int n = 2; n <= 8; ++n) systems.push_back(make_general_n(n));
  for (const auto& s : systems) {
    CAPTURE(s.family.name());
    CHECK(second_order_form(s, EliminationRoute::ChainRuleFirst).to_laurent() ==
          second_order_form(s, EliminationRoute::SubstituteFirst).to_laurent());
  }
}

TEST_CASE("second-order representation round-trips") {
  for (const auto& s : {make_autonomous5(), make_nonautonomous3(), make_general_n(4)}) {
    LaurentPoly rhs = second_order_form(s).to_laurent();
    CHECK(SecondOrderODE::from_laurent(rhs).to_laurent() == rhs);
  }
}

TEST_CASE("first integral and explicit time dependence") {
  CHECK(time_derivative_of_H(make_autonomous5()).is_zero());
  for (int n = 2; n <= 8; ++n) CHECK(time_derivative_of_H(make_general_n(n)).is_zero());
  HamSystem na = make_nonautonomous3();
  LaurentPoly dH = time_derivative_of_H(na);
  CHECK(dH == v(na, "q", 3) * v(na, "p") + v(na, "alpha2") * v(na, "q", 2));
  CHECK(dH == diff(na.H, kT));
}

TEST_CASE("general:5 with two etas zeroed is autonomous5 after renaming") {
  HamSystem g5 = make_general_n(5);
  HamSystem a5 = make_autonomous5();
  LaurentPoly reduced = substitute(g5.H, {{g5.vars->index("eta2"), LaurentPoly(g5.vars)},
                                          {g5.vars->index("eta3"), LaurentPoly(g5.vars)}});
  CHECK(translate(reduced, a5.vars, {{"eta4", "eta2"}}) == a5.H);
}

TEST_CASE("any single sign flip breaks equivalence") {
  // Exception: negating the p^2 term alone gives -H(q, -p), whose q equation
  // is identical; that mutation is caught by the pushforward check instead.
  std::vector<HamSystem> systems{make_autonomous5(), make_nonautonomous3(), make_general_n(3)};
  for (const auto& s : systems) {
    SecondOrderODE ref = reference_ode(s);
    for (std::size_t k = 0; k < ref.numerator.size(); ++k) {
      SecondOrderODE bad = ref;
      bad.numerator = flip_term_sign(ref.numerator, k);
      CAPTURE(s.family.name());
      CAPTURE(k);
      CHECK_FALSE(verify_equivalence(s, bad).is_zero());
    }
    for (std::size_t k = 0; k < s.H.size(); ++k) {
      HamSystem bad = s;
      bad.H = flip_term_sign(s.H, k);
      CAPTURE(s.family.name());
      CAPTURE(k);
      bool lead_alone = s.autonomous && s.H.terms().begin()->first[kP] == 2 && k == 0;
      if (lead_alone) {
        HamSystem reflected = s;
        reflected.H = -substitute(s.H, {{kP, -LaurentPoly::variable(s.vars, kP)}});
        CHECK(bad.H == reflected.H);
        CHECK(verify_equivalence(bad, ref).is_zero());
      } else {
        CHECK_FALSE(verify_equivalence(bad, ref).is_zero());
      }
    }
  }
}
