#include "hamfam/report.hpp"

#include <charconv>
#include <cstdio>

#include "hamfam/config.hpp"

namespace hamfam {

Mutation Mutation::parse(const std::string& text) {
  Mutation m;
  if (text.empty()) return m;
  std::string head = text;
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    head = text.substr(0, colon);
    std::string digits = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m.term);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("bad mutation term index in '" + text + "'");
    }
  }
  if (head == "hamiltonian") {
    m.target = Target::Hamiltonian;
  } else if (head == "ode") {
    m.target = Target::Ode;
  } else if (head == "map") {
    m.target = Target::Map;
  } else {
    throw std::invalid_argument("unknown mutation target '" + head + "'");
  }
  return m;
}

LaurentPoly expected_pushforward(const HamSystem& sys) {
  auto v = [&](const std::string& name, int e = 1) { return LaurentPoly::variable(sys.vars, name, e); };
  switch (sys.family.kind) {
    case FamilyKind::Autonomous5:
      return (v("q", 5) * v("p") - v("alpha") * v("q", 4) - v("eta1") * v("q", 3) - v("eta2")) * v("p");
    case FamilyKind::GeneralN: {
      const int n = sys.family.n;
      LaurentPoly inner = v("q", n) * v("p") - v("alpha") * v("q", n - 1);
      for (int i = 1; i < n; ++i) inner -= v("eta" + std::to_string(i)) * v("q", n - 1 - i);
      return inner * v("p");
    }
    case FamilyKind::NonAutonomous3:
      break;
  }
  throw std::invalid_argument("expected_pushforward: family is not autonomous");
}

LaurentPoly expected_explicit_time_dependence(const HamSystem& sys) {
  if (sys.family.kind != FamilyKind::NonAutonomous3) {
    throw std::invalid_argument("expected_explicit_time_dependence: needs nonautonomous3");
  }
  auto v = [&](const std::string& name, int e = 1) { return LaurentPoly::variable(sys.vars, name, e); };
  return v("q", 3) * v("p") + v("alpha2") * v("q", 2);
}

namespace {

CheckResult zero_check(const std::string& family, const std::string& name, const std::string& residual_text,
                       bool zero) {
  return {family, name, zero, zero ? std::string() : residual_text};
}

CheckResult zero_check(const std::string& family, const std::string& name, const LaurentPoly& residual) {
  return zero_check(family, name, residual.str(), residual.is_zero());
}

}  // namespace

std::vector<CheckResult> verify_family(const FamilySpec& family, int branch, const Mutation& mutation) {
  HamSystem sys = make_family(family);
  const std::string fam = family.name();
  SecondOrderODE target = reference_ode(sys);
  BirationalMap map = sys.autonomous ? autonomous_map(sys) : nonautonomous_map(branch);

  switch (mutation.target) {
    case Mutation::Target::Hamiltonian:
      sys.H = flip_term_sign(sys.H, mutation.term);
      break;
    case Mutation::Target::Ode:
      target.numerator = flip_term_sign(target.numerator, mutation.term);
      break;
    case Mutation::Target::Map:
      map.p_rule = flip_term_sign(map.p_rule, mutation.term);
      break;
    case Mutation::Target::None:
      break;
  }

  std::vector<CheckResult> out;
  out.push_back(zero_check(fam, "equivalence", verify_equivalence(sys, target)));

  LaurentPoly dHdt = time_derivative_of_H(sys);
  if (sys.autonomous) {
    out.push_back(zero_check(fam, "first integral", dHdt));
    out.push_back(zero_check(fam, "pushforward", pushforward_H(map, sys) - expected_pushforward(sys)));
  } else {
    LaurentPoly residual = dHdt - expected_explicit_time_dependence(sys);
    bool ok = residual.is_zero() && !dHdt.is_zero();
    out.push_back(zero_check(fam, "H not a first integral (dH/dt = q^3*p + alpha2*q^2)",
                             residual.is_zero() ? dHdt.str() : residual.str(), ok));
  }

  InvarianceResidual inv = verify_invariance(map, sys);
  out.push_back(zero_check(fam, "invariance", inv.str(), inv.is_zero()));

  LaurentPoly jac = jacobian_determinant(map) - LaurentPoly::constant(sys.vars, Cyclo(1));
  out.push_back(zero_check(fam, "symplectic (Jacobian = 1)", jac));

  if (sys.autonomous) {
    BirationalMap sq = power(map, 2);
    out.push_back(zero_check(fam, "s^2 = identity", sq.str(), is_identity(sq)));
    out.push_back(zero_check(fam, "s != identity", map.str(), !is_identity(map)));
  } else {
    BirationalMap s8 = power(map, 8);
    out.push_back(zero_check(fam, "s^8 = identity", s8.str(), is_identity(s8)));
    std::string witness;
    for (int k : {1, 2, 4}) {
      BirationalMap sk = power(map, k);
      if (is_identity(sk)) witness += sk.str() + " ";
    }
    out.push_back(zero_check(fam, "s^k != identity (k = 1, 2, 4)", witness, witness.empty()));
  }

  if (family.kind == FamilyKind::Autonomous5) {
    HamSystem g5 = make_general_n(5);
    LaurentPoly reduced = substitute(g5.H, {{g5.vars->index("eta2"), LaurentPoly(g5.vars)},
                                            {g5.vars->index("eta3"), LaurentPoly(g5.vars)}});
    LaurentPoly renamed = translate(reduced, sys.vars, {{"eta4", "eta2"}});
    out.push_back(zero_check(fam, "general:5 with eta2 = eta3 = 0 reduces to this H", renamed - sys.H));
  }
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

std::string format_checks(const std::vector<CheckResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += "[" + r.family + "] " + r.name + ": " + (r.pass ? "PASS" : "FAIL") + "\n";
    if (!r.pass) out += "    residual: " + r.residual + "\n";
  }
  return out;
}

nlohmann::json checks_to_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json j{{"family", r.family}, {"check", r.name}, {"status", r.pass ? "PASS" : "FAIL"}};
    if (!r.pass) j["residual"] = r.residual;
    arr.push_back(std::move(j));
  }
  return arr;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,re_q,im_q,re_p,im_p,re_H,im_H,drift\r\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_double(traj.times[k]) << ',' << format_double(traj.q[k].real()) << ','
       << format_double(traj.q[k].imag()) << ',' << format_double(traj.p[k].real()) << ','
       << format_double(traj.p[k].imag()) << ',' << format_double(traj.H[k].real()) << ','
       << format_double(traj.H[k].imag()) << ',' << format_double(traj.drift_trace[k]) << "\r\n";
  }
}

nlohmann::json trajectory_summary(const Trajectory& traj) {
  return {{"samples", traj.size()},
          {"t_end", traj.times.empty() ? 0.0 : traj.times.back()},
          {"drift", traj.drift},
          {"drift_kind", traj.autonomous ? "max |H(t) - H(t0)|" : "max |FD dH/dt - dH/dt|"},
          {"termination", to_string(traj.termination)},
          {"message", traj.message}};
}

}  // namespace hamfam
