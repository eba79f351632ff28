// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hamfam/config.hpp"
#include "hamfam/report.hpp"

using namespace hamfam;

namespace {

int failures = 0;

void line(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

NumericParams ones5(const HamSystem& s) {
  return NumericParams::from_named(*s.vars, {{"alpha", 1.0}, {"eta1", 1.0}, {"eta2", 1.0}});
}

NumericParams nonauto_params(const HamSystem& s) {
  return NumericParams::from_named(*s.vars, {{"alpha1", {0.3, 0.1}}, {"alpha2", {0.2, 0.0}}, {"alpha3", {-0.4, 0.2}}});
}

void criterion1() {
  auto start = std::chrono::steady_clock::now();
  std::vector<HamSystem> systems{make_autonomous5(), make_nonautonomous3()};
  for (int n = 2; n <= 8; ++n) systems.push_back(make_general_n(n));
  std::string bad;
  for (const auto& s : systems) {
    if (!verify_equivalence(s, reference_ode(s)).is_zero()) bad += " " + s.family.name();
  }
  double secs = seconds_since(start);
  line("1", bad.empty() && secs < 10.0,
       "equivalence residual is 0 for autonomous5, nonautonomous3, general n = 2..8 (" + fmt(secs) + " s)" +
           (bad.empty() ? "" : "; nonzero for" + bad));
}

void criterion2() {
  std::string bad;
  if (!time_derivative_of_H(make_autonomous5()).is_zero()) bad += " autonomous5";
  for (int n = 2; n <= 8; ++n) {
    if (!time_derivative_of_H(make_general_n(n)).is_zero()) bad += " general:" + std::to_string(n);
  }
  HamSystem na = make_nonautonomous3();
  LaurentPoly dH = time_derivative_of_H(na);
  bool na_ok = dH == expected_explicit_time_dependence(na) && dH == diff(na.H, kT);
  if (!na_ok) bad += " nonautonomous3 (dH/dt = " + dH.str() + ")";
  line("2", bad.empty(), "dH/dt = 0 for the autonomous families; nonautonomous3 dH/dt = " + dH.str() +
                             (bad.empty() ? "" : "; wrong for" + bad));
}

void criterion3() {
  std::string bad;
  auto one = [](const BirationalMap& m) { return LaurentPoly::constant(m.vars, Cyclo(1)); };
  for (int n = 2; n <= 8; ++n) {
    HamSystem g = make_general_n(n);
    BirationalMap m = autonomous_map(g);
    if (pushforward_H(m, g) != expected_pushforward(g)) bad += " pushforward(n=" + std::to_string(n) + ")";
  }
  HamSystem a5 = make_autonomous5();
  BirationalMap sa = autonomous_map(a5);
  if (pushforward_H(sa, a5) != expected_pushforward(a5)) bad += " pushforward(autonomous5)";
  if (!verify_invariance(sa, a5).is_zero()) bad += " invariance(s-auto)";
  if (jacobian_determinant(sa) != one(sa)) bad += " jacobian(s-auto)";
  HamSystem na = make_nonautonomous3();
  for (int k : {1, 7}) {
    BirationalMap sn = nonautonomous_map(k);
    if (!verify_invariance(sn, na).is_zero()) bad += " invariance(s-nonauto, z^" + std::to_string(k) + ")";
    if (jacobian_determinant(sn) != one(sn)) bad += " jacobian(s-nonauto, z^" + std::to_string(k) + ")";
  }
  line("3", bad.empty(),
       "pushforward matches (Q^n P - alpha Q^{n-1} - ... - eta{n-1}) P for n = 2..8; invariance residual 0 and "
       "Jacobian 1 for both maps" +
           (bad.empty() ? "" : "; failed:" + bad));
}

void criterion4() {
  std::string bad;
  BirationalMap sa = autonomous_map(make_autonomous5());
  if (!is_identity(power(sa, 2)) || is_identity(sa)) bad += " s-auto";
  for (int k : {1, 7}) {
    BirationalMap sn = nonautonomous_map(k);
    bool ok = is_identity(power(sn, 8));
    for (int j : {1, 2, 4}) ok = ok && !is_identity(power(sn, j));
    if (!ok) bad += " s-nonauto(z^" + std::to_string(k) + ")";
  }
  line("4", bad.empty(),
       "s-auto has order 2; s-nonauto has order 8 (identity at 8, not at 1, 2, 4) for branches z and z^7" +
           (bad.empty() ? "" : "; failed:" + bad));
}

void criterion5() {
  HamSystem s = make_autonomous5();
  NumericParams prm = ones5(s);
  IntegrationSettings cfg;
  cfg.h = 1e-3;
  cfg.t0 = 0.0;
  cfg.t1 = 1.0;

  auto start = std::chrono::steady_clock::now();
  Trajectory tr = integrate(s, prm, 1.0, 0.0, cfg);
  ConvergenceSweep sw = drift_convergence(s, prm, 1.0, 0.0, cfg, {1e-2, 5e-3, 2.5e-3});
  double secs = seconds_since(start);

  bool covered = tr.termination == Termination::Completed;
  bool drift_ok = covered && tr.drift <= 1e-8;
  bool order_ok = sw.order >= 3.7 && sw.order <= 4.3;
  std::string detail = "(q0, p0) = (1, 0), alpha = eta1 = eta2 = 1: run ended at t = " + fmt(tr.times.back()) +
                       " (" + to_string(tr.termination) + "), max|H - H0| = " + fmt(tr.drift) +
                       ", measured order = " + fmt(sw.order) + ", " + fmt(secs) + " s";
  if (!covered) detail += "; p stays 0 so H is identically 0 and q' = q^4 + q^3 + 1 blows up before t = 1";
  if (std::isnan(sw.order)) detail += "; zero drift leaves the order undefined";
  line("5", drift_ok && order_ok && secs < 1.0, detail);

  // Informational: the same sweep on a bounded orbit shows the RK4 rate.
  IntegrationSettings bounded = cfg;
  bounded.t1 = 1.0;
  ConvergenceSweep sb = drift_convergence(s, prm, {0.0, 0.5}, 0.1, bounded, {1e-2, 5e-3, 2.5e-3});
  Trajectory tb = integrate(s, prm, {0.0, 0.5}, 0.1, bounded);
  std::printf("[INFO] criterion 5 supplementary (not scored): (q0, p0) = (0.5i, 0.1), t in [0, 1], h = 1e-3: "
              "max|H - H0| = %.3g (%s); sweep order = %.3f\n",
              tb.drift, to_string(tb.termination).c_str(), sb.order);
}

void criterion6() {
  HamSystem s = make_nonautonomous3();
  NumericParams prm = nonauto_params(s);
  IntegrationSettings cfg;
  cfg.t1 = 0.5;
  Trajectory tr = integrate(s, prm, {0.6, 0.3}, {0.1, -0.2}, cfg);
  CompiledField f = compile_field(s, prm);
  double worst = 0.0;
  for (double e : dHdt_relative_error(tr, f)) worst = std::max(worst, e);
  bool ok = tr.termination == Termination::Completed && worst < 1e-6;
  line("6", ok,
       "nonautonomous3, (q0, p0) = (0.6+0.3i, 0.1-0.2i), t in [0, 0.5], h = 1e-3: max relative |FD dH/dt - "
       "dH/dt| = " +
           fmt(worst));
}

void criterion7() {
  IntegrationSettings cfg;
  cfg.h = 1e-3;
  cfg.t1 = 0.5;
  HamSystem a5 = make_autonomous5();
  Trajectory ta = integrate(a5, ones5(a5), {0.0, 0.5}, 0.1, cfg);
  double ra = check_symmetry_on_trajectory(ta, autonomous_map(a5), a5, ones5(a5));

  HamSystem na = make_nonautonomous3();
  Trajectory tn = integrate(na, nonauto_params(na), {0.6, 0.3}, {0.1, -0.2}, cfg);
  double rn = 0.0;
  for (int k : {1, 7}) rn = std::max(rn, check_symmetry_on_trajectory(tn, nonautonomous_map(k), na, nonauto_params(na)));

  bool ok = ta.termination == Termination::Completed && tn.termination == Termination::Completed && ra <= 1e-5 &&
            rn <= 1e-5;
  line("7", ok, "mapped trajectories solve the image system: s-auto residual " + fmt(ra) +
                    ", s-nonauto residual " + fmt(rn) + " (h = 1e-3)");
}

// A mutation is caught when some certificate fails and prints a residual.
bool caught(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass && !r.residual.empty() && r.residual != "0") return true;
  }
  return false;
}

// Certificates for a hand-mutated map.
bool map_caught(const BirationalMap& m, const HamSystem& sys) {
  if (!verify_invariance(m, sys).is_zero()) return true;
  if (jacobian_determinant(m) != LaurentPoly::constant(m.vars, Cyclo(1))) return true;
  if (sys.autonomous) {
    if (pushforward_H(m, sys) != expected_pushforward(sys)) return true;
    return !is_identity(power(m, 2));
  }
  return !is_identity(power(m, 8));
}

void criterion8() {
  int tried = 0, missed = 0;
  std::string missed_list;
  auto run = [&](const std::string& label, bool detected) {
    ++tried;
    if (!detected) {
      ++missed;
      missed_list += " " + label;
    }
  };

  FamilySpec a5{FamilyKind::Autonomous5, 5};
  FamilySpec na{FamilyKind::NonAutonomous3, 5};
  HamSystem sa = make_autonomous5(), sn = make_nonautonomous3();

  std::size_t s1_terms = reference_ode(sa).numerator.size();
  for (std::size_t k = 0; k < s1_terms; ++k) {
    run("ode:" + std::to_string(k), caught(verify_family(a5, 1, {Mutation::Target::Ode, k})));
  }
  for (std::size_t k = 0; k < sa.H.size(); ++k) {
    run("autonomous5 H:" + std::to_string(k), caught(verify_family(a5, 1, {Mutation::Target::Hamiltonian, k})));
  }
  for (std::size_t k = 0; k < sn.H.size(); ++k) {
    run("nonautonomous3 H:" + std::to_string(k), caught(verify_family(na, 1, {Mutation::Target::Hamiltonian, k})));
  }

  struct MapCase {
    std::string label;
    BirationalMap map;
    const HamSystem* sys;
  };
  std::vector<MapCase> maps{{"s-auto", autonomous_map(sa), &sa},
                            {"s-nonauto(z)", nonautonomous_map(1), &sn},
                            {"s-nonauto(z^7)", nonautonomous_map(7), &sn}};
  for (const auto& [label, base, sys] : maps) {
    FamilySpec fam = sys->family;
    int branch = sys->autonomous ? 1 : (label == "s-nonauto(z^7)" ? 7 : 1);
    for (std::size_t k = 0; k < base.p_rule.size(); ++k) {
      run(label + " p:" + std::to_string(k), caught(verify_family(fam, branch, {Mutation::Target::Map, k})));
    }
    for (auto rule : {&BirationalMap::q_rule, &BirationalMap::t_rule}) {
      for (std::size_t k = 0; k < (base.*rule).size(); ++k) {
        BirationalMap m = base;
        m.*rule = flip_term_sign(base.*rule, k);
        run(label + (rule == &BirationalMap::q_rule ? " q:" : " t:") + std::to_string(k), map_caught(m, *sys));
      }
    }
    for (std::size_t i = 0; i < base.params.dim(); ++i) {
      for (std::size_t j = 0; j < base.params.dim(); ++j) {
        if (base.params.matrix[i][j].is_zero()) continue;
        BirationalMap m = base;
        m.params.matrix[i][j] = -m.params.matrix[i][j];
        run(label + " param[" + std::to_string(i) + "][" + std::to_string(j) + "]", map_caught(m, *sys));
      }
      if (!base.params.offset[i].is_zero()) {
        BirationalMap m = base;
        m.params.offset[i] = -m.params.offset[i];
        run(label + " offset[" + std::to_string(i) + "]", map_caught(m, *sys));
      }
    }
  }
  line("8", missed == 0,
       std::to_string(tried - missed) + "/" + std::to_string(tried) +
           " single sign flips (S1 terms, both Hamiltonians, every map rule and parameter entry) detected" +
           (missed ? "; undetected:" + missed_list : ""));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      line("?", false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%s (%d failing)\n", failures ? "ACCEPTANCE: FAILURES PRESENT" : "ACCEPTANCE: ALL PASS", failures);
  return failures ? 1 : 0;
}
