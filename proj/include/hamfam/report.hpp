#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamfam/hamiltonian.hpp"
#include "hamfam/integrate.hpp"
#include "hamfam/symmetry.hpp"

namespace hamfam {

struct CheckResult {
  std::string family;
  std::string name;
  bool pass = false;
  /// Canonical serialization of the offending residual (empty on PASS).
  std::string residual;
};

/// Test hook: "hamiltonian[:k]", "ode[:k]" or "map[:k]" flips the sign of
/// term k of H, of the reference equation numerator, or of the map's p rule.
struct Mutation {
  enum class Target { None, Hamiltonian, Ode, Map };
  Target target = Target::None;
  std::size_t term = 0;

  static Mutation parse(const std::string& text);
};

/// (q^n p - alpha q^{n-1} - ... - eta{n-1}) p for the autonomous families:
/// the expected form of H written in the image variables.
LaurentPoly expected_pushforward(const HamSystem& sys);

/// q^3 p + alpha2 q^2 for the non-autonomous family.
LaurentPoly expected_explicit_time_dependence(const HamSystem& sys);

/// Every certificate for one family: equivalence, first integral (or its
/// failure for the non-autonomous family), pushforward, invariance, unit
/// Jacobian and group order.
std::vector<CheckResult> verify_family(const FamilySpec& family, int branch = 1,
                                       const Mutation& mutation = {});

bool all_pass(const std::vector<CheckResult>& results);
std::string format_checks(const std::vector<CheckResult>& results);
nlohmann::json checks_to_json(const std::vector<CheckResult>& results);

/// t,re_q,im_q,re_p,im_p,re_H,im_H,drift with 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

nlohmann::json trajectory_summary(const Trajectory& traj);

}  // namespace hamfam
