// hamfam: verify the polynomial Hamiltonian families, integrate them, and
// apply their birational symmetries.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
// configuration error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hamfam/config.hpp"
#include "hamfam/hamiltonian.hpp"
#include "hamfam/integrate.hpp"
#include "hamfam/report.hpp"
#include "hamfam/symmetry.hpp"

namespace {

using hamfam::RunConfig;
using json = nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kMaxN = 16;
constexpr double kSymmetryTolerance = 1e-5;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config, family, n, params, map, method, q0, p0, out, sweep, mutate;
  int branch = 1, power = 1;
  double h = 0, tol = 0, t0 = 0, t1 = 0;
  bool check_trajectory = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->set_help_flag("--help", "print this help message and exit");
  sub->add_option("--config", f.config, "key = value config file; flags override it");
  sub->add_option("--family", f.family, "autonomous5 | general | general:<n> | nonautonomous3");
  sub->add_option("--n", f.n, "order n or range a..b for the general family");
  sub->add_option("--params", f.params, "parameter values, e.g. alpha=1,eta1=0.5+2i");
  sub->add_option("--map", f.map, "s-auto, s-auto:<n> or s-nonauto");
  sub->add_option("--branch", f.branch, "odd k: (-1)^(1/4) is taken as z^k");
  sub->add_option("--method", f.method, "rk4 | rk45");
  sub->add_option("--h", f.h, "step size (initial step for rk45)");
  sub->add_option("--tol", f.tol, "rk45 absolute and relative tolerance");
  sub->add_option("--t0", f.t0, "start time");
  sub->add_option("--t1", f.t1, "end time");
  sub->add_option("--q0", f.q0, "initial q as a+bi");
  sub->add_option("--p0", f.p0, "initial p as a+bi");
  sub->add_option("--out", f.out, "output path");
}

RunConfig merge(const CLI::App* sub, const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : hamfam::load_config(f.config);
  cfg.command = sub->get_name();
  auto given = [&](std::string name) {
    std::replace(name.begin(), name.end(), '_', '-');
    const CLI::Option* opt = sub->get_option_no_throw("--" + name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("family")) cfg.family = f.family;
  if (given("n")) cfg.n = f.n;
  if (given("params")) {
    for (const auto& [k, v] : hamfam::parse_param_list(f.params)) cfg.params[k] = v;
  }
  if (given("map")) cfg.map = f.map;
  if (given("branch")) cfg.branch = f.branch;
  if (given("method")) cfg.method = f.method;
  if (given("h")) cfg.h = f.h;
  if (given("tol")) cfg.tol = f.tol;
  if (given("t0")) cfg.t0 = f.t0;
  if (given("t1")) cfg.t1 = f.t1;
  if (given("q0")) cfg.q0 = hamfam::parse_complex(f.q0);
  if (given("p0")) cfg.p0 = hamfam::parse_complex(f.p0);
  if (given("out")) cfg.out = f.out;
  if (given("sweep")) cfg.sweep = hamfam::parse_double_list(f.sweep);
  if (given("power")) cfg.power = f.power;
  if (given("check_trajectory")) cfg.check_trajectory = f.check_trajectory;
  return cfg;
}

json metadata() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return {{"generated_at", buf}, {"tool", "hamfam"}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

// Families selected by the config; the general family expands its n range.
std::vector<hamfam::FamilySpec> selected_families(const RunConfig& cfg, bool allow_range) {
  std::string fam = cfg.family;
  std::string n = cfg.n;
  if (fam.rfind("general:", 0) == 0) {
    if (!n.empty() && n != fam.substr(8)) throw UsageError("--n conflicts with " + fam);
    n = fam.substr(8);
    fam = "general";
  }
  if (fam == "autonomous5" || fam == "nonautonomous3") return {hamfam::FamilySpec::parse(fam)};
  if (fam != "general") throw UsageError("unknown family '" + cfg.family + "'");
  if (n.empty()) throw UsageError("the general family needs --n");
  auto [lo, hi] = hamfam::parse_n_range(n);
  if (lo < 2 || hi > kMaxN) throw UsageError("n must lie within 2..16");
  if (!allow_range && lo != hi) throw UsageError("this command needs a single n");
  std::vector<hamfam::FamilySpec> out;
  for (int k = lo; k <= hi; ++k) out.push_back({hamfam::FamilyKind::GeneralN, k});
  return out;
}

int cmd_verify(const RunConfig& cfg, const std::string& mutate) {
  auto families = selected_families(cfg, true);
  hamfam::Mutation mutation = hamfam::Mutation::parse(mutate);
  std::vector<hamfam::CheckResult> results;
  for (const auto& fam : families) {
    auto r = hamfam::verify_family(fam, cfg.branch, mutation);
    results.insert(results.end(), r.begin(), r.end());
  }
  bool ok = hamfam::all_pass(results);
  std::cout << hamfam::format_checks(results);
  std::cout << (ok ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  json report{{"schema", 1},
              {"command", "verify"},
              {"family", cfg.family},
              {"n", cfg.n},
              {"branch", cfg.branch},
              {"checks", hamfam::checks_to_json(results)},
              {"all_pass", ok},
              {"metadata", metadata()}};
  if (!mutate.empty()) report["mutation"] = mutate;
  if (!cfg.out.empty()) write_file(cfg.out, report.dump(2) + "\n");
  return ok ? 0 : kExitFail;
}

hamfam::NumericParams numeric_params(const hamfam::HamSystem& sys, const RunConfig& cfg) {
  auto params = hamfam::NumericParams::from_named(*sys.vars, cfg.params);
  for (const auto& w : params.warnings(*sys.vars)) std::cerr << "warning: " << w << "\n";
  return params;
}

hamfam::IntegrationSettings settings_from(const RunConfig& cfg) {
  hamfam::IntegrationSettings s;
  s.method = hamfam::parse_method(cfg.method);
  s.h = cfg.h;
  s.rtol = s.atol = cfg.tol;
  s.t0 = cfg.t0;
  s.t1 = cfg.t1;
  return s;
}

int cmd_integrate(const RunConfig& cfg) {
  hamfam::HamSystem sys = hamfam::make_family(selected_families(cfg, false).front());
  auto params = numeric_params(sys, cfg);
  auto settings = settings_from(cfg);
  hamfam::Trajectory traj;
  try {
    traj = hamfam::integrate(sys, params, cfg.q0, cfg.p0, settings);
  } catch (const hamfam::IntegrationError& e) {
    throw UsageError(e.what());
  }

  std::string csv_path = cfg.out.empty() ? "trajectory.csv" : cfg.out;
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write '" + csv_path + "'");
  hamfam::write_trajectory_csv(csv, traj);
  csv.close();

  json summary{{"schema", 1}, {"command", "integrate"}, {"family", sys.family.name()},
               {"method", hamfam::to_string(settings.method)}};
  summary["trajectory"] = hamfam::trajectory_summary(traj);
  summary["csv"] = csv_path;
  if (!cfg.sweep.empty()) {
    auto sweep = hamfam::drift_convergence(sys, params, cfg.q0, cfg.p0, settings, cfg.sweep);
    std::vector<std::string> terms;
    for (auto t : sweep.terminations) terms.push_back(hamfam::to_string(t));
    summary["sweep"] = {{"steps", sweep.steps},
                        {"drifts", sweep.drifts},
                        {"terminations", terms},
                        {"pairwise_orders", sweep.pairwise_orders},
                        {"order", sweep.order}};
  }
  std::filesystem::path summary_path(csv_path);
  summary_path.replace_extension(".summary.json");
  json file = summary;
  file["metadata"] = metadata();
  write_file(summary_path.string(), file.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

json named_params(const hamfam::VarTable& vars, const std::vector<std::complex<double>>& values) {
  json out = json::object();
  auto idx = vars.parameters();
  for (std::size_t k = 0; k < idx.size(); ++k) out[vars.name(idx[k])] = hamfam::format_complex(values[k]);
  return out;
}

int cmd_symmetry(const RunConfig& cfg) {
  hamfam::HamSystem sys = hamfam::make_family(selected_families(cfg, false).front());
  std::string map_name = cfg.map.empty() ? (sys.autonomous ? "s-auto" : "s-nonauto") : cfg.map;
  hamfam::BirationalMap map = hamfam::map_by_name(map_name, sys, cfg.branch);
  auto params = numeric_params(sys, cfg);
  if (cfg.power < 0) throw UsageError("--power must be non-negative");

  std::complex<double> q = cfg.q0, p = cfg.p0, t = cfg.t0;
  std::vector<std::complex<double>> theta = params.values;
  for (int k = 0; k < cfg.power; ++k) {
    if (!(std::abs(q) > hamfam::kDefaultQFloor)) {
      throw UsageError("q lies inside the singularity floor; the map divides by q");
    }
    auto img = hamfam::apply_numeric(map, q, p, t, theta);
    q = img.q;
    p = img.p;
    t = img.t;
    theta = img.params;
  }

  json report{{"schema", 1},
              {"command", "symmetry"},
              {"family", sys.family.name()},
              {"map", map.str()},
              {"power", cfg.power},
              {"input",
               {{"q", hamfam::format_complex(cfg.q0)},
                {"p", hamfam::format_complex(cfg.p0)},
                {"t", hamfam::format_complex(cfg.t0)},
                {"params", named_params(*sys.vars, params.values)}}},
              {"image",
               {{"q", hamfam::format_complex(q)},
                {"p", hamfam::format_complex(p)},
                {"t", hamfam::format_complex(t)},
                {"params", named_params(*sys.vars, theta)}}}};

  int code = 0;
  if (cfg.check_trajectory) {
    hamfam::Trajectory traj;
    try {
      traj = hamfam::integrate(sys, params, cfg.q0, cfg.p0, settings_from(cfg));
    } catch (const hamfam::IntegrationError& e) {
      throw UsageError(e.what());
    }
    double residual = hamfam::check_symmetry_on_trajectory(traj, map, sys, params);
    bool ok = traj.termination == hamfam::Termination::Completed && residual <= kSymmetryTolerance;
    report["trajectory_check"] = {{"termination", hamfam::to_string(traj.termination)},
                                  {"samples", traj.size()},
                                  {"max_residual", residual},
                                  {"tolerance", kSymmetryTolerance},
                                  {"status", ok ? "PASS" : "FAIL"}};
    code = ok ? 0 : kExitFail;
  }
  std::cout << report.dump(2) << "\n";
  if (!cfg.out.empty()) {
    json file = report;
    file["metadata"] = metadata();
    write_file(cfg.out, file.dump(2) + "\n");
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial Hamiltonian families: exact verification, integration and symmetries"};
  app.require_subcommand(1);
  Flags flags;

  auto* verify = app.add_subcommand("verify", "run every exact certificate for a family");
  add_common(verify, flags);
  verify->add_option("--mutate", flags.mutate, "test hook: hamiltonian[:k] | ode[:k] | map[:k]")
      ->group("");

  auto* integrate = app.add_subcommand("integrate", "integrate Hamilton's equations and write a CSV");
  add_common(integrate, flags);
  integrate->add_option("--sweep", flags.sweep, "comma-separated step sizes for an order sweep");

  auto* symmetry = app.add_subcommand("symmetry", "apply a birational symmetry to a numeric point");
  add_common(symmetry, flags);
  symmetry->add_option("--power", flags.power, "apply the map this many times");
  symmetry->add_flag("--check-trajectory", flags.check_trajectory, "integrate and check the mapped path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(merge(verify, flags), flags.mutate);
    if (integrate->parsed()) return cmd_integrate(merge(integrate, flags));
    if (symmetry->parsed()) return cmd_symmetry(merge(symmetry, flags));
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hamfam::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
