#include "hamfam/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hamfam {

SingularityError::SingularityError(double t_, complex q_, complex p_)
    : IntegrationError([&] {
        std::ostringstream os;
        os.precision(17);
        os << "stage point inside singularity floor at t=" << t_ << " q=" << q_ << " p=" << p_;
        return os.str();
      }()),
      t(t_),
      q(q_),
      p(p_) {}

NumericParams NumericParams::from_named(const VarTable& vars, const std::map<std::string, complex>& named) {
  NumericParams out;
  for (const auto& [name, value] : named) {
    auto i = vars.find(name);
    if (!i || vars.role(*i) != VarRole::Parameter) {
      throw std::invalid_argument("unknown parameter '" + name + "'");
    }
  }
  for (std::size_t i : vars.parameters()) {
    auto it = named.find(vars.name(i));
    if (it == named.end()) throw std::invalid_argument("parameter '" + vars.name(i) + "' is unbound");
    out.values.push_back(it->second);
  }
  return out;
}

std::vector<std::string> NumericParams::warnings(const VarTable& vars) const {
  std::vector<std::string> out;
  auto idx = vars.parameters();
  for (std::size_t k = 0; k < idx.size() && k < values.size(); ++k) {
    const std::string& name = vars.name(idx[k]);
    if (name.rfind("eta", 0) == 0 && values[k] == 0.0) {
      out.push_back(name + " = 0: the family is only claimed for nonzero eta");
    }
  }
  return out;
}

namespace {

complex ipow(complex x, int e) {
  if (e < 0) return 1.0 / ipow(x, -e);
  complex r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

}  // namespace

CompiledPoly::CompiledPoly(const LaurentPoly& a, const NumericParams& params) {
  const VarTable& vars = *a.vars();
  auto idx = vars.parameters();
  if (params.values.size() != idx.size()) throw std::invalid_argument("wrong number of parameters");
  std::map<std::array<int, 3>, complex, std::greater<>> acc;
  for (const auto& [m, c] : a.terms()) {
    complex coeff = c.to_complex();
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (m[idx[k]] != 0) coeff *= ipow(params.values[k], m[idx[k]]);
    }
    if (m[kQDot] != 0) throw std::invalid_argument("compiled polynomial must not involve qdot");
    acc[{m[kP], m[kT], m[kQ]}] += coeff;
  }
  for (const auto& [e, c] : acc) terms_.push_back({e, c});
}

complex CompiledPoly::horner(std::size_t begin, std::size_t end, std::size_t level,
                             const std::array<complex, 3>& x) const {
  if (level == 3) return terms_[begin].c;
  complex acc = 0.0;
  int prev = terms_[begin].exps[level];
  std::size_t k = begin;
  while (k < end) {
    int e = terms_[k].exps[level];
    std::size_t j = k;
    while (j < end && terms_[j].exps[level] == e) ++j;
    acc = acc * ipow(x[level], prev - e) + horner(k, j, level + 1, x);
    prev = e;
    k = j;
  }
  return acc * ipow(x[level], prev);
}

complex CompiledPoly::operator()(complex q, complex p, complex t) const {
  if (terms_.empty()) return 0.0;
  return horner(0, terms_.size(), 0, {p, t, q});
}

CompiledField::CompiledField(const HamSystem& sys, const NumericParams& params) {
  HamiltonEquations eq = hamilton_equations(sys);
  dq_ = CompiledPoly(eq.dq, params);
  dp_ = CompiledPoly(eq.dp, params);
  H_ = CompiledPoly(sys.H, params);
  dHdt_ = CompiledPoly(diff(sys.H, kT), params);
}

CompiledField compile_field(const HamSystem& sys, const NumericParams& params) {
  return CompiledField(sys, params);
}

namespace {

FieldValue stage(const CompiledField& f, complex q, complex p, double t, double floor) {
  if (!(std::abs(q) > floor)) throw SingularityError(t, q, p);
  return f(q, p, t);
}

bool finite(const State& s) {
  return std::isfinite(s.q.real()) && std::isfinite(s.q.imag()) && std::isfinite(s.p.real()) &&
         std::isfinite(s.p.imag());
}

constexpr double kBlowUp = 1e100;

}  // namespace

State step_rk4(const State& s, double t, double h, const CompiledField& field, double q_floor) {
  if (h == 0.0) return s;
  const double h2 = 0.5 * h;
  FieldValue k1 = stage(field, s.q, s.p, t, q_floor);
  FieldValue k2 = stage(field, s.q + h2 * k1.dq, s.p + h2 * k1.dp, t + h2, q_floor);
  FieldValue k3 = stage(field, s.q + h2 * k2.dq, s.p + h2 * k2.dp, t + h2, q_floor);
  FieldValue k4 = stage(field, s.q + h * k3.dq, s.p + h * k3.dp, t + h, q_floor);
  const double w = h / 6.0;
  return {s.q + w * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq),
          s.p + w * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp)};
}

std::string to_string(Method m) { return m == Method::FixedRK4 ? "rk4" : "rk45"; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Completed:
      return "completed";
    case Termination::Singularity:
      return "singularity";
    case Termination::StepUnderflow:
      return "step-underflow";
    case Termination::Overflow:
      return "overflow";
  }
  return {};
}

Method parse_method(const std::string& text) {
  if (text == "rk4" || text == "fixed-rk4") return Method::FixedRK4;
  if (text == "rk45" || text == "adaptive-rk45") return Method::AdaptiveRK45;
  throw std::invalid_argument("unknown method '" + text + "'");
}

namespace {

struct Recorder {
  Trajectory& traj;
  const CompiledField& field;

  void push(double t, const State& s) {
    traj.times.push_back(t);
    traj.q.push_back(s.q);
    traj.p.push_back(s.p);
    traj.H.push_back(field.hamiltonian(s.q, s.p, t));
  }
};

// Returns false when the state is unusable; the trajectory is then closed.
bool accept_state(Trajectory& traj, const State& s, double t) {
  if (!finite(s) || std::abs(s.q) > kBlowUp || std::abs(s.p) > kBlowUp) {
    traj.termination = Termination::Overflow;
    std::ostringstream os;
    os.precision(17);
    os << "state left the representable range after t=" << t;
    traj.message = os.str();
    return false;
  }
  return true;
}

void run_fixed(Trajectory& traj, Recorder& rec, const CompiledField& field, State s,
               const IntegrationSettings& cfg) {
  const double span = cfg.t1 - cfg.t0;
  if (span == 0.0) return;
  if (!(cfg.h > 0.0)) throw IntegrationError("step size must be positive");
  double ratio = span / cfg.h;
  auto steps = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio)) {
    steps = static_cast<std::size_t>(std::ceil(ratio));
  }
  if (steps > cfg.max_steps) throw IntegrationError("too many steps requested");
  double t = cfg.t0;
  for (std::size_t k = 1; k <= steps; ++k) {
    double t_next = k == steps ? cfg.t1 : cfg.t0 + static_cast<double>(k) * cfg.h;
    State next;
    try {
      next = step_rk4(s, t, t_next - t, field, cfg.q_floor);
    } catch (const SingularityError& e) {
      traj.termination = Termination::Singularity;
      traj.message = e.what();
      return;
    }
    if (!accept_state(traj, next, t)) return;
    s = next;
    t = t_next;
    rec.push(t, s);
  }
}

// Dormand-Prince 5(4).
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kE[7] = {71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525,
                          -1.0 / 40};

void run_adaptive(Trajectory& traj, Recorder& rec, const CompiledField& field, State s,
                  const IntegrationSettings& cfg) {
  const double span = cfg.t1 - cfg.t0;
  if (span == 0.0) return;
  const double h_max = span / 10.0;
  double h = std::clamp(cfg.h > 0.0 ? cfg.h : span / 100.0, cfg.h_min, h_max);
  double t = cfg.t0;
  double err_prev = 1e-4;
  constexpr double kSafety = 0.9, kAlpha = 0.17, kBeta = 0.04;

  std::size_t steps = 0;
  while (t < cfg.t1) {
    if (++steps > cfg.max_steps) throw IntegrationError("adaptive integration exceeded max_steps");
    bool last = t + h >= cfg.t1;
    if (last) h = cfg.t1 - t;

    FieldValue k[7];
    State next;
    try {
      k[0] = stage(field, s.q, s.p, t, cfg.q_floor);
      for (int i = 1; i < 7; ++i) {
        complex dq = 0.0, dp = 0.0;
        for (int j = 0; j < i; ++j) {
          dq += kA[i][j] * k[j].dq;
          dp += kA[i][j] * k[j].dp;
        }
        k[i] = stage(field, s.q + h * dq, s.p + h * dp, t + kC[i] * h, cfg.q_floor);
      }
    } catch (const SingularityError& e) {
      traj.termination = Termination::Singularity;
      traj.message = e.what();
      return;
    }
    complex dq = 0.0, dp = 0.0, eq = 0.0, ep = 0.0;
    for (int j = 0; j < 6; ++j) {
      dq += kA[6][j] * k[j].dq;
      dp += kA[6][j] * k[j].dp;
    }
    for (int j = 0; j < 7; ++j) {
      eq += kE[j] * k[j].dq;
      ep += kE[j] * k[j].dp;
    }
    next = {s.q + h * dq, s.p + h * dp};
    eq *= h;
    ep *= h;

    auto scaled = [&](double err, double a, double b) { return err / (cfg.atol + cfg.rtol * std::max(a, b)); };
    double e2 = 0.0;
    e2 += std::pow(scaled(std::abs(eq.real()), std::abs(s.q.real()), std::abs(next.q.real())), 2);
    e2 += std::pow(scaled(std::abs(eq.imag()), std::abs(s.q.imag()), std::abs(next.q.imag())), 2);
    e2 += std::pow(scaled(std::abs(ep.real()), std::abs(s.p.real()), std::abs(next.p.real())), 2);
    e2 += std::pow(scaled(std::abs(ep.imag()), std::abs(s.p.imag()), std::abs(next.p.imag())), 2);
    double err = std::sqrt(e2 / 4.0);

    if (!std::isfinite(err)) {
      if (!accept_state(traj, next, t)) return;
      err = 1e10;
    }
    if (err <= 1.0) {
      if (!accept_state(traj, next, t)) return;
      s = next;
      t = last ? cfg.t1 : t + h;
      rec.push(t, s);
      double fac = kSafety * std::pow(std::max(err, 1e-10), -kAlpha) * std::pow(err_prev, kBeta);
      err_prev = std::max(err, 1e-4);
      h = std::min(h * std::clamp(fac, 0.2, 10.0), h_max);
    } else {
      double fac = kSafety * std::pow(err, -kAlpha);
      h *= std::clamp(fac, 0.2, 1.0);
    }
    if (t < cfg.t1 && h < cfg.h_min) {
      traj.termination = Termination::StepUnderflow;
      std::ostringstream os;
      os.precision(17);
      os << "step size fell below " << cfg.h_min << " at t=" << t;
      traj.message = os.str();
      return;
    }
  }
}

}  // namespace

Trajectory integrate(const HamSystem& sys, const NumericParams& params, complex q0, complex p0,
                     const IntegrationSettings& settings) {
  if (!std::isfinite(settings.t0) || !std::isfinite(settings.t1) || settings.t1 < settings.t0) {
    throw IntegrationError("time span must be finite with t1 >= t0");
  }
  if (!(std::abs(q0) > settings.q_floor)) {
    throw IntegrationError("initial q lies inside the singularity floor");
  }
  CompiledField field(sys, params);
  Trajectory traj;
  traj.autonomous = sys.autonomous;
  Recorder rec{traj, field};
  State s{q0, p0};
  rec.push(settings.t0, s);

  if (settings.method == Method::FixedRK4) {
    run_fixed(traj, rec, field, s, settings);
  } else {
    run_adaptive(traj, rec, field, s, settings);
  }

  traj.drift_trace.assign(traj.size(), 0.0);
  if (sys.autonomous) {
    for (std::size_t k = 0; k < traj.size(); ++k) traj.drift_trace[k] = std::abs(traj.H[k] - traj.H[0]);
  } else if (traj.size() > 1) {
    auto fd = finite_difference(traj.times, traj.H);
    for (std::size_t k = 0; k < traj.size(); ++k) {
      traj.drift_trace[k] = std::abs(fd[k] - field.partial_t(traj.q[k], traj.p[k], traj.times[k]));
    }
  }
  traj.drift = traj.drift_trace.empty() ? 0.0 : *std::max_element(traj.drift_trace.begin(), traj.drift_trace.end());
  return traj;
}

namespace {

// Weights for the first derivative at z from nodes x[0..n).
std::vector<double> fornberg_first(double z, const double* x, int n) {
  std::vector<std::array<double, 2>> c(n, {0.0, 0.0});
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, 1);
    double c2 = 1.0, c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

}  // namespace

std::vector<complex> finite_difference(const std::vector<double>& times, const std::vector<complex>& values,
                                       int points) {
  const std::size_t n = times.size();
  if (values.size() != n) throw std::invalid_argument("finite_difference: size mismatch");
  if (n < 2) throw std::invalid_argument("finite_difference: need at least two samples");
  const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(std::max(points, 2)), n);
  std::vector<complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t lo = k >= m / 2 ? k - m / 2 : 0;
    lo = std::min(lo, n - m);
    auto w = fornberg_first(times[k], times.data() + lo, static_cast<int>(m));
    complex d = 0.0;
    for (std::size_t j = 0; j < m; ++j) d += w[j] * values[lo + j];
    out[k] = d;
  }
  return out;
}

std::vector<double> dHdt_relative_error(const Trajectory& traj, const CompiledField& field) {
  auto fd = finite_difference(traj.times, traj.H);
  std::vector<double> out(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    complex exact = field.partial_t(traj.q[k], traj.p[k], traj.times[k]);
    out[k] = std::abs(fd[k] - exact) / std::abs(exact);
  }
  return out;
}

double check_symmetry_on_trajectory(const Trajectory& traj, const BirationalMap& map, const HamSystem& sys,
                                    const NumericParams& params, double q_floor) {
  if (!(*map.vars == *sys.vars)) throw std::invalid_argument("map and system use different tables");
  if (traj.size() < 2) throw IntegrationError("trajectory too short for finite differences");
  const std::size_t n = traj.size();
  std::vector<complex> Q(n), P(n), T(n);
  std::vector<complex> mapped_params = map.params.apply(params.values);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(std::abs(traj.q[k]) > q_floor)) throw IntegrationError("trajectory sample inside the singularity floor");
    MappedPoint img = apply_numeric(map, traj.q[k], traj.p[k], traj.times[k], params.values);
    Q[k] = img.q;
    P[k] = img.p;
    T[k] = img.t;
  }
  LaurentPoly rate = diff(map.t_rule, kT);
  if (!rate.is_constant() || rate.is_zero()) throw IntegrationError("dT/dt must be a nonzero constant");
  complex dTdt = rate.terms().begin()->second.to_complex();

  CompiledField image_field(sys, NumericParams{mapped_params});
  auto dQ = finite_difference(traj.times, Q);
  auto dP = finite_difference(traj.times, P);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    FieldValue f = image_field(Q[k], P[k], T[k]);
    worst = std::max({worst, std::abs(dQ[k] / dTdt - f.dq), std::abs(dP[k] / dTdt - f.dp)});
  }
  return worst;
}

ConvergenceSweep drift_convergence(const HamSystem& sys, const NumericParams& params, complex q0, complex p0,
                                   IntegrationSettings settings, const std::vector<double>& steps) {
  ConvergenceSweep out;
  settings.method = Method::FixedRK4;
  for (double h : steps) {
    settings.h = h;
    Trajectory traj = integrate(sys, params, q0, p0, settings);
    out.steps.push_back(h);
    out.drifts.push_back(traj.drift);
    out.terminations.push_back(traj.termination);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  bool usable = steps.size() >= 2;
  for (std::size_t i = 0; i < out.drifts.size(); ++i) {
    usable = usable && out.drifts[i] > 0.0 && out.terminations[i] == Termination::Completed;
  }
  for (std::size_t i = 0; i + 1 < out.drifts.size(); ++i) {
    out.pairwise_orders.push_back(usable ? std::log(out.drifts[i] / out.drifts[i + 1]) /
                                               std::log(out.steps[i] / out.steps[i + 1])
                                         : nan);
  }
  if (!usable) {
    out.order = nan;
    return out;
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    mx += std::log(out.steps[i]);
    my += std::log(out.drifts[i]);
  }
  mx /= static_cast<double>(steps.size());
  my /= static_cast<double>(steps.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    double dx = std::log(out.steps[i]) - mx;
    sxy += dx * (std::log(out.drifts[i]) - my);
    sxx += dx * dx;
  }
  out.order = sxy / sxx;
  return out;
}

}  // namespace hamfam
