#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamfam/hamiltonian.hpp"
#include "hamfam/symmetry.hpp"

namespace hamfam {

using complex = std::complex<double>;

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a Runge-Kutta stage lands inside the |q| floor.
class SingularityError : public IntegrationError {
 public:
  SingularityError(double t, complex q, complex p);
  double t;
  complex q, p;
};

/// Numeric values for every parameter of a family, in table order.
struct NumericParams {
  std::vector<complex> values;

  /// Every parameter of the table must be given; unknown names are rejected.
  static NumericParams from_named(const VarTable& vars, const std::map<std::string, complex>& named);
  /// Nonzero eta values are required for the families to be nondegenerate;
  /// zero ones are reported, not rejected.
  std::vector<std::string> warnings(const VarTable& vars) const;
};

/// A polynomial in (q, p, t) with complex coefficients, evaluated by nested
/// Horner in p, then t, then q.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const LaurentPoly& a, const NumericParams& params);
  complex operator()(complex q, complex p, complex t) const;
  std::size_t size() const { return terms_.size(); }

 private:
  struct Term {
    std::array<int, 3> exps;  // p, t, q
    complex c;
  };
  complex horner(std::size_t begin, std::size_t end, std::size_t level,
                 const std::array<complex, 3>& x) const;
  std::vector<Term> terms_;
};

struct FieldValue {
  complex dq, dp;
};

/// Hamilton's vector field with derivatives taken symbolically once and the
/// parameters bound.
class CompiledField {
 public:
  CompiledField(const HamSystem& sys, const NumericParams& params);
  FieldValue operator()(complex q, complex p, complex t) const { return {dq_(q, p, t), dp_(q, p, t)}; }
  complex hamiltonian(complex q, complex p, complex t) const { return H_(q, p, t); }
  complex partial_t(complex q, complex p, complex t) const { return dHdt_(q, p, t); }

 private:
  CompiledPoly dq_, dp_, H_, dHdt_;
};

CompiledField compile_field(const HamSystem& sys, const NumericParams& params);

struct State {
  complex q, p;
};

inline constexpr double kDefaultQFloor = 1e-8;

/// Classical fourth-order Runge-Kutta step. Throws SingularityError if any
/// stage has |q| <= q_floor.
State step_rk4(const State& s, double t, double h, const CompiledField& field,
               double q_floor = kDefaultQFloor);

enum class Method { FixedRK4, AdaptiveRK45 };
enum class Termination { Completed, Singularity, StepUnderflow, Overflow };

std::string to_string(Method m);
std::string to_string(Termination t);
Method parse_method(const std::string& text);

struct IntegrationSettings {
  Method method = Method::FixedRK4;
  double h = 1e-3;
  double rtol = 1e-9;
  double atol = 1e-9;
  double t0 = 0.0;
  double t1 = 1.0;
  double q_floor = kDefaultQFloor;
  double h_min = 1e-12;
  std::size_t max_steps = 50'000'000;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<complex> q, p, H;
  /// Per sample: |H - H(t0)| when autonomous, otherwise the defect between
  /// the finite-difference dH/dt and the compiled dH/dt.
  std::vector<double> drift_trace;
  double drift = 0.0;
  bool autonomous = true;
  Termination termination = Termination::Completed;
  std::string message;

  std::size_t size() const { return times.size(); }
};

/// Throws IntegrationError for a singular initial point or a bad time span.
Trajectory integrate(const HamSystem& sys, const NumericParams& params, complex q0, complex p0,
                     const IntegrationSettings& settings);

/// Derivative of sampled data on an arbitrary increasing grid using
/// Fornberg weights over the nearest `points` samples.
std::vector<complex> finite_difference(const std::vector<double>& times,
                                       const std::vector<complex>& values, int points = 5);

/// Per sample |FD dH/dt - dH/dt| / |dH/dt| along a trajectory.
std::vector<double> dHdt_relative_error(const Trajectory& traj, const CompiledField& field);

/// Maps every sample and measures how well the image path solves the image
/// system. Throws IntegrationError when a sample has |q| <= q_floor.
double check_symmetry_on_trajectory(const Trajectory& traj, const BirationalMap& map,
                                    const HamSystem& sys, const NumericParams& params,
                                    double q_floor = kDefaultQFloor);

struct ConvergenceSweep {
  std::vector<double> steps;
  std::vector<double> drifts;
  std::vector<Termination> terminations;
  /// log-log slope of drift against h between consecutive steps.
  std::vector<double> pairwise_orders;
  /// Least-squares slope over the whole sweep (NaN if any drift is zero).
  double order = 0.0;
};

ConvergenceSweep drift_convergence(const HamSystem& sys, const NumericParams& params, complex q0,
                                   complex p0, IntegrationSettings settings,
                                   const std::vector<double>& steps);

}  // namespace hamfam
