#include "hamfam/symmetry.hpp"

#include <charconv>

namespace hamfam {

AffineParamMap AffineParamMap::identity(std::size_t dim) {
  AffineParamMap m;
  m.matrix.assign(dim, std::vector<Cyclo>(dim));
  m.offset.assign(dim, Cyclo());
  for (std::size_t i = 0; i < dim; ++i) m.matrix[i][i] = Cyclo(1);
  return m;
}

bool AffineParamMap::is_identity() const { return *this == identity(dim()); }

AffineParamMap AffineParamMap::then(const AffineParamMap& next) const {
  if (next.dim() != dim()) throw AlgebraError("parameter maps differ in dimension");
  const std::size_t d = dim();
  AffineParamMap out;
  out.matrix.assign(d, std::vector<Cyclo>(d));
  out.offset = next.offset;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      if (next.matrix[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) out.matrix[i][j] += next.matrix[i][k] * matrix[k][j];
      out.offset[i] += next.matrix[i][k] * offset[k];
    }
  }
  return out;
}

AffineParamMap AffineParamMap::inverse() const {
  // Gauss-Jordan on [M | I] over Q(z8).
  const std::size_t d = dim();
  std::vector<std::vector<Cyclo>> a = matrix;
  AffineParamMap inv = identity(d);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && a[pivot][col].is_zero()) ++pivot;
    if (pivot == d) throw AlgebraError("parameter map is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv.matrix[pivot], inv.matrix[col]);
    Cyclo scale = a[col][col].inverse();
    for (std::size_t j = 0; j < d; ++j) {
      a[col][j] *= scale;
      inv.matrix[col][j] *= scale;
    }
    for (std::size_t row = 0; row < d; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      Cyclo f = a[row][col];
      for (std::size_t j = 0; j < d; ++j) {
        a[row][j] -= f * a[col][j];
        inv.matrix[row][j] -= f * inv.matrix[col][j];
      }
    }
  }
  // x = M^-1 (y - v)
  for (std::size_t i = 0; i < d; ++i) {
    Cyclo s;
    for (std::size_t j = 0; j < d; ++j) s -= inv.matrix[i][j] * offset[j];
    inv.offset[i] = s;
  }
  return inv;
}

Bindings AffineParamMap::bindings(const VarTablePtr& vars) const {
  auto idx = vars->parameters();
  if (idx.size() != dim()) throw AlgebraError("parameter map does not match variable table");
  Bindings out;
  for (std::size_t i = 0; i < dim(); ++i) {
    LaurentPoly image = LaurentPoly::constant(vars, offset[i]);
    for (std::size_t j = 0; j < dim(); ++j) {
      if (!matrix[i][j].is_zero()) image += LaurentPoly::variable(vars, idx[j]) * matrix[i][j];
    }
    out.emplace(idx[i], std::move(image));
  }
  return out;
}

std::vector<std::complex<double>> AffineParamMap::apply(
    const std::vector<std::complex<double>>& params) const {
  if (params.size() != dim()) throw AlgebraError("parameter vector has wrong length");
  std::vector<std::complex<double>> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    std::complex<double> s = offset[i].to_complex();
    for (std::size_t j = 0; j < dim(); ++j) s += matrix[i][j].to_complex() * params[j];
    out[i] = s;
  }
  return out;
}

std::string BirationalMap::str() const {
  std::string out = name + ": q -> " + q_rule.str() + "; p -> " + p_rule.str() + "; t -> " + t_rule.str();
  auto idx = vars->parameters();
  auto b = params.bindings(vars);
  for (std::size_t i : idx) out += "; " + vars->name(i) + " -> " + b.at(i).str();
  return out;
}

BirationalMap identity_map(const VarTablePtr& vars) {
  return {"id",
          vars,
          LaurentPoly::variable(vars, kQ),
          LaurentPoly::variable(vars, kP),
          LaurentPoly::variable(vars, kT),
          AffineParamMap::identity(vars->parameters().size())};
}

namespace {

AffineParamMap negation(std::size_t dim) {
  AffineParamMap m = AffineParamMap::identity(dim);
  for (std::size_t i = 0; i < dim; ++i) m.matrix[i][i] = Cyclo(-1);
  return m;
}

}  // namespace

BirationalMap autonomous_map(const HamSystem& sys) {
  if (!sys.autonomous) throw std::invalid_argument("autonomous_map: family is not autonomous");
  const VarTablePtr& vars = sys.vars;
  auto v = [&](const std::string& name, int e = 1) { return LaurentPoly::variable(vars, name, e); };
  LaurentPoly p_rule = v("p") + v("alpha") * v("q", -1);
  std::string name;
  if (sys.family.kind == FamilyKind::Autonomous5) {
    p_rule += v("eta1") * v("q", -2) + v("eta2") * v("q", -5);
    name = "s-auto:5";
  } else {
    const int n = sys.family.n;
    for (int i = 1; i < n; ++i) p_rule += v("eta" + std::to_string(i)) * v("q", -(i + 1));
    name = "s-auto:" + std::to_string(n);
  }
  return {name, vars, v("q"), std::move(p_rule), v("t"), negation(vars->parameters().size())};
}

BirationalMap autonomous_map(int n) { return autonomous_map(make_general_n(n)); }

BirationalMap nonautonomous_map(int branch) {
  if (branch % 2 == 0) {
    throw std::invalid_argument("nonautonomous_map: branch must be odd (a primitive 8th root)");
  }
  auto vars = family_table({FamilyKind::NonAutonomous3, 5});
  auto v = [&](const std::string& name, int e = 1) { return LaurentPoly::variable(vars, name, e); };
  const Cyclo r = Cyclo::zeta_power(branch);

  LaurentPoly shear = v("p") + v("alpha1") * v("q", -1) + v("t") * v("q", -2) + v("q", -5);
  AffineParamMap params;
  // (alpha1, alpha2, alpha3) -> (-alpha1, 1 - alpha2, alpha3 - alpha1)
  params.matrix = {{Cyclo(-1), Cyclo(0), Cyclo(0)},
                   {Cyclo(0), Cyclo(-1), Cyclo(0)},
                   {Cyclo(-1), Cyclo(0), Cyclo(1)}};
  params.offset = {Cyclo(0), Cyclo(1), Cyclo(0)};
  return {"s-nonauto",
          vars,
          v("q") * (-r),
          shear * (-r.inverse()),
          v("t") * r,
          std::move(params)};
}

BirationalMap map_by_name(const std::string& name, const HamSystem& sys, int branch) {
  if (name == "s-nonauto") {
    if (sys.family.kind != FamilyKind::NonAutonomous3) {
      throw std::invalid_argument("map s-nonauto applies to family nonautonomous3");
    }
    return nonautonomous_map(branch);
  }
  if (name == "s-auto" || name.rfind("s-auto:", 0) == 0) {
    if (!sys.autonomous) throw std::invalid_argument("map s-auto needs an autonomous family");
    if (name != "s-auto") {
      std::string digits = name.substr(7);
      int n = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || n != sys.family.n) {
        throw std::invalid_argument("map '" + name + "' does not match family " + sys.family.name());
      }
    }
    return autonomous_map(sys);
  }
  throw std::invalid_argument("unknown map '" + name + "'");
}

namespace {

Bindings full_bindings(const BirationalMap& map) {
  Bindings b = map.params.bindings(map.vars);
  b.emplace(kQ, map.q_rule);
  b.emplace(kP, map.p_rule);
  b.emplace(kT, map.t_rule);
  return b;
}

}  // namespace

LaurentPoly apply(const BirationalMap& map, const LaurentPoly& a) {
  return substitute(a, full_bindings(map));
}

BirationalMap compose(const BirationalMap& a, const BirationalMap& b) {
  if (!(*a.vars == *b.vars)) throw AlgebraError("compose: variable table mismatch");
  Bindings first = full_bindings(a);
  return {b.name + " o " + a.name,
          a.vars,
          substitute(b.q_rule, first),
          substitute(b.p_rule, first),
          substitute(b.t_rule, first),
          a.params.then(b.params)};
}

BirationalMap power(const BirationalMap& map, int k) {
  if (k < 0) return power(inverse(map), -k);
  BirationalMap out = identity_map(map.vars);
  for (int i = 0; i < k; ++i) out = compose(out, map);
  out.name = map.name + "^" + std::to_string(k);
  return out;
}

bool is_identity(const BirationalMap& map) {
  return map.q_rule == LaurentPoly::variable(map.vars, kQ) &&
         map.p_rule == LaurentPoly::variable(map.vars, kP) &&
         map.t_rule == LaurentPoly::variable(map.vars, kT) && map.params.is_identity();
}

std::optional<int> group_order(const BirationalMap& map, int max_order) {
  BirationalMap acc = identity_map(map.vars);
  for (int k = 1; k <= max_order; ++k) {
    acc = compose(acc, map);
    if (is_identity(acc)) return k;
  }
  return std::nullopt;
}

namespace {

// Constant c with rule == c * var, or nullopt.
std::optional<Cyclo> scaling_of(const LaurentPoly& rule, std::size_t var) {
  if (rule.size() != 1) return std::nullopt;
  const auto& [m, c] = *rule.terms().begin();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] != (i == var ? 1 : 0)) return std::nullopt;
  }
  return c;
}

}  // namespace

ResolvedRules resolve(const BirationalMap& map) {
  auto cq = scaling_of(map.q_rule, kQ);
  auto ct = scaling_of(map.t_rule, kT);
  if (!cq || !ct) throw AlgebraError("map is not resolvable: q and t rules must be scalings");
  if (map.p_rule.max_exponent(kP) != 1) throw AlgebraError("map is not resolvable: p rule must be affine in p");
  LaurentPoly slope = map.p_rule.coefficient_of(kP, 1);
  if (!slope.is_constant() || slope.is_zero()) {
    throw AlgebraError("map is not resolvable: p rule must have a constant slope");
  }
  Cyclo b = slope.terms().begin()->second;
  LaurentPoly rest = map.p_rule.coefficient_of(kP, 0);

  const VarTablePtr& vars = map.vars;
  ResolvedRules r{LaurentPoly::variable(vars, kQ) * cq->inverse(), LaurentPoly(vars),
                  LaurentPoly::variable(vars, kT) * ct->inverse()};
  LaurentPoly rest_back = substitute(rest, {{kQ, r.q}, {kT, r.t}});
  r.p = (LaurentPoly::variable(vars, kP) - rest_back) * b.inverse();
  return r;
}

BirationalMap inverse(const BirationalMap& map) {
  ResolvedRules r = resolve(map);
  AffineParamMap inv_params = map.params.inverse();
  Bindings back = inv_params.bindings(map.vars);
  return {map.name + "^-1", map.vars, substitute(r.q, back), substitute(r.p, back),
          substitute(r.t, back), std::move(inv_params)};
}

LaurentPoly pushforward_H(const BirationalMap& map, const HamSystem& sys) {
  if (!(*map.vars == *sys.vars)) throw AlgebraError("pushforward_H: variable table mismatch");
  ResolvedRules r = resolve(map);
  return substitute(sys.H, {{kQ, r.q}, {kP, r.p}, {kT, r.t}});
}

LaurentPoly apply_param_rule(const BirationalMap& map, const LaurentPoly& a) {
  return substitute(a, map.params.bindings(map.vars));
}

std::string InvarianceResidual::str() const {
  if (kind == Kind::Hamiltonian) return first.str();
  return "(" + first.str() + ", " + second.str() + ")";
}

InvarianceResidual verify_invariance(const BirationalMap& map, const HamSystem& sys) {
  if (!(*map.vars == *sys.vars)) throw AlgebraError("verify_invariance: variable table mismatch");
  const VarTablePtr& vars = sys.vars;
  LaurentPoly mapped_H = apply_param_rule(map, sys.H);

  if (sys.autonomous && map.t_rule == LaurentPoly::variable(vars, kT)) {
    return {InvarianceResidual::Kind::Hamiltonian, pushforward_H(map, sys) - mapped_H,
            LaurentPoly(vars)};
  }

  LaurentPoly rate = diff(map.t_rule, kT);
  if (!rate.is_constant() || rate.is_zero() || !diff(map.t_rule, kQ).is_zero() ||
      !diff(map.t_rule, kP).is_zero()) {
    throw AlgebraError("verify_invariance: dT/dt must be a nonzero constant");
  }
  Cyclo inv_rate = rate.terms().begin()->second.inverse();

  HamiltonEquations eq = hamilton_equations(sys);
  auto along_flow = [&](const LaurentPoly& rule) {
    return (diff(rule, kQ) * eq.dq + diff(rule, kP) * eq.dp + diff(rule, kT)) * inv_rate;
  };
  Bindings to_image{{kQ, map.q_rule}, {kP, map.p_rule}, {kT, map.t_rule}};
  LaurentPoly dHdP = substitute(diff(mapped_H, kP), to_image);
  LaurentPoly dHdQ = substitute(diff(mapped_H, kQ), to_image);
  return {InvarianceResidual::Kind::ChainRule, along_flow(map.q_rule) - dHdP,
          along_flow(map.p_rule) + dHdQ};
}

LaurentPoly jacobian_determinant(const BirationalMap& map) {
  return diff(map.q_rule, kQ) * diff(map.p_rule, kP) - diff(map.q_rule, kP) * diff(map.p_rule, kQ);
}

MappedPoint apply_numeric(const BirationalMap& map, std::complex<double> q, std::complex<double> p,
                          std::complex<double> t, const std::vector<std::complex<double>>& params) {
  auto idx = map.vars->parameters();
  if (params.size() != idx.size()) throw AlgebraError("apply_numeric: wrong number of parameters");
  NumericPoint pt(map.vars);
  pt.set(kQ, q).set(kP, p).set(kT, t);
  for (std::size_t i = 0; i < idx.size(); ++i) pt.set(idx[i], params[i]);
  return {eval_numeric(map.q_rule, pt), eval_numeric(map.p_rule, pt), eval_numeric(map.t_rule, pt),
          map.params.apply(params)};
}

}  // namespace hamfam
