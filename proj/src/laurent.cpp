#include "hamfam/laurent.hpp"

#include <cstdlib>
#include <sstream>

namespace hamfam {

VarTable::VarTable(std::vector<std::string> names, std::vector<VarRole> roles, int degree_cap)
    : names_(std::move(names)), roles_(std::move(roles)), degree_cap_(degree_cap) {
  if (names_.size() != roles_.size()) {
    throw AlgebraError("VarTable: names and roles differ in length");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = i + 1; j < names_.size(); ++j) {
      if (names_[i] == names_[j]) throw AlgebraError("VarTable: duplicate variable " + names_[i]);
    }
  }
}

std::optional<std::size_t> VarTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VarTable::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw AlgebraError("unknown variable '" + name + "'");
  return *i;
}

std::vector<std::size_t> VarTable::parameters() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    if (roles_[i] == VarRole::Parameter) out.push_back(i);
  }
  return out;
}

int total_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += std::abs(e);
  return d;
}

LaurentPoly::LaurentPoly(VarTablePtr vars) : vars_(std::move(vars)) {
  if (!vars_) throw AlgebraError("LaurentPoly: null variable table");
}

LaurentPoly LaurentPoly::constant(VarTablePtr vars, const Cyclo& c) {
  LaurentPoly out(vars);
  out.add_term(Monomial(vars->size(), 0), c);
  return out;
}

LaurentPoly LaurentPoly::variable(VarTablePtr vars, std::size_t index, int exponent) {
  if (index >= vars->size()) throw AlgebraError("variable index out of range");
  Monomial m(vars->size(), 0);
  m[index] = exponent;
  return monomial(std::move(vars), Cyclo(1), std::move(m));
}

LaurentPoly LaurentPoly::variable(VarTablePtr vars, const std::string& name, int exponent) {
  std::size_t i = vars->index(name);
  return variable(std::move(vars), i, exponent);
}

LaurentPoly LaurentPoly::monomial(VarTablePtr vars, const Cyclo& c, Monomial m) {
  LaurentPoly out(std::move(vars));
  out.add_term(m, c);
  return out;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  for (int e : terms_.begin()->first) {
    if (e != 0) return false;
  }
  return true;
}

Cyclo LaurentPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Cyclo() : it->second;
}

void LaurentPoly::check_monomial(const Monomial& m) const {
  if (m.size() != vars_->size()) throw AlgebraError("monomial does not match variable table");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0 && !vars_->allows_negative(i)) {
      throw AlgebraError("negative exponent on non-Laurent variable '" + vars_->name(i) + "'");
    }
  }
  if (total_degree(m) > vars_->degree_cap()) {
    throw AlgebraError("degree cap " + std::to_string(vars_->degree_cap()) + " exceeded");
  }
}

void LaurentPoly::add_term(const Monomial& m, const Cyclo& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    check_monomial(m);
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void LaurentPoly::check_same_table(const LaurentPoly& o) const {
  if (vars_ != o.vars_ && !(*vars_ == *o.vars_)) {
    throw AlgebraError("variable table mismatch");
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(vars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same_table(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_same_table(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same_table(b);
  LaurentPoly out(a.vars_);
  Monomial m(a.vars_->size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Cyclo& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same_table(b);
  return a.terms_ == b.terms_;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly result = constant(vars_, Cyclo(1));
  LaurentPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

bool LaurentPoly::is_unit() const {
  if (terms_.size() != 1) return false;
  const Monomial& m = terms_.begin()->first;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] != 0 && !vars_->allows_negative(i)) return false;
  }
  return true;
}

LaurentPoly LaurentPoly::unit_inverse() const {
  if (!is_unit()) throw AlgebraError("division by a non-monomial (or non-invertible monomial)");
  const auto& [m, c] = *terms_.begin();
  Monomial inv(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) inv[i] = -m[i];
  return monomial(vars_, c.inverse(), std::move(inv));
}

int LaurentPoly::max_exponent(std::size_t var) const {
  if (terms_.empty()) return 0;
  int best = terms_.begin()->first.at(var);
  for (const auto& [m, c] : terms_) best = std::max(best, m[var]);
  return best;
}

int LaurentPoly::min_exponent(std::size_t var) const {
  if (terms_.empty()) return 0;
  int best = terms_.begin()->first.at(var);
  for (const auto& [m, c] : terms_) best = std::min(best, m[var]);
  return best;
}

LaurentPoly LaurentPoly::coefficient_of(std::size_t var, int e) const {
  LaurentPoly out(vars_);
  for (const auto& [m, c] : terms_) {
    if (m.at(var) != e) continue;
    Monomial stripped = m;
    stripped[var] = 0;
    out.add_term(stripped, c);
  }
  return out;
}

namespace {

std::string monomial_str(const VarTable& vars, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars.name(i);
    if (m[i] != 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono = monomial_str(*vars_, m);
    std::string term;
    bool negative = false;
    if (mono.empty()) {
      term = c.str();
      if (c.support() > 1) term = "(" + term + ")";
    } else if (c.support() == 1) {
      std::string cs = c.str();
      if (cs[0] == '-') {
        negative = true;
        cs.erase(0, 1);
      }
      term = cs == "1" ? mono : cs + "*" + mono;
    } else {
      term = "(" + c.str() + ")*" + mono;
    }
    if (negative) {
      out += out.empty() ? "-" : " - ";
    } else if (!out.empty()) {
      out += " + ";
    }
    out += term;
  }
  return out;
}

LaurentPoly diff(const LaurentPoly& a, std::size_t var) {
  LaurentPoly out(a.vars());
  for (const auto& [m, c] : a.terms()) {
    int e = m.at(var);
    if (e == 0) continue;
    Monomial d = m;
    d[var] = e - 1;
    out.add_term(d, c * Cyclo(static_cast<long>(e)));
  }
  return out;
}

LaurentPoly diff(const LaurentPoly& a, const std::string& var) {
  return diff(a, a.vars()->index(var));
}

LaurentPoly substitute(const LaurentPoly& a, const Bindings& bindings) {
  const VarTablePtr& vars = a.vars();
  if (bindings.empty()) return a;
  for (const auto& [v, poly] : bindings) {
    if (v >= vars->size()) throw AlgebraError("substitute: binding index out of range");
    if (!(*poly.vars() == *vars)) throw AlgebraError("substitute: variable table mismatch");
  }

  // Powers of each binding, computed lazily.
  std::map<std::pair<std::size_t, int>, LaurentPoly> cache;
  auto power_of = [&](std::size_t v, const LaurentPoly& b, int e) -> const LaurentPoly& {
    auto key = std::make_pair(v, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    LaurentPoly value = e >= 0 ? b.pow(static_cast<unsigned>(e))
                               : b.unit_inverse().pow(static_cast<unsigned>(-e));
    return cache.emplace(key, std::move(value)).first->second;
  };

  LaurentPoly out(vars);
  for (const auto& [m, c] : a.terms()) {
    Monomial free = m;
    LaurentPoly term(vars);
    bool have_factor = false;
    for (const auto& [v, b] : bindings) {
      int e = m[v];
      free[v] = 0;
      if (e == 0) continue;
      if (e < 0 && !b.is_unit()) {
        throw AlgebraError("substitute: '" + vars->name(v) +
                           "' appears with a negative exponent and is bound to a non-monomial");
      }
      const LaurentPoly& pw = power_of(v, b, e);
      if (!have_factor) {
        term = pw;
        have_factor = true;
      } else {
        term *= pw;
      }
    }
    LaurentPoly head = LaurentPoly::monomial(vars, c, free);
    out += have_factor ? head * term : head;
  }
  return out;
}

NumericPoint::NumericPoint(VarTablePtr vars) : vars_(std::move(vars)), values_(vars_->size()) {}

NumericPoint& NumericPoint::set(std::size_t index, std::complex<double> v) {
  values_.at(index) = v;
  return *this;
}

NumericPoint& NumericPoint::set(const std::string& name, std::complex<double> v) {
  return set(vars_->index(name), v);
}

std::complex<double> NumericPoint::at(std::size_t index) const {
  const auto& v = values_.at(index);
  if (!v) throw AlgebraError("unbound variable '" + vars_->name(index) + "'");
  return *v;
}

namespace {

std::complex<double> ipow(std::complex<double> x, int e) {
  if (e < 0) return 1.0 / ipow(x, -e);
  std::complex<double> r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

struct Flat {
  const Monomial* m;
  std::complex<double> c;
};

// Terms in [begin, end) share exponents of variables < var. Because the term
// map is lexicographically sorted, groups of equal exponent are contiguous.
std::complex<double> horner(const std::vector<Flat>& t, std::size_t begin, std::size_t end,
                            std::size_t var, const NumericPoint& point) {
  std::size_t nvars = point.vars()->size();
  while (var < nvars) {
    bool uniform = true;
    for (std::size_t k = begin; k < end; ++k) {
      if ((*t[k].m)[var] != 0) {
        uniform = false;
        break;
      }
    }
    if (!uniform) break;
    ++var;
  }
  if (var == nvars) {
    std::complex<double> s = 0.0;
    for (std::size_t k = begin; k < end; ++k) s += t[k].c;
    return s;
  }
  std::complex<double> x = point.at(var);
  std::complex<double> acc = 0.0;
  int prev = (*t[begin].m)[var];
  std::size_t k = begin;
  while (k < end) {
    int e = (*t[k].m)[var];
    std::size_t j = k;
    while (j < end && (*t[j].m)[var] == e) ++j;
    acc = acc * ipow(x, prev - e) + horner(t, k, j, var + 1, point);
    prev = e;
    k = j;
  }
  if (prev < 0 && x == 0.0) {
    throw AlgebraError("evaluation at " + point.vars()->name(var) + " = 0 with negative powers");
  }
  return acc * ipow(x, prev);
}

}  // namespace

std::complex<double> eval_numeric(const LaurentPoly& a, const NumericPoint& point) {
  if (!(*a.vars() == *point.vars())) throw AlgebraError("eval_numeric: variable table mismatch");
  if (a.is_zero()) return 0.0;
  std::vector<Flat> flat;
  flat.reserve(a.size());
  for (const auto& [m, c] : a.terms()) flat.push_back({&m, c.to_complex()});
  return horner(flat, 0, flat.size(), 0, point);
}

}  // namespace hamfam

namespace hamfam {

LaurentPoly translate(const LaurentPoly& a, VarTablePtr target,
                      const std::map<std::string, std::string>& rename) {
  const VarTable& src = *a.vars();
  std::vector<std::optional<std::size_t>> slot(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto it = rename.find(src.name(i));
    slot[i] = target->find(it == rename.end() ? src.name(i) : it->second);
  }
  LaurentPoly out(target);
  for (const auto& [m, c] : a.terms()) {
    Monomial t(target->size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!slot[i]) throw AlgebraError("translate: no slot for variable '" + src.name(i) + "'");
      t[*slot[i]] += m[i];
    }
    out.add_term(t, c);
  }
  return out;
}

LaurentPoly flip_term_sign(const LaurentPoly& a, std::size_t k) {
  if (k >= a.size()) throw AlgebraError("flip_term_sign: term index out of range");
  LaurentPoly out = a;
  auto it = std::next(a.terms().begin(), static_cast<std::ptrdiff_t>(k));
  out.add_term(it->first, -(it->second + it->second));
  return out;
}

}  // namespace hamfam
