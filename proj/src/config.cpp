#include "hamfam/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hamfam {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

int parse_int(const std::string& text) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ConfigError("not an integer: '" + text + "'");
  return v;
}

}  // namespace

double parse_double(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty number");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != t.size()) throw ConfigError("not a number: '" + text + "'");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::complex<double> parse_complex(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t.empty()) throw ConfigError("empty complex literal");
  if (t.back() != 'i' && t.back() != 'j') return {parse_double(t), 0.0};

  // Split at the last sign that is not part of an exponent and not leading.
  std::string body = t.substr(0, t.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (cut == std::string::npos) return {0.0, imag_part(body)};
  return {parse_double(body.substr(0, cut)), imag_part(body.substr(cut))};
}

std::string format_complex(std::complex<double> z) {
  std::string im = format_double(z.imag());
  if (im[0] != '-') im = "+" + im;
  return format_double(z.real()) + im + "i";
}

std::map<std::string, std::complex<double>> parse_param_list(const std::string& text) {
  std::map<std::string, std::complex<double>> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("expected name=value in '" + item + "'");
    std::string key = trim(item.substr(0, eq));
    if (key.empty()) throw ConfigError("empty parameter name");
    if (out.count(key)) throw ConfigError("parameter '" + key + "' given twice");
    out[key] = parse_complex(item.substr(eq + 1));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double(item));
  return out;
}

std::pair<int, int> parse_n_range(const std::string& text) {
  std::string t = trim(text);
  auto dots = t.find("..");
  int lo = 0, hi = 0;
  if (dots == std::string::npos) {
    lo = hi = parse_int(t);
  } else {
    lo = parse_int(t.substr(0, dots));
    hi = parse_int(t.substr(dots + 2));
  }
  if (lo > hi) throw ConfigError("empty n range '" + text + "'");
  return {lo, hi};
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::string full = section.empty() ? key : section + "." + key;
    auto bad = [&] { return ConfigError("line " + std::to_string(lineno) + ": unknown key '" + full + "'"); };

    if (section == "params") {
      cfg.params[key] = parse_complex(value);
    } else if (full == "run.command") {
      cfg.command = value;
    } else if (full == "family.name") {
      cfg.family = value;
    } else if (full == "family.n") {
      cfg.n = value;
    } else if (full == "map.name") {
      cfg.map = value;
    } else if (full == "map.branch") {
      cfg.branch = parse_int(value);
    } else if (full == "map.power") {
      cfg.power = parse_int(value);
    } else if (full == "map.check_trajectory") {
      if (value != "true" && value != "false") throw ConfigError("expected true/false for " + full);
      cfg.check_trajectory = value == "true";
    } else if (full == "integrate.method") {
      cfg.method = value;
    } else if (full == "integrate.h") {
      cfg.h = parse_double(value);
    } else if (full == "integrate.tol") {
      cfg.tol = parse_double(value);
    } else if (full == "integrate.t0") {
      cfg.t0 = parse_double(value);
    } else if (full == "integrate.t1") {
      cfg.t1 = parse_double(value);
    } else if (full == "integrate.q0") {
      cfg.q0 = parse_complex(value);
    } else if (full == "integrate.p0") {
      cfg.p0 = parse_complex(value);
    } else if (full == "integrate.sweep") {
      cfg.sweep = parse_double_list(value);
    } else if (full == "output.out") {
      cfg.out = value;
    } else {
      throw bad();
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_canonical_text(const RunConfig& cfg) {
  std::ostringstream os;
  os << "[run]\ncommand = " << cfg.command << "\n\n";
  os << "[family]\nname = " << cfg.family << "\nn = " << cfg.n << "\n\n";
  os << "[params]\n";
  for (const auto& [k, v] : cfg.params) os << k << " = " << format_complex(v) << "\n";
  os << "\n[map]\nname = " << cfg.map << "\nbranch = " << cfg.branch << "\npower = " << cfg.power
     << "\ncheck_trajectory = " << (cfg.check_trajectory ? "true" : "false") << "\n\n";
  os << "[integrate]\nmethod = " << cfg.method << "\nh = " << format_double(cfg.h)
     << "\ntol = " << format_double(cfg.tol) << "\nt0 = " << format_double(cfg.t0)
     << "\nt1 = " << format_double(cfg.t1) << "\nq0 = " << format_complex(cfg.q0)
     << "\np0 = " << format_complex(cfg.p0) << "\nsweep = ";
  for (std::size_t i = 0; i < cfg.sweep.size(); ++i) os << (i ? "," : "") << format_double(cfg.sweep[i]);
  os << "\n\n[output]\nout = " << cfg.out << "\n";
  return os.str();
}

}  // namespace hamfam
