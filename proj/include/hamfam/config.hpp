#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamfam {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts "1", "-2.5", "0.5i", "-i", "1-2i", "1e-3+4e-2i".
std::complex<double> parse_complex(const std::string& text);
/// "a+bi" with 17 significant digits.
std::string format_complex(std::complex<double> z);
std::string format_double(double v);
double parse_double(const std::string& text);

/// "alpha=1,eta1=0.5+i"
std::map<std::string, std::complex<double>> parse_param_list(const std::string& text);
/// "1e-2,5e-3"
std::vector<double> parse_double_list(const std::string& text);

struct RunConfig {
  std::string command;
  std::string family = "autonomous5";
  /// "5" or "2..8"; only meaningful for the general family.
  std::string n;
  std::map<std::string, std::complex<double>> params;
  std::string map;
  int branch = 1;
  std::string method = "rk4";
  double h = 1e-3;
  double tol = 1e-9;
  double t0 = 0.0;
  double t1 = 1.0;
  std::complex<double> q0{1.0, 0.0};
  std::complex<double> p0{0.0, 0.0};
  std::vector<double> sweep;
  int power = 1;
  bool check_trajectory = false;
  std::string out;

  bool operator==(const RunConfig&) const = default;
};

/// Flat "key = value" text with [section] headers; '#' starts a comment.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Canonical text: fixed section and key order, 17-digit numbers.
std::string to_canonical_text(const RunConfig& cfg);

/// "2..8" -> {2, 8}; "5" -> {5, 5}.
std::pair<int, int> parse_n_range(const std::string& text);

}  // namespace hamfam
