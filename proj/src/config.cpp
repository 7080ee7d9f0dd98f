#include "katolab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "katolab/error.hpp"

namespace katolab {

namespace {

const std::map<std::string, std::vector<ParamSpec>>& schemas() {
  static const std::map<std::string, std::vector<ParamSpec>> s = {
      {"perturb",
       {
           {"mode", "random", "random or quartic"},
           {"dim", "6", "matrix dimension for random"},
           {"beta", "0.01", "coupling at which the series is summed"},
           {"order", "6", "series order"},
           {"index", "0", "eigenvalue index of H0"},
           {"tol", "1e-8", "allowed |partial sum - exact|"},
           {"basis", "0", "oscillator basis size for quartic (0: automatic)"},
       }},
      {"temple",
       {
           {"dim", "8", "matrix dimension"},
           {"trials", "50", "number of random enclosure trials"},
           {"beta_min", "1e-4", "smallest coupling of the remainder fit"},
           {"beta_max", "1e-2", "largest coupling of the remainder fit"},
           {"points", "9", "couplings in the remainder fit"},
       }},
      {"projections",
       {
           {"pairs", "100", "number of random pairs"},
           {"dim", "6", "dimension"},
           {"pair_file", "", "JSON file with matrices P and Q instead of random pairs"},
       }},
      {"adiabatic",
       {
           {"path", "two-level", "two-level, three-level, bloch or file"},
           {"gap", "0.5", "middle level of the three-level path"},
           {"theta", "1.0", "colatitude of the bloch loop"},
           {"steps", "2000", "transport steps"},
           {"T", "25,50,100,200", "total times for the adiabatic defect"},
           {"path_file", "", "JSON file with Hamiltonian samples on [0, 1]"},
           {"band", "0", "tracked eigenvalue index for file paths"},
       }},
      {"resum",
       {
           {"mode", "pade", "pade, borel, stieltjes, quartic_pade, trotter or alternating"},
           {"series", "geometric", "zero, geometric, euler, exponential, quartic, inline or file"},
           {"coeffs", "", "comma-separated coefficients for series = inline"},
           {"series_file", "", "JSON array of coefficients for series = file"},
           {"order", "16", "series order"},
           {"pade", "8,8", "denominator and numerator degrees N,M"},
           {"z", "0.1", "evaluation point"},
           {"borel_m", "1", "Borel order"},
           {"continuation", "pade", "pade or taylor"},
           {"hankel_k", "6", "largest Hankel block"},
           {"dim", "4", "matrix dimension for trotter"},
           {"t", "1", "time for trotter"},
           {"n", "16,32,64,128,256,512", "step counts for trotter"},
           {"theta", "0.3", "angle between the planes for alternating"},
           {"n_max", "200", "largest power for alternating"},
       }},
      {"models",
       {
           {"name", "helium", "helium, wvn, invert, cusp, hardy, rellich, rank_one or half_pi"},
           {"mass_ratio", "7294.29954", "nuclear to electron mass ratio (inf allowed)"},
           {"Z", "1", "nuclear charge"},
           {"ell", "0", "angular momentum channel"},
           {"R", "40", "box radius"},
           {"grid", "7999", "interior grid points"},
           {"nu", "3", "space dimension"},
           {"r_min", "1e-20", "inner radius of the log grid"},
           {"r_hardy", "1e4", "outer radius of the log grid"},
           {"psi_kind", "inv_sqrt", "inv_sqrt, log_case or inv"},
           {"beta", "1e-4", "coupling for rank_one"},
           {"beta_min", "1e-6", "smallest coupling of the rank_one fit"},
           {"beta_max", "1e-3", "largest coupling of the rank_one fit"},
           {"points", "13", "couplings in the rank_one fit"},
           {"k_min", "1e-10", "momentum window start"},
           {"k_max", "1e10", "momentum window end"},
           {"n_log", "800", "momentum grid points"},
           {"r_max", "100", "outer radius for wvn"},
       }},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_double(const std::string& s, const std::string& field) {
  const std::string t = trim(s);
  if (t == "inf" || t == "+inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) fail("malformed config: " + field + " expects a number, got '" + s + "'");
  return v;
}

long parse_long(const std::string& s, const std::string& field) {
  const std::string t = trim(s);
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size()) fail("malformed config: " + field + " expects an integer, got '" + s + "'");
  return v;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"perturb", "temple", "projections", "adiabatic", "resum", "models"};
  return s;
}

const std::vector<ParamSpec>& schema(const std::string& subcommand) {
  const auto it = schemas().find(subcommand);
  if (it == schemas().end()) fail("unknown subcommand: " + subcommand);
  return it->second;
}

std::string ExperimentConfig::get(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) fail("unknown config key: " + subcommand + "." + key);
  return it->second;
}

double ExperimentConfig::get_double(const std::string& key) const {
  return parse_double(get(key), subcommand + "." + key);
}

long ExperimentConfig::get_int(const std::string& key) const { return parse_long(get(key), subcommand + "." + key); }

std::vector<double> ExperimentConfig::get_list(const std::string& key) const {
  std::vector<double> out;
  const std::string v = trim(get(key));
  if (v.empty()) return out;
  for (const auto& part : split(v, ',')) out.push_back(parse_double(part, subcommand + "." + key));
  return out;
}

std::vector<long> ExperimentConfig::get_int_list(const std::string& key) const {
  std::vector<long> out;
  const std::string v = trim(get(key));
  if (v.empty()) return out;
  for (const auto& part : split(v, ',')) out.push_back(parse_long(part, subcommand + "." + key));
  return out;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '"') quoted = !quoted;
      if (body[i] == '#' && !quoted) {
        body.resize(i);
        break;
      }
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail("malformed config: line " + std::to_string(lineno) + " is not key = value");
    const std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty()) fail("malformed config: line " + std::to_string(lineno) + " has an empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (out.count(key)) fail("malformed config: duplicate key " + key);
    out[key] = value;
  }
  return out;
}

ExperimentConfig make_config(const std::string& subcommand, const std::map<std::string, std::string>& values) {
  ExperimentConfig c;
  c.subcommand = subcommand;
  for (const auto& p : schema(subcommand)) c.params[p.key] = p.default_value;
  for (const auto& [k, v] : values) {
    if (k == "subcommand") {
      if (v != subcommand) fail("malformed config: subcommand is " + v + ", expected " + subcommand);
    } else if (k == "seed") {
      const std::string t = trim(v);
      char* end = nullptr;
      c.seed = std::strtoull(t.c_str(), &end, 10);
      if (t.empty() || t[0] == '-' || end != t.c_str() + t.size()) fail("malformed config: seed expects an unsigned integer");
    } else if (k == "out") {
      c.out = v;
    } else if (k == "format") {
      if (v != "json" && v != "csv") fail("malformed config: format must be json or csv");
      c.format = v;
    } else if (c.params.count(k)) {
      c.params[k] = v;
    } else {
      fail("unknown config key: " + subcommand + "." + k);
    }
  }
  return c;
}

void apply_seed_override(ExperimentConfig& config) {
  const char* s = std::getenv("KATOLAB_SEED");
  if (!s || !*s) return;
  config.seed = make_config(config.subcommand, {{"seed", s}}).seed;
}

bool is_ranged(const std::string& value) {
  const std::string v = trim(value);
  for (const char* head : {"lin(", "log(", "list("})
    if (v.rfind(head, 0) == 0) return true;
  return false;
}

std::vector<std::string> expand_range(const std::string& value) {
  const std::string v = trim(value);
  const auto open = v.find('(');
  if (open == std::string::npos || v.back() != ')') fail("malformed range: " + value);
  const std::string kind = v.substr(0, open);
  const std::string inner = trim(v.substr(open + 1, v.size() - open - 2));
  std::vector<std::string> out;
  if (kind == "list") {
    if (inner.empty()) return out;
    // ';' separates entries that are themselves comma lists.
    for (const auto& part : split(inner, inner.find(';') != std::string::npos ? ';' : ',')) out.push_back(part);
    return out;
  }
  const auto parts = split(inner, ',');
  if (parts.size() != 3) fail("malformed range: " + value + " needs (start, stop, count)");
  const double a = parse_double(parts[0], "range start");
  const double b = parse_double(parts[1], "range stop");
  const long n = parse_long(parts[2], "range count");
  if (n < 0) fail("malformed range: negative count");
  if (kind == "log" && (a <= 0.0 || b <= 0.0)) fail("malformed range: log range needs positive ends");
  for (long i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    const double x = kind == "lin" ? a + f * (b - a) : a * std::pow(b / a, f);
    out.push_back(format_double(i == 0 ? a : (i == n - 1 ? b : x)));
  }
  return out;
}

std::optional<std::string> sweep_axis(const ExperimentConfig& config) {
  std::optional<std::string> axis;
  for (const auto& [k, v] : config.params) {
    if (!is_ranged(v)) continue;
    if (axis) fail("one sweep axis only");
    axis = k;
  }
  return axis;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace katolab
