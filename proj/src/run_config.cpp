#include "lab/run_config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace lab {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> k = {
      {"geometry", {"a", "n", "sector", "k", "gamma"}},
      {"truncation", {"L_max", "nu_max", "space_order", "time_per_panel"}},
      {"run", {"suites"}},
      {"ensemble", {"N", "seeds", "seed", "weight_pairs", "mixing"}},
      {"strichartz", {"pairs", "p_cap"}},
      {"hls", {"lambdas"}},
      {"output", {"dir", "formats"}},
  };
  return k;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  boost::split(out, s, boost::is_any_of(","));
  for (auto& x : out) boost::trim(x);
  out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
  return out;
}

template <class T>
T to_number(const std::string& where, const std::string& v) {
  std::istringstream is(v);
  T x;
  if (!(is >> x) || !(is >> std::ws).eof())
    throw ConfigDiagnostic(where + ": cannot parse '" + v + "'");
  return x;
}

bool to_bool(const std::string& where, const std::string& v) {
  auto s = boost::to_lower_copy(v);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigDiagnostic(where + ": expected true/false, got '" + v + "'");
}

void apply(RunConfig& rc, const std::string& section, const std::string& key, const std::string& raw) {
  const std::string where = section + "." + key;
  auto sec = known_keys().find(section);
  if (sec == known_keys().end()) throw ConfigDiagnostic("unknown section [" + section + "]");
  if (!sec->second.count(key)) throw ConfigDiagnostic("unknown key " + where);
  const std::string v = boost::trim_copy(raw);
  if (section == "geometry") {
    if (key == "a") rc.a = to_number<int>(where, v);
    if (key == "n") rc.n = to_number<int>(where, v);
    if (key == "sector") {
      auto s = boost::to_lower_copy(v);
      if (s == "rank1")
        rc.sector = Sector::Rank1;
      else if (s == "radial")
        rc.sector = Sector::Radial;
      else
        throw ConfigDiagnostic(where + ": expected rank1 or radial, got '" + v + "'");
    }
    if (key == "k" || key == "gamma") {
      try {
        rc.gamma_exact = parse_rational(v);
      } catch (const std::exception& e) {
        throw ConfigDiagnostic(where + ": " + e.what());
      }
      rc.gamma_text = v;
      rc.gamma = boost::rational_cast<double>(rc.gamma_exact);
    }
  } else if (section == "truncation") {
    int x = to_number<int>(where, v);
    if (x < 0) throw ConfigDiagnostic(where + ": must be non-negative");
    if (key == "L_max") rc.L_max = x;
    if (key == "nu_max") rc.nu_max = x;
    if (key == "space_order") rc.space_order = x;
    if (key == "time_per_panel") rc.time_per_panel = x;
  } else if (section == "run") {
    rc.suites = split_list(v);
  } else if (section == "ensemble") {
    if (key == "N") {
      rc.Ns.clear();
      for (auto& s : split_list(v)) {
        int N = to_number<int>(where, s);
        if (N < 1) throw ConfigDiagnostic(where + ": N must be >= 1");
        rc.Ns.push_back(N);
      }
    }
    if (key == "seeds") rc.seeds = to_number<int>(where, v);
    if (key == "seed") rc.seed = to_number<std::uint64_t>(where, v);
    if (key == "weight_pairs") rc.weight_pairs = to_number<int>(where, v);
    if (key == "mixing") rc.mixing = to_bool(where, v);
  } else if (section == "strichartz") {
    if (key == "pairs") {
      rc.pairs.clear();
      for (auto& s : split_list(v)) {
        auto c = s.find(':');
        if (c == std::string::npos) throw ConfigDiagnostic(where + ": expected p:q, got '" + s + "'");
        try {
          rc.pairs.push_back({parse_exponent(s.substr(0, c)), parse_exponent(s.substr(c + 1))});
        } catch (const std::exception& e) {
          throw ConfigDiagnostic(where + ": " + e.what());
        }
      }
    }
    if (key == "p_cap") rc.p_cap = to_number<double>(where, v);
  } else if (section == "hls") {
    rc.hls_lambdas.clear();
    for (auto& s : split_list(v)) rc.hls_lambdas.push_back(to_number<double>(where, s));
  } else if (section == "output") {
    if (key == "dir") rc.out_dir = v;
    if (key == "formats") {
      rc.write_json = rc.write_csv = false;
      for (auto& f : split_list(v)) {
        if (f == "json")
          rc.write_json = true;
        else if (f == "csv")
          rc.write_csv = true;
        else
          throw ConfigDiagnostic(where + ": unknown format '" + f + "'");
      }
    }
  }
}

std::string num(double v) {
  if (std::isinf(v)) return "inf";
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

}  // namespace

Rational parse_rational(const std::string& s0) {
  std::string s = boost::trim_copy(s0);
  if (s.empty()) throw std::invalid_argument("empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long p = std::stoll(s.substr(0, slash)), q = std::stoll(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  }
  bool neg = s[0] == '-';
  std::string body = (neg || s[0] == '+') ? s.substr(1) : s;
  auto dot = body.find('.');
  std::string ip = body.substr(0, dot), fp = dot == std::string::npos ? "" : body.substr(dot + 1);
  if ((ip + fp).empty() || (ip + fp).find_first_not_of("0123456789") != std::string::npos ||
      fp.size() > 15)
    throw std::invalid_argument("not a decimal or p/q number: '" + s + "'");
  long long den = 1;
  for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
  long long numer = std::stoll(ip.empty() ? "0" : ip) * den + (fp.empty() ? 0 : std::stoll(fp));
  return Rational(neg ? -numer : numer, den);
}

double parse_exponent(const std::string& s0) {
  std::string s = boost::to_lower_copy(boost::trim_copy(s0));
  if (s == "inf" || s == "infinity") return INFINITY;
  double v = boost::rational_cast<double>(parse_rational(s));
  if (!(v >= 1.0)) throw std::invalid_argument("exponent must be >= 1, got '" + s0 + "'");
  return v;
}

RunConfig parse_run_config(const std::string& text, const std::vector<std::string>& overrides) {
  // '#' comments are accepted besides the ini ';'
  std::istringstream raw(text);
  std::ostringstream filtered;
  for (std::string line; std::getline(raw, line);) {
    auto t = boost::trim_copy(line);
    filtered << (t.rfind('#', 0) == 0 ? std::string() : line) << '\n';
  }
  pt::ptree tree;
  std::istringstream in(filtered.str());
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigDiagnostic("config syntax: " + std::string(e.message()) + " at line " +
                           std::to_string(e.line()));
  }
  RunConfig rc;
  for (auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigDiagnostic("key '" + section + "' outside any section");
    for (auto& [key, val] : body) apply(rc, section, key, val.data());
  }
  for (auto& o : overrides) {
    auto eq = o.find('=');
    auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ConfigDiagnostic("override must look like section.key=value: '" + o + "'");
    apply(rc, boost::trim_copy(o.substr(0, dot)), boost::trim_copy(o.substr(dot + 1, eq - dot - 1)),
          o.substr(eq + 1));
  }
  geometry_of(rc);
  expand_suites(rc.suites);
  if (rc.seeds < 1) throw ConfigDiagnostic("ensemble.seeds must be >= 1");
  if (rc.Ns.empty()) throw ConfigDiagnostic("ensemble.N is empty");
  return rc;
}

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigDiagnostic("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_run_config(os.str(), overrides);
}

GeometryConfig geometry_of(const RunConfig& rc) {
  return make_config(rc.a, rc.n, rc.sector, rc.gamma, rc.gamma_exact);
}

std::string canonical_text(const RunConfig& rc) {
  std::ostringstream os;
  auto join_d = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
  };
  os << "[geometry]\na=" << rc.a << "\nn=" << rc.n
     << "\nsector=" << (rc.sector == Sector::Rank1 ? "rank1" : "radial") << "\ngamma="
     << rc.gamma_exact.numerator() << "/" << rc.gamma_exact.denominator() << "\n";
  os << "[truncation]\nL_max=" << rc.L_max << "\nnu_max=" << rc.nu_max << "\nspace_order=" << rc.space_order
     << "\ntime_per_panel=" << rc.time_per_panel << "\n";
  os << "[run]\nsuites=" << boost::join(expand_suites(rc.suites), ",") << "\n";
  os << "[ensemble]\nN=";
  for (std::size_t i = 0; i < rc.Ns.size(); ++i) os << (i ? "," : "") << rc.Ns[i];
  os << "\nseeds=" << rc.seeds << "\nseed=" << rc.seed << "\nweight_pairs=" << rc.weight_pairs
     << "\nmixing=" << (rc.mixing ? "true" : "false") << "\n";
  os << "[strichartz]\npairs=";
  for (std::size_t i = 0; i < rc.pairs.size(); ++i)
    os << (i ? "," : "") << num(rc.pairs[i].first) << ":" << num(rc.pairs[i].second);
  os << "\np_cap=" << num(rc.p_cap) << "\n";
  os << "[hls]\nlambdas=" << join_d(rc.hls_lambdas) << "\n";
  return os.str();
}

std::string config_hash(const RunConfig& rc) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_text(rc)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char b[20];
  std::snprintf(b, sizeof b, "%016llx", (unsigned long long)h);
  return b;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> s = {"basis", "semigroup", "kernel", "transform",
                                             "analytic", "schatten", "strichartz", "restriction",
                                             "hls", "dunkl"};
  return s;
}

std::vector<std::string> expand_suites(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  for (auto& r : requested) {
    if (r == "all") return suite_names();
    if (std::find(suite_names().begin(), suite_names().end(), r) == suite_names().end())
      throw ConfigDiagnostic("unknown suite '" + r + "' (expected one of basis, semigroup, kernel, "
                             "transform, analytic, schatten, strichartz, restriction, hls, dunkl, all)");
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  if (out.empty()) throw ConfigDiagnostic("no suites selected");
  // keep the canonical order so outputs do not depend on how suites were listed
  std::vector<std::string> ordered;
  for (auto& s : suite_names())
    if (std::find(out.begin(), out.end(), s) != out.end()) ordered.push_back(s);
  return ordered;
}

}  // namespace lab
