#pragma once

#include "lab/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lab {

// Flat sectioned key=value configuration:
//
//   [geometry]   a, n, sector (rank1|radial), k or gamma (decimal or p/q)
//   [truncation] L_max, nu_max, space_order, time_per_panel
//   [run]        suites (comma list or "all")
//   [ensemble]   N (comma list), seeds, seed, weight_pairs, mixing
//   [strichartz] pairs (p:q comma list, "inf" allowed), p_cap
//   [hls]        lambdas
//   [output]     dir, formats (json,csv)
struct RunConfig {
  int a = 2;
  int n = 1;
  Sector sector = Sector::Rank1;
  std::string gamma_text = "0";
  double gamma = 0.0;
  Rational gamma_exact{0};

  int L_max = 15;
  int nu_max = 24;
  int space_order = 0;  // 0: derived from L_max
  int time_per_panel = 16;

  std::vector<std::string> suites{"all"};

  std::vector<int> Ns{1, 2, 4, 8, 16, 32, 64};
  int seeds = 8;
  std::uint64_t seed = 1;
  int weight_pairs = 50;
  bool mixing = true;

  std::vector<std::pair<double, double>> pairs{{2.0, INFINITY}};
  double p_cap = 8.0;

  std::vector<double> hls_lambdas{0.0, 0.25, 0.5, 0.75};

  std::string out_dir = "lab-out";
  bool write_json = true;
  bool write_csv = true;
};

struct ConfigDiagnostic : ConfigError {
  using ConfigError::ConfigError;
};

// overrides are "section.key=value"
RunConfig parse_run_config(const std::string& text, const std::vector<std::string>& overrides = {});
RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides = {});
// throws ConfigError with the make_config message
GeometryConfig geometry_of(const RunConfig& rc);
Rational parse_rational(const std::string& s);
double parse_exponent(const std::string& s);  // accepts inf

std::string canonical_text(const RunConfig& rc);
std::string config_hash(const RunConfig& rc);
const std::vector<std::string>& suite_names();
std::vector<std::string> expand_suites(const std::vector<std::string>& requested);

}  // namespace lab
