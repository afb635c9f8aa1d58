#include "lab/suites.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace lab {

namespace {

Check le(const std::string& id, double v, double thr, const std::string& detail = "") {
  return {id, std::isfinite(v) && v <= thr, v, thr, "<=", detail};
}

Check ge(const std::string& id, double v, double thr, const std::string& detail = "") {
  return {id, std::isfinite(v) && v >= thr, v, thr, ">=", detail};
}

Check lt(const std::string& id, double v, double thr, const std::string& detail = "") {
  return {id, std::isfinite(v) && v < thr, v, thr, "<", detail};
}

std::string num(double v) {
  if (std::isinf(v)) return "inf";
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

nlohmann::json jnum(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(num(v)); }

std::vector<WeightedPoint> sample_points(const GeometryConfig& cfg, int count, double rmax) {
  std::vector<WeightedPoint> pts;
  for (int i = 0; i < count; ++i) {
    if (cfg.sector == Sector::Rank1) {
      double x = -rmax + 2 * rmax * (i + 0.5) / count;
      pts.push_back({std::abs(x), x < 0 ? -1 : 1});
    } else {
      pts.push_back({rmax * (i + 0.5) / count, 1});
    }
  }
  return pts;
}

Eigen::VectorXcd random_coeffs(std::size_t nb, int modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(nb);
  for (int i = 0; i < modes && i < int(nb); ++i) c(i) = cplx(nd(rng), nd(rng));
  return c / c.norm();
}

// grid wide enough in time for the first N eigenfunctions
HarnessGrid band_grid(const GeometryConfig& cfg, const RunConfig& rc, int N, int refine = 1) {
  int L = std::max(rc.L_max, truncation_for(cfg, N));
  auto idx = basis_indices(cfg, L);
  double band = eigenvalue(cfg, idx[N - 1]) - eigenvalue(cfg, idx[0]);
  int extra = rc.space_order > 0 ? std::max(rc.space_order - L, 0) : L + 16;
  return make_harness_grid(cfg, L, std::max(band, 1.0), rc.time_per_panel * refine,
                           (L + extra) * refine - L);
}

std::string csv_header_with_hash() { return "a,n,gamma,p,q,N,seed,lhs,rhs,ratio,grid_id,config_hash\n"; }

void csv_row_with_hash(std::ostream& os, const GeometryConfig& cfg, const MixedNormReport& r,
                       const std::string& hash) {
  std::ostringstream row;
  write_ratio_csv_row(row, cfg, r);
  std::string s = row.str();
  s.pop_back();
  os << s << ',' << hash << '\n';
}

// ---------------------------------------------------------------- suites

void suite_basis(const RunConfig& rc, SuiteResult& out) {
  auto cfg = geometry_of(rc);
  const int L = rc.L_max;
  auto idx = basis_indices(cfg, L);
  auto g = make_spatial_grid(cfg, rc.space_order > 0 ? rc.space_order : L + 8);
  Eigen::MatrixXd B = basis_matrix(cfg, idx, g);
  Eigen::Map<const Eigen::VectorXd> w(g.w.data(), g.size());
  Eigen::MatrixXd G = B.transpose() * w.asDiagonal() * B;
  double defect = (G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
  out.checks.push_back(le("basis.gram_defect", defect, 1e-9, "l <= " + std::to_string(L)));
  out.data["basis_size"] = idx.size();
  out.data["gram_defect"] = defect;
  std::ostringstream t;
  t << "l,m,j,eigenvalue,gram_diag\n";
  for (std::size_t i = 0; i < idx.size(); ++i)
    t << idx[i].l << ',' << idx[i].m << ',' << idx[i].j << ',' << num(eigenvalue(cfg, idx[i])) << ','
      << num(G(i, i)) << '\n';
  out.tables.push_back({"gram", t.str()});
  if (cfg.sector != Sector::Rank1) return;
  // finite-difference eigenrelation, relative to the sup of the exact right-hand side
  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) {
    double x = 0.2 + 3.8 * i / 19.0;
    xs.push_back(x);
    xs.push_back(-x);
  }
  double worst = 0.0;
  for (auto& i : idx) {
    if (i.l > std::min(L, 10)) continue;
    auto f = [&](double x) { return phi_eigenfunction(cfg, i, WeightedPoint{std::abs(x), x < 0 ? -1 : 1}); };
    double res = 0.0, sup = 0.0;
    for (double x : xs) {
      double rhs = eigenvalue(cfg, i) * f(x);
      res = std::max(res, std::abs(apply_laguerre_operator_rank1(cfg, f, x) - rhs));
      sup = std::max(sup, std::abs(rhs));
    }
    worst = std::max(worst, res / sup);
  }
  out.checks.push_back(le("basis.eigenrelation", worst, 1e-5, "l <= 10, 40 grid points"));
  out.data["eigen_residual"] = worst;
}

void suite_semigroup(const RunConfig& rc, SuiteResult& out) {
  auto cfg = geometry_of(rc);
  cfg.require_strict("semigroup suite");
  const int L = rc.L_max;
  auto f = SpectralField::zero(cfg, L);
  f.coeffs = random_coeffs(f.coeffs.size(), int(f.coeffs.size()), rc.seed);
  double unit = 0.0;
  for (double t : {0.3, 1.7, -2.9, 100.0}) unit = std::max(unit, std::abs(propagate(f, t).norm() - f.norm()));
  out.checks.push_back(le("semigroup.unitarity", unit, 1e-13));
  auto e0 = SpectralField::zero(cfg, L);
  e0.coeffs[0] = 1.0;
  double attained = 0.0, excess = 0.0;
  for (cplx z : {cplx(0.4, 1.1), cplx(1.3, 0.0), cplx(0.05, -2.0)}) {
    double b = operator_norm_bound(cfg, z);
    attained = std::max(attained, std::abs(apply_semigroup(e0, z).norm() - b) / b);
    excess = std::max(excess, apply_semigroup(f, z).norm() / (b * f.norm()) - 1.0);
  }
  out.checks.push_back(le("semigroup.norm_decay_attained", attained, 1e-10));
  out.checks.push_back(le("semigroup.norm_decay_bound", excess, 1e-14));
  double h1 = hilbert_schmidt_norm(cfg, 0.5, L), h2 = hilbert_schmidt_norm(cfg, 0.5, 2 * L);
  out.checks.push_back(le("semigroup.hs_cauchy", std::abs(h2 - h1), 1e-8,
                          "L " + std::to_string(L) + " -> " + std::to_string(2 * L)));
  out.data["hs_norm"] = {{"L", h1}, {"2L", h2}};
}

void suite_kernel(const RunConfig& rc, SuiteResult& out) {
  auto cfg = geometry_of(rc);
  cfg.require_strict("kernel suite");
  auto pts = sample_points(cfg, 20, 3.0);
  double worst = 0.0;
  for (cplx z : {cplx(0.5, 0.0), cplx(0.5, 0.9), cplx(0.5, -2.4)}) {
    std::vector<cplx> sv, cv;
    double peak = 0.0;
    for (auto& x : pts)
      for (auto& y : pts) {
        sv.push_back(kernel_spectral(cfg, x, y, z, 80).value);
        cv.push_back(kernel_closed_form(cfg, x, y, z).value);
        peak = std::max(peak, std::abs(cv.back()));
      }
    for (std::size_t i = 0; i < sv.size(); ++i)
      worst = std::max(worst, std::abs(sv[i] - cv[i]) / std::max(std::abs(cv[i]), 1e-8 * peak));
  }
  out.checks.push_back(le("kernel.closed_vs_spectral", worst, 1e-6, "20x20 grid, Re z = 0.5"));
  auto coarse = sample_points(cfg, 6, 2.5);
  double slack = 1.0;
  for (double mu : {0.3, 0.9, 1.4, 2.2, 2.9})
    for (auto& x : coarse)
      for (auto& y : coarse) {
        double b = kernel_bound(cfg, mu);
        for (double eps : {0.0, 1e-3, 0.1})
          slack = std::min(slack, (b - std::abs(kernel_closed_form(cfg, x, y, cplx(eps, mu)).value)) / b);
      }
  out.checks.push_back(ge("kernel.bound_slack", slack, -1e-8));
  double per = 0.0, conj = 0.0;
  for (int i : {0, 2, 4})
    for (int j : {1, 3, 5})
      for (double mu : {0.7, 2.0}) {
        auto& x = coarse[i];
        auto& y = coarse[j];
        auto kp = kernel_spectral(cfg, x, y, cplx(0.0, mu), 0, true).value;
        auto km = kernel_spectral(cfg, x, y, cplx(0.0, -mu), 0, true).value;
        conj = std::max(conj, std::abs(km - std::conj(kp)) / (1 + std::abs(kp)));
        auto ks = kernel_spectral(cfg, x, y, cplx(0.0, mu + kPi), 0, true).value;
        auto kr = kernel_spectral(cfg, sigma_reflect(cfg, x), y, cplx(0.0, mu), 0, true).value;
        per = std::max(per, std::abs(ks - kernel_shift_phase(cfg) * kr) / (1 + std::abs(ks)));
      }
  out.checks.push_back(le("kernel.conjugation", conj, 1e-7, "Abel ladder"));
  out.checks.push_back(le("kernel.periodicity", per, 1e-7, "Abel ladder"));
  out.data["closed_vs_spectral"] = worst;
  out.data["bound_slack"] = slack;
}

void suite_transform(const RunConfig& rc, SuiteResult& out) {
  auto cfg = geometry_of(rc);
  cfg.require_strict("transform suite");
  const int L = std::min(rc.L_max, 10);
  auto tg = torus_grid(64);
  auto sg = make_spatial_grid(cfg, L + 6);
  std::mt19937_64 rng(rc.seed);
  std::normal_distribution<double> nd;
  CoeffTable tab;
  tab.nu_min = -5;
  tab.nu_max = 20;
  tab.idx = basis_indices(cfg, L);
  tab.c.resize(26, tab.idx.size());
  for (Eigen::Index i = 0; i < tab.c.rows(); ++i)
    for (Eigen::Index j = 0; j < tab.c.cols(); ++j) tab.c(i, j) = cplx(nd(rng), nd(rng));
  auto G = inverse_transform(cfg, tab, tg, sg);
  double rhs = 2 * kPi * tab.c.squaredNorm();
  double pl = std::abs(space_time_l2_squared(G) - rhs) / rhs;
  out.checks.push_back(le("transform.plancherel", pl, 1e-8));
  const int Le = std::max(rc.L_max, 20);
  auto f = SpectralField::zero(cfg, Le);
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = cplx(nd(rng), nd(rng));
  auto th = half_interval_grid();
  auto sh = make_spatial_grid(cfg, Le + 8);
  auto E = extend(cfg, surface_coefficients(cfg, f), th, sh);
  double worst = 0.0;
  for (std::size_t j = 0; j < th.size(); ++j) {
    auto u = synthesize(propagate(f, th.t[j]), sh);
    for (std::size_t i = 0; i < sh.size(); ++i)
      worst = std::max(worst, std::abs(std::abs(E.F(j, i)) - std::abs(u[i])));
  }
  out.checks.push_back(le("transform.extension_identity", worst, 1e-9));
  out.data["plancherel_defect"] = pl;
  out.data["extension_defect"] = worst;
}

void suite_analytic(const RunConfig& rc, SuiteResult& out) {
  auto cfg = geometry_of(rc);
  cfg.require_strict("analytic suite");
  WeightedPoint origin{0.0, 1}, y{0.7, 1};
  double worst_fit = 0.0;
  nlohmann::json fits = nlohmann::json::array();
  for (cplx z : {cplx(0.0, 0.0), cplx(-0.5, 0.0), cplx(-0.2, 1.0)}) {
    std::vector<double> lx, ly;
    for (int i = 0; i < 25; ++i) {
      double t = std::pow(10.0, -3.0 + i * std::log10(300.0) / 24);
      lx.push_back(std::log(t));
      ly.push_back(std::log(std::abs(kz_kernel(cfg, z, t, origin, y))));
    }
    double mx = 0, my = 0;
    for (int i = 0; i < 25; ++i) {
      mx += lx[i] / 25;
      my += ly[i] / 25;
    }
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 25; ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    double slope = -sxy / sxx, predicted = z.real() + 1.0 + cfg.beta() / cfg.a;
    worst_fit = std::max(worst_fit, std::abs(slope - predicted));
    fits.push_back({{"z_re", z.real()}, {"z_im", z.imag()}, {"exponent", slope}, {"predicted", predicted}});
  }
  out.checks.push_back(le("analytic.scaling_fit", worst_fit, 0.1));
  out.data["scaling_fits"] = fits;
  auto g = make_tz_grids(cfg, 5);
  double excess = -INFINITY;
  for (double s : {0.0, 0.5, 2.0, 5.0}) {
    auto T = assemble_tz(cfg, cplx(0.0, s), g);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(T.M);
    excess = std::max(excess, svd.singularValues()(0) - std::abs(rgamma_complex(cplx(1.0, s))));
  }
  out.checks.push_back(le("analytic.endpoint_norm", excess, 1e-8, "sigma_1(T_is) - |1/Gamma(1+is)|"));
  auto T = assemble_tz(cfg, -1.0, g);
  auto P = assemble_surface_projection(cfg, g);
  out.checks.push_back(le("analytic.surface_projection", (T.M - P.M).cwiseAbs().maxCoeff(), 1e-7));
}

void suite_schatten(const RunConfig& rc, SuiteResult& out) {
  auto cfg = geometry_of(rc);
  cfg.require_strict("schatten suite");
  auto g1 = make_sandwich_grid(cfg, rc.nu_max, 8, 24);
  auto g2 = make_sandwich_grid(cfg, rc.nu_max, 16, 48);
  double c1 = 0.0, c2 = 0.0, drift = 0.0;
  bool finite = true;
  std::ostringstream t;
  t << "pair,seed_w1,seed_w2,ratio,ratio_refined,config_hash\n";
  const std::string hash = config_hash(rc);
  for (int k = 0; k < rc.weight_pairs; ++k) {
    std::uint64_t s1 = rc.seed * 100000 + 2 * std::uint64_t(k), s2 = s1 + 1;
    auto W1 = random_smooth_weight(s1), W2 = random_smooth_weight(s2);
    auto a = sandwich_ratio(cfg, g1, W1, W2), b = sandwich_ratio(cfg, g2, W1, W2);
    finite = finite && std::isfinite(a.ratio) && std::isfinite(b.ratio) && a.ratio > 0;
    drift = std::max(drift, std::abs(a.ratio - b.ratio) / b.ratio);
    c1 = std::max(c1, a.ratio);
    c2 = std::max(c2, b.ratio);
    t << k << ',' << s1 << ',' << s2 << ',' << num(a.ratio) << ',' << num(b.ratio) << ',' << hash << '\n';
  }
  out.tables.push_back({"sandwich", t.str()});
  out.checks.push_back(ge("schatten.sandwich_finite", finite ? 1.0 : 0.0, 1.0));
  out.checks.push_back(le("schatten.sandwich_pair_drift", drift, 0.1, std::to_string(rc.weight_pairs) + " pairs"));
  out.checks.push_back(le("schatten.sandwich_constant_drift", std::abs(c1 - c2) / c2, 0.1));
  out.data["sandwich"] = {{"C", c1}, {"C_refined", c2}, {"pairs", rc.weight_pairs}};
  // duality (1) => (2) instances
  const double lam = 2 * cfg.lambda0, pd = diagonal_exponent(cfg);
  const int dim = int(g1.surface.size());
  double slack = 1.0;
  nlohmann::json reps = nlohmann::json::array();
  for (std::uint64_t s = 0; s < 4; ++s) {
    auto W = random_smooth_weight(rc.seed * 7 + 500 + s);
    Eigen::VectorXcd w = sample_weight(W, cfg, g1.time, g1.space);
    double wn = weight_mixed_norm(w, g1.time, g1.space, lam, lam);
    std::vector<Eigen::MatrixXcd> sys;
    std::vector<Eigen::VectorXd> wts;
    for (int N : {1, 2, 4, 8}) {
      sys.push_back(haar_unitary(dim, rc.seed * 1000 + s * 10 + N).leftCols(N));
      wts.push_back(random_weights(N, rc.seed * 1000 + s * 10 + N));
    }
    auto rep = duality_check(g1.E, w, wn * wn, sys, wts, lam, g1.time, g1.space, 2 * pd, 2 * pd);
    slack = std::min(slack, rep.min_slack);
    reps.push_back(to_json(rep));
  }
  out.checks.push_back(ge("schatten.duality_slack", slack, -1e-8));
  out.data["duality"] = reps;
}

void suite_strichartz(const RunConfig& rc, SuiteResult& out) {
  auto cfg = geometry_of(rc);
  cfg.require_strict("strichartz suite");
  const std::string hash = config_hash(rc);
  auto g = band_grid(cfg, rc, 20);
  auto c = random_coeffs(g.idx.size(), 20, rc.seed);
  std::ostringstream ts;
  ts << csv_header_with_hash();
  nlohmann::json singles = nlohmann::json::array();
  auto pairs = rc.pairs;
  pairs.push_back({2.0, INFINITY});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto r = strichartz_single(cfg, g, c, pairs[i].first, pairs[i].second);
    r.seed = rc.seed;
    if (i + 1 == pairs.size()) {
      out.checks.push_back(le("strichartz.unitarity_endpoint", std::abs(r.ratio - 1.0), 1e-12, "(p,q) = (2,inf)"));
      break;
    }
    singles.push_back(to_json(r));
    if (r.skipped) {
      out.refused.push_back("strichartz_single p=" + num(r.p) + " q=" + num(r.q) + ": " + r.note);
      continue;
    }
    csv_row_with_hash(ts, cfg, r, hash);
  }
  out.data["single"] = singles;
  out.tables.push_back({"single", ts.str()});

  SweepSettings s;
  s.Ns = rc.Ns;
  s.seeds = rc.seeds;
  s.seed_base = rc.seed;
  s.mixing = rc.mixing;
  s.per_panel = rc.time_per_panel;
  s.p_cap = rc.p_cap;
  double cap = general_range_cap(cfg);
  if (std::isfinite(cap)) {
    // at and slightly above the open endpoint: recorded, not asserted
    for (auto [label, p] : {std::pair{"record-endpoint", cap}, std::pair{"record-above", 1.05 * cap}})
      s.record_only.push_back({label, p, orthonormal_q(cfg, p)});
  }
  int Nmax = *std::max_element(s.Ns.begin(), s.Ns.end());
  if (Nmax > int(basis_indices(cfg, truncation_for(cfg, Nmax)).size()))
    throw std::invalid_argument("strichartz suite: N too large");
  auto st = sweep_stability(cfg, s);
  out.checks.push_back(le("strichartz.sweep_drift", st.max_drift, 0.1, "seed and grid doubling"));
  out.checks.push_back(lt("strichartz.sweep_growth", st.max_growth, 2.0, "C(2N)/C(N)"));
  out.checks.push_back(le("strichartz.n1_reduction", st.n1_defect, 1e-9));
  double slack = std::min({st.base.endpoint_min_slack, st.more_seeds.endpoint_min_slack,
                           st.fine.endpoint_min_slack});
  out.checks.push_back(ge("strichartz.endpoint_slack", slack, -1e-9, "L^inf L^1 <= sum |n|"));
  nlohmann::json ex = nlohmann::json::array();
  for (std::size_t e = 0; e < st.base.exponents.size(); ++e) {
    auto& x = st.base.exponents[e];
    auto cls = classify_exponents(cfg, 1.0 / x.p, std::isinf(x.q) ? 0.0 : 1.0 / x.q);
    nlohmann::json j = {{"label", x.label}, {"p", jnum(x.p)}, {"q", jnum(x.q)},
                        {"classification", cls.describe()}, {"C", st.base.C[e]},
                        {"C_by_N", st.base.C_by_N[e]}};
    if (e < st.seed_drift.size()) {
      j["seed_drift"] = st.seed_drift[e];
      j["grid_drift"] = st.grid_drift[e];
    }
    ex.push_back(j);
  }
  out.data["orthonormal"] = {{"exponents", ex}, {"Ns", s.Ns}, {"seeds", s.seeds},
                             {"max_drift", st.max_drift}, {"max_growth", st.max_growth},
                             {"n1_defect", st.n1_defect}, {"endpoint_min_slack", slack},
                             {"grid_id", st.base.rows.empty() ? "" : st.base.rows[0].grid_id},
                             {"degenerate_range", std::isinf(cap)}};
  std::ostringstream to;
  to << csv_header_with_hash();
  for (auto& r : st.base.rows) csv_row_with_hash(to, cfg, r, hash);
  out.tables.push_back({"orthonormal", to.str()});
}

void suite_restriction(const RunConfig& rc, SuiteResult& out) {
  auto cfg = geometry_of(rc);
  cfg.require_strict("restriction suite");
  auto g = band_grid(cfg, rc, 16);
  const double p = diagonal_exponent(cfg);
  double worst = 0.0;
  std::ostringstream t;
  t << csv_header_with_hash();
  const std::string hash = config_hash(rc);
  for (int N : {1, 2, 4, 8, 16}) {
    auto sys = generate_orthonormal_system(cfg, g, N, rc.seed * 1000 + N, rc.mixing);
    auto n = random_weights(N, rc.seed * 1000 + N);
    auto s = strichartz_orthonormal(cfg, g, sys, n, p, p);
    auto r = restriction_orthonormal(cfg, g, sys.C, n, p, p);
    r.seed = rc.seed;
    worst = std::max(worst, std::abs(r.ratio - s.ratio) / s.ratio);
    csv_row_with_hash(t, cfg, r, hash);
  }
  out.checks.push_back(le("restriction.extension_cross_check", worst, 1e-9));
  out.tables.push_back({"cross_check", t.str()});
  out.data["cross_check_defect"] = worst;
  out.data["exponent"] = p;
  out.data["ell_exponent"] = ell_exponent(p);
}

void suite_hls(const RunConfig& rc, SuiteResult& out) {
  std::function<double(double)> one = [](double) { return 1.0; };
  std::function<double(double)> g = [](double t) { return 1.0 + 0.5 * std::cos(2 * t) + 0.2 * std::sin(t); };
  std::function<double(double)> h = [](double t) { return std::exp(-t * t) + 0.1; };
  std::ostringstream t;
  t << "lambda,p,q,functions,order,I1,I2,I3,I2_shifted,I1_classical,total,ratio\n";
  double holder = -INFINITY, stab = 0.0, b2 = 0.0, b3 = 0.0;
  bool any_holder = false, any_pos = false;
  nlohmann::json reps = nlohmann::json::array();
  for (double lam : rc.hls_lambdas) {
    double p = 2.0 / (2.0 - lam);
    for (auto& [name, gf, hf] : {std::tuple{"ones", one, one}, std::tuple{"smooth", g, h}}) {
      auto a = rhls_check(lam, p, p, gf, hf, 24);
      auto b = rhls_check(lam, p, p, gf, hf, 48);
      for (auto* r : {&a, &b})
        t << num(lam) << ',' << num(p) << ',' << num(p) << ',' << name << ',' << (r == &a ? 24 : 48) << ','
          << num(r->I1) << ',' << num(r->I2) << ',' << num(r->I3) << ',' << num(r->I2_shifted) << ','
          << num(r->I1_classical) << ',' << num(r->total) << ',' << num(r->ratio) << '\n';
      auto j = to_json(b);
      j["functions"] = name;
      reps.push_back(j);
      if (lam == 0.0) {
        any_holder = true;
        holder = std::max(holder, b.total / b.holder_bound - 1.0);
        continue;
      }
      any_pos = true;
      stab = std::max(stab, std::abs(a.ratio - b.ratio) / b.ratio);
      b2 = std::max(b2, std::abs(b.I2 - b.I2_shifted) / b.I2);
      auto sw = rhls_check(lam, p, p, hf, gf, 48);
      b3 = std::max(b3, std::abs(b.I3 - sw.I2_shifted) / b.I3);
    }
  }
  if (any_holder) out.checks.push_back(le("hls.holder_case", holder, 1e-12, "lambda = 0"));
  if (any_pos) {
    out.checks.push_back(le("hls.refinement_stability", stab, 0.01));
    out.checks.push_back(le("hls.b2_change_of_variable", b2, 1e-8));
    out.checks.push_back(le("hls.b3_change_of_variable", b3, 1e-8));
  }
  out.tables.push_back({"ratios", t.str()});
  out.data["reports"] = reps;
}

void suite_dunkl(const RunConfig& rc, SuiteResult& out) {
  auto cfg = geometry_of(rc);
  cfg.require_strict("dunkl suite");
  auto g = band_grid(cfg, rc, 16);
  auto c = random_coeffs(g.idx.size(), 10, rc.seed);
  double worst = 0.0;
  nlohmann::json singles = nlohmann::json::array();
  const double iq_max = std::min(1.0, cfg.beta() / (2.0 * cfg.a));
  for (double f : {0.25, 0.5, 0.75}) {
    double iq = f * iq_max, p = 1.0 / (0.5 - iq * cfg.a / cfg.beta()), q = 1.0 / iq;
    auto r = dunkl_transfer(cfg, g, c, p, q);
    worst = std::max(worst, r.defect);
    singles.push_back({{"p", p}, {"q", q}, {"dunkl_pos", r.dunkl_pos}, {"dunkl_neg", r.dunkl_neg},
                       {"laguerre_pos", r.laguerre_pos}, {"laguerre_neg", r.laguerre_neg},
                       {"defect", r.defect}});
  }
  out.checks.push_back(le("dunkl.transfer_equality", worst, 1e-6, "10-mode field"));
  const double p = diagonal_exponent(cfg);
  double worst_o = 0.0;
  nlohmann::json orth = nlohmann::json::array();
  for (int N : {1, 2, 4, 8, 16}) {
    auto sys = generate_orthonormal_system(cfg, g, N, rc.seed * 1000 + N, rc.mixing);
    auto n = random_weights(N, rc.seed * 1000 + N);
    auto r = dunkl_transfer_orthonormal(cfg, g, sys.C, n, p, p);
    auto o = strichartz_orthonormal(cfg, g, sys, n, p, p);
    double full = std::pow(std::pow(r.dunkl_pos, p) + std::pow(r.dunkl_neg, p), 1.0 / p) / o.rhs;
    double d = std::max(r.defect, std::abs(full - o.ratio) / o.ratio);
    worst_o = std::max(worst_o, d);
    orth.push_back({{"N", N}, {"dunkl_ratio", full}, {"laguerre_ratio", o.ratio}, {"defect", d}});
  }
  out.checks.push_back(le("dunkl.orthonormal_equality", worst_o, 1e-6, "N <= 16"));
  out.data["single"] = singles;
  out.data["orthonormal"] = orth;
}

}  // namespace

bool SuiteResult::passed() const {
  for (auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const Check* SuiteResult::find(const std::string& id) const {
  for (auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

SuiteResult run_suite(const std::string& name, const RunConfig& rc) {
  SuiteResult out;
  out.suite = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    out.geometry = geometry_of(rc).describe();
    if (name == "basis") suite_basis(rc, out);
    else if (name == "semigroup") suite_semigroup(rc, out);
    else if (name == "kernel") suite_kernel(rc, out);
    else if (name == "transform") suite_transform(rc, out);
    else if (name == "analytic") suite_analytic(rc, out);
    else if (name == "schatten") suite_schatten(rc, out);
    else if (name == "strichartz") suite_strichartz(rc, out);
    else if (name == "restriction") suite_restriction(rc, out);
    else if (name == "hls") suite_hls(rc, out);
    else if (name == "dunkl") suite_dunkl(rc, out);
    else throw ConfigDiagnostic("unknown suite '" + name + "'");
  } catch (const ConfigDiagnostic&) {
    throw;
  } catch (const ConfigError& e) {
    out.skipped = true;
    out.skip_reason = e.what();
  } catch (const std::exception& e) {
    out.checks.push_back({name + ".exception", false, 0.0, 0.0, "", e.what()});
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

nlohmann::json to_json(const Check& c) {
  return {{"id", c.id}, {"passed", c.passed}, {"value", jnum(c.value)}, {"threshold", jnum(c.threshold)},
          {"relation", c.relation}, {"detail", c.detail}};
}

nlohmann::json to_json(const SuiteResult& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (auto& c : r.checks) checks.push_back(to_json(c));
  std::string status = r.skipped ? "skipped" : (r.passed() ? "pass" : "fail");
  nlohmann::json j = {{"suite", r.suite}, {"status", status}, {"geometry", r.geometry},
                      {"checks", checks}, {"refused", r.refused}, {"data", r.data},
                      {"seconds", r.seconds}};
  if (r.skipped) j["skip_reason"] = r.skip_reason;
  nlohmann::json tables = nlohmann::json::array();
  for (auto& t : r.tables) tables.push_back("tables/" + r.suite + "_" + t.name + ".csv");
  j["tables"] = tables;
  return j;
}

nlohmann::json build_report(const RunConfig& rc, const std::vector<SuiteResult>& results,
                            const std::string& generated_at) {
  nlohmann::json suites = nlohmann::json::array(), failed = nlohmann::json::array();
  int total = 0, passed = 0, skipped = 0, refused = 0;
  for (auto& r : results) {
    suites.push_back(to_json(r));
    skipped += r.skipped;
    refused += int(r.refused.size());
    for (auto& c : r.checks) {
      ++total;
      if (c.passed)
        ++passed;
      else
        failed.push_back(c.id);
    }
  }
  return {{"schema_version", kReportSchemaVersion},
          {"generated_at", generated_at},
          {"config_hash", config_hash(rc)},
          {"config", canonical_text(rc)},
          {"geometry", geometry_of(rc).describe()},
          {"suites", suites},
          {"summary", {{"checks", total}, {"passed", passed}, {"failed", failed},
                       {"skipped_suites", skipped}, {"refused_entries", refused}}},
          {"status", failed.empty() ? "pass" : "fail"}};
}

std::string human_summary(const RunConfig& rc, const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  os << "geometry " << geometry_of(rc).describe() << "  config " << config_hash(rc) << "\n";
  int bad = 0;
  for (auto& r : results) {
    char line[160];
    int np = 0;
    for (auto& c : r.checks) np += c.passed;
    const char* st = r.skipped ? "SKIP" : (r.passed() ? "PASS" : "FAIL");
    std::snprintf(line, sizeof line, "%-12s %-4s %2d/%-2d checks %8.2fs", r.suite.c_str(), st, np,
                  int(r.checks.size()), r.seconds);
    os << line;
    if (r.skipped) os << "  (" << r.skip_reason << ")";
    if (!r.refused.empty()) os << "  refused " << r.refused.size();
    os << "\n";
    for (auto& c : r.checks)
      if (!c.passed) {
        ++bad;
        os << "  failed " << c.id << ": " << num(c.value) << " " << c.relation << " " << num(c.threshold);
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
      }
    for (auto& s : r.refused) os << "  skipped " << s << "\n";
  }
  os << (bad ? "FAIL" : "PASS") << "\n";
  return os.str();
}

}  // namespace lab
