#include "hxray/run.hpp"

#include "hxray/config.hpp"
#include "hxray/reconstruct.hpp"
#include "hxray/report.hpp"
#include "hxray/special.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace hxray::run {

namespace {

using config::Fields;
using config::json;
using fock::FockBasis;
using fock::FockOperator;
using report::Report;

struct Ctx {
  config::RunConfig rc;
  Fields &e;
  Report &rep;
  Exec ex;
  bool parsing = true;
  std::string out_dir;
  bool emit = false;
  bool write = true;

  const algebra::HTypeStructure &S() const { return rc.structure; }
  const quad::Quadrature &q() const { return rc.quadrature; }
  std::string key(const std::string &k) const { return "experiment/" + k; }

  // Ends the parsing phase; later errors are reported as run failures.
  void start() {
    e.finish();
    parsing = false;
  }

  std::string artifact_path(const std::string &name) {
    return (std::filesystem::path(out_dir) / name).string();
  }
  void emit_operator(const std::string &name, const FockOperator &A) {
    if (!emit || !write) return;
    std::filesystem::create_directories(out_dir);
    const std::string p = artifact_path(name);
    fock::save_operator_csv(A, p);
    rep.add_artifact(name);
  }
  void emit_text(const std::string &name, const std::string &text) {
    if (!emit || !write) return;
    std::filesystem::create_directories(out_dir);
    report::write_text(artifact_path(name), text);
    rep.add_artifact(name);
  }
};

Vec unit_vector(Fields &f, const std::string &key, int size) {
  Vec v = f.vec(key, size);
  if (std::abs(v.norm() - 1.0) > 1e-9) f.error(key, "expected a unit vector");
  return v.normalized();
}

Vec nonzero_vector(Fields &f, const std::string &key, int size) {
  Vec v = f.vec(key, size);
  if (v.norm() == 0.0) f.error(key, "expected a nonzero vector");
  return v;
}

std::vector<algebra::GroupPoint> parse_points(Fields &f, const std::string &key, const algebra::HTypeStructure &S) {
  std::vector<algebra::GroupPoint> pts;
  if (!f.has(key)) {
    Vec x = Vec::Zero(S.dim_v()), u = Vec::Zero(S.m);
    pts.push_back({x, u});
    x(0) = 0.4;
    u(0) = -0.3;
    pts.push_back({x, u});
    x = Vec::LinSpaced(S.dim_v(), -0.5, 0.7);
    u = Vec::LinSpaced(S.m, 0.2, -0.4);
    pts.push_back({x, u});
    return pts;
  }
  for (auto &p : f.objects(key)) {
    algebra::GroupPoint g{p.vec("x", S.dim_v()), p.vec("u", S.m)};
    p.finish();
    pts.push_back(g);
  }
  return pts;
}

double rel_diff(const CMat &a, const CMat &b) {
  const double nb = b.norm();
  return nb > 0.0 ? (a - b).norm() / nb : (a - b).norm();
}

// ---------------------------------------------------------------- selftest

void selftest(Ctx &c) {
  const int samples = c.e.integer("samples", 200, 1, 100000);
  const double tol_clifford = c.e.positive("tol_clifford", 1e-12);
  const double tol_group = c.e.positive("tol_group", 1e-12);
  const double tol_special = c.e.positive("tol_special", 1e-8);
  const double tol_multiplier = c.e.positive("tol_multiplier", 1e-8);
  const double tol_momentum = c.e.positive("tol_momentum", 1e-11);
  const double tol_eigen = c.e.positive("tol_eigen", 1e-12);
  c.start();
  const auto &S = c.S();
  std::mt19937_64 rng(c.rc.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  auto rvec = [&](int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = nd(rng);
    return v;
  };
  double cl = 0.0, assoc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vec mu = rvec(S.m);
    const Mat J = algebra::j_map(S, mu);
    cl = std::max(cl, (J * J + mu.squaredNorm() * Mat::Identity(S.dim_v(), S.dim_v())).norm() / mu.squaredNorm());
    const algebra::GroupPoint a{rvec(S.dim_v()), rvec(S.m)}, b{rvec(S.dim_v()), rvec(S.m)},
        d{rvec(S.dim_v()), rvec(S.m)};
    const auto l = algebra::group_mul(S, algebra::group_mul(S, a, b), d);
    const auto r = algebra::group_mul(S, a, algebra::group_mul(S, b, d));
    assoc = std::max(assoc, (l.x - r.x).norm() + (l.u - r.u).norm());
  }
  c.rep.results()["clifford_residual"] = cl;
  c.rep.results()["associativity_residual"] = assoc;
  c.rep.check_le("clifford_identity", cl, tol_clifford, c.key("tol_clifford"));
  c.rep.check_le("group_associativity", assoc, tol_group, c.key("tol_group"));

  // conserved left momentum along one geodesic
  const Vec nu = rvec(S.dim_v()).normalized();
  const Vec lam = rvec(S.m);
  double drift = 0.0;
  const auto m0 = geodesics::momentum_left(S, geodesics::flow_origin(S, nu, lam, 0.0), {nu, lam});
  for (int i = 0; i <= 200; ++i) {
    const double s = 0.1 * i;
    const auto p = geodesics::flow_origin(S, nu, lam, s);
    const auto m = geodesics::momentum_left(S, p, {geodesics::flow_momentum(S, nu, lam, s), lam});
    drift = std::max(drift, (m.nu - m0.nu).norm());
  }
  c.rep.results()["momentum_drift"] = drift;
  c.rep.check_le("momentum_conservation", drift, tol_momentum, c.key("tol_momentum"));

  // entry functions against the Schrodinger model, small degrees
  double sp = 0.0;
  Vec z(2);
  z << 0.8, -0.5;
  for (int a = 0; a <= 4; ++a) {
    const auto pa = fock::sample_hermite({a}, 96, 12.0);
    const auto r = fock::schrodinger_apply(1.0, z, 0.2, pa);
    for (int b = 0; b <= 4; ++b) {
      const auto pb = fock::sample_hermite({b}, 96, 12.0);
      sp = std::max(sp, std::abs(fock::grid_inner(r, pb) - fock::entry_function(1.0, {a}, {b}, z, 0.2)));
    }
  }
  c.rep.results()["special_function_error"] = sp;
  c.rep.check_le("special_function_oracle", sp, tol_special, c.key("tol_special"));

  // multiplier closed form against loop quadrature on a parallel pair
  const Vec l1 = lam.normalized();
  const auto pair = frequency::parallel_pair(l1, 1);
  const FockBasis B(S.n, std::min(c.rc.L, 6));
  const auto Jq = frequency::multiplier_J_quadrature(S, nu, l1, pair, B, c.q());
  const auto Js = frequency::multiplier_J_spectral(S, nu, l1, pair, B);
  const double md = (Jq.entries - Js.entries).cwiseAbs().maxCoeff();
  c.rep.results()["multiplier_difference"] = md;
  c.rep.check_le("multiplier_cross_check", md, tol_multiplier, c.key("tol_multiplier"));

  double ed = 0.0;
  const auto eig = frequency::averaged_normal_eigenvalues(S.n, 1, 1.3, 6);
  for (int l = 0; l <= 6; ++l)
    ed = std::max(ed, std::abs(eig[l] - frequency::averaged_normal_eigenvalue_reduced(S.n, l, 1, 1.3)));
  c.rep.results()["eigenvalue_forms_difference"] = ed;
  c.rep.check_le("eigenvalue_forms", ed, tol_eigen, c.key("tol_eigen"));
}

// ---------------------------------------------------------------- geodesic

void geodesic(Ctx &c) {
  const auto &S = c.S();
  const Vec nu = unit_vector(c.e, "nu", S.dim_v());
  const Vec lam = c.e.vec("lambda", S.m);
  algebra::GroupPoint base = algebra::identity(S);
  if (c.e.has("base")) {
    Fields b = c.e.object("base");
    base = {b.vec("x", S.dim_v()), b.vec("u", S.m)};
    b.finish();
  }
  const double s_max = c.e.positive("s_max", 20.0);
  const int steps = c.e.integer("steps", 2000, 2, 10000000);
  const double fd = c.e.positive("fd_step", 1e-4);
  const double tol_speed = c.e.positive("tol_speed", 1e-8);
  const double tol_helical = c.e.positive("tol_helical", 1e-12);
  const double tol_momentum = c.e.positive("tol_momentum", 1e-11);
  const double small = c.e.positive("small_lambda", 1e-8);
  const double s_cont = c.e.positive("continuity_s_max", 5.0);
  const double tol_cont = c.e.positive("tol_continuity", 1e-6);
  c.start();
  const geodesics::GeodesicSpec g{base, nu, lam};
  geodesics::check_spec(S, g);
  const double r = lam.norm();

  // left-trivialized velocity by central differences: horizontal part unit, central part zero
  double speed = 0.0, vert = 0.0, drift = 0.0, helical = 0.0;
  std::ostringstream traj;
  traj << "s";
  for (int j = 0; j < S.dim_v(); ++j) traj << ",x" << j;
  for (int j = 0; j < S.m; ++j) traj << ",u" << j;
  traj << "\n";
  const auto m0 = geodesics::momentum_left(S, geodesics::flow_origin(S, nu, lam, 0.0), {nu, lam});
  for (int i = 0; i <= steps; ++i) {
    const double s = s_max * i / steps;
    const auto p = geodesics::geodesic_point(S, g, s);
    const auto pinv = algebra::group_inv(S, p);
    const auto a = algebra::group_mul(S, pinv, geodesics::geodesic_point(S, g, s + fd));
    const auto b = algebra::group_mul(S, pinv, geodesics::geodesic_point(S, g, s - fd));
    const Vec vx = (a.x - b.x) / (2.0 * fd), vu = (a.u - b.u) / (2.0 * fd);
    speed = std::max(speed, std::abs(vx.norm() - 1.0));
    vert = std::max(vert, vu.norm());
    const auto po = geodesics::flow_origin(S, nu, lam, s);
    const auto m = geodesics::momentum_left(S, po, {geodesics::flow_momentum(S, nu, lam, s), lam});
    drift = std::max(drift, (m.nu - m0.nu).norm() + (m.zeta - m0.zeta).norm());
    if (r > 0.0) {
      for (int k : {-2, -1, 1, 3}) {
        const auto pr = geodesics::helical_shift(S, nu, lam, s, k);
        helical = std::max(helical, ((pr.first.x - pr.second.x).norm() + (pr.first.u - pr.second.u).norm()) /
                                        std::max(1.0, pr.first.u.norm()));
      }
    }
    traj << report::dump(json(s), 0);
    for (int j = 0; j < S.dim_v(); ++j) traj << "," << report::dump(json(p.x(j)), 0);
    for (int j = 0; j < S.m; ++j) traj << "," << report::dump(json(p.u(j)), 0);
    traj << "\n";
  }
  // small-charge member against the line, and the series switch
  double cont = 0.0, sw = 0.0;
  const Vec lsmall = (r > 0.0 ? lam / r : Vec(Vec::Unit(S.m, 0))) * small;
  for (int i = 0; i <= 500; ++i) {
    const double s = s_cont * i / 500;
    const auto a = geodesics::flow_origin(S, nu, lsmall, s);
    const auto b = geodesics::flow_origin(S, nu, Vec::Zero(S.m), s);
    cont = std::max(cont, (a.x - b.x).norm() + (a.u - b.u).norm());
  }
  if (r > 0.0) {
    const double s0 = geodesics::kSeriesThreshold / r;
    for (double d : {1e-12, 1e-10}) {
      const auto a = geodesics::flow_origin(S, nu, lam, s0 * (1.0 - d));
      const auto b = geodesics::flow_origin(S, nu, lam, s0 * (1.0 + d));
      sw = std::max(sw, ((a.x - b.x).norm() + (a.u - b.u).norm()) / (2.0 * d * s0));
    }
  }
  auto &res = c.rep.results();
  res["speed_error"] = speed;
  res["central_velocity"] = vert;
  res["momentum_drift"] = drift;
  if (r > 0.0) {
    res["helical_residual"] = helical;
    res["guiding_center"] = report::to_json(geodesics::guiding_center(S, geodesics::flow_origin(S, nu, lam, 0.0), nu, lam));
    res["series_switch_slope"] = sw;
  }
  res["small_charge_deviation"] = cont;
  c.rep.check_le("unit_speed", speed, tol_speed, c.key("tol_speed"));
  c.rep.check_le("horizontal_velocity", vert, tol_speed, c.key("tol_speed"));
  c.rep.check_le("momentum_conservation", drift, tol_momentum, c.key("tol_momentum"));
  if (r > 0.0) c.rep.check_le("helical_identity", helical, tol_helical, c.key("tol_helical"));
  c.rep.check_le("small_charge_continuity", cont, tol_cont, c.key("tol_continuity"));
  c.emit_text("trajectory.csv", traj.str());
}

// ---------------------------------------------------------------- xray

void xray(Ctx &c) {
  const auto &S = c.S();
  Fields ff = c.e.object("function");
  const auto f = config::parse_function(ff, S);
  const Vec nu = unit_vector(c.e, "nu", S.dim_v());
  const Vec lam = nonzero_vector(c.e, "lambda", S.m);
  const auto pts = parse_points(c.e, "points", S);
  const std::vector<double> eps = c.e.numbers("homogeneity_eps", {1.0 / 3.0, 2.0});
  const double tol_h = c.e.positive("tol_homogeneity", 1e-9);
  const double tol_f = c.e.positive("tol_factorization", 1e-9);
  const double tol_p = c.e.positive("tol_poisson", 1e-7);
  const int k = c.e.integer("k", 1);
  const bool l1 = c.e.boolean("l1_bounds", true);
  const double slack = c.e.positive("l1_slack", 1e-6);
  const std::vector<double> deps = c.e.numbers("dilation_eps", {0.5});
  const double tol_d = c.e.positive("tol_dilation", 1e-7);
  for (double e : eps)
    if (!(e > 0.0)) c.e.error("homogeneity_eps", "values must be positive");
  for (double e : deps)
    if (!(e > 0.0)) c.e.error("dilation_eps", "values must be positive");
  c.start();
  auto &res = c.rep.results();
  const auto fh = transform::handle(f, c.q().line_tau);
  json vals = json::array();
  double fac = 0.0;
  const auto per = transform::periodized(S, fh, lam);
  for (const auto &p : pts) {
    const auto v = transform::xray(S, f, {p, nu, lam}, c.q());
    const cplx h = transform::holonomy(S, per, {p, nu, lam}, c.q());
    fac = std::max(fac, std::abs(v.value - h));
    json e;
    e["x"] = report::to_json(p.x);
    e["u"] = report::to_json(p.u);
    e["value"] = report::to_json(v.value);
    e["holonomy_of_periodization"] = report::to_json(h);
    e["tail_bound"] = v.tail_bound;
    e["nodes"] = v.nodes;
    vals.push_back(e);
  }
  res["values"] = vals;
  res["factorization_residual"] = fac;
  c.rep.check_le("factorization", fac, tol_f, c.key("tol_factorization"));
  json hom = json::array();
  for (double e : eps) {
    const double r = transform::homogeneity_check(S, f, nu, lam, e, pts, c.q());
    hom.push_back({{"eps", e}, {"residual", r}});
    c.rep.check_le("homogeneity eps=" + report::dump(json(e), 0), r, tol_h, c.key("tol_homogeneity"));
  }
  res["homogeneity"] = hom;
  // transform of the periodization equals the group transform at compatible mu
  const FockBasis B(S.n, std::min(c.rc.L, 6));
  const auto pair = frequency::parallel_pair(lam, k);
  const auto Fq = frequency::gft_quotient(S, per, lam, pair, B, c.q(), true, c.ex);
  const auto Fg = frequency::gft(S, f, pair.mu, B, c.q(), c.ex);
  const double pois = rel_diff(Fq.entries, Fg.entries);
  res["poisson_residual"] = pois;
  c.rep.check_le("poisson_summation", pois, tol_p, c.key("tol_poisson"));
  json dil = json::array();
  for (double e : deps) {
    const double r = frequency::dilation_lemma_check(S, f, pair.mu, e, B, c.q(), c.ex);
    dil.push_back({{"eps", e}, {"residual", r}});
    c.rep.check_le("dilation eps=" + report::dump(json(e), 0), r, tol_d, c.key("tol_dilation"));
  }
  res["dilation"] = {{"exponent", frequency::dilation_exponent(S)}, {"checks", dil}};
  if (l1) {
    const double nf = transform::l1_norm_group(S, fh, c.q(), c.ex);
    const double nline = transform::l1_norm_line_transform(S, f, nu, c.q(), c.ex);
    const double nper = transform::l1_norm_quotient(S, per, lam, c.q(), c.ex);
    const double nx = transform::l1_norm_xray(S, f, nu, lam, c.q(), c.ex);
    const double nhol = transform::l1_norm_holonomy(S, per, nu, lam, c.q(), c.ex);
    const double C = 2.0 * kPi / lam.norm();
    res["l1"] = {{"f", nf},
                 {"line_transform", nline},
                 {"periodization", nper},
                 {"xray", nx},
                 {"holonomy", nhol},
                 {"constant", C}};
    c.rep.check_le("l1 line transform / |f|", nline / nf, 1.0 + slack, c.key("l1_slack"));
    c.rep.check_le("l1 periodization / |f|", nper / nf, 1.0 + slack, c.key("l1_slack"));
    c.rep.check_le("l1 xray / (2 pi |lambda|^-1 |f|)", nx / (C * nf), 1.0 + slack, c.key("l1_slack"));
    c.rep.check_le("l1 holonomy / (2 pi |lambda|^-1 |P f|)", nhol / (C * nper), 1.0 + slack, c.key("l1_slack"));
  }
  c.emit_operator("poisson_quotient.csv", Fq);
  c.emit_operator("poisson_group.csv", Fg);
}

// ---------------------------------------------------------------- spectrum

void spectrum(Ctx &c) {
  const auto &S = c.S();
  const int L = c.rc.L;
  const int k = c.e.integer("k", 1);
  const bool formula = c.e.has("w2");
  double wnorm = 0.0;
  Vec lam, mu;
  if (formula) {
    wnorm = std::sqrt(c.e.number("w2"));
  } else {
    lam = nonzero_vector(c.e, "lambda", S.m);
    if (c.e.has("mu")) {
      mu = nonzero_vector(c.e, "mu", S.m);
    } else {
      if (k == 0) c.e.error("k", "k = 0 needs an explicit mu");
      mu = frequency::parallel_pair(lam, k).mu;
    }
  }
  const double eig_tol = c.e.positive("eig_tol", 1e-12);
  const bool has_expect = c.e.has("expect_invertible");
  const bool expect = c.e.boolean("expect_invertible", true);
  const int expect_witness = c.e.integer("expect_witness", -1);
  const int mc = c.e.integer("mc_samples", 0, 0, 100000000);
  const double mc_sigma = c.e.positive("mc_sigma", 3.0);
  const int mc_degrees = c.e.integer("mc_degrees", 4, 0, 40);
  const int lb_configs = c.e.integer("lower_bound_configs", 0, 0, 100000);
  const double tol_forms = c.e.positive("tol_forms", 1e-12);
  c.start();
  auto &res = c.rep.results();
  std::vector<double> eig;
  frequency::CompatiblePair pair;
  if (formula) {
    eig = frequency::averaged_normal_eigenvalues(S.n, k, wnorm, L);
    res["mode"] = "formula";
    res["w2"] = wnorm * wnorm;
  } else {
    pair = frequency::make_pair(lam, mu);
    require(frequency::spectral_valid(lam, mu), ErrorCode::Domain,
            "spectrum: closed-form eigenvalues need mu parallel or antiparallel to lambda");
    wnorm = std::sqrt(mu.norm()) / lam.norm();
    eig = frequency::averaged_normal_eigenvalues(S.n, pair.k, wnorm, L);
    res["mode"] = "pair";
    res["lambda"] = report::to_json(lam);
    res["mu"] = report::to_json(mu);
    res["k"] = pair.k;
    res["w2"] = wnorm * wnorm;
  }
  const int kk = formula ? k : pair.k;
  double forms = 0.0, minv = 1e300;
  json table = json::array();
  for (int l = 0; l <= L; ++l) {
    const double red = frequency::averaged_normal_eigenvalue_reduced(S.n, l, kk, wnorm);
    forms = std::max(forms, std::abs(red - eig[l]));
    minv = std::min(minv, eig[l]);
    json row{{"degree", l}, {"eigenvalue", eig[l]}, {"reduced_form", red}};
    if (S.n > 1) row["lower_bound"] = frequency::eigenvalue_lower_bound(S.n, l, std::abs(kk), wnorm);
    table.push_back(row);
  }
  res["eigenvalues"] = table;
  c.rep.check_le("direct vs reduced eigenvalue forms", forms, tol_forms, c.key("tol_forms"));
  c.rep.check_ge("eigenvalues nonnegative", minv, 0.0, c.key("eig_tol"));
  // only degrees whose image stays inside the truncation are meaningful
  std::vector<double> inside(eig.begin(), eig.begin() + std::max(1, L - std::abs(kk) + 1));
  const auto cert = frequency::invertibility_certificate(inside, eig_tol);
  res["certificate"] = {{"invertible", cert.invertible},
                        {"min_eigenvalue", cert.min_eigenvalue},
                        {"witness_degree", cert.witness_degree},
                        {"threshold", eig_tol}};
  if (has_expect) {
    c.rep.check_flag(expect ? "configuration invertible" : "configuration flagged non-invertible",
                     cert.invertible == expect, c.key("expect_invertible"));
    if (!expect && expect_witness >= 0)
      c.rep.check_eq("witness degree", cert.witness_degree, expect_witness, 0.0, c.key("expect_witness"));
  }
  if (mc > 0 && !formula) {
    const FockBasis B(S.n, L);
    const auto r = frequency::averaged_normal_mc(S, lam, pair, B, mc, c.rc.seed, c.q(), c.ex);
    json rows = json::array();
    for (int l = 0; l <= std::min(mc_degrees, static_cast<int>(r.block_deviation.size()) - 1); ++l) {
      const double bound = mc_sigma * r.block_sigma[l] + 1e-12;
      rows.push_back({{"degree", l}, {"deviation", r.block_deviation[l]}, {"sigma", r.block_sigma[l]}});
      c.rep.check_le("mc degree " + std::to_string(l) + " deviation", r.block_deviation[l], bound,
                     c.key("mc_sigma"));
    }
    res["monte_carlo"] = {{"samples", mc}, {"seed", c.rc.seed}, {"blocks", rows}};
  }
  if (lb_configs > 0) {
    require(S.n > 1, ErrorCode::Domain, "spectrum: lower bound checks need n > 1");
    std::mt19937_64 rng(c.rc.seed);
    std::uniform_real_distribution<double> ud(0.2, 3.0);
    std::uniform_int_distribution<int> kd(0, 4);
    double worst = 1e300, minb = 1e300;
    for (int i = 0; i < lb_configs; ++i) {
      const int kr = kd(rng);
      const double w = ud(rng);
      const auto e2 = frequency::averaged_normal_eigenvalues(S.n, kr, w, L);
      for (int l = 0; l <= L; ++l) {
        const double lb = frequency::eigenvalue_lower_bound(S.n, l, kr, w);
        worst = std::min(worst, e2[l] - lb);
        minb = std::min(minb, lb);
      }
    }
    res["lower_bound"] = {{"configs", lb_configs}, {"min_gap", worst}, {"min_bound", minb}};
    c.rep.check_ge("eigenvalue >= lower bound", worst, -1e-15, c.key("lower_bound_configs"));
    c.rep.check_flag("lower bound positive", minb > 0.0, c.key("lower_bound_configs"));
  }
}

// ---------------------------------------------------------------- verify-slice

reconstruct::SliceOptions parse_slice_options(Fields &e) {
  reconstruct::SliceOptions o;
  const std::string m = e.string("method", "xray", {"xray", "analytic"});
  o.method = m == "xray" ? reconstruct::LhsMethod::XrayQuadrature : reconstruct::LhsMethod::CentralAnalytic;
  o.uniform_x = e.boolean("uniform_x", true);
  o.interior_degree = e.integer("interior_degree", -1, -1, 40);
  return o;
}

void verify_slice(Ctx &c) {
  const auto &S = c.S();
  Fields ff = c.e.object("function");
  const auto f = config::parse_function(ff, S);
  const Vec nu = unit_vector(c.e, "nu", S.dim_v());
  const Vec lam = nonzero_vector(c.e, "lambda", S.m);
  std::vector<Vec> mus;
  if (c.e.has("mus")) {
    mus = c.e.vec_list("mus", S.m);
  } else {
    for (int k : c.e.integers("ks", {1})) {
      if (k == 0) c.e.error("ks", "k = 0 needs an explicit mu");
      mus.push_back(frequency::parallel_pair(lam, k).mu);
    }
  }
  for (std::size_t i = 0; i < mus.size(); ++i)
    if (!frequency::compatible(lam, mus[i]))
      c.e.error("mus/" + std::to_string(i), "not compatible with lambda");
  const auto opt = parse_slice_options(c.e);
  const double tol = c.e.positive("tol", 1e-3);
  const bool refine = c.e.boolean("refine", false);
  const double tol_refined = c.e.positive("tol_refined", 1e-4);
  std::vector<Vec> etas;
  double tol_scalar = 1e-6;
  const bool scalar = c.e.has("scalar");
  if (scalar) {
    Fields s = c.e.object("scalar");
    etas = s.vec_list("etas", S.dim_v());
    tol_scalar = s.positive("tol", tol_scalar);
    s.finish();
  }
  c.start();
  const FockBasis B(S.n, c.rc.L);
  json cases = json::array();
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const auto pair = frequency::make_pair(lam, mus[i]);
    const auto r = reconstruct::slice_verify(S, f, nu, lam, pair, B, c.q(), opt, c.ex);
    json e{{"mu", report::to_json(mus[i])}, {"k", pair.k}, {"interior_degree", r.interior_degree},
           {"residual", r.residual}, {"lhs_norm", r.lhs_norm}, {"rhs_norm", r.rhs_norm}};
    const std::string tag = "slice k=" + std::to_string(pair.k) + " mu#" + std::to_string(i);
    c.rep.check_le(tag, r.residual, tol, c.key("tol"));
    if (refine) {
      const auto r2 = reconstruct::slice_verify(S, f, nu, lam, pair, B, c.q().doubled(), opt, c.ex);
      e["refined_residual"] = r2.residual;
      c.rep.check_le(tag + " doubled quadrature", r2.residual, tol_refined, c.key("tol_refined"));
    }
    cases.push_back(e);
    c.emit_operator("slice_lhs_" + std::to_string(i) + ".csv", r.lhs);
    c.emit_operator("slice_rhs_" + std::to_string(i) + ".csv", r.rhs);
  }
  c.rep.results()["cases"] = cases;
  if (scalar) {
    const auto r = reconstruct::scalar_slice_verify(S, f, nu, lam, etas, c.q(), c.ex);
    json rows = json::array();
    for (std::size_t i = 0; i < etas.size(); ++i)
      rows.push_back({{"eta", report::to_json(etas[i])},
                      {"lhs", report::to_json(r.lhs[i])},
                      {"rhs", report::to_json(r.rhs[i])},
                      {"rhs_inner_product_form", report::to_json(r.rhs_inner[i])}});
    c.rep.results()["scalar"] = {{"points", rows},
                                 {"residual", r.residual},
                                 {"inner_product_form_residual", r.residual_inner}};
    c.rep.check_le("scalar slice", r.residual, tol_scalar, c.key("scalar/tol"));
  }
}

// ---------------------------------------------------------------- reconstruct

void reconstruct_cmd(Ctx &c) {
  const auto &S = c.S();
  Fields ff = c.e.object("function");
  const auto f = config::parse_function(ff, S);
  const std::vector<Vec> Z = c.e.vec_list("Z", S.m);
  if (Z.empty()) c.e.error("Z", "expected at least one charge");
  for (std::size_t i = 0; i < Z.size(); ++i)
    if (Z[i].norm() == 0.0) c.e.error("Z/" + std::to_string(i), "charges must be nonzero");
  const std::vector<Vec> mus = c.e.vec_list("mus", S.m);
  reconstruct::InjectivityOptions opt;
  opt.nu_count = c.e.integer("nu_count", 8, 1, 100000);
  opt.unknown_degree = c.e.integer("unknown_degree", -1, -1, c.rc.L);
  opt.compare_degree = c.e.integer("compare_degree", 4, 0, c.rc.L);
  opt.tol = c.e.positive("regularization", 1e-8);
  opt.odd_only = c.e.boolean("odd_only", false);
  opt.solver = c.e.string("solver", "stacked", {"stacked", "averaged"}) == "stacked" ? reconstruct::Solver::Stacked
                                                                                    : reconstruct::Solver::Averaged;
  opt.slice = parse_slice_options(c.e);
  const double tol_err = c.e.positive("tol_error", 1e-2);
  const double tol_null = c.e.positive("tol_null", 1e-8);
  const bool require_all = c.e.boolean("require_reachable", true);
  bool obstruction = c.e.has("obstruction");
  int ob_k = 0, ob_expect = 1, ob_samples = 8;
  double ob_w2 = 2.0;
  if (obstruction) {
    Fields o = c.e.object("obstruction");
    ob_k = o.integer("k", 0);
    ob_w2 = o.positive("w2", 2.0);
    ob_expect = o.integer("expect_witness", 1);
    ob_samples = o.integer("samples", 8, 1, 100000);
    o.finish();
  }
  c.start();
  opt.seed = c.rc.seed;
  const FockBasis B(S.n, c.rc.L);
  auto &res = c.rep.results();
  const auto r = reconstruct::injectivity_experiment(S, f, Z, mus, B, c.q(), opt, c.ex);
  json pts = json::array();
  for (const auto &p : r.points) {
    json ks = json::array();
    for (int k : p.ks) ks.push_back(k);
    pts.push_back({{"mu", report::to_json(p.mu)},
                   {"charges", p.charges},
                   {"k", ks},
                   {"error", p.error},
                   {"reference_norm", p.reference_norm},
                   {"null_norm", p.null_norm},
                   {"invertible", p.invertible},
                   {"witness_degree", p.witness_degree}});
    c.rep.check_le("recovery mu=" + report::dump(report::to_json(p.mu), 0), p.error, tol_err, c.key("tol_error"));
    c.rep.check_le("null recovery mu=" + report::dump(report::to_json(p.mu), 0), p.null_norm, tol_null,
                   c.key("tol_null"));
  }
  res["points"] = pts;
  res["coverage"] = {{"reachable", r.coverage.reachable_count}, {"nonzero", r.coverage.nonzero_count}};
  res["max_error"] = r.max_error;
  res["max_null"] = r.max_null;
  if (require_all)
    c.rep.check_eq("every requested mu reachable", r.coverage.reachable_count, r.coverage.nonzero_count, 0.0,
                   c.key("require_reachable"));
  if (obstruction) {
    // formula-level configuration: multipliers from the closed form with |w|^2 fixed
    std::vector<FockOperator> J;
    std::vector<CMat> b;
    std::mt19937_64 rng(c.rc.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    CMat F(B.size(), B.size());
    for (Eigen::Index i = 0; i < F.size(); ++i) F.data()[i] = cplx(nd(rng), nd(rng));
    for (int i = 0; i < ob_samples; ++i) {
      const double t = 2.0 * kPi * i / ob_samples;
      CVec w = CVec::Zero(S.n);
      w(0) = std::polar(std::sqrt(ob_w2), t);
      J.push_back(frequency::spectral_form(ob_k, w, B));
      b.push_back(J.back().entries * F);
    }
    const auto rec = reconstruct::recover_from_multipliers(J, b, c.rc.L - std::abs(ob_k), opt.tol);
    json blocks = json::array();
    for (const auto &bl : rec.blocks)
      blocks.push_back({{"degree", bl.degree},
                        {"min_eigenvalue", bl.min_eigenvalue},
                        {"max_eigenvalue", bl.max_eigenvalue},
                        {"recoverable", bl.recoverable}});
    res["obstruction"] = {{"k", ob_k},
                          {"w2", ob_w2},
                          {"invertible", rec.invertible},
                          {"witness_degree", rec.witness_degree},
                          {"clip_level", rec.clip_level},
                          {"blocks", blocks}};
    c.rep.check_flag("obstruction flagged non-invertible", !rec.invertible, c.key("obstruction"));
    c.rep.check_eq("obstruction witness degree", rec.witness_degree, ob_expect, 0.0,
                   c.key("obstruction/expect_witness"));
  }
}

// ---------------------------------------------------------------- support-map

void support_map(Ctx &c) {
  const auto &S = c.S();
  const std::string mode = c.e.string("mode", "shell", {"shell", "cap", "sphere", "discrete"});
  auto &res = c.rep.results();
  res["mode"] = mode;
  reconstruct::SupportResult sr;
  std::string csv;
  auto map_csv = [](const reconstruct::CoverageMap &m) {
    std::ostringstream o;
    const int d = m.grid.empty() ? 0 : static_cast<int>(m.grid[0].size());
    for (int j = 0; j < d; ++j) o << "mu" << j << ",";
    o << "reachable,k\n";
    for (std::size_t i = 0; i < m.grid.size(); ++i) {
      for (int j = 0; j < d; ++j) o << report::dump(json(m.grid[i](j)), 0) << ",";
      o << (m.reachable[i] ? 1 : 0) << "," << m.k[i] << "\n";
    }
    return o.str();
  };
  if (mode == "shell") {
    if (S.m != 1) c.e.error("mode", "shell mode needs a one-dimensional center");
    const std::vector<double> Rs = c.e.numbers("R", {1.0});
    const double eps = c.e.positive("eps", 0.5);
    const double step = c.e.positive("grid_step", 0.01);
    const double radius = c.e.positive("grid_radius", 40.0);
    const bool odd = c.e.boolean("odd_only", true);
    const std::vector<double> sweep = c.e.numbers("eps_sweep", {});
    const double tol = c.e.positive("tol", 1e-9);
    for (double R : Rs)
      if (!(R > 0.0)) c.e.error("R", "values must be positive");
    for (double e : sweep)
      if (!(e > 0.0)) c.e.error("eps_sweep", "values must be positive");
    c.start();
    json rows = json::array();
    double base = 0.0;
    for (std::size_t i = 0; i < Rs.size(); ++i) {
      const double R = Rs[i];
      // the grid scales with R^2 so it stays aligned with the lattice
      sr = reconstruct::shell_experiment(R, eps, step * R * R, radius * R * R, odd);
      rows.push_back({{"R", R},
                      {"threshold", sr.threshold},
                      {"unreachable_radius", sr.map.unreachable_radius},
                      {"construction_radius", sr.construction_radius},
                      {"stated_bound", sr.stated_bound},
                      {"constant", sr.constant},
                      {"reachable_fraction", sr.map.fraction()}});
      const std::string tag = "R=" + report::dump(json(R), 0);
      c.rep.check_eq("threshold equals construction " + tag, sr.threshold, sr.construction_radius,
                     tol * R * R, c.key("tol"));
      c.rep.check_le("threshold within stated bound " + tag, sr.threshold, sr.stated_bound, c.key("eps"));
      if (i == 0) base = sr.threshold / (R * R);
      c.rep.check_eq("R^2 scaling " + tag, sr.threshold / (R * R), base, tol, c.key("R"));
      if (i == 0) csv = map_csv(sr.map);
    }
    res["shells"] = rows;
    if (!sweep.empty()) {
      json sw = json::array();
      double prev = 1e300;
      bool mono = true;
      for (double e : sweep) {
        const auto r = reconstruct::shell_experiment(1.0, e, step, radius, odd);
        sw.push_back({{"eps", e}, {"threshold", r.threshold}, {"construction_radius", r.construction_radius}});
        mono = mono && r.threshold <= prev;
        prev = r.threshold;
      }
      res["eps_sweep"] = sw;
      c.rep.check_flag("threshold nonincreasing in eps", mono, c.key("eps_sweep"));
    }
  } else if (mode == "cap" || mode == "sphere") {
    if (S.m < 2) c.e.error("mode", "cap and sphere modes need a center of dimension >= 2");
    Vec l0;
    double eps = 2.0;
    if (mode == "cap") {
      l0 = nonzero_vector(c.e, "lambda0", S.m);
      eps = c.e.positive("eps", 0.5);
    } else {
      l0 = Vec::Zero(S.m);
      l0(0) = c.e.positive("R", 1.0);
    }
    const double rmax = c.e.positive("grid_radius", 20.0);
    const int shells = c.e.integer("shells", 40, 1, 100000);
    const int dirs = c.e.integer("directions", 200, 1, 10000000);
    const bool expect_all = c.e.boolean("expect_all_reachable", mode == "sphere");
    c.start();
    const auto grid = reconstruct::shell_grid(S.m, rmax * l0.squaredNorm(), shells, dirs);
    sr = mode == "cap" ? reconstruct::cap_experiment(l0, eps, grid) : reconstruct::sphere_experiment(l0.norm(), grid);
    res["lambda0"] = report::to_json(l0);
    res["eps"] = eps;
    res["unreachable_radius"] = sr.map.unreachable_radius;
    res["constant"] = sr.constant;
    res["reachable"] = sr.map.reachable_count;
    res["nonzero"] = sr.map.nonzero_count;
    if (expect_all)
      c.rep.check_eq("every nonzero grid point reachable", sr.map.reachable_count, sr.map.nonzero_count, 0.0,
                     c.key("expect_all_reachable"));
    csv = map_csv(sr.map);
  } else {
    const std::vector<Vec> Z = c.e.vec_list("Z", S.m);
    if (Z.empty()) c.e.error("Z", "expected at least one charge");
    const double step = c.e.positive("grid_step");
    const double radius = c.e.positive("grid_radius");
    const bool odd = c.e.boolean("odd_only", S.m == 1);
    const bool prefixes = c.e.boolean("prefix_fractions", true);
    c.start();
    if (S.m != 1) fail(ErrorCode::Config, "config: experiment/mode: discrete mode uses a line grid, needs m = 1");
    const auto grid = reconstruct::line_grid(step, radius);
    const auto m = reconstruct::charge_frequency_map(S, Z, grid, odd);
    res["reachable"] = m.reachable_count;
    res["nonzero"] = m.nonzero_count;
    res["fraction"] = m.fraction();
    res["unreachable_radius"] = m.unreachable_radius;
    if (prefixes) {
      json fr = json::array();
      double prev = -1.0;
      bool inc = true;
      for (std::size_t i = 1; i <= Z.size(); ++i) {
        const auto mi = reconstruct::charge_frequency_map(S, std::vector<Vec>(Z.begin(), Z.begin() + i), grid, odd);
        fr.push_back({{"charges", i}, {"fraction", mi.fraction()}});
        inc = inc && mi.fraction() > prev;
        prev = mi.fraction();
      }
      res["prefix_fractions"] = fr;
      c.rep.check_flag("reachable fraction increases with more charges", inc, c.key("prefix_fractions"));
    }
    csv = map_csv(m);
  }
  c.emit_text("coverage.csv", csv);
}

using Handler = void (*)(Ctx &);

const std::map<std::string, Handler> &handlers() {
  static const std::map<std::string, Handler> h{
      {"selftest", selftest},       {"geodesic", geodesic},        {"xray", xray},
      {"spectrum", spectrum},       {"verify-slice", verify_slice}, {"reconstruct", reconstruct_cmd},
      {"support-map", support_map}};
  return h;
}

}  // namespace

const std::vector<std::string> &subcommands() {
  static const std::vector<std::string> s{"selftest", "geodesic", "xray", "spectrum",
                                          "verify-slice", "reconstruct", "support-map"};
  return s;
}

Outcome run(const std::string &subcommand, const std::string &config_text, const Options &opt) {
  Outcome out;
  const auto it = handlers().find(subcommand);
  if (it == handlers().end()) {
    out.diagnostic = "usage_error: unknown subcommand \"" + subcommand + "\"";
    return out;
  }
  json raw, exp;
  config::RunConfig rc;
  try {
    raw = config::parse_text(config_text);
    rc = config::load(raw, exp);
  } catch (const Error &e) {
    out.diagnostic = std::string(e.reason()) + ": " + e.what();
    return out;
  }
  if (!opt.out_dir.empty()) rc.out_dir = opt.out_dir;
  if (opt.emit_matrices) rc.emit_matrices = true;
  Fields ef(exp, "/experiment");
  // seed and thread count live in the experiment block; flags override them
  Report rep(subcommand, raw);
  Ctx c{rc, ef, rep, {}, true, rc.out_dir, rc.emit_matrices, opt.write_files};
  try {
    c.rc.seed = ef.u64("seed", c.rc.seed);
    c.rc.threads = ef.integer("threads", c.rc.threads, 1, 1024);
  } catch (const Error &e) {
    out.diagnostic = std::string(e.reason()) + ": " + e.what();
    return out;
  }
  if (opt.has_seed) c.rc.seed = opt.seed;
  if (opt.threads > 0) c.rc.threads = opt.threads;
  c.ex.threads = c.rc.threads;
  try {
    it->second(c);
  } catch (const Error &e) {
    if (c.parsing) {
      out.diagnostic = std::string(e.reason()) + ": " + e.what();
      return out;
    }
    rep.set_error(e.reason(), e.what());
  } catch (const std::exception &e) {
    if (c.parsing) {
      out.diagnostic = std::string("config_error: ") + e.what();
      return out;
    }
    rep.set_error("internal_error", e.what());
  }
  out.report = report::dump(rep.to_json(report::utc_timestamp())) + "\n";
  out.exit_code = rep.exit_code();
  if (!rep.passed()) {
    for (const auto &a : rep.assertions())
      if (!a.pass) {
        out.diagnostic = "tolerance_failure: " + a.name;
        break;
      }
    if (out.diagnostic.empty()) out.diagnostic = "run_failure: see report error field";
  }
  if (opt.write_files) {
    try {
      std::filesystem::create_directories(c.out_dir);
      out.report_path = (std::filesystem::path(c.out_dir) / rc.report_name).string();
      report::write_text(out.report_path, out.report);
    } catch (const std::exception &e) {
      out.diagnostic = std::string("io_error: ") + e.what();
      out.exit_code = 2;
    }
  }
  return out;
}

}  // namespace hxray::run
