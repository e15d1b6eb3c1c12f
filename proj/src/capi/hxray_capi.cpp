#include "hxray/hxray.h"

#include "hxray/frequency.hpp"
#include "hxray/run.hpp"

#include <cstdlib>
#include <cstring>

struct hx_structure {
  hxray::algebra::HTypeStructure S;
};

struct hx_operator {
  hxray::fock::FockOperator A;
};

namespace {

thread_local std::string g_error;

hx_status to_status(hxray::ErrorCode c) { return static_cast<hx_status>(static_cast<int>(c)); }

template <class Fn>
hx_status guard(Fn &&fn) {
  g_error.clear();
  try {
    fn();
    return HX_OK;
  } catch (const hxray::Error &e) {
    g_error = std::string(e.reason()) + ": " + e.what();
    return to_status(e.code());
  } catch (const std::exception &e) {
    g_error = std::string("internal_error: ") + e.what();
    return HX_E_INTERNAL;
  } catch (...) {
    g_error = "internal_error: unknown exception";
    return HX_E_INTERNAL;
  }
}

void need(const void *p, const char *what) {
  if (!p) hxray::fail(hxray::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

hxray::Vec vec(const double *p, int n) { return Eigen::Map<const hxray::Vec>(p, n); }

void put(const hxray::Vec &v, double *out) { std::memcpy(out, v.data(), sizeof(double) * v.size()); }

char *dup(const std::string &s) {
  char *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char *hx_last_error(void) { return g_error.c_str(); }

const char *hx_status_reason(hx_status s) {
  switch (s) {
    case HX_OK: return "ok";
    case HX_E_INTERNAL: return "internal_error";
    default: return hxray::Error(static_cast<hxray::ErrorCode>(s), "").reason();
  }
}

const char *hx_version(void) { return "1.0.0"; }

hx_status hx_structure_heisenberg(int n, hx_structure **out) {
  return guard([&] {
    need(out, "out");
    *out = new hx_structure{hxray::algebra::heisenberg(n)};
  });
}

hx_status hx_structure_quaternionic(hx_structure **out) {
  return guard([&] {
    need(out, "out");
    *out = new hx_structure{hxray::algebra::quaternionic()};
  });
}

hx_status hx_structure_custom(int n, int m, const double *generators, hx_structure **out) {
  return guard([&] {
    need(out, "out");
    need(generators, "generators");
    hxray::require(n >= 1 && m >= 1, hxray::ErrorCode::InvalidArgument, "n and m must be >= 1");
    std::vector<hxray::Mat> g;
    const int d = 2 * n;
    for (int k = 0; k < m; ++k)
      g.push_back(Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          generators + static_cast<std::size_t>(k) * d * d, d, d));
    *out = new hx_structure{hxray::algebra::custom(n, g)};
  });
}

void hx_structure_free(hx_structure *s) { delete s; }

hx_status hx_structure_dims(const hx_structure *s, int *n, int *m) {
  return guard([&] {
    need(s, "structure");
    if (n) *n = s->S.n;
    if (m) *m = s->S.m;
  });
}

hx_status hx_j_map(const hx_structure *s, const double *mu, double *out) {
  return guard([&] {
    need(s, "structure");
    need(mu, "mu");
    need(out, "out");
    const hxray::Mat J = hxray::algebra::j_map(s->S, vec(mu, s->S.m));
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(out, J.rows(), J.cols()) = J;
  });
}

hx_status hx_group_mul(const hx_structure *s, const double *x1, const double *u1, const double *x2,
                       const double *u2, double *x_out, double *u_out) {
  return guard([&] {
    need(s, "structure");
    need(x1, "x1"), need(u1, "u1"), need(x2, "x2"), need(u2, "u2"), need(x_out, "x_out"), need(u_out, "u_out");
    const int d = s->S.dim_v(), m = s->S.m;
    const auto r = hxray::algebra::group_mul(s->S, {vec(x1, d), vec(u1, m)}, {vec(x2, d), vec(u2, m)});
    put(r.x, x_out);
    put(r.u, u_out);
  });
}

hx_status hx_geodesic_point(const hx_structure *s, const double *base_x, const double *base_u, const double *nu,
                            const double *lambda, double t, double *x_out, double *u_out) {
  return guard([&] {
    need(s, "structure");
    need(base_x, "base_x"), need(base_u, "base_u"), need(nu, "nu"), need(lambda, "lambda");
    need(x_out, "x_out"), need(u_out, "u_out");
    const int d = s->S.dim_v(), m = s->S.m;
    const hxray::geodesics::GeodesicSpec g{{vec(base_x, d), vec(base_u, m)}, vec(nu, d), vec(lambda, m)};
    hxray::geodesics::check_spec(s->S, g);
    const auto p = hxray::geodesics::geodesic_point(s->S, g, t);
    put(p.x, x_out);
    put(p.u, u_out);
  });
}

hx_status hx_xray_gaussian(const hx_structure *s, double a, double b, const double *base_x, const double *base_u,
                           const double *nu, const double *lambda, double *re, double *im) {
  return guard([&] {
    need(s, "structure");
    need(base_x, "base_x"), need(base_u, "base_u"), need(nu, "nu"), need(lambda, "lambda");
    need(re, "re"), need(im, "im");
    const int d = s->S.dim_v(), m = s->S.m;
    const auto f = hxray::transform::TestFunction::gaussian(d, m, a, b);
    const hxray::geodesics::GeodesicSpec g{{vec(base_x, d), vec(base_u, m)}, vec(nu, d), vec(lambda, m)};
    const auto v = hxray::transform::xray(s->S, f, g, hxray::quad::Quadrature{});
    *re = v.value.real();
    *im = v.value.imag();
  });
}

hx_status hx_compatible(int m, const double *lambda, const double *mu, int *k, int *ok) {
  return guard([&] {
    need(lambda, "lambda"), need(mu, "mu"), need(k, "k"), need(ok, "ok");
    hxray::require(m >= 1, hxray::ErrorCode::InvalidArgument, "m must be >= 1");
    const auto r = hxray::frequency::compatible(vec(lambda, m), vec(mu, m));
    *ok = r.has_value() ? 1 : 0;
    *k = r.value_or(0);
  });
}

hx_status hx_multiplier(const hx_structure *s, const double *nu, const double *lambda, const double *mu, int L,
                        int method, hx_operator **out) {
  return guard([&] {
    need(s, "structure");
    need(nu, "nu"), need(lambda, "lambda"), need(mu, "mu"), need(out, "out");
    hxray::require(L >= 0, hxray::ErrorCode::InvalidArgument, "L must be >= 0");
    const int d = s->S.dim_v(), m = s->S.m;
    const hxray::Vec l = vec(lambda, m);
    const auto pair = hxray::frequency::make_pair(l, vec(mu, m));
    const hxray::fock::FockBasis B(s->S.n, L);
    const hxray::Vec n = vec(nu, d);
    hxray::quad::Quadrature q;
    hxray::fock::FockOperator A;
    switch (method) {
      case 0: A = hxray::frequency::multiplier_J(s->S, n, l, pair, B, q); break;
      case 1: A = hxray::frequency::multiplier_J_quadrature(s->S, n, l, pair, B, q); break;
      case 2: A = hxray::frequency::multiplier_J_spectral(s->S, n, l, pair, B); break;
      default: hxray::fail(hxray::ErrorCode::InvalidArgument, "method must be 0, 1 or 2");
    }
    *out = new hx_operator{A};
  });
}

hx_status hx_gft_gaussian(const hx_structure *s, double a, double b, const double *mu, int L, hx_operator **out) {
  return guard([&] {
    need(s, "structure");
    need(mu, "mu"), need(out, "out");
    hxray::require(L >= 0, hxray::ErrorCode::InvalidArgument, "L must be >= 0");
    const auto f = hxray::transform::TestFunction::gaussian(s->S.dim_v(), s->S.m, a, b);
    const hxray::fock::FockBasis B(s->S.n, L);
    *out = new hx_operator{hxray::frequency::gft(s->S, f, vec(mu, s->S.m), B, hxray::quad::Quadrature{})};
  });
}

hx_status hx_averaged_eigenvalues(int n, int k, double wnorm, int L, double *out) {
  return guard([&] {
    need(out, "out");
    const auto e = hxray::frequency::averaged_normal_eigenvalues(n, k, wnorm, L);
    std::copy(e.begin(), e.end(), out);
  });
}

hx_status hx_operator_dims(const hx_operator *op, int *n, int *L, int *dim) {
  return guard([&] {
    need(op, "operator");
    if (n) *n = op->A.basis.n();
    if (L) *L = op->A.basis.L();
    if (dim) *dim = op->A.basis.size();
  });
}

hx_status hx_operator_entries(const hx_operator *op, double *out) {
  return guard([&] {
    need(op, "operator");
    need(out, "out");
    const auto &E = op->A.entries;
    for (Eigen::Index r = 0; r < E.rows(); ++r)
      for (Eigen::Index c = 0; c < E.cols(); ++c) {
        out[2 * (r * E.cols() + c)] = E(r, c).real();
        out[2 * (r * E.cols() + c) + 1] = E(r, c).imag();
      }
  });
}

hx_status hx_operator_save(const hx_operator *op, const char *path) {
  return guard([&] {
    need(op, "operator");
    need(path, "path");
    hxray::fock::save_operator(op->A, path);
  });
}

hx_status hx_operator_save_csv(const hx_operator *op, const char *path) {
  return guard([&] {
    need(op, "operator");
    need(path, "path");
    hxray::fock::save_operator_csv(op->A, path);
  });
}

hx_status hx_operator_load(const char *path, hx_operator **out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new hx_operator{hxray::fock::load_operator(path)};
  });
}

void hx_operator_free(hx_operator *op) { delete op; }

void hx_run_options_init(hx_run_options *o) {
  if (!o) return;
  o->out_dir = nullptr;
  o->has_seed = 0;
  o->seed = 0;
  o->threads = 0;
  o->emit_matrices = 0;
  o->write_files = 1;
}

hx_status hx_run(const char *subcommand, const char *config_json, const hx_run_options *opts, char **report,
                 int *exit_code) {
  const hx_status st = guard([&] {
    need(subcommand, "subcommand");
    need(config_json, "config_json");
    need(exit_code, "exit_code");
    hxray::run::Options o;
    if (opts) {
      if (opts->out_dir) o.out_dir = opts->out_dir;
      o.has_seed = opts->has_seed != 0;
      o.seed = opts->seed;
      o.threads = opts->threads;
      o.emit_matrices = opts->emit_matrices != 0;
      o.write_files = opts->write_files != 0;
    }
    const auto r = hxray::run::run(subcommand, config_json, o);
    *exit_code = r.exit_code;
    if (report) *report = r.report.empty() ? nullptr : dup(r.report);
    g_error = r.diagnostic;
  });
  if (st == HX_OK && exit_code && *exit_code == 2) return HX_E_CONFIG;
  return st;
}

void hx_string_free(char *s) { std::free(s); }

}
