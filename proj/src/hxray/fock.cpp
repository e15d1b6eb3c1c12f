#include "hxray/fock.hpp"

#include "hxray/special.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hxray::fock {

namespace {

void enumerate_degree(int n, int l, int pos, MultiIndex &cur, std::vector<MultiIndex> &out) {
  if (pos == n - 1) {
    cur[pos] = l;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= l; ++v) {
    cur[pos] = v;
    enumerate_degree(n, l - v, pos + 1, cur, out);
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

FockBasis::FockBasis(int n, int L) : n_(n), L_(L) {
  require(n >= 1, ErrorCode::InvalidArgument, "FockBasis: n must be >= 1");
  require(L >= 0, ErrorCode::InvalidArgument, "FockBasis: L must be >= 0");
  starts_.push_back(0);
  for (int l = 0; l <= L; ++l) {
    MultiIndex cur(n, 0);
    enumerate_degree(n, l, 0, cur, indices_);
    starts_.push_back(static_cast<int>(indices_.size()));
  }
  for (int i = 0; i < size(); ++i) lookup_[indices_[i]] = i;
}

int FockBasis::find(const MultiIndex &a) const {
  auto it = lookup_.find(a);
  return it == lookup_.end() ? -1 : it->second;
}

CMat FockOperator::block(int row_deg, int col_deg) const {
  return entries.block(basis.block_start(row_deg), basis.block_start(col_deg),
                       basis.block_size(row_deg), basis.block_size(col_deg));
}

CMat FockOperator::interior(int l) const {
  const int k = basis.interior_size(l);
  return entries.topLeftCorner(k, k);
}

double FockOperator::off_block_mass(int shift) const {
  double s = 0.0;
  for (int c = 0; c < basis.size(); ++c)
    for (int r = 0; r < basis.size(); ++r)
      if (basis.degree_of(r) != basis.degree_of(c) + shift) s += std::norm(entries(r, c));
  return std::sqrt(s);
}

std::string operator_text(const FockOperator &A) {
  std::ostringstream os;
  const FockBasis &b = A.basis;
  os << "hxray-fock-operator 1\n";
  os << "n " << b.n() << "\nL " << b.L() << "\nenumeration graded-lex\n";
  os << "dim " << b.size() << "\nindices\n";
  for (const auto &a : b.indices()) {
    for (std::size_t j = 0; j < a.size(); ++j) os << (j ? " " : "") << a[j];
    os << "\n";
  }
  os << "data row-major complex-pairs\n";
  for (int r = 0; r < b.size(); ++r) {
    for (int c = 0; c < b.size(); ++c) {
      if (c) os << " ";
      os << fmt17(A.entries(r, c).real()) << " " << fmt17(A.entries(r, c).imag());
    }
    os << "\n";
  }
  return os.str();
}

FockOperator parse_operator_text(const std::string &text) {
  std::istringstream is(text);
  std::string tag, enumeration;
  int version = 0, n = 0, L = 0, dim = 0;
  auto expect = [&](const std::string &want) {
    std::string got;
    is >> got;
    require(static_cast<bool>(is) && got == want, ErrorCode::Io,
            "operator file: expected '" + want + "', got '" + got + "'");
  };
  is >> tag >> version;
  require(tag == "hxray-fock-operator" && version == 1, ErrorCode::Io,
          "operator file: bad magic or version");
  expect("n");
  is >> n;
  expect("L");
  is >> L;
  expect("enumeration");
  is >> enumeration;
  require(enumeration == "graded-lex", ErrorCode::Io, "operator file: unsupported enumeration");
  expect("dim");
  is >> dim;
  require(static_cast<bool>(is) && n >= 1 && L >= 0, ErrorCode::Io, "operator file: bad header");
  FockBasis b(n, L);
  require(dim == b.size(), ErrorCode::Io, "operator file: dim does not match n and L");
  expect("indices");
  for (int i = 0; i < dim; ++i) {
    MultiIndex a(n);
    for (int j = 0; j < n; ++j) is >> a[j];
    require(static_cast<bool>(is) && a == b.index(i), ErrorCode::Io,
            "operator file: index list differs from graded-lex order");
  }
  expect("data");
  expect("row-major");
  expect("complex-pairs");
  FockOperator A = FockOperator::zero(b);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      double re = 0, im = 0;
      is >> re >> im;
      require(static_cast<bool>(is), ErrorCode::Io, "operator file: truncated data");
      A.entries(r, c) = cplx(re, im);
    }
  return A;
}

void save_operator(const FockOperator &A, const std::string &path) {
  std::ofstream f(path);
  require(static_cast<bool>(f), ErrorCode::Io, "cannot open " + path + " for writing");
  f << operator_text(A);
  require(static_cast<bool>(f), ErrorCode::Io, "write failed: " + path);
}

FockOperator load_operator(const std::string &path) {
  std::ifstream f(path);
  require(static_cast<bool>(f), ErrorCode::Io, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_operator_text(ss.str());
}

void save_operator_csv(const FockOperator &A, const std::string &path) {
  std::ofstream f(path);
  require(static_cast<bool>(f), ErrorCode::Io, "cannot open " + path + " for writing");
  auto label = [](const MultiIndex &a) {
    std::string s;
    for (std::size_t j = 0; j < a.size(); ++j) s += (j ? "-" : "") + std::to_string(a[j]);
    return s;
  };
  f << "row,col,beta,alpha,re,im\n";
  const FockBasis &b = A.basis;
  for (int r = 0; r < b.size(); ++r)
    for (int c = 0; c < b.size(); ++c)
      f << r << "," << c << "," << label(b.index(r)) << "," << label(b.index(c)) << ","
        << fmt17(A.entries(r, c).real()) << "," << fmt17(A.entries(r, c).imag()) << "\n";
  require(static_cast<bool>(f), ErrorCode::Io, "write failed: " + path);
}

cplx special_hermite(const MultiIndex &a, const MultiIndex &b, const CVec &z) {
  require(a.size() == b.size() && static_cast<Eigen::Index>(a.size()) == z.size(),
          ErrorCode::Dimension, "special_hermite: dimension mismatch");
  cplx v = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    v *= special::special_hermite_1d(a[j], b[j], z(static_cast<Eigen::Index>(j)));
  return v;
}

cplx entry_function(double h, const MultiIndex &a, const MultiIndex &b, const Vec &z, double t) {
  require(h > 0.0, ErrorCode::Domain, "entry_function: h must be positive");
  const int n = static_cast<int>(a.size());
  require(z.size() == 2 * n, ErrorCode::Dimension, "entry_function: z has wrong dimension");
  const CVec w = std::sqrt(h) * algebra::to_complex(z);
  return std::pow(2.0 * kPi, 0.5 * n) * special_hermite(a, b, w) * std::exp(cplx(0.0, h * t));
}

CMat heisenberg_matrix(double h, const Vec &z, const FockBasis &basis) {
  const int n = basis.n(), L = basis.L(), D = basis.size();
  require(z.size() == 2 * n, ErrorCode::Dimension, "heisenberg_matrix: z has wrong dimension");
  const CVec w = std::sqrt(h) * algebra::to_complex(z);
  std::vector<CMat> tables(n);
  for (int j = 0; j < n; ++j) tables[j] = special::special_hermite_table(L, w(j));
  const double c = std::pow(2.0 * kPi, 0.5 * n);
  CMat M(D, D);
  if (n == 1) {
    for (int col = 0; col < D; ++col)
      for (int row = 0; row < D; ++row) M(row, col) = c * tables[0](col, row);
    return M;
  }
  for (int col = 0; col < D; ++col) {
    const MultiIndex &a = basis.index(col);
    for (int row = 0; row < D; ++row) {
      const MultiIndex &b = basis.index(row);
      cplx v = c;
      for (int j = 0; j < n; ++j) v *= tables[j](a[j], b[j]);
      M(row, col) = v;
    }
  }
  return M;
}

FockOperator rep_matrix(const HTypeStructure &S, const Vec &mu, const GroupPoint &p,
                        const FockBasis &basis) {
  require(basis.n() == S.n, ErrorCode::Dimension, "rep_matrix: basis n differs from structure");
  const double h = mu.norm();
  require(h > 0.0, ErrorCode::Domain, "rep_matrix: mu must be nonzero");
  const auto ap = algebra::alpha_homomorphism(S, mu, p);
  FockOperator A{basis, heisenberg_matrix(h, ap.z, basis)};
  A.entries *= std::exp(cplx(0.0, h * ap.t));
  return A;
}

cplx scalar_rep(const HTypeStructure &S, const Vec &eta, const GroupPoint &p) {
  algebra::check_point(S, p);
  require(eta.size() == S.dim_v(), ErrorCode::Dimension, "scalar_rep: eta has wrong dimension");
  return std::exp(cplx(0.0, eta.dot(p.x)));
}

FockOperator intertwiner_tau(const CMat &U, const FockBasis &basis, double tol) {
  const int n = basis.n();
  require(U.rows() == n && U.cols() == n, ErrorCode::Dimension, "intertwiner_tau: U must be n x n");
  require((U * U.adjoint() - CMat::Identity(n, n)).norm() <= tol, ErrorCode::InvalidArgument,
          "intertwiner_tau: U is not unitary");
  const CMat V = U.adjoint();  // (U^* zeta)_j = sum_k V(j, k) zeta_k
  std::vector<double> lf(basis.L() + 1);
  for (int k = 0; k <= basis.L(); ++k) lf[k] = special::log_factorial(k);
  FockOperator T = FockOperator::zero(basis);
  for (int col = 0; col < basis.size(); ++col) {
    const MultiIndex &a = basis.index(col);
    // expand prod_j (V zeta)_j^{a_j} as a map from exponent to coefficient
    std::map<MultiIndex, cplx> poly{{MultiIndex(n, 0), cplx(1.0)}};
    for (int j = 0; j < n; ++j)
      for (int rep = 0; rep < a[j]; ++rep) {
        std::map<MultiIndex, cplx> next;
        for (const auto &[e, c] : poly)
          for (int k = 0; k < n; ++k) {
            if (V(j, k) == cplx(0.0)) continue;
            MultiIndex e2 = e;
            ++e2[k];
            next[e2] += c * V(j, k);
          }
        poly.swap(next);
      }
    double la = 0.0;
    for (int v : a) la += lf[v];
    for (const auto &[e, c] : poly) {
      double lb = 0.0;
      for (int v : e) lb += lf[v];
      T.entries(basis.find(e), col) = c * std::exp(0.5 * (lb - la));
    }
  }
  return T;
}

CMat complexify(const Mat &O, double tol) {
  const int n = static_cast<int>(O.rows() / 2);
  const Mat J = algebra::standard_j(n);
  require((O * J - J * O).norm() <= tol * std::max(1.0, O.norm()), ErrorCode::Domain,
          "complexify: map is not complex-linear for the standard J");
  CMat U(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) U(r, c) = cplx(O(r, c), O(n + r, c));
  return U;
}

Mat realify(const CMat &U) {
  const int n = static_cast<int>(U.rows());
  Mat O(2 * n, 2 * n);
  O.block(0, 0, n, n) = U.real();
  O.block(0, n, n, n) = -U.imag();
  O.block(n, 0, n, n) = U.imag();
  O.block(n, n, n, n) = U.real();
  return O;
}

FockOperator intertwiner_U(const HTypeStructure &S, const Vec &mu, const Vec &lambda,
                           const FockBasis &basis) {
  require(mu.norm() > 0.0 && lambda.norm() > 0.0, ErrorCode::Domain,
          "intertwiner_U: mu and lambda must be nonzero");
  const Mat O = algebra::rotation_frame(S, lambda).transpose() * algebra::rotation_frame(S, mu);
  // F -> F(V zeta) equals tau(V^*)
  const CMat V = complexify(O, 1e-10);
  return intertwiner_tau(V.adjoint(), basis, 1e-10);
}

cplx spherical_function(int l, int n, const CVec &z, double t) {
  require(l >= 0 && n >= 1, ErrorCode::Domain, "spherical_function: invalid indices");
  const double r2 = z.squaredNorm();
  return special::laguerre(l, n - 1, 0.5 * r2) * std::exp(-0.25 * r2) * std::exp(cplx(0.0, t));
}

SampledFunction sample_hermite(const MultiIndex &alpha, int N, double a) {
  const int n = static_cast<int>(alpha.size());
  SampledFunction f;
  f.n = n;
  f.N = N;
  f.a = a;
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= static_cast<std::size_t>(N);
  f.values.assign(total, cplx(1.0));
  std::vector<std::vector<double>> tab(n, std::vector<double>(N));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < N; ++i) tab[j][i] = special::hermite(alpha[j], f.node(i));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    cplx v = 1.0;
    for (int j = n - 1; j >= 0; --j) {
      v *= tab[j][rem % N];
      rem /= N;
    }
    f.values[idx] = v;
  }
  return f;
}

namespace {

// Trigonometric interpolation shift g(xi) = f(xi + c) of one strided line.
void shift_line(std::vector<cplx> &line, double c, double period, const std::vector<cplx> &tw) {
  const int N = static_cast<int>(line.size());
  std::vector<cplx> F(N, 0.0);
  for (int m = 0; m < N; ++m) {
    cplx s = 0.0;
    for (int k = 0; k < N; ++k) s += line[k] * std::conj(tw[(static_cast<long>(m) * k) % N]);
    F[m] = s;
  }
  for (int m = 0; m < N; ++m) {
    const int freq = m < N / 2 ? m : m - N;
    F[m] *= std::exp(cplx(0.0, 2.0 * kPi * freq * c / period)) / double(N);
  }
  for (int k = 0; k < N; ++k) {
    cplx s = 0.0;
    for (int m = 0; m < N; ++m) s += F[m] * tw[(static_cast<long>(m) * k) % N];
    line[k] = s;
  }
}

}  // namespace

SampledFunction schrodinger_apply(double h, const Vec &z, double t, const SampledFunction &phi) {
  require(h != 0.0, ErrorCode::Domain, "schrodinger_apply: h must be nonzero");
  const int n = phi.n, N = phi.N;
  require(z.size() == 2 * n, ErrorCode::Dimension, "schrodinger_apply: z has wrong dimension");
  const double s = std::sqrt(std::abs(h));
  const double sg = h > 0 ? 1.0 : -1.0;
  const Vec x = z.head(n), y = z.tail(n);
  std::vector<cplx> tw(N);
  for (int k = 0; k < N; ++k) tw[k] = std::exp(cplx(0.0, 2.0 * kPi * k / N));
  SampledFunction out = phi;
  const double period = 2.0 * phi.a;
  std::size_t stride = 1;
  for (int j = n - 1; j >= 0; --j) {
    const double c = s * x(j);
    if (c != 0.0) {
      const std::size_t total = out.values.size();
      std::vector<cplx> line(N);
      for (std::size_t base = 0; base < total; ++base) {
        if ((base / stride) % N != 0) continue;
        for (int k = 0; k < N; ++k) line[k] = out.values[base + k * stride];
        shift_line(line, c, period, tw);
        for (int k = 0; k < N; ++k) out.values[base + k * stride] = line[k];
      }
    }
    stride *= static_cast<std::size_t>(N);
  }
  const cplx phase = std::exp(cplx(0.0, h * (t + 0.5 * x.dot(y))));
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    std::size_t rem = idx;
    double dot = 0.0;
    for (int j = n - 1; j >= 0; --j) {
      dot += y(j) * phi.node(static_cast<int>(rem % N));
      rem /= N;
    }
    out.values[idx] *= phase * std::exp(cplx(0.0, sg * s * dot));
  }
  return out;
}

cplx grid_inner(const SampledFunction &f, const SampledFunction &g) {
  require(f.values.size() == g.values.size(), ErrorCode::Dimension, "grid_inner: grid mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
  return s * std::pow(f.step(), f.n);
}

}  // namespace hxray::fock
