#include "hxray/quadrature.hpp"

#include "hxray/special.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace hxray::quad {

Rule1D gauss_hermite(int N) {
  require(N >= 1, ErrorCode::InvalidArgument, "gauss_hermite: order must be >= 1");
  Mat T = Mat::Zero(N, N);
  for (int k = 1; k < N; ++k) T(k, k - 1) = T(k - 1, k) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Mat> es(T, Eigen::EigenvaluesOnly);
  Rule1D r;
  r.nodes.resize(N);
  r.weights.resize(N);
  for (int i = 0; i < N; ++i) {
    double x = es.eigenvalues()(i);
    // Newton polish on phi_N, phi_N' = sqrt(2N) phi_{N-1} - x phi_N
    for (int it = 0; it < 3; ++it) {
      auto h = special::hermite_all(N, x);
      const double d = std::sqrt(2.0 * N) * h[N - 1] - x * h[N];
      if (d == 0.0) break;
      x -= h[N] / d;
    }
    auto h = special::hermite_all(N - 1, x);
    double s = 0.0;
    for (int k = 0; k < N; ++k) s += h[k] * h[k];
    // Christoffel weight; the Gaussian is folded in via the Hermite functions
    r.nodes[i] = x;
    r.weights[i] = std::exp(-x * x) / s;
  }
  return r;
}

Rule1D gauss_hermite_plain(int N, double center, double rate) {
  require(rate > 0.0, ErrorCode::InvalidArgument, "gauss_hermite_plain: rate must be positive");
  Rule1D g = gauss_hermite(N);
  const double sc = 1.0 / std::sqrt(rate);
  Rule1D r;
  r.nodes.resize(N);
  r.weights.resize(N);
  for (int i = 0; i < N; ++i) {
    const double y = g.nodes[i];
    auto h = special::hermite_all(N - 1, y);
    double s = 0.0;
    for (int k = 0; k < N; ++k) s += h[k] * h[k];
    r.nodes[i] = center + sc * y;
    r.weights[i] = sc / s;
  }
  return r;
}

Rule1D trapezoid(double a, double b, int N) {
  require(N >= 2, ErrorCode::InvalidArgument, "trapezoid: need at least 2 nodes");
  Rule1D r;
  r.nodes.resize(N);
  r.weights.resize(N);
  const double h = (b - a) / (N - 1);
  for (int i = 0; i < N; ++i) {
    r.nodes[i] = a + h * i;
    r.weights[i] = (i == 0 || i == N - 1) ? 0.5 * h : h;
  }
  return r;
}

Rule1D periodic(double period, int N, double offset) {
  require(N >= 1, ErrorCode::InvalidArgument, "periodic: need at least 1 node");
  Rule1D r;
  r.nodes.resize(N);
  r.weights.assign(N, period / N);
  for (int i = 0; i < N; ++i) r.nodes[i] = offset + period * i / N;
  return r;
}

TensorGrid tensor_grid(const std::vector<Rule1D> &rules) {
  TensorGrid g;
  tensor_for_each(rules, [&](const Vec &p, double w) {
    g.points.push_back(p);
    g.weights.push_back(w);
  });
  return g;
}

void Quadrature::validate() const {
  require(line_tau > 0.0 && line_tau < 1.0, ErrorCode::Config, "quadrature: line_tau must be in (0,1)");
  require(line_density > 0.0, ErrorCode::Config, "quadrature: line_density must be positive");
  require(line_min_nodes >= 8 && loop_nodes >= 8 && volume_order >= 8 && period_nodes >= 8 &&
              central_order >= 8 && grid_nodes >= 8,
          ErrorCode::Config, "quadrature: node counts must be >= 8");
  require(line_max_nodes >= line_min_nodes, ErrorCode::Config,
          "quadrature: line_max_nodes below line_min_nodes");
  require(grid_halfwidth > 0.0, ErrorCode::Config, "quadrature: grid_halfwidth must be positive");
}

Quadrature Quadrature::doubled() const {
  Quadrature q = *this;
  q.line_density *= 2.0;
  q.line_min_nodes *= 2;
  q.line_max_nodes *= 2;
  q.loop_nodes *= 2;
  q.volume_order *= 2;
  q.period_nodes *= 2;
  q.central_order *= 2;
  q.grid_nodes = 2 * q.grid_nodes - 1;
  return q;
}

}  // namespace hxray::quad
