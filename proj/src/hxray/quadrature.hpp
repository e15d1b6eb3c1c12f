#pragma once

#include "hxray/common.hpp"

namespace hxray::quad {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// Gauss-Hermite for weight e^{-x^2}.
Rule1D gauss_hermite(int N);
// Rule for plain integrals of g(x) ~ e^{-rate (x - center)^2} * polynomial:
// sum_i w_i g(x_i) with the Gaussian weight already divided out.
Rule1D gauss_hermite_plain(int N, double center, double rate);
// Composite trapezoid on [a, b] with N >= 2 nodes.
Rule1D trapezoid(double a, double b, int N);
// Periodic trapezoid on [offset, offset + period).
Rule1D periodic(double period, int N, double offset = 0.0);

// Tensor product over a list of 1D rules; calls fn(point, weight).
template <class Fn>
void tensor_for_each(const std::vector<Rule1D> &rules, Fn &&fn) {
  const std::size_t d = rules.size();
  std::vector<std::size_t> idx(d, 0);
  Vec pt(static_cast<Eigen::Index>(d));
  if (d == 0) {
    fn(pt, 1.0);
    return;
  }
  for (const auto &r : rules)
    if (r.size() == 0) return;
  while (true) {
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      pt(static_cast<Eigen::Index>(j)) = rules[j].nodes[idx[j]];
      w *= rules[j].weights[idx[j]];
    }
    fn(pt, w);
    std::size_t j = 0;
    while (j < d && ++idx[j] == rules[j].size()) idx[j++] = 0;
    if (j == d) break;
  }
}

struct TensorGrid {
  std::vector<Vec> points;
  std::vector<double> weights;
};
TensorGrid tensor_grid(const std::vector<Rule1D> &rules);

// Numerical settings shared by the transforms.
struct Quadrature {
  double line_tau = 1e-14;       // relative tail level for line truncation
  double line_density = 16.0;    // line-rule nodes per unit length
  int line_min_nodes = 64;
  int line_max_nodes = 400000;   // budget; exceeding it is an error
  int loop_nodes = 256;          // periodic rule over one period
  int volume_order = 24;         // Gauss-Hermite order per horizontal dimension
  int period_nodes = 32;         // periodic rule along the central period
  int central_order = 16;        // Gauss-Hermite order per transverse central dimension
  double grid_halfwidth = 7.0;   // uniform horizontal grid for non-Gaussian integrands
  int grid_nodes = 57;

  void validate() const;
  // Every node count multiplied by two.
  Quadrature doubled() const;
};

}  // namespace hxray::quad
