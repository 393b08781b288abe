#include "blowcurv/finite_diff.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace blowcurv {

namespace {

struct StencilNode {
  int offset;
  double weight;
};

// First-derivative central stencils; weights divide by (denom * h).
// Order 2: (f(h) - f(-h)) / 2h
// Order 4: (-f(2h) + 8f(h) - 8f(-h) + f(-2h)) / 12h
const std::array<StencilNode, 2> kFirstOrder2 = {{{1, 1.0}, {-1, -1.0}}};
const std::array<StencilNode, 4> kFirstOrder4 = {
    {{2, -1.0}, {1, 8.0}, {-1, -8.0}, {-2, 1.0}}};

// Pure second-derivative stencils; weights divide by (denom * h^2); the
// center node carries its own weight.
const std::array<StencilNode, 3> kSecondOrder2 = {
    {{1, 1.0}, {0, -2.0}, {-1, 1.0}}};
const std::array<StencilNode, 5> kSecondOrder4 = {
    {{2, -1.0}, {1, 16.0}, {0, -30.0}, {-1, 16.0}, {-2, -1.0}}};

double first_denom(int order) { return order == 4 ? 12.0 : 2.0; }
double second_denom(int order) { return order == 4 ? 12.0 : 1.0; }

}  // namespace

void validate_scheme(const DiffScheme& s) {
  if (!(s.step >= 1e-4 && s.step <= 1e-1)) {
    std::ostringstream msg;
    msg << "DiffScheme: step must lie in [1e-4, 1e-1], got " << s.step;
    throw std::invalid_argument(msg.str());
  }
  if (s.order != 2 && s.order != 4) {
    std::ostringstream msg;
    msg << "DiffScheme: order must be 2 or 4, got " << s.order;
    throw std::invalid_argument(msg.str());
  }
}

const ComplexMatrix& CachedMatrixFn::operator()(const Eigen::VectorXd& u) {
  std::vector<double> key(u.data(), u.data() + u.size());
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    ++evaluations_;
    it = cache_.emplace(std::move(key), fn_(u)).first;
  }
  return it->second;
}

MatrixJet matrix_jet(CachedMatrixFn& f, const Eigen::VectorXd& u0, double h,
                     int order) {
  const int d = static_cast<int>(u0.size());
  MatrixJet jet;
  jet.value = f(u0);
  const int rows = static_cast<int>(jet.value.rows());
  const int cols = static_cast<int>(jet.value.cols());
  const ComplexMatrix zero = ComplexMatrix::Zero(rows, cols);
  jet.grad.assign(d, zero);
  jet.hess.assign(d, std::vector<ComplexMatrix>(d, zero));

  auto shifted = [&](int i, int oi, int j, int oj) -> const ComplexMatrix& {
    Eigen::VectorXd u = u0;
    u[i] += oi * h;
    if (j >= 0) u[j] += oj * h;
    return f(u);
  };

  const double d1 = first_denom(order) * h;
  const double d2 = second_denom(order) * h * h;

  for (int i = 0; i < d; ++i) {
    ComplexMatrix g = zero;
    ComplexMatrix hii = zero;
    if (order == 4) {
      for (const auto& node : kFirstOrder4)
        g += node.weight * shifted(i, node.offset, -1, 0);
      for (const auto& node : kSecondOrder4)
        hii += node.weight *
               (node.offset == 0 ? jet.value : shifted(i, node.offset, -1, 0));
    } else {
      for (const auto& node : kFirstOrder2)
        g += node.weight * shifted(i, node.offset, -1, 0);
      for (const auto& node : kSecondOrder2)
        hii += node.weight *
               (node.offset == 0 ? jet.value : shifted(i, node.offset, -1, 0));
    }
    jet.grad[i] = g / d1;
    jet.hess[i][i] = hii / d2;
  }

  // Mixed derivatives as the composition of two first-derivative stencils;
  // the composed weights are symmetric in (i, j), so only i < j is computed.
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      ComplexMatrix hij = zero;
      if (order == 4) {
        for (const auto& a : kFirstOrder4)
          for (const auto& b : kFirstOrder4)
            hij += a.weight * b.weight *
                   shifted(i, a.offset, j, b.offset);
      } else {
        for (const auto& a : kFirstOrder2)
          for (const auto& b : kFirstOrder2)
            hij += a.weight * b.weight *
                   shifted(i, a.offset, j, b.offset);
      }
      jet.hess[i][j] = hij / (d1 * d1);
      jet.hess[j][i] = jet.hess[i][j];
    }
  }
  return jet;
}

std::vector<ComplexMatrix> matrix_gradient(CachedMatrixFn& f,
                                           const Eigen::VectorXd& u0, double h,
                                           int order) {
  const int d = static_cast<int>(u0.size());
  const ComplexMatrix& v0 = f(u0);
  const ComplexMatrix zero = ComplexMatrix::Zero(v0.rows(), v0.cols());
  std::vector<ComplexMatrix> grad(d, zero);
  const double d1 = first_denom(order) * h;
  for (int i = 0; i < d; ++i) {
    ComplexMatrix g = zero;
    auto stencil_sum = [&](auto nodes) {
      for (const auto& node : nodes) {
        Eigen::VectorXd u = u0;
        u[i] += node.offset * h;
        g += node.weight * f(u);
      }
    };
    if (order == 4) {
      stencil_sum(kFirstOrder4);
    } else {
      stencil_sum(kFirstOrder2);
    }
    grad[i] = g / d1;
  }
  return grad;
}

}  // namespace blowcurv
