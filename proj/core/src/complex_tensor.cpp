#include "blowcurv/complex_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blowcurv {

Rank4Tensor::Rank4Tensor(int n) : n_(n) {
  if (n < 1) {
    throw std::invalid_argument("Rank4Tensor: dimension must be positive");
  }
  entries_.assign(static_cast<std::size_t>(n) * n * n * n, Complex(0.0, 0.0));
}

std::size_t Rank4Tensor::index(int j, int k, int l, int m) const {
  return ((static_cast<std::size_t>(j) * n_ + k) * n_ + l) * n_ + m;
}

Rank4Tensor& Rank4Tensor::operator+=(const Rank4Tensor& other) {
  if (other.n_ != n_) {
    throw std::invalid_argument("Rank4Tensor: dimension mismatch in +=");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] += other.entries_[i];
  }
  return *this;
}

Rank4Tensor& Rank4Tensor::operator*=(double s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

Rank4Tensor tensor_combination(double a, const Rank4Tensor& x, double b,
                               const Rank4Tensor& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("tensor_combination: dimension mismatch");
  }
  Rank4Tensor out(x.dim());
  for (std::size_t i = 0; i < out.flat().size(); ++i) {
    out.flat()[i] = a * x.flat()[i] + b * y.flat()[i];
  }
  return out;
}

double max_abs(const Rank4Tensor& t) {
  double m = 0.0;
  for (const auto& e : t.flat()) m = std::max(m, std::abs(e));
  return m;
}

double max_abs_diff(const Rank4Tensor& x, const Rank4Tensor& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < x.flat().size(); ++i) {
    m = std::max(m, std::abs(x.flat()[i] - y.flat()[i]));
  }
  return m;
}

Complex contract4(const Rank4Tensor& t, const Direction& a, const Direction& b,
                  const Direction& c, const Direction& d) {
  const int n = t.dim();
  if (a.size() != n || b.size() != n || c.size() != n || d.size() != n) {
    throw std::invalid_argument("contract4: direction dimension mismatch");
  }
  Complex sum(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    if (a[j] == Complex(0.0, 0.0)) continue;
    for (int k = 0; k < n; ++k) {
      const Complex ab = a[j] * std::conj(b[k]);
      if (ab == Complex(0.0, 0.0)) continue;
      for (int l = 0; l < n; ++l) {
        const Complex abc = ab * c[l];
        if (abc == Complex(0.0, 0.0)) continue;
        for (int m = 0; m < n; ++m) {
          sum += abc * std::conj(d[m]) * t(j, k, l, m);
        }
      }
    }
  }
  return sum;
}

double SymmetryReport::worst() const {
  return std::max({pair_first, pair_second, conjugate});
}

SymmetryReport check_kahler_symmetries(const Rank4Tensor& t) {
  const int n = t.dim();
  SymmetryReport rep;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          const Complex v = t(j, k, l, m);
          rep.pair_first = std::max(rep.pair_first, std::abs(v - t(l, k, j, m)));
          rep.pair_second =
              std::max(rep.pair_second, std::abs(v - t(j, m, l, k)));
          rep.conjugate = std::max(rep.conjugate,
                                   std::abs(v - std::conj(t(k, j, m, l))));
        }
      }
    }
  }
  return rep;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix hermitian_inverse(const ComplexMatrix& m) {
  if (!is_hermitian(m)) {
    throw std::invalid_argument("hermitian_inverse: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_inverse: eigendecomposition failed");
  }
  const Eigen::VectorXd ev = es.eigenvalues();
  const double min_ev = ev.minCoeff();
  const double max_ev = ev.maxCoeff();
  if (min_ev <= 0.0 || min_ev < 1e-14 * std::max(1.0, max_ev)) {
    std::ostringstream msg;
    msg << "hermitian_inverse: matrix not positive definite "
        << "(min eigenvalue " << min_ev << ", max eigenvalue " << max_ev
        << ")";
    throw std::runtime_error(msg.str());
  }
  Eigen::VectorXcd inv_ev =
      ev.cwiseInverse().cast<Complex>();
  return es.eigenvectors() * inv_ev.asDiagonal() *
         es.eigenvectors().adjoint();
}

Complex metric_pairing(const ComplexMatrix& g, const Direction& a,
                       const Direction& b) {
  const int n = static_cast<int>(g.rows());
  if (a.size() != n || b.size() != n) {
    throw std::invalid_argument("metric_pairing: dimension mismatch");
  }
  Complex sum(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      sum += a[j] * std::conj(b[k]) * g(j, k);
    }
  }
  return sum;
}

double metric_norm_sq(const ComplexMatrix& g, const Direction& v) {
  return metric_pairing(g, v, v).real();
}

}  // namespace blowcurv
