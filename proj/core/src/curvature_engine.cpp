#include "blowcurv/curvature_engine.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace blowcurv {

namespace {

constexpr Complex kI(0.0, 1.0);

Eigen::VectorXd to_real(const Direction& z) {
  Eigen::VectorXd u(2 * z.size());
  for (int j = 0; j < z.size(); ++j) {
    u[2 * j] = z[j].real();
    u[2 * j + 1] = z[j].imag();
  }
  return u;
}

Direction to_complex(const Eigen::VectorXd& u) {
  Direction z(u.size() / 2);
  for (int j = 0; j < z.size(); ++j) {
    z[j] = Complex(u[2 * j], u[2 * j + 1]);
  }
  return z;
}

double real_checked(Complex v, const char* what) {
  if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v.real()))) {
    std::ostringstream msg;
    msg << what << ": residual imaginary part " << v.imag()
        << " exceeds tolerance (real part " << v.real() << ")";
    throw std::runtime_error(msg.str());
  }
  return v.real();
}

void check_stencil_domain(const MetricModel& model, const Direction& z,
                          const DiffScheme& s) {
  // Mixed stencils reach (2h, 2h) off the base point at order 4.
  const double reach = (s.order == 4 ? 2.0 : 1.0) * s.step * std::sqrt(2.0);
  if (z.norm() + reach > model.domain_radius) {
    std::ostringstream msg;
    msg << "stencil leaves chart domain of metric '" << model.name
        << "': |z| = " << z.norm() << ", stencil reach " << reach
        << ", domain radius " << model.domain_radius;
    throw std::domain_error(msg.str());
  }
}

// Curvature tensor from the real-coordinate jet of the metric components.
Rank4Tensor tensor_from_jet(const MatrixJet& jet, int n) {
  // Wirtinger first derivatives A_l = dG/dz_l and mixed second derivatives
  // D_lm = d^2 G / dz_l dz-bar_m from the real gradient and Hessian.
  std::vector<ComplexMatrix> dz(n);
  for (int l = 0; l < n; ++l) {
    dz[l] = 0.5 * (jet.grad[2 * l] - kI * jet.grad[2 * l + 1]);
  }
  const ComplexMatrix ginv = hermitian_inverse(jet.value);

  Rank4Tensor tensor(n);
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      ComplexMatrix d2 =
          0.25 * (jet.hess[2 * l][2 * m] + jet.hess[2 * l + 1][2 * m + 1] +
                  kI * (jet.hess[2 * l][2 * m + 1] -
                        jet.hess[2 * l + 1][2 * m]));
      ComplexMatrix gamma_term = dz[l] * ginv * dz[m].adjoint();
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          tensor(j, k, l, m) = -d2(j, k) + gamma_term(j, k);
        }
      }
    }
  }
  return tensor;
}

}  // namespace

CurvatureResult chern_curvature(const MetricModel& model, const Direction& z,
                                const DiffScheme& scheme) {
  validate_scheme(scheme);
  if (!model.eval) {
    throw std::invalid_argument("chern_curvature: model has no eval function");
  }
  if (z.size() != model.dim) {
    throw std::invalid_argument("chern_curvature: point dimension mismatch");
  }
  check_stencil_domain(model, z, scheme);

  const int n = model.dim;
  CachedMatrixFn eval([&model](const Eigen::VectorXd& u) {
    return evaluate_checked(model, to_complex(u));
  });
  const Eigen::VectorXd u0 = to_real(z);

  std::map<double, Rank4Tensor> by_step;
  auto tensor_at = [&](double h) -> const Rank4Tensor& {
    auto it = by_step.find(h);
    if (it == by_step.end()) {
      it = by_step.emplace(h, tensor_from_jet(matrix_jet(eval, u0, h,
                                                         scheme.order), n))
               .first;
    }
    return it->second;
  };
  auto refined = [&](double h) {
    if (!scheme.richardson) return tensor_at(h);
    // One extrapolation pass: error ~ C h^p with p = order, so the h and h/2
    // results combine as (2^p T(h/2) - T(h)) / (2^p - 1).
    const double f = scheme.order == 4 ? 16.0 : 4.0;
    return tensor_combination(f / (f - 1.0), tensor_at(h / 2), -1.0 / (f - 1.0),
                              tensor_at(h));
  };

  Rank4Tensor primary = refined(scheme.step);
  Rank4Tensor halved = refined(scheme.step / 2);

  CurvatureResult result{std::move(primary), eval(u0), 0.0};
  result.est_error = max_abs_diff(result.tensor, halved);
  return result;
}

double holomorphic_sectional_curvature(const CurvatureResult& r,
                                       const Direction& v) {
  if (v.size() != r.tensor.dim()) {
    throw std::invalid_argument("hsc: direction dimension mismatch");
  }
  if (v.norm() == 0.0) {
    throw std::invalid_argument("hsc: direction must be nonzero");
  }
  const Complex num = contract4(r.tensor, v, v, v, v);
  const double len_sq = metric_norm_sq(r.metric_at_point, v);
  return real_checked(num, "holomorphic_sectional_curvature") /
         (len_sq * len_sq);
}

ComplexMatrix orthonormal_frame(const ComplexMatrix& g, FrameKind kind) {
  const int n = static_cast<int>(g.rows());
  if (kind == FrameKind::cholesky) {
    Eigen::LLT<ComplexMatrix> llt(g);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error(
          "orthonormal_frame: metric not positive definite");
    }
    ComplexMatrix l = llt.matrixL();
    // Columns v with v_i^T g conj(v_j) = delta: solve L^T V = I.
    return l.transpose()
        .triangularView<Eigen::Upper>()
        .solve(ComplexMatrix::Identity(n, n));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw std::runtime_error("orthonormal_frame: metric not positive definite");
  }
  Eigen::VectorXcd scale =
      es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>();
  return es.eigenvectors().conjugate() * scale.asDiagonal();
}

Complex ricci_tensor(const CurvatureResult& r, const Direction& a,
                     const Direction& b, FrameKind kind) {
  const ComplexMatrix frame = orthonormal_frame(r.metric_at_point, kind);
  Complex sum(0.0, 0.0);
  for (int j = 0; j < frame.cols(); ++j) {
    const Direction v = frame.col(j);
    sum += contract4(r.tensor, a, b, v, v);
  }
  return sum;
}

double scalar_curvature(const CurvatureResult& r, FrameKind kind) {
  const ComplexMatrix frame = orthonormal_frame(r.metric_at_point, kind);
  Complex sum(0.0, 0.0);
  for (int k = 0; k < frame.cols(); ++k) {
    const Direction v = frame.col(k);
    sum += ricci_tensor(r, v, v, kind);
  }
  return real_checked(sum, "scalar_curvature");
}

// ---------------------------------------------------------------------------
// Second fundamental form
// ---------------------------------------------------------------------------

SigmaOperator::SigmaOperator(int n, double t, double c,
                             const DiffScheme& scheme)
    : n_(n), scheme_(scheme) {
  validate_scheme(scheme);
  if (n < 2) {
    throw std::invalid_argument("SigmaOperator: dimension must be at least 2");
  }
  const MetricModel ambient = product_metric(base_metric(n, c), t);
  const int big = ambient.dim;  // 2n - 1 complex coordinates

  jacobian0_ = chart_jacobian(Eigen::VectorXcd::Zero(n));

  // Ambient Chern connection at the origin, measured by finite differences:
  // Gamma^a_{bc} = (A_b G^{-1})(c, a) with A_b = dG/dz_b. For the product of
  // normal-coordinate factors every coefficient vanishes at 0; computing them
  // anyway keeps this a measurement instead of an assumption.
  CachedMatrixFn eval([&ambient](const Eigen::VectorXd& u) {
    return evaluate_checked(ambient, to_complex(u));
  });
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(2 * big);
  const std::vector<ComplexMatrix> grad =
      matrix_gradient(eval, origin, scheme.step, scheme.order);
  const ComplexMatrix ginv = hermitian_inverse(eval(origin));

  gamma_.reserve(big);
  for (int b = 0; b < big; ++b) {
    const ComplexMatrix a_b = 0.5 * (grad[2 * b] - kI * grad[2 * b + 1]);
    gamma_.push_back(a_b * ginv);
  }
}

Eigen::VectorXcd SigmaOperator::operator()(const Direction& a,
                                           const Direction& g) const {
  if (a.size() != n_ || g.size() != n_) {
    throw std::invalid_argument("SigmaOperator: direction dimension mismatch");
  }
  const int big = 2 * n_ - 1;
  const double h = scheme_.step;

  // Holomorphic directional derivative of the ambient components of the
  // frame field V(w) = J(w) g along each chart coordinate.
  auto field = [&](const Eigen::VectorXcd& w) -> Eigen::VectorXcd {
    return chart_jacobian(w) * g;
  };
  Eigen::VectorXcd derivative = Eigen::VectorXcd::Zero(big);
  for (int b = 0; b < n_; ++b) {
    Eigen::VectorXcd du = Eigen::VectorXcd::Zero(big);
    Eigen::VectorXcd dv = Eigen::VectorXcd::Zero(big);
    auto step_point = [&](int coord, int real_part, int offset) {
      Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n_);
      w[coord] += real_part ? Complex(0.0, offset * h) : Complex(offset * h, 0.0);
      return field(w);
    };
    if (scheme_.order == 4) {
      du = (-step_point(b, 0, 2) + 8.0 * step_point(b, 0, 1) -
            8.0 * step_point(b, 0, -1) + step_point(b, 0, -2)) /
           (12.0 * h);
      dv = (-step_point(b, 1, 2) + 8.0 * step_point(b, 1, 1) -
            8.0 * step_point(b, 1, -1) + step_point(b, 1, -2)) /
           (12.0 * h);
    } else {
      du = (step_point(b, 0, 1) - step_point(b, 0, -1)) / (2.0 * h);
      dv = (step_point(b, 1, 1) - step_point(b, 1, -1)) / (2.0 * h);
    }
    derivative += a[b] * 0.5 * (du - kI * dv);
  }

  // Connection term: sum_{b,c} Gamma^*_{bc} U_b V_c with U, V the ambient
  // components of the two fields at the origin.
  const Eigen::VectorXcd u_amb = jacobian0_ * a;
  const Eigen::VectorXcd v_amb = jacobian0_ * g;
  Eigen::VectorXcd connection = Eigen::VectorXcd::Zero(big);
  for (int b = 0; b < big; ++b) {
    if (u_amb[b] == Complex(0.0, 0.0)) continue;
    connection += u_amb[b] * (gamma_[b].transpose() * v_amb);
  }

  // Normal projection at the origin: the first n-1 ambient coordinates.
  return (derivative + connection).head(n_ - 1);
}

Eigen::VectorXcd second_fundamental_form(int n, double t, double c,
                                         const Direction& a,
                                         const Direction& g,
                                         const DiffScheme& scheme) {
  return SigmaOperator(n, t, c, scheme)(a, g);
}

GaussCheckReport gauss_check(int n, double t, double c,
                             const DiffScheme& scheme) {
  const BlowupChart chart = blowup_metric(n, t, c);
  const CurvatureResult induced =
      chern_curvature(chart.induced, Direction::Zero(n), scheme);
  const CurvatureResult base =
      chern_curvature(base_metric(n, c), Direction::Zero(n), scheme);
  const CurvatureResult fs =
      chern_curvature(fubini_study(n - 1), Direction::Zero(n - 1), scheme);

  // Ambient splittings of the frame at the origin.
  std::vector<Direction> p1(n, Direction::Zero(n));
  std::vector<Direction> p2(n, Direction::Zero(n - 1));
  for (int j = 0; j < n - 1; ++j) p2[j][j] = 1.0;
  p1[n - 1][n - 1] = 1.0;

  SigmaOperator sigma(n, t, c, scheme);
  std::vector<std::vector<Eigen::VectorXcd>> sig(n);
  for (int j = 0; j < n; ++j) {
    Direction ej = Direction::Zero(n);
    ej[j] = 1.0;
    sig[j].reserve(n);
    for (int l = 0; l < n; ++l) {
      Direction el = Direction::Zero(n);
      el[l] = 1.0;
      sig[j].push_back(sigma(ej, el));
    }
  }

  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          // <sigma(xi_j, xi_l), conj sigma(xi_k, xi_m)> on the normal space,
          // where the ambient metric is the identity at the origin.
          Complex sigma_term(0.0, 0.0);
          for (int i = 0; i < n - 1; ++i) {
            sigma_term += sig[j][l][i] * std::conj(sig[k][m][i]);
          }
          const Complex rhs =
              contract4(base.tensor, p1[j], p1[k], p1[l], p1[m]) +
              t * contract4(fs.tensor, p2[j], p2[k], p2[l], p2[m]) -
              sigma_term;
          worst = std::max(worst, std::abs(induced.tensor(j, k, l, m) - rhs));
        }
      }
    }
  }
  return {worst, induced.est_error};
}

}  // namespace blowcurv
