#include "blowcurv/metric_models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blowcurv {

namespace {

void require_dim(const MetricModel& model, const Direction& z) {
  if (z.size() != model.dim) {
    std::ostringstream msg;
    msg << "metric '" << model.name << "' expects " << model.dim
        << " coordinates, got " << z.size();
    throw std::invalid_argument(msg.str());
  }
}

std::string point_to_string(const Direction& z) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < z.size(); ++i) {
    if (i) out << ", ";
    out << z[i].real() << (z[i].imag() < 0 ? "-" : "+")
        << std::abs(z[i].imag()) << "i";
  }
  out << ")";
  return out.str();
}

}  // namespace

ComplexMatrix evaluate_checked(const MetricModel& model, const Direction& z) {
  require_dim(model, z);
  ComplexMatrix g = model.eval(z);
  Eigen::LLT<ComplexMatrix> llt(g);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "metric '" << model.name << "' is not positive definite at "
        << point_to_string(z);
    throw std::runtime_error(msg.str());
  }
  return g;
}

Complex tau(const Direction& a, const Direction& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("tau: dimension mismatch");
  }
  Complex sum(0.0, 0.0);
  for (int j = 0; j + 1 < a.size(); ++j) {
    sum += a[j] * std::conj(b[j]);
  }
  return sum;
}

Complex TauForm::operator()(const Direction& a, const Direction& b) const {
  if (a.size() != n || b.size() != n) {
    throw std::invalid_argument("TauForm: dimension mismatch");
  }
  return tau(a, b);
}

double TauForm::entry(int j, int k) const {
  return (j == k && j < n - 1) ? 1.0 : 0.0;
}

MetricModel base_metric(int n, double c) {
  if (n < 2) {
    throw std::invalid_argument("base_metric: dimension must be at least 2");
  }
  MetricModel model;
  model.dim = n;
  model.name = "base";
  model.params = {{"c", c}};
  model.domain_radius = 0.5;
  model.eval = [n, c](const Direction& x) {
    ComplexMatrix g = ComplexMatrix::Identity(n, n);
    g(n - 1, n - 1) = 1.0 - c * std::norm(x[n - 1]);
    return g;
  };
  return model;
}

MetricModel fubini_study(int m) {
  if (m < 1) {
    throw std::invalid_argument("fubini_study: dimension must be at least 1");
  }
  MetricModel model;
  model.dim = m;
  model.name = "fubini-study";
  model.eval = [m](const Direction& y) {
    // g_{jk-bar} = delta_{jk}/(1+|y|^2) - conj(y_j) y_k / (1+|y|^2)^2
    double d = 1.0 + y.squaredNorm();
    ComplexMatrix g(m, m);
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        Complex v = -std::conj(y[j]) * y[k] / (d * d);
        if (j == k) v += 1.0 / d;
        g(j, k) = v;
      }
    }
    return g;
  };
  return model;
}

Eigen::VectorXcd chart_embedding(const Eigen::VectorXcd& w) {
  const int n = static_cast<int>(w.size());
  if (n < 2) {
    throw std::invalid_argument("chart_embedding: need at least 2 coordinates");
  }
  const Complex s = w[n - 1];
  Eigen::VectorXcd ambient(2 * n - 1);
  for (int j = 0; j < n - 1; ++j) {
    ambient[j] = w[j] * s;         // x_j = y_j s
    ambient[n + j] = w[j];         // y_j
  }
  ambient[n - 1] = s;              // x_n = s
  return ambient;
}

Eigen::MatrixXcd chart_jacobian(const Eigen::VectorXcd& w) {
  const int n = static_cast<int>(w.size());
  if (n < 2) {
    throw std::invalid_argument("chart_jacobian: need at least 2 coordinates");
  }
  const Complex s = w[n - 1];
  Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(2 * n - 1, n);
  for (int j = 0; j < n - 1; ++j) {
    jac(j, j) = s;           // dx_j / dy_j
    jac(n + j, j) = 1.0;     // dy_j / dy_j
    jac(j, n - 1) = w[j];    // dx_j / ds
  }
  jac(n - 1, n - 1) = 1.0;   // dx_n / ds
  return jac;
}

MetricModel product_metric(const MetricModel& base, double t) {
  if (t <= 0.0) {
    std::ostringstream msg;
    msg << "product_metric: non-positive t: t = " << t;
    throw std::invalid_argument(msg.str());
  }
  const int n = base.dim;
  MetricModel model;
  model.dim = 2 * n - 1;
  model.name = "product(" + base.name + ")";
  model.params = base.params;
  model.params["t"] = t;
  model.domain_radius = 0.5;
  MetricModel fs = fubini_study(n - 1);
  model.eval = [n, t, base_eval = base.eval,
                fs_eval = fs.eval](const Direction& z) {
    ComplexMatrix g = ComplexMatrix::Zero(2 * n - 1, 2 * n - 1);
    g.topLeftCorner(n, n) = base_eval(z.head(n));
    g.bottomRightCorner(n - 1, n - 1) = t * fs_eval(z.tail(n - 1));
    return g;
  };
  return model;
}

MetricModel induced_blowup_metric(const MetricModel& base, double t) {
  if (t <= 0.0) {
    std::ostringstream msg;
    msg << "blowup metric: non-positive t: t = " << t;
    throw std::invalid_argument(msg.str());
  }
  const int n = base.dim;
  if (n < 2) {
    throw std::invalid_argument("blowup metric: base dimension must be >= 2");
  }
  MetricModel model;
  model.dim = n;
  model.name = "blowup(" + base.name + ")";
  model.params = base.params;
  model.params["t"] = t;
  model.domain_radius = 0.5;
  MetricModel fs = fubini_study(n - 1);
  model.eval = [n, t, base_eval = base.eval,
                fs_eval = fs.eval](const Direction& w) {
    const Eigen::VectorXcd ambient = chart_embedding(w);
    const Eigen::MatrixXcd jac = chart_jacobian(w);
    ComplexMatrix big = ComplexMatrix::Zero(2 * n - 1, 2 * n - 1);
    big.topLeftCorner(n, n) = base_eval(ambient.head(n));
    big.bottomRightCorner(n - 1, n - 1) = t * fs_eval(ambient.tail(n - 1));
    // Pullback along the holomorphic embedding: g = J^T G conj(J).
    return ComplexMatrix(jac.transpose() * big * jac.conjugate());
  };
  return model;
}

BlowupChart blowup_metric(int n, double t, double c) {
  if (n < 2) {
    throw std::invalid_argument("blowup_metric: dimension must be at least 2");
  }
  BlowupChart chart;
  chart.n = n;
  chart.t = t;
  chart.c = c;
  chart.induced = induced_blowup_metric(base_metric(n, c), t);
  return chart;
}

}  // namespace blowcurv
