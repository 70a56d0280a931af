// SPDX-License-Identifier: Apache-2.0
#include "stdg/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "stdg/common.hpp"

namespace stdg {

namespace {

// Legendre P_n and P_n' at x by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = p0;
    dp = 0.0;
    return;
  }
  for (int j = 1; j < n; ++j) {
    const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

// Modified spherical Bessel function of the first kind i_j(x), x >= 0,
// by its ascending series. All terms are positive, no cancellation.
long double mod_sph_bessel_i(int j, long double x) {
  if (x == 0.0L) return (j == 0) ? 1.0L : 0.0L;
  long double dfact = 1.0L;  // (2j+1)!!
  for (int l = 1; l <= j; ++l) dfact *= 2.0L * l + 1.0L;
  long double term = 1.0L;
  for (int l = 0; l < j; ++l) term *= x;
  term /= dfact;
  long double sum = term;
  const long double x2 = x * x;
  for (int s = 0; s < 500; ++s) {
    term *= x2 / (2.0L * (s + 1.0L) * (2.0L * j + 2.0L * s + 3.0L));
    sum += term;
    if (term < sum * 1e-24L) break;
  }
  return sum;
}

}  // namespace

QuadratureRule1D gauss_legendre(int n) {
  if (n < 1) throw InputError("gauss_legendre: need at least one point");
  QuadratureRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;  // cos ordering gives descending |x|
    rule.weights[i] = w;
    rule.points[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

QuadratureRule1D gauss_lobatto(int n) {
  if (n < 1) throw InputError("gauss_lobatto: need at least one point");
  QuadratureRule1D rule;
  if (n == 1) {
    rule.points = {0.0};
    rule.weights = {2.0};
    return rule;
  }
  rule.points.resize(n);
  rule.weights.resize(n);
  const int m = n - 1;
  rule.points.front() = -1.0;
  rule.points.back() = 1.0;
  // Interior nodes are the roots of P_{n-1}'.
  for (int i = 1; i < m; ++i) {
    double x = std::cos(M_PI * i / m);  // Chebyshev-Lobatto initial guess
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre(m, x, p, dp);
      const double d2p = (2.0 * x * dp - m * (m + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.points[m - i] = x;
  }
  std::sort(rule.points.begin(), rule.points.end());
  for (int i = 0; i < n; ++i) {
    double p, dp;
    legendre(m, rule.points[i], p, dp);
    rule.weights[i] = 2.0 / (m * (m + 1.0) * p * p);
  }
  return rule;
}

QuadratureRule1D weighted_gauss_radau(int k, double c) {
  if (k < 0) throw InputError("weighted_gauss_radau: degree must be >= 0");
  if (c < 0.0) throw InputError("weighted_gauss_radau: weight parameter must be >= 0");
  const int n = k + 1;       // number of nodes
  const int nmom = 2 * n;    // modified moments 0 .. 2k+1

  // Modified moments against monic Legendre polynomials:
  //   nu_l = int_{-1}^{1} exp(-c(x+1)) pi_l(x) dx
  //        = kappa_l * 2 exp(-c) (-1)^l i_l(c),  kappa_l = 2^l (l!)^2/(2l)!.
  std::vector<long double> nu(nmom);
  {
    const long double cl = static_cast<long double>(c);
    const long double pre = 2.0L * std::exp(-cl);
    long double kappa = 1.0L;
    for (int l = 0; l < nmom; ++l) {
      if (l > 0) kappa *= static_cast<long double>(l) / (2.0L * l - 1.0L);
      const long double sign = (l % 2 == 0) ? 1.0L : -1.0L;
      nu[l] = kappa * pre * sign * mod_sph_bessel_i(l, cl);
    }
  }

  // Monic Legendre recurrence coefficients: a_l = 0, b_l = l^2/(4l^2-1).
  std::vector<long double> a(nmom, 0.0L), b(nmom, 0.0L);
  for (int l = 1; l < nmom; ++l) b[l] = static_cast<long double>(l) * l / (4.0L * l * l - 1.0L);

  // Modified Chebyshev algorithm for the recurrence coefficients of the
  // polynomials orthogonal w.r.t. exp(-c(x+1)) on (-1,1).
  std::vector<long double> alpha(n), beta(n);
  std::vector<long double> s_prev(nmom, 0.0L), s_curr = nu, s_next(nmom, 0.0L);
  alpha[0] = a[0] + nu[1] / nu[0];
  beta[0] = nu[0];
  for (int j = 1; j < n; ++j) {
    std::fill(s_next.begin(), s_next.end(), 0.0L);
    for (int l = j; l <= nmom - j - 1; ++l) {
      s_next[l] = s_curr[l + 1] - (alpha[j - 1] - a[l]) * s_curr[l] - beta[j - 1] * s_prev[l] +
                  b[l] * s_curr[l - 1];
    }
    alpha[j] = a[j] + s_next[j + 1] / s_next[j] - s_curr[j] / s_curr[j - 1];
    beta[j] = s_next[j] / s_curr[j - 1];
    if (!(beta[j] > 0.0L)) {
      throw NumericError("weighted_gauss_radau: recurrence construction failed (beta_" +
                         std::to_string(j) + " = " + std::to_string(static_cast<double>(beta[j])) +
                         " <= 0 for k = " + std::to_string(k) + ", c = " + std::to_string(c) + ")");
    }
    std::swap(s_prev, s_curr);
    std::swap(s_curr, s_next);
  }

  // Radau modification: replace alpha_k so that +1 becomes a node.
  long double alpha_end = 1.0L;
  if (k >= 1) {
    long double pm1 = 0.0L, p0 = 1.0L;  // monic orthogonal polynomials at x = 1
    for (int j = 0; j < k; ++j) {
      const long double p1 = (1.0L - alpha[j]) * p0 - beta[j] * pm1;
      pm1 = p0;
      p0 = p1;
    }
    if (p0 == 0.0L) throw NumericError("weighted_gauss_radau: boundary polynomial vanished");
    alpha_end = 1.0L - beta[k] * pm1 / p0;
  }

  // Golub-Welsch on the modified Jacobi matrix.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n - 1; ++j) {
    jac(j, j) = static_cast<double>(alpha[j]);
    const double off = std::sqrt(static_cast<double>(beta[j + 1]));
    jac(j, j + 1) = off;
    jac(j + 1, j) = off;
  }
  jac(n - 1, n - 1) = static_cast<double>(alpha_end);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  if (eig.info() != Eigen::Success) {
    throw NumericError("weighted_gauss_radau: Jacobi eigensolve failed");
  }

  QuadratureRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const double mu0 = static_cast<double>(beta[0]);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
    if (!(rule.weights[i] > 0.0)) {
      throw NumericError("weighted_gauss_radau: nonpositive weight computed");
    }
  }
  // Eigenvalues are sorted ascending; the largest must be the fixed node +1.
  if (std::abs(rule.points.back() - 1.0) > 1e-9) {
    throw NumericError("weighted_gauss_radau: fixed endpoint node drifted to " +
                       std::to_string(rule.points.back()));
  }
  rule.points.back() = 1.0;
  return rule;
}

Lagrange1D::Lagrange1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  const int n = size();
  if (n < 1) throw InputError("Lagrange1D: need at least one node");
  bary_.assign(n, 1.0);
  double lo = nodes_[0], hi = nodes_[0];
  for (double x : nodes_) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  span_ = std::max(hi - lo, 1e-300);
  for (int m = 0; m < n; ++m) {
    for (int l = 0; l < n; ++l) {
      if (l == m) continue;
      const double d = nodes_[m] - nodes_[l];
      if (d == 0.0) throw InputError("Lagrange1D: nodes must be distinct");
      bary_[m] /= d;
    }
  }
}

void Lagrange1D::values(double x, std::span<double> out) const {
  const int n = size();
  for (int m = 0; m < n; ++m) {
    if (std::abs(x - nodes_[m]) < 1e-13 * span_) {
      for (int l = 0; l < n; ++l) out[l] = (l == m) ? 1.0 : 0.0;
      return;
    }
  }
  double ell = 1.0;
  for (int l = 0; l < n; ++l) ell *= (x - nodes_[l]);
  for (int m = 0; m < n; ++m) out[m] = ell * bary_[m] / (x - nodes_[m]);
}

void Lagrange1D::derivatives(double x, std::span<double> out) const {
  const int n = size();
  if (n == 1) {
    out[0] = 0.0;
    return;
  }
  for (int m = 0; m < n; ++m) {
    if (std::abs(x - nodes_[m]) < 1e-13 * span_) {
      // Differentiation-matrix row at a node; each row sums to zero.
      double s = 0.0;
      for (int l = 0; l < n; ++l) {
        if (l == m) continue;
        out[l] = (bary_[l] / bary_[m]) / (nodes_[m] - nodes_[l]);
        s += out[l];
      }
      out[m] = -s;
      return;
    }
  }
  double ell = 1.0, dsum = 0.0;
  for (int l = 0; l < n; ++l) {
    ell *= (x - nodes_[l]);
    dsum += 1.0 / (x - nodes_[l]);
  }
  const double dell = ell * dsum;
  for (int m = 0; m < n; ++m) {
    const double d = x - nodes_[m];
    out[m] = (dell * d - ell) * bary_[m] / (d * d);
  }
}

double fit_loglog_rate(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("fit_loglog_rate: need >= 2 samples");
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InputError("fit_loglog_rate: samples must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace stdg
