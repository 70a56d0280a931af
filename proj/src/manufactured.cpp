// SPDX-License-Identifier: Apache-2.0
#include "stdg/manufactured.hpp"

#include <cmath>

#include "stdg/common.hpp"

namespace stdg {

std::array<double, kNumFields> ManufacturedCase::exact_state(const Point& p) const {
  const auto v = velocity(p);
  const auto s = stress(p);
  const auto q = darcy_flux(p);
  const double a = material_.alpha;
  return {v[0], v[1], s[0], s[1], s[2], pressure(p), q[0] + a * v[0], q[1] + a * v[1]};
}

std::array<double, 2> ManufacturedCase::darcy_flux(const Point& p) const {
  const auto gp = pressure_grad(p);
  const Eigen::Matrix2d& K = material_.K;
  return {-(K(0, 0) * gp[0] + K(0, 1) * gp[1]), -(K(1, 0) * gp[0] + K(1, 1) * gp[1])};
}

std::array<double, kNumFields> ManufacturedCase::evolutionary_source(const Point& p) const {
  const MaterialParams& m = material_;
  const auto v = velocity(p);
  const auto vt = velocity_dt(p);
  const auto ds = stress_div(p);
  const auto gv = velocity_grad(p);
  const auto q = darcy_flux(p);
  const double a = m.alpha;
  const std::array<double, 2> qbar = {q[0] + a * v[0], q[1] + a * v[1]};
  const Eigen::Matrix2d kinv = m.K_inverse();

  // Momentum row of the evolutionary operator, with its (v, v) block
  // applied literally: F1 = rho dt v - Div sigma - alpha^2 K^{-1} v
  //                         - alpha K^{-1} q_bar.
  std::array<double, kNumFields> f{};
  for (int c = 0; c < 2; ++c) {
    double m1 = 0.0;
    for (int d = 0; d < 2; ++d) m1 += kinv(c, d) * (-a * a * v[d] - a * qbar[d]);
    f[kVx + c] = m.rho * vt[c] - ds[c] + m1;
  }
  // Mass row: F3 = c0 dt p + div q_bar.
  const double div_v = gv[0] + gv[3];
  f[kP] = m.c0 * pressure_dt(p) - pressure_laplacian_k(p) + a * div_v;
  // Rows 2 and 4 vanish identically for fields derived from (u, p).
  return f;
}

std::array<double, 2> ManufacturedCase::momentum_source(const Point& p) const {
  const MaterialParams& m = material_;
  const auto vt = velocity_dt(p);
  const auto ds = stress_div(p);
  const auto gp = pressure_grad(p);
  return {vt[0] - ds[0] / m.rho + m.alpha * gp[0] / m.rho,
          vt[1] - ds[1] / m.rho + m.alpha * gp[1] / m.rho};
}

double ManufacturedCase::mass_source(const Point& p) const {
  const MaterialParams& m = material_;
  const auto gv = velocity_grad(p);
  return m.c0 * pressure_dt(p) + m.alpha * (gv[0] + gv[3]) - pressure_laplacian_k(p);
}

DiscreteSpace::FieldFunction ManufacturedCase::initial_fields() const {
  return [this](double x, double y) { return exact_state({x, y, 0.0}); };
}

DiscreteSpace::FieldFunction ManufacturedCase::state_at(double t) const {
  return [this, t](double x, double y) { return exact_state({x, y, t}); };
}

SpaceTimeField ManufacturedCase::source() const {
  return [this](double x, double y, double t) {
    const auto f = evolutionary_source({x, y, t});
    std::array<double, kNumFields> out{};
    out[kVx] = f[kVx];
    out[kVy] = f[kVy];
    out[kP] = f[kP];
    return out;
  };
}

namespace {

// Sixth-order central difference stencils; the closed forms are entire, so
// stencil points may leave the domain.
template <typename F>
double diff1(const F& f, double h) {
  return (-f(-3.0) + 9.0 * f(-2.0) - 45.0 * f(-1.0) + 45.0 * f(1.0) - 9.0 * f(2.0) + f(3.0)) /
         (60.0 * h);
}

template <typename F>
double diff2(const F& f, double h) {
  return (2.0 * f(-3.0) - 27.0 * f(-2.0) + 270.0 * f(-1.0) - 490.0 * f(0.0) + 270.0 * f(1.0) -
          27.0 * f(2.0) + 2.0 * f(3.0)) /
         (180.0 * h * h);
}

}  // namespace

double ManufacturedCase::first_order_residual(int samples, double tmax) const {
  const MaterialParams& m = material_;
  const Eigen::Matrix2d kinv = m.K_inverse();
  const double h = 1e-2;
  double worst = 0.0;

  const auto u_at = [this](int c, double x, double y, double t) {
    return displacement({x, y, t})[c];
  };
  const auto p_at = [this](double x, double y, double t) { return pressure({x, y, t}); };

  // Halton-type low-discrepancy samples keep the check deterministic.
  const auto halton = [](int index, int base) {
    double f = 1.0, r = 0.0;
    for (int i = index + 1; i > 0; i /= base) {
      f /= base;
      r += f * (i % base);
    }
    return r;
  };

  for (int s = 0; s < samples; ++s) {
    const double x = 0.05 + 0.9 * halton(s, 2);
    const double y = 0.05 + 0.9 * halton(s, 3);
    const double t = tmax * (0.05 + 0.9 * halton(s, 5));
    const Point pt{x, y, t};

    // Finite-difference derived fields from the base closed forms.
    std::array<double, 2> v_fd, vt_fd;
    std::array<double, 4> gu, gv_fd;  // du_i/dx_j, dv_i/dx_j
    std::array<double, 3> eps_t_fd;   // dt eps(u)
    for (int c = 0; c < 2; ++c) {
      v_fd[c] = diff1([&](double k) { return u_at(c, x, y, t + k * h); }, h);
      vt_fd[c] = diff2([&](double k) { return u_at(c, x, y, t + k * h); }, h);
      gu[2 * c] = diff1([&](double k) { return u_at(c, x + k * h, y, t); }, h);
      gu[2 * c + 1] = diff1([&](double k) { return u_at(c, x, y + k * h, t); }, h);
      gv_fd[2 * c] = diff1(
          [&](double k) {
            return diff1([&](double l) { return u_at(c, x + k * h, y, t + l * h); }, h);
          },
          h);
      gv_fd[2 * c + 1] = diff1(
          [&](double k) {
            return diff1([&](double l) { return u_at(c, x, y + k * h, t + l * h); }, h);
          },
          h);
    }
    eps_t_fd = {gv_fd[0], gv_fd[3], 0.5 * (gv_fd[1] + gv_fd[2])};

    // Div sigma with sigma = C eps(u), via second derivatives of u.
    const double u1xx = diff2([&](double k) { return u_at(0, x + k * h, y, t); }, h);
    const double u1yy = diff2([&](double k) { return u_at(0, x, y + k * h, t); }, h);
    const double u2xx = diff2([&](double k) { return u_at(1, x + k * h, y, t); }, h);
    const double u2yy = diff2([&](double k) { return u_at(1, x, y + k * h, t); }, h);
    const auto mixed = [&](int c) {
      return diff1(
          [&](double k) {
            return diff1([&](double l) { return u_at(c, x + k * h, y + l * h, t); }, h);
          },
          h);
    };
    const double u1xy = mixed(0), u2xy = mixed(1);
    const double lam = m.lambda, mu = m.mu;
    const std::array<double, 2> div_sigma_fd = {
        (2.0 * mu + lam) * u1xx + lam * u2xy + mu * (u1yy + u2xy),
        mu * (u1xy + u2xx) + lam * u1xy + (2.0 * mu + lam) * u2yy};

    const std::array<double, 2> gp_fd = {
        diff1([&](double k) { return p_at(x + k * h, y, t); }, h),
        diff1([&](double k) { return p_at(x, y + k * h, t); }, h)};
    const double pt_fd = diff1([&](double k) { return p_at(x, y, t + k * h); }, h);
    const double pxx = diff2([&](double k) { return p_at(x + k * h, y, t); }, h);
    const double pyy = diff2([&](double k) { return p_at(x, y + k * h, t); }, h);
    const double pxy = diff1(
        [&](double k) {
          return diff1([&](double l) { return p_at(x + k * h, y + l * h, t); }, h);
        },
        h);
    const double div_k_grad_p =
        m.K(0, 0) * pxx + (m.K(0, 1) + m.K(1, 0)) * pxy + m.K(1, 1) * pyy;
    const std::array<double, 2> q_fd = {-(m.K(0, 0) * gp_fd[0] + m.K(0, 1) * gp_fd[1]),
                                        -(m.K(1, 0) * gp_fd[0] + m.K(1, 1) * gp_fd[1])};

    // Row (a): rho dt v - Div sigma + alpha grad p = rho f.
    const auto f = momentum_source(pt);
    for (int c = 0; c < 2; ++c) {
      worst = std::max(worst, std::abs(m.rho * vt_fd[c] - div_sigma_fd[c] +
                                       m.alpha * gp_fd[c] - m.rho * f[c]));
    }
    // Row (b): S dt sigma - eps(v) = 0, with dt sigma differenced from the
    // analytic stress and eps(v) from the mixed FD of u.
    {
      std::array<double, 3> sigma_t_fd;
      for (int c = 0; c < 3; ++c) {
        sigma_t_fd[c] = diff1([&](double k) { return stress({x, y, t + k * h})[c]; }, h);
      }
      const auto s_rate = material_.apply_compliance(sigma_t_fd);
      for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(s_rate[c] - eps_t_fd[c]));
    }
    // Row (c): c0 dt p + alpha div v + div q = g.
    worst = std::max(worst, std::abs(m.c0 * pt_fd + m.alpha * (gv_fd[0] + gv_fd[3]) -
                                     div_k_grad_p - mass_source(pt)));
    // Row (d): K^{-1} q + grad p = 0 against the analytic flux.
    const auto q_an = darcy_flux(pt);
    for (int c = 0; c < 2; ++c) {
      worst = std::max(worst, std::abs(kinv(c, 0) * q_an[0] + kinv(c, 1) * q_an[1] + gp_fd[c]));
      worst = std::max(worst, std::abs(q_an[c] - q_fd[c]));
    }
    // Cross-check the hand-derived fields against their FD counterparts.
    const auto v_an = velocity(pt);
    const auto vt_an = velocity_dt(pt);
    const auto gv_an = velocity_grad(pt);
    const auto ds_an = stress_div(pt);
    for (int c = 0; c < 2; ++c) {
      worst = std::max(worst, std::abs(v_an[c] - v_fd[c]));
      worst = std::max(worst, std::abs(vt_an[c] - vt_fd[c]));
      worst = std::max(worst, std::abs(ds_an[c] - div_sigma_fd[c]));
    }
    for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(gv_an[c] - gv_fd[c]));
  }
  return worst;
}

namespace {

class TrigCase final : public ManufacturedCase {
 public:
  TrigCase(const MaterialParams& m, double scale) : ManufacturedCase(m), s_(scale) {}
  std::string name() const override { return "trig"; }

  std::array<double, 2> displacement(const Point& p) const override {
    return {s_ * phi(p) * std::sin(p.t), s_ * phi(p) * std::cos(p.t)};
  }
  std::array<double, 2> velocity(const Point& p) const override {
    return {s_ * phi(p) * std::cos(p.t), -s_ * phi(p) * std::sin(p.t)};
  }
  std::array<double, 2> velocity_dt(const Point& p) const override {
    return {-s_ * phi(p) * std::sin(p.t), -s_ * phi(p) * std::cos(p.t)};
  }
  std::array<double, 4> velocity_grad(const Point& p) const override {
    const double c = std::cos(p.t), s = std::sin(p.t);
    return {s_ * phix(p) * c, s_ * phiy(p) * c, -s_ * phix(p) * s, -s_ * phiy(p) * s};
  }
  std::array<double, 3> stress(const Point& p) const override {
    const double t1 = std::sin(p.t), t2 = std::cos(p.t);
    const double e11 = s_ * phix(p) * t1;
    const double e22 = s_ * phiy(p) * t2;
    const double e12 = 0.5 * s_ * (phiy(p) * t1 + phix(p) * t2);
    const auto sg = material_.apply_elasticity({e11, e22, e12});
    return sg;
  }
  std::array<double, 2> stress_div(const Point& p) const override {
    const double t1 = std::sin(p.t), t2 = std::cos(p.t);
    const double lam = material_.lambda, mu = material_.mu;
    const double dx_s11 = s_ * ((2.0 * mu + lam) * phixx(p) * t1 + lam * phixy(p) * t2);
    const double dy_s12 = s_ * mu * (phiyy(p) * t1 + phixy(p) * t2);
    const double dx_s12 = s_ * mu * (phixy(p) * t1 + phixx(p) * t2);
    const double dy_s22 = s_ * (lam * phixy(p) * t1 + (2.0 * mu + lam) * phiyy(p) * t2);
    return {dx_s11 + dy_s12, dx_s12 + dy_s22};
  }
  double pressure(const Point& p) const override { return phi(p) * std::sin(2.0 * p.t); }
  double pressure_dt(const Point& p) const override { return 2.0 * phi(p) * std::cos(2.0 * p.t); }
  std::array<double, 2> pressure_grad(const Point& p) const override {
    const double s2 = std::sin(2.0 * p.t);
    return {phix(p) * s2, phiy(p) * s2};
  }
  double pressure_laplacian_k(const Point& p) const override {
    const Eigen::Matrix2d& K = material_.K;
    return (K(0, 0) * phixx(p) + (K(0, 1) + K(1, 0)) * phixy(p) + K(1, 1) * phiyy(p)) *
           std::sin(2.0 * p.t);
  }

 private:
  static double phi(const Point& p) { return std::sin(M_PI * p.x) * std::sin(M_PI * p.y); }
  static double phix(const Point& p) {
    return M_PI * std::cos(M_PI * p.x) * std::sin(M_PI * p.y);
  }
  static double phiy(const Point& p) {
    return M_PI * std::sin(M_PI * p.x) * std::cos(M_PI * p.y);
  }
  static double phixx(const Point& p) { return -M_PI * M_PI * phi(p); }
  static double phiyy(const Point& p) { return -M_PI * M_PI * phi(p); }
  static double phixy(const Point& p) {
    return M_PI * M_PI * std::cos(M_PI * p.x) * std::cos(M_PI * p.y);
  }
  double s_;
};

double poly_eval(const std::vector<double>& c, double t, int deriv = 0) {
  double out = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= deriv; --j) {
    double factor = 1.0;
    for (int d = 0; d < deriv; ++d) factor *= (j - d);
    out = out * t + factor * c[j];
  }
  return out;
}

class BubbleCase final : public ManufacturedCase {
 public:
  BubbleCase(const MaterialParams& m, std::vector<double> p1, std::vector<double> p2,
             std::vector<double> p3, double scale)
      : ManufacturedCase(m), p1_(std::move(p1)), p2_(std::move(p2)), p3_(std::move(p3)), s_(scale) {}
  std::string name() const override { return "bubble"; }

  std::array<double, 2> displacement(const Point& p) const override {
    return {s_ * bub(p) * poly_eval(p1_, p.t), s_ * bub(p) * poly_eval(p2_, p.t)};
  }
  std::array<double, 2> velocity(const Point& p) const override {
    return {s_ * bub(p) * poly_eval(p1_, p.t, 1), s_ * bub(p) * poly_eval(p2_, p.t, 1)};
  }
  std::array<double, 2> velocity_dt(const Point& p) const override {
    return {s_ * bub(p) * poly_eval(p1_, p.t, 2), s_ * bub(p) * poly_eval(p2_, p.t, 2)};
  }
  std::array<double, 4> velocity_grad(const Point& p) const override {
    const double d1 = poly_eval(p1_, p.t, 1), d2 = poly_eval(p2_, p.t, 1);
    return {s_ * bx(p) * d1, s_ * by(p) * d1, s_ * bx(p) * d2, s_ * by(p) * d2};
  }
  std::array<double, 3> stress(const Point& p) const override {
    const double t1 = poly_eval(p1_, p.t), t2 = poly_eval(p2_, p.t);
    return material_.apply_elasticity(
        {s_ * bx(p) * t1, s_ * by(p) * t2, 0.5 * s_ * (by(p) * t1 + bx(p) * t2)});
  }
  std::array<double, 2> stress_div(const Point& p) const override {
    const double t1 = poly_eval(p1_, p.t), t2 = poly_eval(p2_, p.t);
    const double lam = material_.lambda, mu = material_.mu;
    const double dx_s11 = s_ * ((2.0 * mu + lam) * bxx(p) * t1 + lam * bxy(p) * t2);
    const double dy_s12 = s_ * mu * (byy(p) * t1 + bxy(p) * t2);
    const double dx_s12 = s_ * mu * (bxy(p) * t1 + bxx(p) * t2);
    const double dy_s22 = s_ * (lam * bxy(p) * t1 + (2.0 * mu + lam) * byy(p) * t2);
    return {dx_s11 + dy_s12, dx_s12 + dy_s22};
  }
  double pressure(const Point& p) const override { return bub(p) * poly_eval(p3_, p.t); }
  double pressure_dt(const Point& p) const override { return bub(p) * poly_eval(p3_, p.t, 1); }
  std::array<double, 2> pressure_grad(const Point& p) const override {
    const double t3 = poly_eval(p3_, p.t);
    return {bx(p) * t3, by(p) * t3};
  }
  double pressure_laplacian_k(const Point& p) const override {
    const Eigen::Matrix2d& K = material_.K;
    return (K(0, 0) * bxx(p) + (K(0, 1) + K(1, 0)) * bxy(p) + K(1, 1) * byy(p)) *
           poly_eval(p3_, p.t);
  }

 private:
  static double bub(const Point& p) { return p.x * (1.0 - p.x) * p.y * (1.0 - p.y); }
  static double bx(const Point& p) { return (1.0 - 2.0 * p.x) * p.y * (1.0 - p.y); }
  static double by(const Point& p) { return p.x * (1.0 - p.x) * (1.0 - 2.0 * p.y); }
  static double bxx(const Point& p) { return -2.0 * p.y * (1.0 - p.y); }
  static double byy(const Point& p) { return -2.0 * p.x * (1.0 - p.x); }
  static double bxy(const Point& p) { return (1.0 - 2.0 * p.x) * (1.0 - 2.0 * p.y); }
  std::vector<double> p1_, p2_, p3_;
  double s_;
};

}  // namespace

std::unique_ptr<ManufacturedCase> make_trig_case(const MaterialParams& material, double scale) {
  return std::make_unique<TrigCase>(material, scale);
}

std::unique_ptr<ManufacturedCase> make_bubble_case(const MaterialParams& material,
                                                   std::vector<double> p1_coeffs,
                                                   std::vector<double> p2_coeffs,
                                                   std::vector<double> p3_coeffs, double scale) {
  return std::make_unique<BubbleCase>(material, std::move(p1_coeffs), std::move(p2_coeffs),
                                      std::move(p3_coeffs), scale);
}

std::unique_ptr<ManufacturedCase> make_zero_case(const MaterialParams& material) {
  return std::make_unique<BubbleCase>(material, std::vector<double>{0.0}, std::vector<double>{0.0},
                                      std::vector<double>{0.0}, 0.0);
}

std::unique_ptr<ManufacturedCase> make_case(const std::string& id,
                                            const MaterialParams& material) {
  if (id == "trig" || id == "default") return make_trig_case(material);
  if (id == "bubble") {
    return make_bubble_case(material, {0.0, 1.0, 0.5}, {1.0, -0.5, 0.25}, {0.5, 1.0, -0.75});
  }
  if (id == "zero") return make_zero_case(material);
  throw InputError("unknown manufactured case id: " + id);
}

}  // namespace stdg
