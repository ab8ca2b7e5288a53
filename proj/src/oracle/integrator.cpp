#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "gbt/oracle.hpp"
#include "stepper.hpp"

namespace gbt {

FlowField::FlowField(const VectorField& vf, double direction) : direction_(direction) {
  if (!vf.is_specialized()) throw std::invalid_argument("integration needs numeric values for every parameter");
  for (const auto& c : vf.components) f_.emplace_back(c);
}

void FlowField::operator()(const double* x, double* out) const {
  const std::span<const double> p(x, f_.size());
  for (std::size_t i = 0; i < f_.size(); ++i) out[i] = direction_ * f_[i].evaluate(p);
}

namespace detail {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

}  // namespace

Stepper::Stepper(const FlowField& f, std::vector<double> x0, double t0, double tol)
    : f_(f), n_(f.dim()), t_(t0), tol_(tol), x_(std::move(x0)), k1_(n_) {
  f_(x_.data(), k1_.data());
  double norm = 0;
  for (std::size_t i = 0; i < n_; ++i) norm = std::max(norm, std::abs(k1_[i]) / (1 + std::abs(x_[i])));
  h_ = norm > 0 ? std::min(0.1, 0.01 * std::pow(tol_, 0.2) / norm) : 0.01;
  h_ = std::max(h_, 1e-8);
}

std::vector<double> Stepper::trial(const std::vector<double>& x, const std::vector<double>& k1, double h,
                                   std::vector<double>* k7_out, double* err_out) const {
  std::vector<double> k2(n_), k3(n_), k4(n_), k5(n_), k6(n_), k7(n_), y(n_), out(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = x[i] + h * a21 * k1[i];
  f_(y.data(), k2.data());
  for (std::size_t i = 0; i < n_; ++i) y[i] = x[i] + h * (a31 * k1[i] + a32 * k2[i]);
  f_(y.data(), k3.data());
  for (std::size_t i = 0; i < n_; ++i) y[i] = x[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  f_(y.data(), k4.data());
  for (std::size_t i = 0; i < n_; ++i) y[i] = x[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  f_(y.data(), k5.data());
  for (std::size_t i = 0; i < n_; ++i)
    y[i] = x[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  f_(y.data(), k6.data());
  for (std::size_t i = 0; i < n_; ++i)
    out[i] = x[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  if (k7_out || err_out) f_(out.data(), k7.data());
  if (err_out) {
    double err = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = tol_ * (1 + std::max(std::abs(x[i]), std::abs(out[i])));
      err = std::max(err, std::abs(e) / sc);
    }
    *err_out = err;
  }
  if (k7_out) *k7_out = std::move(k7);
  return out;
}

StepStatus Stepper::step(double t_limit) {
  for (;;) {
    double h = std::min(h_, t_limit - t_);
    if (h <= 1e-14 * std::max(1.0, std::abs(t_))) return StepStatus::underflow;
    std::vector<double> k7;
    double err = 0;
    std::vector<double> y = trial(x_, k1_, h, &k7, &err);
    bool finite = std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); }) && std::isfinite(err);
    if (finite && err <= 1.0) {
      prev_x_ = std::move(x_);
      prev_k1_ = std::move(k1_);
      prev_t_ = t_;
      x_ = std::move(y);
      k1_ = std::move(k7);
      t_ += h;
      ++steps_;
      max_err_ = std::max(max_err_, err * tol_);
      const double grow = err == 0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
      if (h == h_) h_ = h * grow;
      return StepStatus::ok;
    }
    ++rejected_;
    h_ = h * (finite ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.25);
  }
}

std::vector<double> Stepper::from_previous(double tau) const {
  if (tau == 0.0) return prev_x_;
  return trial(prev_x_, prev_k1_, tau, nullptr, nullptr);
}

}  // namespace detail

Trajectory integrate(const VectorField& vf, const std::vector<double>& x0, double t0, double t1,
                     const IntegrateOptions& options) {
  if (!(options.tol >= 1e-12 && options.tol <= 1e-3)) throw std::invalid_argument("tol must lie in [1e-12, 1e-3]");
  if (x0.size() != vf.dimension()) throw std::invalid_argument("initial state has the wrong dimension");
  if (!(t1 >= t0)) throw std::invalid_argument("integration needs t1 >= t0");
  FlowField field(vf);
  detail::Stepper st(field, x0, t0, options.tol);
  Trajectory tr;
  auto record = [&] {
    if (!options.record) return;
    tr.t.push_back(st.t());
    tr.x.push_back(st.x());
  };
  record();
  while (st.t() < t1) {
    if (st.steps() >= options.max_steps) {
      tr.reason = "step budget exhausted";
      break;
    }
    if (st.step(t1) == detail::StepStatus::underflow) {
      tr.underflow = true;
      tr.reason = "step size underflow at t = " + std::to_string(st.t());
      break;
    }
    record();
    if (std::any_of(st.x().begin(), st.x().end(), [&](double v) { return std::abs(v) > options.escape_radius; })) {
      tr.escaped = true;
      tr.reason = "escaped at t = " + std::to_string(st.t());
      break;
    }
  }
  if (!options.record) {
    tr.t.push_back(st.t());
    tr.x.push_back(st.x());
  }
  tr.steps = st.steps();
  tr.rejected = st.rejected();
  tr.max_error_estimate = st.max_error();
  return tr;
}

ReturnResult return_map(const FlowField& field, const Section& section, double r, bool backward,
                        const ReturnOptions& options) {
  const auto& o = section.origin;
  const auto& d = section.direction;
  auto cross = [&](const std::vector<double>& x) { return d[0] * (x[1] - o[1]) - d[1] * (x[0] - o[0]); };
  auto along = [&](const std::vector<double>& x) { return d[0] * (x[0] - o[0]) + d[1] * (x[1] - o[1]); };
  // Reversed time runs clockwise.
  const double orient = backward ? -1.0 : 1.0;

  detail::Stepper st(field, {o[0] + r * d[0], o[1] + r * d[1]}, 0.0, options.tol);
  ReturnResult res;
  double prev = 0.0;
  while (st.t() < options.t_max) {
    if (st.step(options.t_max) == detail::StepStatus::underflow) {
      res.flag = "underflow";
      return res;
    }
    const auto& x = st.x();
    if (std::abs(x[0] - o[0]) > options.escape_radius || std::abs(x[1] - o[1]) > options.escape_radius) {
      res.flag = "escape";
      return res;
    }
    const double now = orient * cross(x);
    if (prev < 0 && now >= 0) {
      // Bisection on single steps from the last accepted state.
      double lo = 0, hi = st.t() - st.prev_t();
      for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (orient * cross(st.from_previous(mid)) < 0) lo = mid;
        else hi = mid;
      }
      const std::vector<double> hit = st.from_previous(hi);
      if (along(hit) > 0) {
        res.returned = true;
        res.r = along(hit);
        res.time = st.prev_t() + hi;
        return res;
      }
    }
    prev = now;
  }
  res.flag = "no-return";
  return res;
}

}  // namespace gbt
