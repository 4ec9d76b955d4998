#pragma once

// Dormand-Prince 5(4) embedded pair with Hairer's 4th-order continuous
// extension. Non-finite stage values count as a rejected step, which lets the
// right-hand sides signal leaving their domain by returning NaN.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>

#include "axistat/error.hpp"

namespace axistat::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct StepOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 0.0;  // 0 selects an initial step automatically
  double h_max = std::numeric_limits<double>::infinity();
  double h_min_rel = 1e-14;  // underflow when h < h_min_rel * max(1, |t|)
  std::size_t max_rejects_in_row = 60;
};

/// Interpolant over one accepted step [t0, t0 + h].
template <std::size_t N>
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  State<N> y0{}, y1{}, f0{}, f1{};
  std::array<State<N>, 5> coef{};

  double t1() const { return t0 + h; }

  State<N> operator()(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = coef[0][i] +
               th * (coef[1][i] + th1 * (coef[2][i] + th * (coef[3][i] + th1 * coef[4][i])));
    }
    return out;
  }
};

template <std::size_t N>
class Dopri5 {
 public:
  using Rhs = std::function<void(double, const State<N>&, State<N>&)>;
  /// Per-component absolute tolerance given the current state; defaults to opts.atol.
  using AbsTol = std::function<void(const State<N>&, State<N>&)>;

  Dopri5(Rhs rhs, double t0, const State<N>& y0, StepOptions opts = {}, AbsTol abs_tol = {})
      : rhs_(std::move(rhs)), abs_tol_(std::move(abs_tol)), opts_(opts), t_(t0), y_(y0) {
    rhs_(t_, y_, f_);
    for (double v : f_) {
      if (!std::isfinite(v)) throw Error(ErrorKind::DomainViolation, "initial state outside the ODE domain");
    }
    h_ = opts_.h_init > 0.0 ? opts_.h_init : initial_step();
    h_ = std::min(h_, opts_.h_max);
  }

  double t() const { return t_; }
  const State<N>& y() const { return y_; }
  const State<N>& dydt() const { return f_; }
  double next_step() const { return h_; }
  const DenseSegment<N>& segment() const { return seg_; }
  std::size_t evaluations() const { return evals_; }

  /// Takes one accepted step of at most `h_cap`. Returns the accepted segment.
  const DenseSegment<N>& step(double h_cap = std::numeric_limits<double>::infinity()) {
    std::size_t rejects = 0;
    bool last_rejected = false;
    for (;;) {
      double h = std::min({h_, h_cap, opts_.h_max});
      if (h < opts_.h_min_rel * std::max(1.0, std::abs(t_))) {
        throw Error(ErrorKind::StepUnderflow, "adaptive step size underflow");
      }
      const double err = attempt(h);
      if (err <= 1.0) {
        double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (last_rejected) fac = std::min(fac, 1.0);
        commit(h);
        h_ = h * fac;
        return seg_;
      }
      last_rejected = true;
      if (++rejects > opts_.max_rejects_in_row) {
        throw Error(ErrorKind::StepUnderflow, "too many consecutive rejected steps");
      }
      h_ = std::isfinite(err) ? h * std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25 * h;
    }
  }

 private:
  // Butcher tableau (Dormand & Prince 1980).
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                          a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                          d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                          d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

  void eval(double t, const State<N>& y, State<N>& out) {
    ++evals_;
    rhs_(t, y, out);
  }

  static bool finite(const State<N>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  }

  State<N> tolerance(const State<N>& a, const State<N>& b) const {
    State<N> sc;
    if (abs_tol_) {
      abs_tol_(a, sc);
    } else {
      sc.fill(opts_.atol);
    }
    for (std::size_t i = 0; i < N; ++i) {
      sc[i] += opts_.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    }
    return sc;
  }

  double attempt(double h) {
    State<N> tmp;
    const State<N>& k1 = f_;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * a21 * k1[i];
    eval(t_ + c2 * h, tmp, k2_);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * (a31 * k1[i] + a32 * k2_[i]);
    eval(t_ + c3 * h, tmp, k3_);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a41 * k1[i] + a42 * k2_[i] + a43 * k3_[i]);
    eval(t_ + c4 * h, tmp, k4_);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a51 * k1[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
    eval(t_ + c5 * h, tmp, k5_);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y_[i] +
               h * (a61 * k1[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] + a65 * k5_[i]);
    eval(t_ + h, tmp, k6_);
    for (std::size_t i = 0; i < N; ++i)
      ynew_[i] = y_[i] +
                 h * (a71 * k1[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] + a76 * k6_[i]);
    eval(t_ + h, ynew_, k7_);
    if (!finite(ynew_) || !finite(k7_) || !finite(k2_) || !finite(k3_) || !finite(k4_) ||
        !finite(k5_) || !finite(k6_)) {
      return std::numeric_limits<double>::infinity();
    }
    const State<N> sc = tolerance(y_, ynew_);
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                            e6 * k6_[i] + e7 * k7_[i]);
      const double q = e / sc[i];
      acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(N));
  }

  void commit(double h) {
    seg_.t0 = t_;
    seg_.h = h;
    seg_.y0 = y_;
    seg_.y1 = ynew_;
    seg_.f0 = f_;
    seg_.f1 = k7_;
    for (std::size_t i = 0; i < N; ++i) {
      const double diff = ynew_[i] - y_[i];
      const double bspl = h * f_[i] - diff;
      seg_.coef[0][i] = y_[i];
      seg_.coef[1][i] = diff;
      seg_.coef[2][i] = bspl;
      seg_.coef[3][i] = diff - h * k7_[i] - bspl;
      seg_.coef[4][i] = h * (d1 * f_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] +
                             d6 * k6_[i] + d7 * k7_[i]);
    }
    t_ += h;
    y_ = ynew_;
    f_ = k7_;
  }

  double initial_step() {
    const State<N> sc = tolerance(y_, y_);
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      d0 += (y_[i] / sc[i]) * (y_[i] / sc[i]);
      d1n += (f_[i] / sc[i]) * (f_[i] / sc[i]);
    }
    d0 = std::sqrt(d0 / N);
    d1n = std::sqrt(d1n / N);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, opts_.h_max);
    State<N> y1, f1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h0 * f_[i];
    eval(t_ + h0, y1, f1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double q = (f1[i] - f_[i]) / sc[i];
      d2 += q * q;
    }
    d2 = std::isfinite(d2) ? std::sqrt(d2 / N) / h0 : std::numeric_limits<double>::infinity();
    const double dmax = std::max(d1n, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min(100.0 * h0, h1);
  }

  Rhs rhs_;
  AbsTol abs_tol_;
  StepOptions opts_;
  double t_;
  double h_ = 0.0;
  State<N> y_;
  State<N> f_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{}, ynew_{};
  DenseSegment<N> seg_{};
  std::size_t evals_ = 0;
};

/// Locates a root of `g` on the segment by bisection, given a sign change
/// between the segment endpoints. Returns the time of the root.
template <std::size_t N, class G>
double bisect_event(const DenseSegment<N>& seg, G&& g, double ga, double tol) {
  double lo = seg.t0;
  double hi = seg.t1();
  double glo = ga;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid, seg(mid));
    if ((gm < 0.0) == (glo < 0.0) && gm != 0.0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace axistat::ode
