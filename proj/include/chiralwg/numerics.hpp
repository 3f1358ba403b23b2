#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "chiralwg/errors.hpp"

namespace chiralwg::numerics {

// Dormand-Prince 5(4) with PI-free step control. Deterministic: fixed stage
// order, steps clipped to land exactly on observer times. The observer is
// called at t0 and then every dt_out.
template <class Scalar>
class DormandPrince54 {
  public:
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Rhs = std::function<void(double, const Vec&, Vec&)>;

    double rtol = 1e-9;
    double atol = 1e-12;
    double h_init = 0.0;   // 0: auto
    double h_min_factor = 1e-14;  // min step as fraction of span

    void integrate(const Rhs& f, Vec& y, double t0, double t1, double dt_out,
                   const std::function<void(double, const Vec&)>& observe) {
        const double span = t1 - t0;
        if (span <= 0.0) {
            if (observe) observe(t0, y);
            return;
        }
        const double h_min = span * h_min_factor;
        double h = h_init > 0.0 ? h_init : span * 1e-6;
        double t = t0;
        double t_next_out = t0;
        if (observe) {
            observe(t0, y);
            t_next_out = t0 + dt_out;
        } else {
            t_next_out = t1;
        }

        Vec k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()),
            k6(y.size()), k7(y.size()), ytmp(y.size()), ynew(y.size()), yerr(y.size());
        f(t, y, k1);  // FSAL seed

        while (t < t1 - 1e-15 * span) {
            const double t_stop = std::min(t1, t_next_out);
            const bool clipped = (t + h >= t_stop - 1e-15 * span);
            const double hs = clipped ? t_stop - t : h;

            // Stages (classic DP54 tableau).
            ytmp = y + hs * (a21 * k1);
            f(t + c2 * hs, ytmp, k2);
            ytmp = y + hs * (a31 * k1 + a32 * k2);
            f(t + c3 * hs, ytmp, k3);
            ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
            f(t + c4 * hs, ytmp, k4);
            ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            f(t + c5 * hs, ytmp, k5);
            ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            f(t + hs, ytmp, k6);
            ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            f(t + hs, ynew, k7);
            yerr = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            // Scaled max-norm error.
            double err = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err = std::max(err, std::abs(yerr[i]) / sc);
            }

            if (err <= 1.0) {
                t += hs;
                y.swap(ynew);
                k1.swap(k7);  // FSAL
                if (observe && t >= t_next_out - 1e-15 * span) {
                    observe(t, y);
                    t_next_out += dt_out;
                }
                const double grow = err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 1.0, 5.0) : 5.0;
                if (!clipped) h = hs * grow;  // keep the unclipped proposal otherwise
            } else {
                h = hs * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
                if (h < h_min) {
                    throw StepFailure("adaptive integrator step underflow at t = " +
                                      std::to_string(t));
                }
            }
        }
    }

  private:
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // e = b - b_hat (4th order embedded)
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600;
    static constexpr double e3 = 500.0 / 1113 - 7571.0 / 16695;
    static constexpr double e4 = 125.0 / 192 - 393.0 / 640;
    static constexpr double e5 = -2187.0 / 6784 + 92097.0 / 339200;
    static constexpr double e6 = 11.0 / 84 - 187.0 / 2100;
    static constexpr double e7 = -1.0 / 40;
};

// Thomas algorithm for a constant symmetric tridiagonal system
// (diag, off) * x = rhs. The factorization is precomputed once.
class TridiagSolver {
  public:
    TridiagSolver() = default;
    TridiagSolver(Eigen::Index n, double diag, double off) { reset(n, diag, off); }

    void reset(Eigen::Index n, double diag, double off) {
        off_ = off;
        cp_.resize(n);
        double denom = diag;
        cp_[0] = off / denom;
        inv_denom_.resize(n);
        inv_denom_[0] = 1.0 / denom;
        for (Eigen::Index i = 1; i < n; ++i) {
            denom = diag - off * cp_[i - 1];
            cp_[i] = off / denom;
            inv_denom_[i] = 1.0 / denom;
        }
    }

    void solve(const Eigen::VectorXd& rhs, Eigen::VectorXd& x) const {
        const Eigen::Index n = cp_.size();
        x.resize(n);
        x[0] = rhs[0] * inv_denom_[0];
        for (Eigen::Index i = 1; i < n; ++i) {
            x[i] = (rhs[i] - off_ * x[i - 1]) * inv_denom_[i];
        }
        for (Eigen::Index i = n - 2; i >= 0; --i) {
            x[i] -= cp_[i] * x[i + 1];
        }
    }

  private:
    double off_ = 0.0;
    Eigen::VectorXd cp_;
    Eigen::VectorXd inv_denom_;
};

// Least-squares slope/intercept of y(x).
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = std::min(x.size(), y.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    LineFit f;
    if (denom != 0.0) {
        f.slope = (n * sxy - sx * sy) / denom;
        f.intercept = (sy - f.slope * sx) / n;
    }
    return f;
}

// Decay-rate fit: ln p(t) linear over samples with p in [p_lo, p_hi].
// Returns 0 when fewer than 3 samples qualify.
inline double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& p,
                             double p_hi = 0.8, double p_lo = 0.05) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < std::min(t.size(), p.size()); ++i) {
        if (p[i] < p_lo) break;  // stop at the tail (non-exponential floor)
        if (p[i] <= p_hi) {
            xs.push_back(t[i]);
            ys.push_back(std::log(p[i]));
        }
    }
    if (xs.size() < 3) return 0.0;
    return -fit_line(xs, ys).slope;
}

}  // namespace chiralwg::numerics
