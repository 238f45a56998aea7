#pragma once
// Adaptive Taylor-series ODE integrator templated on the scalar type (real,
// complex, or jets for variational transport). A system supplies the order-n
// recurrence for its derivative coefficients; the engine handles step-size
// selection from the tail coefficients and optional dense output.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sepsplit/jet.hpp"
#include "sepsplit/mp.hpp"

namespace sepsplit {

template <typename S>
struct taylor_segment {
  real t0;
  real h;                            // step actually taken
  std::vector<std::vector<S>> coef;  // [var][order]
  S eval(int var, const real& t) const {
    const auto& c = coef[var];
    S r = c.back();
    real dt = t - t0;
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) r = scale(r, dt) + c[i];
    return r;
  }
  S eval_deriv(int var, const real& t) const {
    const auto& c = coef[var];
    int m = static_cast<int>(c.size()) - 1;
    S r = scale(c[m], real(m));
    real dt = t - t0;
    for (int i = m - 1; i >= 1; --i) r = scale(r, dt) + scale(c[i], real(i));
    return r;
  }
};

struct taylor_options {
  int order = 24;
  int digits = 50;
  double safety = 0.8;
  double max_step = 1e30;
  double min_step = 0.0;  // below this the step is considered stalled
  bool record = false;    // keep dense-output segments
};

inline int default_taylor_order(int digits) {
  int m = static_cast<int>(digits * 1.15) + 4;
  return m < 16 ? 16 : m;
}

template <typename S, typename System>
class taylor_integrator {
 public:
  taylor_integrator(System& sys, taylor_options opt)
      : sys_(sys), opt_(opt), tol_l2_(-static_cast<long>(opt.digits * 3.3219280948873623) - 8) {}

  // integrate the state in place from t0 to t1, t1 > t0 (systems fold any
  // direction/scaling of the independent variable into their derivatives)
  void integrate(std::vector<S>& state, const real& t0, const real& t1) {
    real t = t0;
    real tiny = ldexp(max(abs(t1), real(1)), tol_l2_ + 4);
    while (t < t1 - tiny) step(state, t, t1);
  }

  // one adaptive step; updates state and t, records a segment if requested
  void step(std::vector<S>& state, real& t, const real& t_end) {
    const int d = sys_.dim();
    const int m = opt_.order;
    S z = zero_like(state[0]);
    X_.assign(d, std::vector<S>(m + 1, z));
    D_.assign(d, std::vector<S>(m + 1, z));
    for (int v = 0; v < d; ++v) X_[v][0] = state[v];
    sys_.begin_step(t, m);
    for (int n = 0; n < m; ++n) {
      sys_.emit(X_, D_, n);
      real inv = real(1) / real(n + 1);
      for (int v = 0; v < d; ++v) X_[v][n + 1] = scale(D_[v][n], inv);
    }
    double h = pick_step(m);
    if (h > opt_.max_step) h = opt_.max_step;
    real hr(h);
    if (t + hr > t_end) hr = t_end - t;
    if (opt_.min_step > 0 && hr.to_double() < opt_.min_step)
      throw std::runtime_error("taylor: step collapsed below min_step");
    for (int v = 0; v < d; ++v) {
      S r = X_[v][m];
      for (int i = m - 1; i >= 0; --i) r = scale(r, hr) + X_[v][i];
      state[v] = r;
    }
    if (opt_.record) segments_.push_back({t, hr, X_});
    t += hr;
  }

  const std::vector<taylor_segment<S>>& segments() const { return segments_; }
  void clear_segments() { segments_.clear(); }

 private:
  double pick_step(int m) const {
    double h = 1e300;
    for (int v = 0; v < static_cast<int>(X_.size()); ++v) {
      long scale_l2 = std::max(mag_log2(X_[v][0]), 0L);
      for (int k = m - 1; k <= m; ++k) {
        long cm = mag_log2(X_[v][k]);
        if (cm <= -(1L << 28)) continue;  // vanishing coefficient
        double hl2 = static_cast<double>(tol_l2_ + scale_l2 - cm) / k;
        double hv = std::exp2(hl2);
        if (hv < h) h = hv;
      }
    }
    if (h > 1e299) h = 1.0;  // polynomial/constant solution
    return h * opt_.safety;
  }

  System& sys_;
  taylor_options opt_;
  long tol_l2_;
  std::vector<std::vector<S>> X_, D_;
  std::vector<taylor_segment<S>> segments_;
};

// fill cos(w(t0+s))/sin(w(t0+s)) Taylor coefficients in s up to order m
inline void fill_osc(std::vector<real>& c, std::vector<real>& s, const real& w,
                     const real& t0, int m) {
  c.assign(m + 1, real(0));
  s.assign(m + 1, real(0));
  real arg = w * t0;
  sin_cos(s[0], c[0], arg);
  for (int n = 0; n < m; ++n) {
    c[n + 1] = -w * s[n] / real(n + 1);
    s[n + 1] = w * c[n] / real(n + 1);
  }
}

}  // namespace sepsplit
