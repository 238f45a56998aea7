#pragma once
// Truncated Taylor polynomials used for jet transport:
//   dual2<T> -- value plus two first-order partials (flow Jacobians)
//   jet1<T>  -- one-parameter jet of runtime order (manifold parameterizations)
// plus the convolution helpers shared by the Taylor recurrences.

#include <vector>

#include "sepsplit/mp.hpp"

namespace sepsplit {

template <typename T>
struct dual2 {
  T v{}, da{}, db{};
  dual2() = default;
  dual2(const T& val) : v(val) {}
  dual2(const T& val, const T& a, const T& b) : v(val), da(a), db(b) {}
  dual2(double val) : v(T(val)) {}
  dual2(int val) : v(T(val)) {}

  dual2 operator-() const { return {-v, -da, -db}; }
  dual2& operator+=(const dual2& o) { v += o.v; da += o.da; db += o.db; return *this; }
  dual2& operator-=(const dual2& o) { v -= o.v; da -= o.da; db -= o.db; return *this; }
  friend dual2 operator+(const dual2& x, const dual2& y) { return {x.v + y.v, x.da + y.da, x.db + y.db}; }
  friend dual2 operator-(const dual2& x, const dual2& y) { return {x.v - y.v, x.da - y.da, x.db - y.db}; }
  friend dual2 operator*(const dual2& x, const dual2& y) {
    return {x.v * y.v, x.v * y.da + x.da * y.v, x.v * y.db + x.db * y.v};
  }
  friend dual2 operator*(const dual2& x, const T& s) { return {x.v * s, x.da * s, x.db * s}; }
  friend dual2 operator*(const T& s, const dual2& x) { return x * s; }
  dual2& operator/=(long n) { T s = T(1) / T(n); v *= s; da *= s; db *= s; return *this; }
};

template <typename T>
dual2<T> sin_d2(const dual2<T>& x) {
  T s, c;
  sin_cos(s, c, x.v);
  return {s, c * x.da, c * x.db};
}
template <typename T>
dual2<T> cos_d2(const dual2<T>& x) {
  T s, c;
  sin_cos(s, c, x.v);
  return {c, -s * x.da, -s * x.db};
}

// One-parameter truncated jet; order fixed at construction.
template <typename T>
class jet1 {
 public:
  jet1() : c_(1, T(0)) {}
  explicit jet1(int order) : c_(order + 1, T(0)) {}
  jet1(int order, const T& val) : c_(order + 1, T(0)) { c_[0] = val; }
  static jet1 variable(int order, const T& val, const T& slope = T(1)) {
    jet1 j(order, val);
    if (order >= 1) j.c_[1] = slope;
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int i) const { return c_[i]; }
  T& operator[](int i) { return c_[i]; }
  const T& value() const { return c_[0]; }

  jet1 operator-() const {
    jet1 r(order());
    for (int i = 0; i <= order(); ++i) r.c_[i] = -c_[i];
    return r;
  }
  jet1& operator+=(const jet1& o) {
    for (int i = 0; i <= order(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  jet1& operator-=(const jet1& o) {
    for (int i = 0; i <= order(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend jet1 operator+(const jet1& a, const jet1& b) { jet1 r(a); r += b; return r; }
  friend jet1 operator-(const jet1& a, const jet1& b) { jet1 r(a); r -= b; return r; }
  friend jet1 operator*(const jet1& a, const jet1& b) {
    int m = a.order();
    jet1 r(m);
    for (int n = 0; n <= m; ++n) {
      T acc = a.c_[0] * b.c_[n];
      for (int i = 1; i <= n; ++i) acc += a.c_[i] * b.c_[n - i];
      r.c_[n] = acc;
    }
    return r;
  }
  friend jet1 operator*(const jet1& a, const T& s) {
    jet1 r(a);
    for (auto& x : r.c_) x *= s;
    return r;
  }
  friend jet1 operator*(const T& s, const jet1& a) { return a * s; }
  jet1& operator/=(long n) {
    for (auto& x : c_) x /= n;
    return *this;
  }
  // a / b, b[0] != 0
  friend jet1 operator/(const jet1& a, const jet1& b) {
    int m = a.order();
    jet1 r(m);
    T inv = T(1) / b.c_[0];
    for (int n = 0; n <= m; ++n) {
      T acc = a.c_[n];
      for (int i = 0; i < n; ++i) acc -= r.c_[i] * b.c_[n - i];
      r.c_[n] = acc * inv;
    }
    return r;
  }

  T eval(const T& s) const {
    T r = c_[order()];
    for (int i = order() - 1; i >= 0; --i) r = r * s + c_[i];
    return r;
  }
  jet1 derivative() const {
    jet1 r(order());
    for (int i = 1; i <= order(); ++i) r.c_[i - 1] = T(i) * c_[i];
    r.c_[order()] = T(0);
    return r;
  }

 private:
  std::vector<T> c_;
};

// joint sin/cos of a jet via the usual coupled recurrence
template <typename T>
void sin_cos_jet(jet1<T>& s_out, jet1<T>& c_out, const jet1<T>& a) {
  int m = a.order();
  jet1<T> s(m), c(m);
  T s0, c0;
  sin_cos(s0, c0, a[0]);
  s[0] = s0;
  c[0] = c0;
  for (int n = 1; n <= m; ++n) {
    T sa{}, ca{};
    bool first = true;
    for (int i = 1; i <= n; ++i) {
      T ai = T(i) * a[i];
      if (first) {
        sa = c[n - i] * ai;
        ca = s[n - i] * ai;
        first = false;
      } else {
        sa += c[n - i] * ai;
        ca += s[n - i] * ai;
      }
    }
    s[n] = sa / T(n);
    c[n] = -ca / T(n);
  }
  s_out = s;
  c_out = c;
}

// ---------------------------------------------------------------------------
// magnitude traits used by the Taylor step-size control (log2 scale; robust
// against overflow of double at high precision)
inline long mag_log2(const real& x) {
  if (!x.is_finite()) return 1 << 29;
  if (x.is_zero()) return -(1L << 29);
  return x.exponent();
}
inline long mag_log2(const creal& z) { return std::max(mag_log2(z.re), mag_log2(z.im)); }
template <typename T>
long mag_log2(const dual2<T>& d) {
  return std::max(mag_log2(d.v), std::max(mag_log2(d.da), mag_log2(d.db)));
}
template <typename T>
long mag_log2(const jet1<T>& j) {
  long m = -(1L << 29);
  for (int i = 0; i <= j.order(); ++i) m = std::max(m, mag_log2(j[i]));
  return m;
}

// scalar scaling and zero prototypes used by the generic integrator (plain
// operator* cannot deduce mixed jet/real argument lists)
inline real scale(const real& a, const real& r) { return a * r; }
inline creal scale(const creal& a, const real& r) { return {a.re * r, a.im * r}; }
template <typename T>
dual2<T> scale(const dual2<T>& a, const real& r) {
  return {scale(a.v, r), scale(a.da, r), scale(a.db, r)};
}
template <typename T>
jet1<T> scale(const jet1<T>& a, const real& r) {
  jet1<T> out(a.order());
  for (int i = 0; i <= a.order(); ++i) out[i] = scale(a[i], r);
  return out;
}

inline real zero_like(const real&) { return real(0); }
inline creal zero_like(const creal&) { return creal(); }
template <typename T>
dual2<T> zero_like(const dual2<T>& p) {
  return {zero_like(p.v), zero_like(p.v), zero_like(p.v)};
}
template <typename T>
jet1<T> zero_like(const jet1<T>& p) {
  return jet1<T>(p.order());
}

// per-order convolution: sum_{i=0..n} a[i] b[n-i]
template <typename S>
S conv_at(const std::vector<S>& a, const std::vector<S>& b, int n) {
  S acc = a[0] * b[n];
  for (int i = 1; i <= n; ++i) acc += a[i] * b[n - i];
  return acc;
}
// same but with a scalar (non-jet) second factor
template <typename S>
S conv_sr_at(const std::vector<S>& a, const std::vector<real>& b, int n) {
  S acc = a[n] * b[0];
  for (int i = 0; i < n; ++i) acc += a[i] * b[n - i];
  return acc;
}

}  // namespace sepsplit
