#pragma once
// Multiprecision scalar layer: a thin value-semantics wrapper around MPFR plus
// a complex type built on it. Precision is a per-value property (results take
// the widest operand precision); the default for fresh values is thread-local,
// so concurrent jobs can run at different precisions.

#include <mpfr.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

namespace sepsplit {

namespace detail {
inline mpfr_prec_t bits_from_digits(int digits10) {
  // 3.3219... bits per decimal digit, plus guard bits
  return static_cast<mpfr_prec_t>(digits10 * 3.3219280948873623 + 16);
}
inline int& tl_default_digits() {
  thread_local int d = 50;
  return d;
}
}  // namespace detail

class real {
 public:
  real() { mpfr_init2(v_, default_bits()); mpfr_set_zero(v_, 1); }
  real(const real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  real(real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  real(double x) { mpfr_init2(v_, default_bits() < 53 ? 53 : default_bits()); mpfr_set_d(v_, x, MPFR_RNDN); }
  real(int x) { mpfr_init2(v_, default_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
  real(long x) { mpfr_init2(v_, default_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
  real(unsigned x) { mpfr_init2(v_, default_bits()); mpfr_set_ui(v_, x, MPFR_RNDN); }
  explicit real(const std::string& s) : real(s.c_str()) {}
  explicit real(const char* s) {
    mpfr_init2(v_, default_bits());
    if (mpfr_set_str(v_, s, 10, MPFR_RNDN) != 0) mpfr_set_nan(v_);
  }
  ~real() { mpfr_clear(v_); }

  real& operator=(const real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  real& operator=(real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  real& operator=(double x) { mpfr_set_d(v_, x, MPFR_RNDN); return *this; }
  real& operator=(int x) { mpfr_set_si(v_, x, MPFR_RNDN); return *this; }
  real& operator=(long x) { mpfr_set_si(v_, x, MPFR_RNDN); return *this; }

  // thread-local default precision for newly constructed values
  static void set_default_digits(int digits10) { detail::tl_default_digits() = digits10; }
  static int default_digits() { return detail::tl_default_digits(); }
  static mpfr_prec_t default_bits() { return detail::bits_from_digits(detail::tl_default_digits()); }

  mpfr_prec_t prec_bits() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // binary exponent, 0 for zero; magnitude scale without a full conversion
  long exponent() const { return mpfr_zero_p(v_) ? 0 : mpfr_get_exp(v_); }

  std::string str(int digits10 = 0) const;

  real& operator+=(const real& b) { grow_to(b); mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
  real& operator-=(const real& b) { grow_to(b); mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
  real& operator*=(const real& b) { grow_to(b); mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
  real& operator/=(const real& b) { grow_to(b); mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }
  real& operator*=(long b) { mpfr_mul_si(v_, v_, b, MPFR_RNDN); return *this; }
  real& operator/=(long b) { mpfr_div_si(v_, v_, b, MPFR_RNDN); return *this; }

  real operator-() const { real r(*this); mpfr_neg(r.v_, r.v_, MPFR_RNDN); return r; }

  friend real operator+(const real& a, const real& b) { real r = widest(a, b); binop(mpfr_add, r, a, b); return r; }
  friend real operator-(const real& a, const real& b) { real r = widest(a, b); binop(mpfr_sub, r, a, b); return r; }
  friend real operator*(const real& a, const real& b) { real r = widest(a, b); binop(mpfr_mul, r, a, b); return r; }
  friend real operator/(const real& a, const real& b) { real r = widest(a, b); binop(mpfr_div, r, a, b); return r; }

  friend bool operator==(const real& a, const real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const real& a, const real& b) { return mpfr_equal_p(a.v_, b.v_) == 0; }
  friend bool operator<(const real& a, const real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const real& a, const real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const real& a, const real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const real& a, const real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

  friend void swap(real& a, real& b) noexcept { mpfr_swap(a.v_, b.v_); }

 private:
  static const real& narrowest_dummy();
  static real widest(const real& a, const real& b) {
    real r;
    mpfr_prec_t p = std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
    mpfr_set_prec(r.v_, p);
    return r;
  }
  template <typename F>
  static void binop(F f, real& r, const real& a, const real& b) { f(r.v_, a.v_, b.v_, MPFR_RNDN); }
  void grow_to(const real& b) {
    if (mpfr_get_prec(v_) < mpfr_get_prec(b.v_)) {
      real tmp(*this);
      mpfr_set_prec(v_, mpfr_get_prec(b.v_));
      mpfr_set(v_, tmp.v_, MPFR_RNDN);
    }
  }
  mpfr_t v_;
};

#define SEPSPLIT_MP_UNARY(name, mpfr_name)                        \
  inline real name(const real& a) {                              \
    real r(a);                                                    \
    mpfr_name(r.raw(), a.raw(), MPFR_RNDN);                       \
    return r;                                                     \
  }
SEPSPLIT_MP_UNARY(abs, mpfr_abs)
SEPSPLIT_MP_UNARY(sqrt, mpfr_sqrt)
SEPSPLIT_MP_UNARY(exp, mpfr_exp)
SEPSPLIT_MP_UNARY(log, mpfr_log)
SEPSPLIT_MP_UNARY(sin, mpfr_sin)
SEPSPLIT_MP_UNARY(cos, mpfr_cos)
SEPSPLIT_MP_UNARY(tan, mpfr_tan)
SEPSPLIT_MP_UNARY(asin, mpfr_asin)
SEPSPLIT_MP_UNARY(acos, mpfr_acos)
SEPSPLIT_MP_UNARY(atan, mpfr_atan)
SEPSPLIT_MP_UNARY(sinh, mpfr_sinh)
SEPSPLIT_MP_UNARY(cosh, mpfr_cosh)
SEPSPLIT_MP_UNARY(tanh, mpfr_tanh)
SEPSPLIT_MP_UNARY(floor, mpfr_floor)
SEPSPLIT_MP_UNARY(ceil, mpfr_ceil)
#undef SEPSPLIT_MP_UNARY

inline real atan2(const real& y, const real& x) {
  real r = y + x;  // widest-precision carrier
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline real hypot(const real& x, const real& y) {
  real r = x + y;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline real pow(const real& a, const real& b) {
  real r = a + b;
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline real pow(const real& a, long n) {
  real r(a);
  mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}
inline real ldexp(const real& a, long e) {
  real r(a);
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}
inline void sin_cos(real& s, real& c, const real& x) {
  mpfr_set_prec(s.raw(), x.prec_bits());
  mpfr_set_prec(c.raw(), x.prec_bits());
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}
inline real min(const real& a, const real& b) { return a < b ? a : b; }
inline real max(const real& a, const real& b) { return a > b ? a : b; }

inline real pi_val() {
  real r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
// 10^-k at current default precision
inline real pow10(long k) {
  real r(10);
  mpfr_pow_si(r.raw(), r.raw(), k, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const real& x);

// RAII: set the thread's default precision for the scope of a computation job.
class precision_context {
 public:
  explicit precision_context(int digits10)
      : saved_(real::default_digits()) {
    real::set_default_digits(digits10);
  }
  ~precision_context() { real::set_default_digits(saved_); }
  precision_context(const precision_context&) = delete;
  precision_context& operator=(const precision_context&) = delete;

 private:
  int saved_;
};

// ---------------------------------------------------------------------------
// complex on top of any real-like scalar
template <typename T>
struct cplx {
  T re{}, im{};
  cplx() = default;
  cplx(const T& r) : re(r), im(T(0)) {}
  cplx(const T& r, const T& i) : re(r), im(i) {}
  cplx(double r) : re(T(r)), im(T(0)) {}
  cplx(int r) : re(T(r)), im(T(0)) {}

  cplx& operator+=(const cplx& b) { re += b.re; im += b.im; return *this; }
  cplx& operator-=(const cplx& b) { re -= b.re; im -= b.im; return *this; }
  cplx& operator*=(const cplx& b) { *this = *this * b; return *this; }
  cplx& operator/=(const cplx& b) { *this = *this / b; return *this; }
  cplx operator-() const { return {-re, -im}; }

  friend cplx operator+(const cplx& a, const cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend cplx operator-(const cplx& a, const cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend cplx operator*(const cplx& a, const cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend cplx operator*(const cplx& a, const T& s) { return {a.re * s, a.im * s}; }
  friend cplx operator*(const T& s, const cplx& a) { return {a.re * s, a.im * s}; }
  friend cplx operator/(const cplx& a, const T& s) { return {a.re / s, a.im / s}; }
  friend cplx operator/(const cplx& a, const cplx& b) {
    T d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const cplx& a, const cplx& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const cplx& a, const cplx& b) { return !(a == b); }
};

using creal = cplx<real>;

template <typename T> T norm2(const cplx<T>& z) { return z.re * z.re + z.im * z.im; }
inline real abs(const creal& z) { return hypot(z.re, z.im); }
inline real arg(const creal& z) { return atan2(z.im, z.re); }
template <typename T> cplx<T> conj(const cplx<T>& z) { return {z.re, -z.im}; }
inline creal exp(const creal& z) {
  real s, c;
  sin_cos(s, c, z.im);
  real m = exp(z.re);
  return {m * c, m * s};
}
inline creal log(const creal& z) { return {log(abs(z)), arg(z)}; }
inline creal sqrt(const creal& z) {
  real m = sqrt(abs(z));
  real a = arg(z) / 2;
  real s, c;
  sin_cos(s, c, a);
  return {m * c, m * s};
}
inline creal polar(const real& m, const real& a) {
  real s, c;
  sin_cos(s, c, a);
  return {m * c, m * s};
}
inline creal sin(const creal& z) {
  real s, c;
  sin_cos(s, c, z.re);
  return {s * cosh(z.im), c * sinh(z.im)};
}
inline creal cos(const creal& z) {
  real s, c;
  sin_cos(s, c, z.re);
  return {c * cosh(z.im), -s * sinh(z.im)};
}

std::ostream& operator<<(std::ostream& os, const creal& z);

}  // namespace sepsplit
