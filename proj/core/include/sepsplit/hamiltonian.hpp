#pragma once
// Exact representation of the nearly integrable family
//   h(x,I,tau) = h0(I) + delta*h1(x,I,tau),
//   h0(I) = sum_{deg>=2} h0_deg I^deg,   h1 = sum c_{k,l,j} e^{ikx} I^l e^{ij tau},
// the n/m:1 resonance context, and the rescaled system
//   H = y^2/2 + V(x) + mu*(F(x,tau) + eps^{-2} G(eps y) + R(x, eps y, tau)).
// Coefficients are kept as exact rationals end to end; they are materialized
// to working precision only when a field is compiled for integration.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepsplit/mp.hpp"

namespace sepsplit {

using rational = boost::multiprecision::cpp_rational;

struct qcplx {
  rational re{0}, im{0};
  qcplx() = default;
  qcplx(rational r) : re(std::move(r)) {}
  qcplx(rational r, rational i) : re(std::move(r)), im(std::move(i)) {}
  bool is_zero() const { return re == 0 && im == 0; }
  qcplx conj() const { return {re, -im}; }
  friend qcplx operator+(const qcplx& a, const qcplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend qcplx operator*(const qcplx& a, const qcplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend qcplx operator*(const rational& s, const qcplx& a) { return {s * a.re, s * a.im}; }
  friend bool operator==(const qcplx& a, const qcplx& b) { return a.re == b.re && a.im == b.im; }
};

// exact decimal string ("-1.25e-3") or double (exact binary value) to rational
rational rational_from_decimal(const std::string& s);
rational rational_from_double(double x);
real to_real(const rational& q);          // at current default precision
real to_real(const rational& q, int digits);

struct h1_term {
  int k = 0;  // harmonic in x
  int l = 0;  // power of I
  int j = 0;  // harmonic in tau
  qcplx c;
};

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct hamiltonian_spec {
  std::vector<std::pair<int, rational>> h0_taylor;  // (degree >= 2, coefficient)
  std::vector<h1_term> h1_terms;
  int M = 0;           // trig degree in x (max |k| over nonzero terms)
  rational r{1};       // action-domain radius of validity
  std::string name;

  // h02 = d^2/dI^2 h0(0) = 2 * (degree-2 coefficient)
  rational h02() const;
  rational h0_coeff(int degree) const;
  void validate() const;  // reality, degrees, M consistency, h02 > 0
};

struct resonance_context {
  int n = 0;
  int m = 1;
  rational delta{0};   // perturbation strength
  rational mu{1};      // bookkeeping parameter
  // eps = m sqrt(h02 delta), materialized at current precision
  real eps(const hamiltonian_spec& spec) const;
};

// delta such that eps = m sqrt(h02 delta) equals the given exact eps
rational delta_for_eps(const hamiltonian_spec& spec, int m, const rational& eps);

// Fourier polynomial in tau with exact complex coefficients: j -> c_j
using tau_poly = std::map<int, qcplx>;

struct rescaled_system {
  int M = 0;
  int n = 0, m = 1;
  rational h02;
  std::map<int, qcplx> V;                       // k -> v_k, |k| <= M
  std::map<int, tau_poly> F;                    // k -> a_k(tau), zero average
  std::map<int, rational> G;                    // kappa >= 3 -> g_kappa
  std::map<std::pair<int, int>, tau_poly> R;    // (k, l>=1) -> c_{kl}(tau)
  std::vector<std::string> warnings;
  // tau period is 2*pi after the n/m reduction

  rational g3() const {
    auto it = G.find(3);
    return it == G.end() ? rational(0) : it->second;
  }
  int max_tau_harmonic() const;
  int max_action_power() const;
  void validate() const;  // reality, zero averages, l >= 1, G degrees >= 3
};

// Eqs (7)-(10) with the n/m:1 reduction applied first; drops (and records) a
// dynamically irrelevant constant term in h1.
rescaled_system rescale_at_resonance(const hamiltonian_spec& spec, const resonance_context& ctx);

// ---------------------------------------------------------------------------
// materialized (fixed precision, fixed eps/mu) evaluators

// c * q^qlin * trig(k x) * trig(j tau) * y^l, trig = sin if flag else cos
struct rterm {
  int k = 0;
  bool sx = false;
  int j = 0;
  bool sj = false;
  int l = 0;
  int qlin = 0;
  real c;
};

struct field_tables {
  real eps, mu;
  int digits = 0;
  int M = 0, Jmax = 0, Lmax = 0;
  std::vector<rterm> dx;  // x' = eps*y + sum dx
  std::vector<rterm> dy;  // y' = sum dy
  std::vector<rterm> h0;  // H0(x,y) terms (includes y^2/2)
  std::vector<rterm> h1;  // H1(x,y,tau) terms
};

// compile the vector field / energies of the rescaled system at given
// (eps, mu) and the current default precision
field_tables compile_field(const rescaled_system& sys, const real& eps, const real& mu);

// pointwise evaluation (used by tests, hypotheses, oracles)
real eval_terms(const std::vector<rterm>& terms, const real& x, const real& y, const real& tau);
// the spec-level vector_field operation
std::pair<real, real> vector_field(const field_tables& f, const real& x, const real& y,
                                   const real& tau);

// V and derivatives as real trig sums at current precision
struct potential {
  int M = 0;
  std::vector<rterm> v, dv, d2v;  // V, V', V''
  real operator()(const real& x) const { return eval_terms(v, x, real(0), real(0)); }
  real d(const real& x) const { return eval_terms(dv, x, real(0), real(0)); }
  real d2(const real& x) const { return eval_terms(d2v, x, real(0), real(0)); }
};
potential compile_potential(const rescaled_system& sys);

// JSON config file IO (External Interfaces of the model module)
hamiltonian_spec load_spec_json(const std::string& path);
hamiltonian_spec parse_spec_json(const std::string& text);
resonance_context parse_resonance_json(const std::string& text);  // from same file
std::string spec_content_hash(const hamiltonian_spec& spec);      // stable hex digest

}  // namespace sepsplit
