#include "sepsplit/hamiltonian.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sepsplit {

using boost::multiprecision::cpp_int;

rational rational_from_decimal(const std::string& s) {
  std::string t;
  t.reserve(s.size());
  for (char ch : s)
    if (!isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw config_error("empty numeric literal");
  bool neg = false;
  size_t i = 0;
  if (t[i] == '+' || t[i] == '-') neg = t[i++] == '-';
  std::string digits;
  long frac_len = 0, expo = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < t.size(); ++i) {
    char ch = t[i];
    if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_dot) ++frac_len;
      seen_digit = true;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((ch == 'e' || ch == 'E') && seen_digit) {
      expo = std::stol(t.substr(i + 1));
      break;
    } else {
      throw config_error("bad numeric literal: " + s);
    }
  }
  if (!seen_digit) throw config_error("bad numeric literal: " + s);
  cpp_int num(digits.empty() ? "0" : digits);
  if (neg) num = -num;
  long p = expo - frac_len;
  cpp_int den = 1;
  if (p >= 0)
    for (long k = 0; k < p; ++k) num *= 10;
  else
    for (long k = 0; k < -p; ++k) den *= 10;
  return rational(num, den);
}

rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw config_error("non-finite numeric value");
  if (x == 0.0) return rational(0);
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
  long long mi = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  cpp_int num(mi), den(1);
  if (e >= 0)
    num <<= e;
  else
    den <<= -e;
  return rational(num, den);
}

real to_real(const rational& q, int digits) {
  precision_context pc(digits);
  return to_real(q);
}

real to_real(const rational& q) {
  std::ostringstream n, d;
  n << boost::multiprecision::numerator(q);
  d << boost::multiprecision::denominator(q);
  return real(n.str()) / real(d.str());
}

rational hamiltonian_spec::h0_coeff(int degree) const {
  for (const auto& [deg, c] : h0_taylor)
    if (deg == degree) return c;
  return rational(0);
}

rational hamiltonian_spec::h02() const { return 2 * h0_coeff(2); }

void hamiltonian_spec::validate() const {
  for (const auto& [deg, c] : h0_taylor) {
    (void)c;
    if (deg < 2) throw config_error("h0 Taylor degrees must be >= 2 (resonance translated to I*=0)");
  }
  if (h02() <= 0) throw config_error("h02 = d^2 h0(0) must be positive (HP1 sign convention)");
  int maxk = 0;
  for (const auto& t : h1_terms) {
    maxk = std::max(maxk, std::abs(t.k));
    if (t.l < 0) throw config_error("h1 terms need l >= 0");
    // reality: c_{-k,l,-j} = conj(c_{k,l,j})
    bool found = false;
    for (const auto& u : h1_terms) {
      if (u.k == -t.k && u.l == t.l && u.j == -t.j) {
        if (!(u.c == t.c.conj())) throw config_error("reality violated: c_{-k,l,-j} != conj(c_{k,l,j})");
        found = true;
        break;
      }
    }
    if (!found && !t.c.is_zero()) throw config_error("reality violated: missing conjugate partner term");
  }
  if (M != maxk) throw config_error("M must equal max |k| over nonzero h1 terms");
  if (r <= 0) throw config_error("domain radius r must be positive");
}

real resonance_context::eps(const hamiltonian_spec& spec) const {
  return real(m) * sqrt(to_real(spec.h02() * delta));
}

rational delta_for_eps(const hamiltonian_spec& spec, int m, const rational& eps) {
  return eps * eps / (rational(m) * rational(m) * spec.h02());
}

int rescaled_system::max_tau_harmonic() const {
  int j = 0;
  for (const auto& [k, a] : F) {
    (void)k;
    for (const auto& [jj, c] : a)
      if (!c.is_zero()) j = std::max(j, std::abs(jj));
  }
  for (const auto& [kl, cf] : R) {
    (void)kl;
    for (const auto& [jj, c] : cf)
      if (!c.is_zero()) j = std::max(j, std::abs(jj));
  }
  return j;
}

int rescaled_system::max_action_power() const {
  int l = 1;
  for (const auto& [kl, cf] : R) {
    (void)cf;
    l = std::max(l, kl.second);
  }
  for (const auto& [kappa, g] : G) {
    (void)g;
    l = std::max(l, kappa - 1);  // G'(eps y) brings y^{kappa-1} into the field
  }
  return l;
}

void rescaled_system::validate() const {
  for (const auto& [k, a] : F) {
    (void)k;
    auto it = a.find(0);
    if (it != a.end() && !it->second.is_zero())
      throw config_error("F must have zero tau-average");
  }
  for (const auto& [kl, cf] : R) {
    (void)cf;
    if (kl.second < 1) throw config_error("R must not contain l = 0 terms");
  }
  for (const auto& [kappa, g] : G) {
    (void)g;
    if (kappa < 3) throw config_error("G must start at degree 3");
  }
}

rescaled_system rescale_at_resonance(const hamiltonian_spec& spec, const resonance_context& ctx) {
  spec.validate();
  if (ctx.m < 1) throw config_error("resonance m must be positive");
  if (std::gcd(std::abs(ctx.n), ctx.m) != 1) throw config_error("resonance (n,m) must be coprime");

  rescaled_system out;
  out.M = spec.M;
  out.n = ctx.n;
  out.m = ctx.m;
  out.h02 = spec.h02();

  // G(I) = m^2 h02 g(I/(m h02));  g = h0 tail (degree >= 3)
  for (const auto& [deg, c] : spec.h0_taylor) {
    if (deg < 3 || c == 0) continue;
    rational mh = rational(ctx.m) * out.h02;
    rational scale = rational(ctx.m) * rational(ctx.m) * out.h02;
    rational p = c * scale;
    for (int i = 0; i < deg; ++i) p /= mh;
    out.G[deg] += p;
  }

  // x-shift x -> x + (n/m) tau maps e^{ikx} e^{ij tau} to e^{ikx} e^{i(kn+jm) s},
  // s the rescaled tau; l >= 1 terms pick up (m h02)^-l from I = eps y/(m h02).
  rational mh = rational(ctx.m) * out.h02;
  for (const auto& t : spec.h1_terms) {
    if (t.c.is_zero()) continue;
    long jj = static_cast<long>(t.k) * ctx.n + static_cast<long>(t.j) * ctx.m;
    if (t.l == 0) {
      if (t.k == 0 && jj == 0) {
        if (!t.c.is_zero())
          out.warnings.push_back("dropped additive constant term in h1 (dynamically irrelevant)");
        continue;
      }
      if (jj == 0)
        out.V[t.k] = out.V.count(t.k) ? out.V[t.k] + t.c : t.c;
      else {
        auto& a = out.F[t.k];
        a[static_cast<int>(jj)] = a.count(static_cast<int>(jj)) ? a[static_cast<int>(jj)] + t.c : t.c;
      }
    } else {
      rational sc(1);
      for (int i = 0; i < t.l; ++i) sc /= mh;
      auto& cf = out.R[{t.k, t.l}];
      qcplx add = sc * t.c;
      cf[static_cast<int>(jj)] = cf.count(static_cast<int>(jj)) ? cf[static_cast<int>(jj)] + add : add;
    }
  }
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// realification and compilation

namespace {

// signed complex term c * e^{ikx} e^{ij tau} * y^l * q^qlin; produces the
// real cos/sin terms of the *sum over the full signed list* (no pairing
// assumptions: every signed term contributes its own real/imag split).
struct sterm {
  int k = 0, j = 0, l = 0, qlin = 0;
  creal c;
};

void realify_into(const sterm& t, std::vector<rterm>& out) {
  // c e^{ikx} e^{ij tau} = (cr + i ci)(cos kx + i sin kx)(cos j tau + i sin j tau),
  // real part only (imaginary parts cancel across the full list; dropping them
  // term-by-term is exact only for lists closed under conjugation, which all
  // compiled lists are).
  const real& cr = t.c.re;
  const real& ci = t.c.im;
  int ka = std::abs(t.k), ja = std::abs(t.j);
  real sk(t.k >= 0 ? 1 : -1), sj(t.j >= 0 ? 1 : -1);
  auto push = [&](bool sx, bool stau, real coef) {
    if (coef.is_zero()) return;
    out.push_back({ka, sx, ja, stau, t.l, t.qlin, coef});
  };
  // Re = cr (Ck Cj - sk sj Sk Sj) - ci (sk Sk Cj + sj Ck Sj)
  push(false, false, cr);
  push(true, true, -cr * sk * sj);
  push(true, false, -ci * sk);
  push(false, true, -ci * sj);
}

std::vector<rterm> realify(const std::vector<sterm>& list) {
  std::vector<rterm> out;
  for (const auto& t : list) realify_into(t, out);
  // merge identical keys
  std::vector<rterm> merged;
  for (const auto& t : out) {
    bool hit = false;
    for (auto& u : merged) {
      if (u.k == t.k && u.sx == t.sx && u.j == t.j && u.sj == t.sj && u.l == t.l &&
          u.qlin == t.qlin) {
        u.c += t.c;
        hit = true;
        break;
      }
    }
    if (!hit) merged.push_back(t);
  }
  std::erase_if(merged, [](const rterm& t) { return t.c.is_zero(); });
  return merged;
}

creal mat(const qcplx& q) { return {to_real(q.re), to_real(q.im)}; }

}  // namespace

field_tables compile_field(const rescaled_system& sys, const real& eps, const real& mu) {
  field_tables f;
  f.eps = eps;
  f.mu = mu;
  f.digits = real::default_digits();
  f.M = sys.M;
  f.Jmax = sys.max_tau_harmonic();
  f.Lmax = sys.max_action_power();

  std::vector<sterm> dx, dy, h0, h1;

  // H0 = y^2/2 + V(x)
  h0.push_back({0, 0, 2, 0, creal(real("0.5"))});
  for (const auto& [k, v] : sys.V) {
    h0.push_back({k, 0, 0, 0, mat(v)});
    // -V'(x) contribution to y': -ik v_k e^{ikx}
    creal coef = mat(v) * creal(real(0), real(-k));
    dy.push_back({k, 0, 0, 0, coef});
  }
  // F(x,tau): value in h1; -dF/dx in dy
  for (const auto& [k, a] : sys.F) {
    for (const auto& [j, c] : a) {
      h1.push_back({k, j, 0, 0, mat(c)});
      dy.push_back({k, j, 0, 0, mat(c) * creal(real(0), real(-k)) * mu});
    }
  }
  // eps^{-2} G(eps y): value sum g_kappa eps^{kappa-2} y^kappa;
  // d/dy = sum kappa g_kappa eps^{kappa-2} y^{kappa-1} into dx
  for (const auto& [kappa, g] : sys.G) {
    real gk = to_real(g) * pow(eps, static_cast<long>(kappa - 2));
    h1.push_back({0, 0, kappa, 0, creal(gk)});
    dx.push_back({0, 0, kappa - 1, 0, creal(gk * real(kappa)) * mu});
  }
  // R = sum c_kl(tau) e^{ikx} (eps y)^l: value; d/dx into dy; d/dy into dx
  for (const auto& [kl, cf] : sys.R) {
    auto [k, l] = kl;
    for (const auto& [j, c] : cf) {
      creal cl = mat(c) * pow(eps, static_cast<long>(l));
      h1.push_back({k, j, l, 0, cl});
      dy.push_back({k, j, l, 0, cl * creal(real(0), real(-k)) * mu});
      dx.push_back({k, j, l - 1, 0, cl * real(l) * mu});
    }
  }
  // overall eps factor of the tau-time field: x' = eps(...), y' = -eps(...)
  for (auto& t : dx) t.c = t.c * eps;
  for (auto& t : dy) t.c = t.c * eps;

  f.dx = realify(dx);
  f.dy = realify(dy);
  f.h0 = realify(h0);
  f.h1 = realify(h1);
  return f;
}

real eval_terms(const std::vector<rterm>& terms, const real& x, const real& y, const real& tau) {
  real acc(0);
  for (const auto& t : terms) {
    real v = t.c;
    if (t.k != 0 || t.sx) {
      real s, c;
      sin_cos(s, c, real(t.k) * x);
      v *= t.sx ? s : c;
    }
    if (t.j != 0 || t.sj) {
      real s, c;
      sin_cos(s, c, real(t.j) * tau);
      v *= t.sj ? s : c;
    }
    for (int i = 0; i < t.l; ++i) v *= y;
    for (int i = 0; i < t.qlin; ++i) v *= x;
    acc += v;
  }
  return acc;
}

std::pair<real, real> vector_field(const field_tables& f, const real& x, const real& y,
                                   const real& tau) {
  real dx = f.eps * y + eval_terms(f.dx, x, y, tau);
  real dy = eval_terms(f.dy, x, y, tau);
  return {dx, dy};
}

potential compile_potential(const rescaled_system& sys) {
  potential p;
  p.M = sys.M;
  std::vector<sterm> v, dv, d2v;
  for (const auto& [k, c] : sys.V) {
    creal cc = mat(c);
    v.push_back({k, 0, 0, 0, cc});
    dv.push_back({k, 0, 0, 0, cc * creal(real(0), real(k))});
    d2v.push_back({k, 0, 0, 0, cc * real(-k * k)});
  }
  p.v = realify(v);
  p.dv = realify(dv);
  p.d2v = realify(d2v);
  return p;
}

// ---------------------------------------------------------------------------
// JSON IO

namespace {
rational num_from_json(const nlohmann::json& j) {
  if (j.is_string()) return rational_from_decimal(j.get<std::string>());
  if (j.is_number_integer()) return rational(j.get<long long>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  throw config_error("expected number or numeric string in config");
}
}  // namespace

hamiltonian_spec parse_spec_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  hamiltonian_spec spec;
  if (j.contains("name")) spec.name = j["name"].get<std::string>();
  if (!j.contains("h0") || !j["h0"].contains("taylor"))
    throw config_error("config missing h0.taylor");
  for (const auto& e : j["h0"]["taylor"]) {
    if (!e.is_array() || e.size() != 2) throw config_error("h0.taylor entries are [degree, coeff]");
    spec.h0_taylor.emplace_back(e[0].get<int>(), num_from_json(e[1]));
  }
  if (j.contains("h1") && j["h1"].contains("terms")) {
    for (const auto& e : j["h1"]["terms"]) {
      h1_term t;
      t.k = e.at("k").get<int>();
      t.l = e.at("l").get<int>();
      t.j = e.at("j").get<int>();
      if (e.contains("re")) t.c.re = num_from_json(e["re"]);
      if (e.contains("im")) t.c.im = num_from_json(e["im"]);
      spec.h1_terms.push_back(t);
    }
  }
  for (const auto& t : spec.h1_terms)
    if (!t.c.is_zero()) spec.M = std::max(spec.M, std::abs(t.k));
  if (j.contains("r")) spec.r = num_from_json(j["r"]);
  spec.validate();
  return spec;
}

hamiltonian_spec load_spec_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_json(ss.str());
}

resonance_context parse_resonance_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  resonance_context ctx;
  if (j.contains("resonance")) {
    ctx.n = j["resonance"].at("n").get<int>();
    ctx.m = j["resonance"].at("m").get<int>();
  }
  if (j.contains("delta")) ctx.delta = num_from_json(j["delta"]);
  if (j.contains("mu")) ctx.mu = num_from_json(j["mu"]);
  return ctx;
}

std::string spec_content_hash(const hamiltonian_spec& spec) {
  // FNV-1a over a canonical serialization; stable across runs and platforms
  std::ostringstream os;
  os << "h0:";
  for (const auto& [d, c] : spec.h0_taylor) os << d << "=" << c << ";";
  os << "|h1:";
  for (const auto& t : spec.h1_terms)
    os << t.k << "," << t.l << "," << t.j << "=" << t.c.re << "+" << t.c.im << "i;";
  os << "|M:" << spec.M << "|r:" << spec.r;
  const std::string s = os.str();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

}  // namespace sepsplit
