#include "sepsplit/mp.hpp"

#include <cstdio>
#include <vector>

namespace sepsplit {

std::string real::str(int digits10) const {
  if (digits10 <= 0) digits10 = static_cast<int>(mpfr_get_prec(v_) / 3.3219280948873623);
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  std::vector<char> buf(digits10 + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits10 - 1, v_);
  return std::string(buf.data());
}

std::ostream& operator<<(std::ostream& os, const real& x) { return os << x.str(); }

std::ostream& operator<<(std::ostream& os, const creal& z) {
  os << z.re.str();
  os << (z.im.sign() < 0 ? " - " : " + ") << abs(z.im).str() << "i";
  return os;
}

}  // namespace sepsplit
