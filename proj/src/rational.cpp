#include "walg/rational.hpp"

namespace walg {

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw MathError("ParseError", "empty rational literal");
  std::string num = s, den = "1";
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  Rat r;
  try {
    Int n(num), d(den);
    if (d == 0) throw MathError("DivisionByZero", "zero denominator in '" + s + "'");
    r = Rat(n, d);
  } catch (const std::invalid_argument&) {
    throw MathError("ParseError", "bad rational literal '" + s + "'");
  }
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

bool rat_is_square(const Rat& r, Rat* root) {
  if (sgn(r) < 0) return false;
  const Int& n = r.get_num();
  const Int& d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  if (root) {
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    *root = Rat(rn, rd);
    root->canonicalize();
  }
  return true;
}

Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return 1;
  if (base == 0 && e < 0) throw MathError("DivisionByZero", "0 to a negative power");
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), a);
  mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), a);
  Rat r = (e > 0) ? Rat(n, d) : Rat(d, n);
  r.canonicalize();
  return r;
}

Rat binom(const Rat& n, unsigned long k) {
  Rat acc = 1;
  for (unsigned long j = 0; j < k; ++j) acc *= (n - static_cast<long>(j)) / Rat(static_cast<long>(j + 1));
  return acc;
}

Int factorial(unsigned long n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace walg
