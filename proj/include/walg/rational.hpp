#pragma once
// Exact scalar types. Every computation in this library is carried out over
// the rationals (or explicit quadratic extensions built on top of them); no
// floating point is used anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace walg {

using Int = mpz_class;
using Rat = mpq_class;

/// Error type for all mathematically meaningful failures. `code` is a stable
/// machine-readable tag (e.g. "NotAUnit"); `what()` carries detail.
class MathError : public std::runtime_error {
 public:
  MathError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw MathError("DivisionByZero", "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "n" or "n/d" (optionally signed). Throws MathError("ParseError").
Rat rat_parse(const std::string& s);

/// Renders canonically as "n" or "n/d".
std::string rat_str(const Rat& r);

Int rat_floor(const Rat& r);
Int rat_ceil(const Rat& r);

/// True iff r is a square in Q; on success *root is the nonnegative square root.
bool rat_is_square(const Rat& r, Rat* root = nullptr);

/// base^e for integer e (e < 0 requires base != 0).
Rat rat_pow(const Rat& base, long e);

/// Exact binomial coefficient C(n, k) for arbitrary integer n and k >= 0.
Rat binom(const Rat& n, unsigned long k);

/// n! as an exact integer.
Int factorial(unsigned long n);

}  // namespace walg
