#pragma once
// Truncated q-series with exact rational coefficients.
//
// A QSeries represents sum_e c_e q^e where the exponents e live on the grid
// (1/scale) * Z and may be negative. Coefficients are faithful exactly for
// e < order (an integer); everything at or above the order is discarded.
// Arithmetic aligns scales via lcm and truncates results to the smaller
// operand order, so an operation never claims more precision than its inputs.

#include "walg/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace walg::qs {

struct QSeries {
  long order = 0;           // faithful for exponents < order
  long scale = 1;           // keys encode exponent key/scale
  std::map<long, Rat> coeff;  // nonzero entries only, keys < order*scale

  bool is_zero() const { return coeff.empty(); }
};

QSeries qs_zero(long order);
QSeries qs_one(long order);

/// c * q^e truncated at `order`; the grid is widened to fit e.
QSeries qs_monomial(const Rat& e, const Rat& c, long order);

QSeries qs_add(const QSeries& a, const QSeries& b);
QSeries qs_sub(const QSeries& a, const QSeries& b);
QSeries qs_scale(const QSeries& a, const Rat& c);

/// Cauchy product, truncated at min(a.order, b.order).
QSeries qs_mul(const QSeries& a, const QSeries& b);

/// Multiplicative inverse. Requires the lowest term of `a` to sit at exponent
/// exactly 0; throws MathError("NotAUnit") otherwise.
QSeries qs_invert(const QSeries& a);

/// Shifts every exponent by e; the order moves with it (rounded down when e
/// is fractional, so the result never overstates its faithful range).
QSeries qs_shift(const QSeries& a, const Rat& e);

QSeries qs_truncate(const QSeries& a, long order);

/// Coefficient of q^e (0 if absent or off-grid). Requires e < order.
Rat qs_coeff(const QSeries& a, const Rat& e);

/// Smallest scale representing the same series; drops stored zeros.
QSeries qs_canonical(const QSeries& a);

/// One factor family prod_{n>=1} (1 - q^(a n + b))^e. Requires a >= 1 and
/// a + b >= 1 so all exponents are positive; e may be any nonzero integer.
struct Factor {
  long a = 1;
  long b = 0;
  long e = 1;
};

struct ProductSpec {
  std::vector<Factor> factors;
};

/// Expands the product mod q^order. Throws MathError("BadFactor") on an
/// invalid factor. Negative exponents are gathered and inverted once.
QSeries qs_product(const ProductSpec& spec, long order);

/// a divided by its lowest nonzero term. Throws MathError("ZeroSeries") when
/// no nonzero coefficient is known below the order.
struct Normalized {
  QSeries series;   // lowest term is 1 * q^0
  Rat exponent;     // exponent of the removed term
  Rat lead;         // its coefficient
};
Normalized qs_normalize_lowest(const QSeries& a);

/// Compares a and b through exponents < min(order). When they differ, reports
/// the first disagreeing exponent and both coefficients.
struct Comparison {
  bool equal = true;
  long agreement_order = 0;  // exponents < this were compared
  Rat first_exponent;        // meaningful iff !equal
  Rat lhs;
  Rat rhs;
};
Comparison qs_compare(const QSeries& a, const QSeries& b);

/// Human-oriented rendering "1 + 2*q + q^2 + ... (mod q^N)"; max_terms == 0
/// means unbounded.
std::string qs_str(const QSeries& a, size_t max_terms = 0);

}  // namespace walg::qs
