#include "walg/qseries.hpp"

#include <numeric>
#include <sstream>

namespace walg::qs {

namespace {

void check_scale(long scale) {
  if (scale < 1) throw MathError("BadScale", "scale must be >= 1, got " + std::to_string(scale));
}

// Returns a rescaled to exactly `scale` (a.scale must divide it).
QSeries rescale(const QSeries& a, long scale) {
  if (a.scale == scale) return a;
  long f = scale / a.scale;
  QSeries r;
  r.order = a.order;
  r.scale = scale;
  for (const auto& [k, c] : a.coeff) r.coeff.emplace(k * f, c);
  return r;
}

void insert_term(QSeries& r, long key, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = r.coeff.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) r.coeff.erase(it);
  }
}

// Largest key strictly below order on the given scale grid: keys < order*scale.
long key_bound(long order, long scale) { return order * scale; }

void drop_tail(QSeries& r) {
  long bound = key_bound(r.order, r.scale);
  r.coeff.erase(r.coeff.lower_bound(bound), r.coeff.end());
}

}  // namespace

QSeries qs_zero(long order) {
  QSeries r;
  r.order = order;
  return r;
}

QSeries qs_one(long order) {
  QSeries r;
  r.order = order;
  if (order > 0) r.coeff.emplace(0, 1);
  return r;
}

QSeries qs_monomial(const Rat& e, const Rat& c, long order) {
  QSeries r;
  r.order = order;
  if (c == 0) return r;
  long den = static_cast<long>(e.get_den().get_si());
  r.scale = den;
  Rat key = e * den;
  long k = static_cast<long>(key.get_num().get_si());
  if (k < key_bound(order, den)) r.coeff.emplace(k, c);
  return r;
}

QSeries qs_add(const QSeries& a, const QSeries& b) {
  check_scale(a.scale);
  check_scale(b.scale);
  long s = std::lcm(a.scale, b.scale);
  QSeries ra = rescale(a, s), rb = rescale(b, s);
  QSeries r;
  r.order = std::min(a.order, b.order);
  r.scale = s;
  for (const auto& [k, c] : ra.coeff) insert_term(r, k, c);
  for (const auto& [k, c] : rb.coeff) insert_term(r, k, c);
  drop_tail(r);
  return r;
}

QSeries qs_sub(const QSeries& a, const QSeries& b) { return qs_add(a, qs_scale(b, -1)); }

QSeries qs_scale(const QSeries& a, const Rat& c) {
  QSeries r;
  r.order = a.order;
  r.scale = a.scale;
  if (c == 0) return r;
  for (const auto& [k, v] : a.coeff) r.coeff.emplace(k, v * c);
  return r;
}

QSeries qs_mul(const QSeries& a, const QSeries& b) {
  long s = std::lcm(a.scale, b.scale);
  QSeries ra = rescale(a, s), rb = rescale(b, s);
  QSeries r;
  r.order = std::min(a.order, b.order);
  r.scale = s;
  long bound = key_bound(r.order, s);
  for (const auto& [ka, ca] : ra.coeff)
    for (const auto& [kb, cb] : rb.coeff) {
      long k = ka + kb;
      if (k >= bound) break;  // rb keys ascend
      insert_term(r, k, ca * cb);
    }
  return r;
}

QSeries qs_invert(const QSeries& a) {
  if (a.coeff.empty()) throw MathError("NotAUnit", "inverting a series with no known terms");
  auto low = a.coeff.begin();
  if (low->first != 0) {
    Rat e(low->first, a.scale);
    e.canonicalize();
    throw MathError("NotAUnit", "lowest term sits at exponent " + rat_str(e) + ", expected 0");
  }
  if (a.order <= 0) throw MathError("NotAUnit", "inverting a series of nonpositive order");
  const Rat a0inv = Rat(1) / low->second;
  long bound = key_bound(a.order, a.scale);
  // b_k = -(sum_{0<j<=k} a_j b_{k-j}) / a_0, computed densely over the grid.
  std::vector<Rat> dense(static_cast<size_t>(bound), Rat(0));
  dense[0] = a0inv;
  for (long k = 1; k < bound; ++k) {
    Rat s = 0;
    for (auto it = std::next(a.coeff.begin()); it != a.coeff.end(); ++it) {
      if (it->first > k) break;
      if (dense[static_cast<size_t>(k - it->first)] == 0) continue;
      s += it->second * dense[static_cast<size_t>(k - it->first)];
    }
    if (s != 0) dense[static_cast<size_t>(k)] = -s * a0inv;
  }
  QSeries r;
  r.order = a.order;
  r.scale = a.scale;
  for (long k = 0; k < bound; ++k)
    if (dense[static_cast<size_t>(k)] != 0) r.coeff.emplace(k, dense[static_cast<size_t>(k)]);
  return qs_canonical(r);
}

QSeries qs_shift(const QSeries& a, const Rat& e) {
  long den = static_cast<long>(e.get_den().get_si());
  long s = std::lcm(a.scale, den);
  QSeries ra = rescale(a, s);
  Rat keyshift = e * s;
  long ks = static_cast<long>(keyshift.get_num().get_si());
  QSeries r;
  r.scale = s;
  Rat neworder = Rat(a.order) + e;
  r.order = static_cast<long>(rat_floor(neworder).get_si());
  for (const auto& [k, c] : ra.coeff) r.coeff.emplace(k + ks, c);
  drop_tail(r);
  return qs_canonical(r);
}

QSeries qs_truncate(const QSeries& a, long order) {
  QSeries r = a;
  r.order = std::min(a.order, order);
  drop_tail(r);
  return r;
}

Rat qs_coeff(const QSeries& a, const Rat& e) {
  if (e >= a.order)
    throw MathError("OrderExceeded", "coefficient of q^" + rat_str(e) + " requested beyond order " +
                                         std::to_string(a.order));
  Rat key = e * a.scale;
  if (key.get_den() != 1) return 0;
  auto it = a.coeff.find(static_cast<long>(key.get_num().get_si()));
  return it == a.coeff.end() ? Rat(0) : it->second;
}

QSeries qs_canonical(const QSeries& a) {
  long g = a.scale;
  for (const auto& [k, c] : a.coeff) {
    if (c == 0) continue;
    g = std::gcd(g, k);
    if (g == 1) break;
  }
  if (g == 0) g = a.scale;
  QSeries r;
  r.order = a.order;
  r.scale = a.scale / g;
  if (r.scale < 1) r.scale = 1;
  for (const auto& [k, c] : a.coeff)
    if (c != 0) r.coeff.emplace(k / g, c);
  return r;
}

QSeries qs_product(const ProductSpec& spec, long order) {
  // Split into the positive-exponent part P and negative part Q, expand each
  // as a polynomial by repeated sparse multiplication, and return P * Q^-1.
  QSeries pos = qs_one(order), neg = qs_one(order);
  for (const auto& f : spec.factors) {
    if (f.a < 1 || f.a + f.b < 1)
      throw MathError("BadFactor", "factor (a=" + std::to_string(f.a) + ", b=" + std::to_string(f.b) +
                                       ") has nonpositive exponents");
    if (f.e == 0) continue;
    QSeries& target = (f.e > 0) ? pos : neg;
    long reps = f.e > 0 ? f.e : -f.e;
    for (long r = 0; r < reps; ++r)
      for (long n = 1; f.a * n + f.b < order; ++n) {
        QSeries binomf = qs_one(order);
        insert_term(binomf, f.a * n + f.b, -1);
        target = qs_mul(target, binomf);
      }
  }
  if (neg.coeff.size() == 1) return pos;  // no negative part
  return qs_mul(pos, qs_invert(neg));
}

Normalized qs_normalize_lowest(const QSeries& a) {
  QSeries c = qs_canonical(a);
  if (c.coeff.empty()) throw MathError("ZeroSeries", "no nonzero term below order " + std::to_string(a.order));
  auto low = c.coeff.begin();
  Normalized n;
  n.exponent = Rat(low->first, c.scale);
  n.exponent.canonicalize();
  n.lead = low->second;
  n.series = qs_shift(qs_scale(c, Rat(1) / n.lead), -n.exponent);
  return n;
}

Comparison qs_compare(const QSeries& a, const QSeries& b) {
  Comparison cmp;
  cmp.agreement_order = std::min(a.order, b.order);
  long s = std::lcm(a.scale, b.scale);
  QSeries ra = rescale(a, s), rb = rescale(b, s);
  long bound = key_bound(cmp.agreement_order, s);
  auto ia = ra.coeff.begin(), ib = rb.coeff.begin();
  while (ia != ra.coeff.end() || ib != rb.coeff.end()) {
    long ka = (ia != ra.coeff.end()) ? ia->first : bound;
    long kb = (ib != rb.coeff.end()) ? ib->first : bound;
    long k = std::min(ka, kb);
    if (k >= bound) break;
    Rat ca = (ka == k) ? ia->second : Rat(0);
    Rat cb = (kb == k) ? ib->second : Rat(0);
    if (ca != cb) {
      cmp.equal = false;
      cmp.first_exponent = Rat(k, s);
      cmp.first_exponent.canonicalize();
      cmp.lhs = ca;
      cmp.rhs = cb;
      return cmp;
    }
    if (ka == k) ++ia;
    if (kb == k) ++ib;
  }
  return cmp;
}

std::string qs_str(const QSeries& a, size_t max_terms) {
  std::ostringstream os;
  size_t shown = 0;
  for (const auto& [k, c] : a.coeff) {
    if (max_terms && shown == max_terms) {
      os << " + ...";
      break;
    }
    Rat e(k, a.scale);
    if (shown == 0) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    Rat mag = abs(c);
    bool unit = (mag == 1) && (e != 0);
    if (!unit) os << rat_str(mag);
    if (e != 0) {
      if (!unit) os << "*";
      os << "q";
      if (e != 1) os << "^" << rat_str(e);
    }
    ++shown;
  }
  if (shown == 0) os << "0";
  os << " (mod q^" << a.order << ")";
  return os.str();
}

}  // namespace walg::qs
