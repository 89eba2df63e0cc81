#include "walg/charengine.hpp"

#include <map>
#include <numeric>

namespace walg::chars {

using qs::QSeries;
using qs::qs_zero;

namespace {

// Accumulates exact (exponent, coefficient) pairs and converts to a QSeries
// once, to avoid repeated map merging.
class TermBag {
 public:
  explicit TermBag(long order) : order_(order) {}
  void add(const Rat& e, const Rat& c) {
    if (c == 0 || e >= order_) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  QSeries series() const {
    long scale = 1;
    for (const auto& [e, c] : terms_) scale = std::lcm(scale, static_cast<long>(e.get_den().get_si()));
    QSeries s;
    s.order = order_;
    s.scale = scale;
    for (const auto& [e, c] : terms_) {
      Rat key = e * scale;
      s.coeff.emplace(static_cast<long>(key.get_num().get_si()), c);
    }
    return s;
  }

 private:
  long order_;
  std::map<Rat, Rat> terms_;
};

}  // namespace

QSeries universal_character(const grading::WData& w, long order) {
  // One free generator of weight d+1 per degree d: prod_d prod_{n>=1} (1 - q^(n+d))^-1.
  qs::ProductSpec spec;
  for (int d : w.degrees) spec.factors.push_back({1, d, -1});
  return qs_product(spec, order);
}

namespace {

// The boundary-shape product; series-valid whenever u exceeds every degree.
QSeries boundary_product(const grading::WData& w, long u, long order) {
  int maxdeg = w.degrees.back();
  if (u <= maxdeg)
    throw MathError("InvalidLevel", w.label + ": the product form needs u > " + std::to_string(maxdeg) +
                                        ", got " + std::to_string(u));
  // prod_n [(1-q^(u n)) / (1-q^n)]^(dim g_0)
  //   * prod_{j>=1} [prod_n (1-q^(u(n-1)+j)) (1-q^(u n - j))]^(dim g_j).
  qs::ProductSpec spec;
  spec.factors.push_back({u, 0, w.dim_g0});
  spec.factors.push_back({1, 0, -w.dim_g0});
  for (int j = 1; j <= maxdeg; ++j) {
    int gj = grading::dim_gj(w, j);
    if (gj == 0) continue;
    spec.factors.push_back({u, j - u, gj});
    spec.factors.push_back({u, -j, gj});
  }
  return qs_product(spec, order);
}

void check_level(const grading::WData& w, long u, long p) {
  const auto& s = roots::root_system(w.algebra);
  if (u < 2 || std::gcd(p, u) != 1)
    throw MathError("InvalidLevel", w.label + ": u = " + std::to_string(u) +
                                        " must be >= 2 and coprime to p = " + std::to_string(p));
  if (std::gcd(u, static_cast<long>(s.lacety)) != 1)
    throw MathError("InvalidLevel",
                    w.label + ": u must be coprime to the lacety " + std::to_string(s.lacety));
}

}  // namespace

QSeries boundary_character(const grading::WData& w, long u, long order) {
  check_level(w, u, roots::root_system(w.algebra).dual_coxeter);
  return boundary_product(w, u, order);
}

QSeries shifted_theta(const roots::LatticeModel& m, const Vec& xi, long u, long order) {
  if (u < 1) throw MathError("InvalidLevel", "theta needs u >= 1");
  // exponent(a) = u |a|^2 / 2 - (xi, a) = u/2 |a - xi/u|^2 - |xi|^2 / (2u).
  Rat xi2 = form_ip(m.form, xi, xi);
  Vec center(xi.size());
  for (size_t i = 0; i < xi.size(); ++i) center[i] = xi[i] / u;
  // Keep every point with exponent <= order - 1.
  Rat max_norm(2 * (order - 1), u);
  max_norm.canonicalize();
  max_norm += xi2 / Rat(u) / Rat(u);
  if (max_norm < 0) return qs_zero(order);
  TermBag bag(order);
  for (const auto& pt : enumerate_shifted(m, center, max_norm)) {
    Rat e = Rat(u) * pt.dist2 / 2 - xi2 / (2 * Rat(u));
    if (e.get_den() != 1)
      throw MathError("NonIntegralExponent", "theta exponent " + rat_str(e) + " is not an integer");
    bag.add(e, 1);
  }
  return bag.series();
}

QSeries near_boundary_character(const grading::WData& w, long u, long order) {
  if (w.orbit != grading::OrbitClass::Sharp)
    throw MathError("InvalidLevel", w.label + " has no near-boundary construction here");
  const auto& s = roots::root_system(w.algebra);
  check_level(w, u, s.dual_coxeter + 1);
  const auto& lattice = roots::lattice_model(
      w.algebra == roots::Algebra::E7 ? roots::LatticeKind::RootE7 : roots::LatticeKind::RootE8);
  QSeries theta = shifted_theta(lattice, w.xi_ambient, u, order);
  if (theta.is_zero()) throw MathError("ZeroSeries", w.label + ": empty theta correction");
  // The theta factor may open below 0; inflate the boundary order so the
  // product is faithful through `order` after renormalizing.
  Rat m0(theta.coeff.begin()->first, theta.scale);
  long deficit = static_cast<long>(rat_ceil(-m0).get_si());
  if (deficit < 0) deficit = 0;
  QSeries bound = boundary_product(w, u, order + deficit);
  // The lattice factor is a full lattice vertex algebra character: theta over
  // the bosonic modes. Without the rank free bosons the series is wrong from
  // q^u on (first visible as a defect of exactly `rank` at q^u).
  qs::ProductSpec bosons;
  bosons.factors.push_back({u, 0, -lattice.dim});
  QSeries heis = qs_product(bosons, order + deficit);
  qs::Normalized n = qs_normalize_lowest(qs_mul(qs_mul(bound, heis), theta));
  if (n.lead != 1)
    throw MathError("NormalizationFailure", w.label + ": lowest product term has coefficient " +
                                                rat_str(n.lead) + ", expected 1");
  return qs_truncate(n.series, order);
}

namespace {

// Smallest convenient rational upper bound for sqrt(r): bisect, then snap up
// to the 1/64 grid to keep later arithmetic small.
Rat sqrt_upper(const Rat& r) {
  if (r <= 0) return 0;
  Rat lo = 0, hi = r < 1 ? Rat(1) : r;
  for (int it = 0; it < 24; ++it) {
    Rat mid = (lo + hi) / 2;
    if (mid * mid >= r)
      hi = mid;
    else
      lo = mid;
  }
  return Rat(rat_ceil(hi * 64), 64);
}

}  // namespace

QSeries principal_character(roots::Algebra a, long p, long u, long order) {
  const auto& s = roots::root_system(a);
  if (s.rank > 4)
    throw MathError("UnsupportedWeylGroup", "principal character needs a materialized Weyl group");
  if (p < s.dual_coxeter || u < 1 || std::gcd(p, u) != 1 ||
      std::gcd(u, static_cast<long>(s.lacety)) != 1)
    throw MathError("InvalidLevel", roots::algebra_name(a) + ": level p/u = " + std::to_string(p) +
                                        "/" + std::to_string(u) + " is not admissible here");

  roots::LatticeKind lk;
  switch (a) {
    case roots::Algebra::A1: lk = roots::LatticeKind::CorootA1; break;
    case roots::Algebra::G2: lk = roots::LatticeKind::CorootG2; break;
    case roots::Algebra::B3: lk = roots::LatticeKind::CorootB3; break;
    default: lk = roots::LatticeKind::CorootF4; break;
  }
  const auto& lattice = roots::lattice_model(lk);

  auto orbit = weyl_orbit_signed(a, s.weyl_vector);
  auto coordsum = [](const Vec& v) {
    Rat sum = 0;
    for (const auto& x : v) sum += x;
    return sum;
  };
  Rat cs_rho = coordsum(s.weyl_vector);
  // The numerator opens at exponent -cs_rho; work at an inflated order so the
  // eta division stays faithful through `order` after renormalizing.
  long inflated = order + static_cast<long>(rat_ceil(cs_rho).get_si());

  // One enumeration serves every Weyl term: on |alpha| = t the exponent is
  // bounded below by (u p / 2) t^2 - (u |rho| + p |x*|) t - (|cs(mu)| bound),
  // where x* represents the coordinate-sum functional.
  Vec ones(static_cast<size_t>(s.rank), 1);
  Vec xstar = mat_solve(s.gram, ones);
  Rat rho_len = sqrt_upper(form_ip(s.gram, s.weyl_vector, s.weyl_vector));
  Rat xstar_len = sqrt_upper(form_ip(s.gram, xstar, xstar));
  Rat qa(u * p, 2);
  qa.canonicalize();
  Rat qb = Rat(u) * rho_len + Rat(p) * xstar_len;
  Rat qc = Rat(inflated) + rho_len * xstar_len;
  Rat tmax = (qb + sqrt_upper(qb * qb + 4 * qa * qc)) / (2 * qa);
  Vec zero_center(static_cast<size_t>(s.rank), 0);
  auto points = enumerate_shifted(lattice, zero_center, tmax * tmax);

  // Numerator: sum over (w, alpha) of
  //   det(w) q^( u [ (mu, alpha) + p |alpha|^2 / 2 ] - cs(mu + p alpha) ),  mu = w(rho).
  TermBag bag(inflated);
  for (const auto& sw : orbit) {
    Vec gram_mu = mat_apply(s.gram, sw.coords);  // (mu, .) on coordinates
    Rat cs_mu = coordsum(sw.coords);
    for (const auto& pt : points) {
      Rat ip = dot(gram_mu, pt.ambient);  // (mu, alpha)
      Rat e = Rat(u) * (ip + Rat(p) * pt.dist2 / 2) - cs_mu - Rat(p) * coordsum(pt.ambient);
      bag.add(e, sw.sign);
    }
  }
  QSeries num = bag.series();

  qs::ProductSpec eta;
  eta.factors.push_back({1, 0, s.rank});
  QSeries denom = qs_product(eta, inflated);
  QSeries quotient = qs_truncate(qs_mul(num, qs_invert(denom)), order);
  qs::Normalized n = qs_normalize_lowest(quotient);
  if (n.exponent != -cs_rho || n.lead != 1)
    throw MathError("NormalizationFailure",
                    roots::algebra_name(a) + " principal character: lowest term " + rat_str(n.lead) +
                        " q^" + rat_str(n.exponent) + ", expected 1 q^" + rat_str(-cs_rho));
  QSeries result = qs_canonical(qs_truncate(n.series, order));
  if (result.scale != 1)
    throw MathError("NonIntegralExponent", "normalized principal character left the integer grid");
  return result;
}

}  // namespace walg::chars
