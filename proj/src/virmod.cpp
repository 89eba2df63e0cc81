#include "walg/virmod.hpp"

#include <algorithm>

namespace walg::vir {

using qs::QSeries;

QSeries verma_character(const Rat& h, long order) {
  long base = order - static_cast<long>(rat_floor(h).get_si());
  qs::ProductSpec spec;
  spec.factors.push_back({1, 0, -1});
  return qs_truncate(qs_shift(qs_product(spec, base), h), order);
}

QSeries vacuum_character(long order) {
  qs::ProductSpec spec;
  spec.factors.push_back({1, 1, -1});  // parts >= 2
  return qs_product(spec, order);
}

namespace {

// Element of Q(sqrt(delta)), delta a fixed positive non-square rational.
struct Quad {
  Rat a, b;  // a + b sqrt(delta)
};

Quad qadd(const Quad& x, const Quad& y) { return {x.a + y.a, x.b + y.b}; }
Quad qsub(const Quad& x, const Quad& y) { return {x.a - y.a, x.b - y.b}; }
Quad qmul(const Quad& x, const Quad& y, const Rat& delta) {
  return {x.a * y.a + x.b * y.b * delta, x.a * y.b + x.b * y.a};
}
bool qeq(const Quad& x, const Quad& y) { return x.a == y.a && x.b == y.b; }

bool qnonneg(const Quad& x, const Rat& delta) {
  // sign of a + b sqrt(delta), delta > 0
  int sa = sgn(x.a), sb = sgn(x.b);
  if (sa >= 0 && sb >= 0) return true;
  if (sa <= 0 && sb <= 0) return sa == 0 && sb == 0;
  // opposite strict signs: compare a^2 against b^2 delta
  if (sa > 0) return x.a * x.a >= x.b * x.b * delta;  // b < 0
  return x.b * x.b * delta >= x.a * x.a;              // a < 0, b > 0
}

}  // namespace

LinkageReport linkage(const Rat& c, const Rat& h, long box) {
  Rat delta = (c - 1) * (c - 25);
  if (delta <= 0 || rat_is_square(delta))
    throw MathError("RationalNu", "central charge " + rat_str(c) +
                                      " gives a degenerate extension, delta = " + rat_str(delta));
  // nu = ((c - 13) + sqrt(delta)) / 12; a pair (r, s) marks a singular vector
  // when t = -(r + nu s) satisfies t >= 0 and t^2 = (nu + 1)^2 - 4 h nu.
  Quad nu{(c - 13) / 12, rat(1, 12)};
  Quad rhs = qsub(qmul(qadd(nu, {1, 0}), qadd(nu, {1, 0}), delta), qmul({4 * h, 0}, nu, delta));
  LinkageReport report;
  report.c = c;
  report.h = h;
  for (long r = -box; r <= box; ++r) {
    if (r == 0) continue;
    for (long s = -box; s <= box; ++s) {
      if (s == 0) continue;
      Quad t{-Rat(r) - nu.a * s, -nu.b * s};
      if (!qeq(qmul(t, t, delta), rhs)) continue;
      if (!qnonneg(t, delta)) continue;
      report.hits.push_back({r, s, h + Rat(r * s)});
    }
  }
  return report;
}

QSeries tower_character(const std::vector<int>& summand_weights, long order) {
  QSeries sum = vacuum_character(order);
  QSeries verma = verma_character(0, order);
  for (int w : summand_weights) sum = qs_add(sum, qs_shift(verma, w));
  return qs_truncate(sum, order);
}

namespace {

QSeries closure_character(const std::vector<int>& gen_weights, long order) {
  // Free PBW closure: prod over generators of weight v of prod_n (1-q^(v-1+n))^-1.
  qs::ProductSpec spec;
  for (int v : gen_weights) spec.factors.push_back({1, v - 1, -1});
  return qs_product(spec, order);
}

}  // namespace

TowerReport tower_report(const QSeries& chi, const std::vector<int>& generator_weights) {
  const long order = chi.order;
  if (qs_coeff(chi, 0) != 1)
    throw MathError("InconsistentCharacter", "character must start with 1, got " + rat_str(qs_coeff(chi, 0)));
  TowerReport rep;
  rep.generator_weights = generator_weights;
  std::sort(rep.generator_weights.begin(), rep.generator_weights.end());

  std::vector<int> closure_gens = {2};
  QSeries tower = tower_character({}, order);
  QSeries closure = closure_character(closure_gens, order);

  for (long w = 1; w < order; ++w) {
    Rat x = qs_coeff(chi, w);
    long gw = static_cast<long>(
        std::count(rep.generator_weights.begin(), rep.generator_weights.end(), static_cast<int>(w)));
    if (gw > 0) {
      Rat defect = x - qs_coeff(tower, w);
      if (defect.get_den() != 1 || defect < 0 || defect > gw) {
        if (defect > gw)
          throw MathError("InconsistentCharacter",
                          "weight " + std::to_string(w) + " needs " + rat_str(defect) +
                              " new summands but only " + std::to_string(gw) + " generators sit there");
        // Deficit at a generator weight: fall through to the relation break below.
      } else {
        long spawn = static_cast<long>(defect.get_num().get_si());
        for (long i = 0; i < spawn; ++i) {
          rep.summand_weights.push_back(static_cast<int>(w));
          closure_gens.push_back(static_cast<int>(w));
        }
        if (spawn > 0) {
          tower = tower_character(rep.summand_weights, order);
          closure = closure_character(closure_gens, order);
        }
        rep.events.push_back({static_cast<int>(w), spawn, gw - spawn});
      }
    }
    Rat m = qs_coeff(tower, w);
    Rat p = qs_coeff(closure, w);
    if (x > p)
      throw MathError("InconsistentCharacter", "weight " + std::to_string(w) + ": character has " +
                                                   rat_str(x) + " states, free closure only " + rat_str(p));
    if (x < p && (x <= m)) {
      rep.first_break = static_cast<int>(w);
      rep.break_defect = x - p;  // negative: a relation / null vector
      break;
    }
    if (x > m) {
      rep.first_break = static_cast<int>(w);
      rep.break_defect = x - m;  // positive: exceeds the module tower
      break;
    }
  }
  rep.agreement_through = rep.first_break >= 0 ? rep.first_break : static_cast<int>(order);
  return rep;
}

}  // namespace walg::vir
