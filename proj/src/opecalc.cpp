#include "walg/opecalc.hpp"

#include <algorithm>
#include <stdexcept>

// Mode conventions. A monomial L_{-m_1} ... L_{-m_k} v uses physics indices,
// L_{-m} = L_{(-m+1)} in vertex-algebra mode notation. All products are
// evaluated through two exact recursions:
//   commutator  [a_(n), b_(m)] = sum_j C(n,j) (a_(j) b)_(n+m-j)
//   iterate     (a_(-M) b)_(n) = sum_j C(M+j-1,j)
//                 ( a_(-M-j) b_(n+j) - (-1)^M b_(-M+n-j) a_(j) )
// both valid for every integer index, with finitely many nonzero terms here
// because all generators have finitely many nonnegative products.

namespace walg::ope {

State state_add(const State& a, const State& b) {
  State out = a;
  for (const auto& [m, p] : b) {
    auto it = out.find(m);
    if (it == out.end()) {
      if (!p.is_zero()) out.emplace(m, p);
    } else {
      it->second += p;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

State state_scale(const State& a, const Rat& r) {
  if (r == 0) return {};
  State out;
  for (const auto& [m, p] : a) out.emplace(m, p * r);
  return out;
}

State state_mulpoly(const State& a, const QPoly& p) {
  if (p.is_zero()) return {};
  State out;
  for (const auto& [m, q] : a) {
    QPoly r = mul(q, p);
    if (!r.is_zero()) out.emplace(m, r);
  }
  return out;
}

namespace {

State unit_state(int mono) { return State{{mono, QPoly::constant(1)}}; }

}  // namespace

Engine::Engine(Rat central_charge, std::vector<int> primary_weights, int weight_bound)
    : c_(std::move(central_charge)),
      primary_weights_(std::move(primary_weights)),
      weight_bound_(weight_bound) {
  for (int w : primary_weights_)
    if (w < 1) throw MathError("BadGenerator", "primary weight must be >= 1");
  intern(Monomial{});            // vacuum
  intern(Monomial{{2}, 0});      // conformal vector L
  for (int i = 1; i <= num_primaries(); ++i) intern(Monomial{{}, i});
}

int Engine::intern(const Monomial& m) {
  auto it = ids_.find(m);
  if (it != ids_.end()) return it->second;
  if (m.tail < 0 || m.tail > num_primaries()) throw std::logic_error("monomial tail out of range");
  int minmode = m.tail == 0 ? 2 : 1;
  for (size_t i = 0; i < m.modes.size(); ++i) {
    if (m.modes[i] < minmode) throw std::logic_error("monomial mode below floor");
    if (i + 1 < m.modes.size() && m.modes[i] < m.modes[i + 1])
      throw std::logic_error("monomial modes not sorted");
  }
  int id = static_cast<int>(pool_.size());
  pool_.push_back(m);
  ids_.emplace(m, id);
  return id;
}

const Monomial& Engine::monomial(int id) const { return pool_[static_cast<size_t>(id)]; }

int Engine::weight(int id) const {
  const Monomial& m = pool_[static_cast<size_t>(id)];
  int w = m.tail == 0 ? 0 : primary_weight(m.tail);
  for (int k : m.modes) w += k;
  return w;
}

int Engine::weight(const State& s) const {
  int w = -1;
  for (const auto& [m, p] : s) {
    int wm = weight(m);
    if (w == -1) w = wm;
    if (w != wm) throw std::logic_error("state is not weight homogeneous");
  }
  return w;
}

std::string Engine::monomial_str(int id) const {
  const Monomial& m = pool_[static_cast<size_t>(id)];
  std::string out;
  for (int k : m.modes) out += "L-" + std::to_string(k) + ".";
  if (m.tail == 0) {
    if (m.modes.empty()) return "1";
    out.pop_back();
  } else {
    out += "W" + std::to_string(primary_weight(m.tail));
  }
  return out;
}

std::string Engine::state_str(const State& s, const std::vector<std::string>& names) const {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [m, p] : s) {
    if (!out.empty()) out += " + ";
    out += "(" + p.str(names) + ")*" + monomial_str(m);
  }
  return out;
}

namespace {

void partitions_desc(int total, int maxpart, int minpart, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(total, maxpart); p >= minpart; --p) {
    cur.push_back(p);
    partitions_desc(total - p, p, minpart, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<int> Engine::basis(int weight_value) {
  std::vector<int> tails(static_cast<size_t>(num_primaries()) + 1);
  for (int t = 0; t <= num_primaries(); ++t) tails[static_cast<size_t>(t)] = t;
  return basis(weight_value, tails);
}

std::vector<int> Engine::basis(int weight_value, const std::vector<int>& tails) {
  std::vector<int> out;
  for (int t : tails) {
    int rem = weight_value - (t == 0 ? 0 : primary_weight(t));
    if (rem < 0) continue;
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions_desc(rem, rem, t == 0 ? 2 : 1, cur, parts);
    if (rem == 0) {
      out.push_back(intern(Monomial{{}, t}));
      continue;
    }
    for (const auto& p : parts) out.push_back(intern(Monomial{p, t}));
  }
  return out;
}

void Engine::set_pair_table(int i, int j, std::vector<State> products) {
  if (i < 1 || j < i || j > num_primaries())
    throw MathError("BadGenerator", "pair table needs 1 <= i <= j <= #primaries");
  tables_[{i, j}] = std::move(products);
  // anything computed through the old table is stale
  skew_tables_.clear();
  gen_cache_.clear();
  mono_cache_.clear();
}

const std::vector<State>& Engine::pair_table(int i, int j) const {
  auto it = tables_.find({i, j});
  if (it == tables_.end())
    throw MathError("MissingTable",
                    "no product table for primaries (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  return it->second;
}

const std::vector<State>& Engine::products(int i, int j) {
  if (i <= j) return pair_table(i, j);
  auto it = skew_tables_.find({i, j});
  if (it != skew_tables_.end()) return it->second;
  auto images = skew_images(pair_table(j, i));
  return skew_tables_.emplace(std::make_pair(i, j), std::move(images)).first->second;
}

void Engine::set_creation_rewrite(int i, State sigma) {
  rewrites_[i] = std::move(sigma);
  gen_cache_.clear();
  mono_cache_.clear();
}

bool Engine::has_creation_rewrite(int i) const { return rewrites_.count(i) > 0; }

const State& Engine::creation_rewrite(int i) const {
  auto it = rewrites_.find(i);
  if (it == rewrites_.end()) throw MathError("MissingTable", "no creation rewrite registered");
  return it->second;
}

int Engine::gen_mono(int g) {
  return g == 0 ? intern(Monomial{{2}, 0}) : intern(Monomial{{}, g});
}

// g_(j) L as explicit states: for L itself T L, 2 L, (c/2) vacuum at
// j = 0, 1, 3; for a primary of weight D the skew of [L_lambda W] gives
// (D-1) T W at j = 0 and D W at j = 1.
std::map<int, State> Engine::small_products_on_L(int g) {
  std::map<int, State> out;
  if (g == 0) {
    out[0] = unit_state(intern(Monomial{{3}, 0}));
    out[1] = state_scale(unit_state(intern(Monomial{{2}, 0})), 2);
    out[3] = State{{intern(Monomial{}), QPoly::constant(c_ / 2)}};
  } else {
    int d = primary_weight(g);
    out[0] = state_scale(unit_state(intern(Monomial{{1}, g})), d - 1);
    out[1] = state_scale(unit_state(intern(Monomial{{}, g})), d);
  }
  return out;
}

State Engine::apply_L_mono(int k, int mono) {
  auto key = std::make_pair(k, mono);
  auto it = applyl_cache_.find(key);
  if (it != applyl_cache_.end()) return it->second;
  const Monomial m = pool_[static_cast<size_t>(mono)];  // copy: pool_ grows below
  State res;
  if (m.modes.empty()) {
    if (m.tail == 0) {
      if (k >= 2) res = unit_state(intern(Monomial{{k}, 0}));
      // L_{-1} |0> = 0
    } else {
      res = unit_state(intern(Monomial{{k}, m.tail}));
    }
  } else if (k >= m.modes.front()) {
    Monomial m2 = m;
    m2.modes.insert(m2.modes.begin(), k);
    res = unit_state(intern(m2));
  } else {
    // L_{-k} L_{-t} = L_{-t} L_{-k} + (t - k) L_{-k-t} on everything below
    int t = m.modes.front();
    Monomial rest = m;
    rest.modes.erase(rest.modes.begin());
    int rid = intern(rest);
    res = state_add(apply_L(t, apply_L_mono(k, rid)),
                    state_scale(apply_L_mono(k + t, rid), Rat(t - k)));
  }
  applyl_cache_.emplace(key, res);
  return res;
}

State Engine::apply_L(int k, const State& s) {
  State out;
  for (const auto& [m, p] : s) out = state_add(out, state_mulpoly(apply_L_mono(k, m), p));
  return out;
}

State Engine::apply_T(const State& s) { return apply_L(1, s); }

State Engine::apply_T_divided(const State& s, int r) {
  State out = s;
  for (int i = 0; i < r; ++i) out = apply_L(1, out);
  return state_scale(out, Rat(1) / factorial(static_cast<unsigned long>(r)));
}

State Engine::gen_product(int g, long n, int mono) {
  auto key = std::make_tuple(g, n, mono);
  auto it = gen_cache_.find(key);
  if (it != gen_cache_.end()) return it->second;
  State res = gen_product_uncached(g, n, mono);
  gen_cache_.emplace(key, res);
  return res;
}

State Engine::gen_product_uncached(int g, long n, int mono) {
  int gweight = g == 0 ? 2 : primary_weight(g);
  if (gweight + weight(mono) - n - 1 < 0) return {};  // graded: negative weight vanishes
  // L_(n) for n <= 0 is the lowering mode L_{-(1-n)}
  if (g == 0 && n <= 0) return apply_L(static_cast<int>(1 - n), unit_state(mono));
  const Monomial m = pool_[static_cast<size_t>(mono)];
  if (m.modes.empty()) {
    if (m.tail == 0) {
      if (n >= 0) return {};
      return apply_T_divided(unit_state(gen_mono(g)), static_cast<int>(-n - 1));
    }
    if (g == 0) {
      // n >= 1 here; L is handled above for n <= 0
      if (n == 1) return state_scale(unit_state(mono), primary_weight(m.tail));
      return {};
    }
    if (n >= 0) {
      const auto& prods = products(g, m.tail);
      if (n >= static_cast<long>(prods.size())) return {};
      return prods[static_cast<size_t>(n)];
    }
    if (g == m.tail && n == -1 && has_creation_rewrite(g)) return rewrites_.at(g);
    throw MathError("OutOfModule", "creation product W" + std::to_string(primary_weight(g)) +
                                       "_(" + std::to_string(n) + ") W" +
                                       std::to_string(primary_weight(m.tail)) +
                                       " leaves the module span");
  }
  // composite: commute g past the top mode
  int k = m.modes.front();
  Monomial rest = m;
  rest.modes.erase(rest.modes.begin());
  int rid = intern(rest);
  State out = apply_L(k, gen_product(g, n, rid));
  for (const auto& [j, gl] : small_products_on_L(g)) {
    Rat cb = binom(Rat(n), static_cast<unsigned long>(j));
    if (cb == 0) continue;
    State term = nth_product(gl, n + 1 - k - j, unit_state(rid));
    out = state_add(out, state_scale(term, cb));
  }
  return out;
}

State Engine::mono_product(int mono_a, long n, int mono_b) {
  auto key = std::make_tuple(mono_a, n, mono_b);
  auto it = mono_cache_.find(key);
  if (it != mono_cache_.end()) return it->second;
  State res = mono_product_uncached(mono_a, n, mono_b);
  mono_cache_.emplace(key, res);
  return res;
}

State Engine::mono_product_uncached(int mono_a, long n, int mono_b) {
  if (weight(mono_a) + weight(mono_b) - n - 1 < 0) return {};
  const Monomial ma = pool_[static_cast<size_t>(mono_a)];
  if (ma.modes.empty() && ma.tail == 0)
    return n == -1 ? unit_state(mono_b) : State{};
  const Monomial mb = pool_[static_cast<size_t>(mono_b)];
  if (mb.modes.empty() && mb.tail == 0) {
    if (n >= 0) return {};
    return apply_T_divided(unit_state(mono_a), static_cast<int>(-n - 1));
  }
  if (ma.modes.empty()) return gen_product(ma.tail, n, mono_b);
  if (ma.modes.size() == 1 && ma.modes[0] == 2 && ma.tail == 0)
    return gen_product(0, n, mono_b);
  int top = ma.modes.front();
  Monomial rest = ma;
  rest.modes.erase(rest.modes.begin());
  int rid = intern(rest);
  if (top == 1) {
    // (T a')_(n) = -n a'_(n-1)
    return state_scale(mono_product(rid, n - 1, mono_b), Rat(-n));
  }
  long M = top - 1;
  State out;
  for (long j = 0;; ++j) {
    bool lhs_live = weight(rid) + weight(mono_b) - (n + j) - 1 >= 0;
    bool rhs_live = weight(mono_b) + 1 - j >= 0;
    if (!lhs_live && !rhs_live) break;
    Rat cb = binom(Rat(M + j - 1), static_cast<unsigned long>(j));
    if (lhs_live) {
      State t = mono_product(rid, n + j, mono_b);
      if (!t.empty()) out = state_add(out, state_scale(apply_L(static_cast<int>(M + j + 1), t), cb));
    }
    if (rhs_live) {
      State lb = gen_product(0, j, mono_b);
      if (!lb.empty()) {
        State t = nth_product(unit_state(rid), -M + n - j, lb);
        Rat sign = (M % 2 == 0) ? Rat(-1) : Rat(1);  // -(-1)^M
        out = state_add(out, state_scale(t, sign * cb));
      }
    }
  }
  return out;
}

State Engine::nth_product(const State& a, long n, const State& b) {
  State out;
  for (const auto& [am, ap] : a)
    for (const auto& [bm, bp] : b) {
      State r = mono_product(am, n, bm);
      if (r.empty()) continue;
      QPoly f = mul(ap, bp);
      if (f.is_zero()) continue;
      out = state_add(out, state_mulpoly(r, f));
    }
  return out;
}

std::vector<State> Engine::skew_images(const std::vector<State>& products) {
  const long len = static_cast<long>(products.size());
  std::vector<State> out(products.size());
  for (long i = 0; i < len; ++i) {
    State acc;
    for (long j = 0; i + j < len; ++j) {
      const State& p = products[static_cast<size_t>(i + j)];
      if (p.empty()) continue;
      Rat sign = ((i + j + 1) % 2 == 0) ? Rat(1) : Rat(-1);
      acc = state_add(acc, state_scale(apply_T_divided(p, static_cast<int>(j)), sign));
    }
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

std::vector<QPoly> jacobi_equations(Engine& e, int ga, int gb, int gc) {
  auto gw = [&](int g) { return g == 0 ? 2 : e.primary_weight(g); };
  auto gs = [&](int g) {
    Monomial m = g == 0 ? Monomial{{2}, 0} : Monomial{{}, g};
    return State{{e.intern(m), QPoly::constant(1)}};
  };
  State sa = gs(ga), sb = gs(gb), sc = gs(gc);
  long total = gw(ga) + gw(gb) + gw(gc);
  std::vector<QPoly> eqs;
  for (long m = 0; m <= total - 2; ++m) {
    State inner_bc = e.nth_product(sb, m, sc);
    for (long n = 0; n + m <= total - 2; ++n) {
      long rw = total - n - m - 2;
      if (rw > e.weight_bound()) continue;
      State res = e.nth_product(sa, n, inner_bc);
      res = state_add(res, state_scale(e.nth_product(sb, m, e.nth_product(sa, n, sc)), -1));
      for (long k = 0; k <= n; ++k) {
        State ab = e.nth_product(sa, k, sb);
        if (ab.empty()) continue;
        Rat cb = binom(Rat(n), static_cast<unsigned long>(k));
        res = state_add(res, state_scale(e.nth_product(ab, n + m - k, sc), -cb));
      }
      for (const auto& [mono, p] : res)
        if (!p.is_zero()) eqs.push_back(p);
    }
  }
  return eqs;
}

std::vector<QPoly> skew_equations(Engine& e, int i) {
  const auto& table = e.pair_table(i, i);
  auto skew = e.skew_images(table);
  std::vector<QPoly> eqs;
  for (size_t n = 0; n < table.size(); ++n) {
    State diff = state_add(table[n], state_scale(skew[n], -1));
    for (const auto& [mono, p] : diff)
      if (!p.is_zero()) eqs.push_back(p);
  }
  return eqs;
}

}  // namespace walg::ope
