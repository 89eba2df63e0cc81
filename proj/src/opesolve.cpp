#include "walg/opecalc.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace walg::ope {

// ---------------------------------------------------------------------------
// QPoly

namespace {

int key_degree(const std::pair<int, int>& k) {
  if (k.first < 0) return 0;
  return k.second < 0 ? 1 : 2;
}

std::pair<int, int> key_mul(const std::pair<int, int>& a, const std::pair<int, int>& b) {
  int da = key_degree(a), db = key_degree(b);
  if (da == 0) return b;
  if (db == 0) return a;
  if (da + db > 2)
    throw MathError("DegreeOverflow", "unknown product would exceed degree 2");
  return {std::min(a.first, b.first), std::max(a.first, b.first)};
}

}  // namespace

QPoly QPoly::constant(const Rat& r) {
  QPoly p;
  if (r != 0) p.terms[{-1, -1}] = r;
  return p;
}

QPoly QPoly::var(int i) {
  QPoly p;
  p.terms[{i, -1}] = 1;
  return p;
}

bool QPoly::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms.begin()->first.first < 0);
}

const Rat& QPoly::constant_value() const {
  static const Rat kZero = 0;
  if (terms.empty()) return kZero;
  return terms.at({-1, -1});
}

int QPoly::degree() const {
  int d = 0;
  for (const auto& [k, v] : terms) d = std::max(d, key_degree(k));
  return d;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  for (const auto& [k, v] : o.terms) {
    auto it = terms.find(k);
    if (it == terms.end()) {
      terms.emplace(k, v);
    } else {
      it->second += v;
      if (it->second == 0) terms.erase(it);
    }
  }
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  for (const auto& [k, v] : o.terms) {
    auto it = terms.find(k);
    if (it == terms.end()) {
      terms.emplace(k, -v);
    } else {
      it->second -= v;
      if (it->second == 0) terms.erase(it);
    }
  }
  return *this;
}

QPoly& QPoly::operator*=(const Rat& r) {
  if (r == 0) {
    terms.clear();
  } else {
    for (auto& [k, v] : terms) v *= r;
  }
  return *this;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  QPoly out;
  for (const auto& [ka, va] : a.terms)
    for (const auto& [kb, vb] : b.terms) {
      auto k = key_mul(ka, kb);
      auto it = out.terms.find(k);
      if (it == out.terms.end()) {
        out.terms.emplace(k, va * vb);
      } else {
        it->second += va * vb;
      }
    }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

QPoly QPoly::substituted(const std::map<int, QPoly>& affine) const {
  QPoly out;
  for (const auto& [k, v] : terms) {
    int d = key_degree(k);
    if (d == 0) {
      out += constant(v);
    } else if (d == 1) {
      auto it = affine.find(k.first);
      if (it == affine.end()) {
        QPoly t = var(k.first);
        t *= v;
        out += t;
      } else {
        out += it->second * v;
      }
    } else {
      auto i1 = affine.find(k.first);
      auto i2 = affine.find(k.second);
      if (i1 == affine.end() && i2 == affine.end()) {
        QPoly t;
        t.terms[k] = v;
        out += t;
      } else {
        const QPoly p1 = i1 == affine.end() ? var(k.first) : i1->second;
        const QPoly p2 = i2 == affine.end() ? var(k.second) : i2->second;
        out += mul(p1, p2) * v;
      }
    }
  }
  return out;
}

Rat QPoly::eval(const std::vector<Rat>& values) const {
  Rat r = 0;
  for (const auto& [k, v] : terms) {
    int d = key_degree(k);
    if (d == 0) {
      r += v;
    } else if (d == 1) {
      r += v * values.at(static_cast<size_t>(k.first));
    } else {
      r += v * values.at(static_cast<size_t>(k.first)) * values.at(static_cast<size_t>(k.second));
    }
  }
  return r;
}

std::string QPoly::str(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  auto nm = [&](int i) {
    return i < static_cast<int>(names.size()) ? names[static_cast<size_t>(i)]
                                              : "x" + std::to_string(i);
  };
  std::string out;
  for (const auto& [k, v] : terms) {
    if (!out.empty()) out += " + ";
    out += rat_str(v);
    if (k.first >= 0) out += "*" + nm(k.first);
    if (k.second >= 0) out += "*" + nm(k.second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact solver

namespace {

using Terms = std::map<std::pair<int, int>, Rat>;

Terms normal_form(const QPoly& p) {
  Terms t = p.terms;
  const Rat lead = t.begin()->second;
  if (lead != 1)
    for (auto& [k, v] : t) v /= lead;
  return t;
}

int smallest_var(const QPoly& p) {
  int best = -1;
  for (const auto& [k, v] : p.terms) {
    if (k.first < 0) continue;
    if (best == -1 || k.first < best) best = k.first;
    if (k.second >= 0 && k.second < best) best = k.second;
  }
  return best;
}

// -1 unless the poly involves exactly one variable
int single_var_of(const QPoly& p) {
  int v = -1;
  for (const auto& [k, val] : p.terms) {
    if (k.first < 0) continue;
    if (k.second >= 0 && k.second != k.first) return -1;
    if (v == -1) v = k.first;
    if (k.first != v) return -1;
  }
  return v;
}

// smallest variable dividing every term, or -1
int factor_var_of(const QPoly& p) {
  if (p.terms.count({-1, -1})) return -1;
  std::set<int> common;
  bool first = true;
  for (const auto& [k, val] : p.terms) {
    std::set<int> vs{k.first};
    if (k.second >= 0) vs.insert(k.second);
    if (first) {
      common = vs;
      first = false;
    } else {
      std::set<int> keep;
      for (int v : vs)
        if (common.count(v)) keep.insert(v);
      common = keep;
    }
    if (common.empty()) return -1;
  }
  return *common.begin();
}

QPoly cofactor(const QPoly& p, int v) {
  QPoly out;
  for (const auto& [k, val] : p.terms) {
    std::pair<int, int> nk;
    if (k.second < 0) {
      nk = {-1, -1};  // linear v-term -> constant
    } else if (k.first == v) {
      nk = {k.second, -1};
    } else {
      nk = {k.first, -1};
    }
    out.terms[nk] += val;
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

struct Outcome {
  std::vector<std::vector<Rat>> solutions;
  std::vector<SolveResult> underdet;
};

void solve_rec(std::vector<QPoly> eqs, std::map<int, QPoly> sub, int nvars, int& budget,
               Outcome& out) {
  // linear fixpoint
  for (;;) {
    std::vector<QPoly> lin, rest;
    for (auto& q : eqs) {
      if (q.is_zero()) continue;
      if (q.is_constant()) return;  // nonzero constant: this branch has no solutions
      (q.degree() == 1 ? lin : rest).push_back(std::move(q));
    }
    if (lin.empty()) {
      eqs = std::move(rest);
      break;
    }
    // canonical pivot: smallest variable, then smallest normalized equation
    const QPoly* best = nullptr;
    int best_var = -1;
    Terms best_nf;
    for (const auto& q : lin) {
      int v = smallest_var(q);
      Terms nf = normal_form(q);
      if (best == nullptr || v < best_var || (v == best_var && nf < best_nf)) {
        best = &q;
        best_var = v;
        best_nf = std::move(nf);
      }
    }
    Rat coeff = best->terms.at({best_var, -1});
    QPoly expr;
    for (const auto& [k, v] : best->terms)
      if (!(k.first == best_var && k.second == -1)) expr.terms[k] = -v / coeff;
    std::map<int, QPoly> single{{best_var, expr}};
    for (auto& [v, q] : sub) q = q.substituted(single);
    sub.emplace(best_var, std::move(expr));
    std::vector<QPoly> next;
    next.reserve(lin.size() + rest.size());
    for (const auto& q : lin) {
      QPoly s = q.substituted(single);
      if (!s.is_zero()) next.push_back(std::move(s));
    }
    for (const auto& q : rest) {
      QPoly s = q.substituted(single);
      if (!s.is_zero()) next.push_back(std::move(s));
    }
    eqs = std::move(next);
  }

  if (eqs.empty()) {
    std::vector<int> free;
    for (int v = 0; v < nvars; ++v)
      if (!sub.count(v)) free.push_back(v);
    if (free.empty()) {
      std::vector<Rat> vals(static_cast<size_t>(nvars));
      for (const auto& [v, q] : sub) vals[static_cast<size_t>(v)] = q.constant_value();
      out.solutions.push_back(std::move(vals));
    } else {
      SolveResult r;
      r.underdetermined = true;
      r.free_vars = free;
      for (int v = 0; v < nvars; ++v)
        r.general[v] = sub.count(v) ? sub.at(v) : QPoly::var(v);
      out.underdet.push_back(std::move(r));
    }
    return;
  }

  // residual quadratics: branch on the canonically smallest resolvable one
  const QPoly* pick = nullptr;
  Terms pick_nf;
  bool pick_single = false;
  for (const auto& q : eqs) {
    bool is_single = single_var_of(q) >= 0;
    bool is_factor = factor_var_of(q) >= 0;
    if (!is_single && !is_factor) continue;
    Terms nf = normal_form(q);
    if (pick == nullptr || (is_single && !pick_single) ||
        (is_single == pick_single && nf < pick_nf)) {
      pick = &q;
      pick_nf = std::move(nf);
      pick_single = is_single;
    }
  }
  if (pick == nullptr)
    throw MathError("UnresolvedBranch", "residual quadratic system has no single-variable or "
                                        "factorable equation to branch on");
  if (pick_single) {
    int v = single_var_of(*pick);
    Rat a = 0, b = 0, cc = 0;
    for (const auto& [k, val] : pick->terms) {
      if (k.first < 0) {
        cc = val;
      } else if (k.second < 0) {
        b = val;
      } else {
        a = val;
      }
    }
    // a != 0 (degree-2 equation)
    Rat disc = b * b - 4 * a * cc;
    Rat s;
    if (disc < 0 || !rat_is_square(disc, &s)) return;  // no rational root: branch dies
    std::vector<Rat> roots{(-b + s) / (2 * a)};
    if (s != 0) roots.push_back((-b - s) / (2 * a));
    std::sort(roots.begin(), roots.end());
    budget -= static_cast<int>(roots.size());
    if (budget < 0) throw MathError("UnresolvedBranch", "branch budget exhausted");
    for (const Rat& r : roots) {
      std::vector<QPoly> child = eqs;
      child.push_back(QPoly::var(v) - QPoly::constant(r));
      solve_rec(std::move(child), sub, nvars, budget, out);
    }
    return;
  }
  int v = factor_var_of(*pick);
  budget -= 2;
  if (budget < 0) throw MathError("UnresolvedBranch", "branch budget exhausted");
  {
    std::vector<QPoly> child = eqs;
    child.push_back(QPoly::var(v));
    solve_rec(std::move(child), sub, nvars, budget, out);
  }
  {
    std::vector<QPoly> child = eqs;
    child.push_back(cofactor(*pick, v));
    solve_rec(std::move(child), sub, nvars, budget, out);
  }
}

}  // namespace

SolveResult solve_system(const std::vector<QPoly>& eqs, int nvars,
                         const std::vector<std::pair<int, Rat>>& pins, const SolveOptions& opt) {
  // normalize + dedupe; the set ordering also makes the run independent of
  // the input equation order
  std::set<Terms> forms;
  for (const auto& q : eqs) {
    if (q.is_zero()) continue;
    forms.insert(normal_form(q));
  }
  std::vector<QPoly> work;
  work.reserve(forms.size() + pins.size());
  for (const auto& f : forms) {
    QPoly q;
    q.terms = f;
    work.push_back(std::move(q));
  }
  for (const auto& [v, val] : pins) work.push_back(QPoly::var(v) - QPoly::constant(val));

  Outcome out;
  int budget = opt.max_branches;
  solve_rec(std::move(work), {}, nvars, budget, out);

  SolveResult res;
  if (!out.underdet.empty()) {
    if (!out.solutions.empty())
      throw MathError("UnresolvedBranch", "solution set mixes isolated points and families");
    // dedupe identical families
    for (size_t i = 1; i < out.underdet.size(); ++i)
      if (out.underdet[i].free_vars != out.underdet[0].free_vars ||
          out.underdet[i].general != out.underdet[0].general)
        throw MathError("UnresolvedBranch", "distinct solution families");
    return out.underdet[0];
  }
  if (out.solutions.empty()) throw MathError("Inconsistent", "the constraint system has no solution");
  std::sort(out.solutions.begin(), out.solutions.end());
  out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()), out.solutions.end());
  res.solutions = std::move(out.solutions);
  return res;
}

// ---------------------------------------------------------------------------
// Problem drivers

BracketProblem build_problem(const Rat& c, const std::vector<int>& primary_weights,
                             bool with_square_rewrite, int weight_bound) {
  BracketProblem p;
  p.weight_bound = weight_bound;
  p.engine = std::make_shared<Engine>(c, primary_weights, weight_bound);
  Engine& e = *p.engine;
  const int np = e.num_primaries();

  for (int i = 1; i <= np; ++i)
    for (int j = i; j <= np; ++j) {
      int K = e.primary_weight(i) + e.primary_weight(j) - 1;
      std::vector<State> prods(static_cast<size_t>(K) + 1);
      for (int k = 0; k <= K; ++k)
        for (int mono : e.basis(k)) {
          int v = static_cast<int>(p.vars.size());
          std::string nm = "A" + std::to_string(e.primary_weight(i)) +
                           std::to_string(e.primary_weight(j)) + "[" + std::to_string(k) + "]" +
                           e.monomial_str(mono);
          p.vars.push_back({nm, i, j, k, mono});
          // the lambda^(K-k) coefficient A_k gives the mode product
          // a_(n) b = n! A_{K-n}
          QPoly coeff = QPoly::var(v);
          coeff *= Rat(factorial(static_cast<unsigned long>(K - k)));
          prods[static_cast<size_t>(K - k)][mono] = std::move(coeff);
        }
      e.set_pair_table(i, j, std::move(prods));
    }

  if (with_square_rewrite) {
    if (np < 1) throw MathError("BadGenerator", "rewrite needs a primary");
    State sigma;
    int sw = 2 * e.primary_weight(1);
    for (int mono : e.basis(sw)) {
      int v = static_cast<int>(p.vars.size());
      p.vars.push_back({"sigma" + e.monomial_str(mono), 0, 0, sw, mono});
      sigma[mono] = QPoly::var(v);
    }
    e.set_creation_rewrite(1, sigma);
  }

  auto append = [&](std::vector<QPoly> eqs, const std::string& tag) {
    int idx = 0;
    for (auto& q : eqs) {
      p.equations.push_back(std::move(q));
      p.equation_origin.push_back(tag + "#" + std::to_string(idx++));
    }
  };

  for (int ga = 0; ga <= np; ++ga)
    for (int gb = 0; gb <= np; ++gb)
      for (int gc = 0; gc <= np; ++gc) {
        if (ga == 0 && gb == 0 && gc == 0) continue;
        append(jacobi_equations(e, ga, gb, gc), "jacobi(" + std::to_string(ga) + "," +
                                                    std::to_string(gb) + "," + std::to_string(gc) +
                                                    ")");
      }
  for (int i = 1; i <= np; ++i) append(skew_equations(e, i), "skew(" + std::to_string(i) + ")");

  if (with_square_rewrite) {
    // compatibility of the defining relation W_(-1) W = sigma with the
    // Virasoro action: L_(n) (W_(-1) W) expands through the commutator to
    // (n (D-1) + 1) W_(n-2) W plus, at n = 1, another D sigma.
    const State& sigma = e.creation_rewrite(1);
    int D = e.primary_weight(1);
    State lst{{e.intern(Monomial{{2}, 0}), QPoly::constant(1)}};
    const auto& table = e.pair_table(1, 1);
    for (int n = 1; n <= 2 * D + 1; ++n) {
      State lhs;
      Rat f = Rat(n) * (D - 1) + 1;
      if (n == 1) {
        lhs = state_scale(sigma, 2 * D);
      } else if (n - 2 < static_cast<int>(table.size())) {
        lhs = state_scale(table[static_cast<size_t>(n - 2)], f);
      }
      State diff = state_add(lhs, state_scale(e.nth_product(lst, n, sigma), -1));
      std::vector<QPoly> eqs;
      for (const auto& [mono, q] : diff)
        if (!q.is_zero()) eqs.push_back(q);
      append(std::move(eqs), "square-compat(" + std::to_string(n) + ")");
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Staged eliminator used by solve_problem. Variables are removed one at a
// time, always through a pivot that keeps every remaining equation at degree
// <= 2: first from equations that are affine overall, then variables that
// occur only linearly (never inside a quadratic term), whose defining
// equation may be quadratic in the remaining unknowns. The eliminations are
// recorded in order so a numeric assignment of the surviving free variables
// extends to all variables by walking the record backwards.

namespace {

struct Staged {
  std::vector<QPoly> eqs;                      // live normal forms; empty = retired slot
  std::set<Terms> seen;                        // normal forms currently live
  std::vector<std::pair<int, QPoly>> chain;    // var := expr, in elimination order
  std::set<int> gone;

  void add(QPoly q) {
    if (q.is_zero()) return;
    if (q.is_constant()) throw MathError("Inconsistent", "contradictory constant equation");
    Terms nf = normal_form(q);
    if (seen.count(nf)) return;
    QPoly norm;
    norm.terms = nf;
    seen.insert(std::move(nf));
    eqs.push_back(std::move(norm));
  }

  void set_equations(const std::vector<QPoly>& in) {
    eqs.clear();
    seen.clear();
    for (const auto& q : in) add(q);
  }

  void compact() {
    size_t w = 0;
    for (size_t r = 0; r < eqs.size(); ++r)
      if (!eqs[r].is_zero()) {
        if (w != r) eqs[w] = std::move(eqs[r]);
        ++w;
      }
    eqs.resize(w);
  }

  static bool mentions(const QPoly& q, int x) {
    for (const auto& [k, v] : q.terms)
      if (k.first == x || k.second == x) return true;
    return false;
  }

  // only equations mentioning x are touched; the rest stay in place
  void eliminate(int x, const QPoly& expr) {
    std::map<int, QPoly> single{{x, expr}};
    std::vector<QPoly> changed;
    for (auto& q : eqs) {
      if (q.is_zero() || !mentions(q, x)) continue;
      changed.push_back(q.substituted(single));
      seen.erase(q.terms);
      q.terms.clear();
    }
    for (auto& q : changed) add(std::move(q));
    chain.emplace_back(x, expr);
    gone.insert(x);
  }

  // expr for x from eq = coeff*x + rest
  static QPoly pivot_expr(const QPoly& eq, int x) {
    Rat coeff = eq.terms.at({x, -1});
    QPoly expr;
    for (const auto& [k, v] : eq.terms)
      if (!(k.first == x && k.second == -1)) expr.terms[k] = -v / coeff;
    return expr;
  }

  // pivot preference: fewest terms in the defining equation (limits fill-in),
  // then smallest variable index; deterministic for a fixed input order
  static bool better(const QPoly* q, int v, const QPoly* bq, int bv) {
    if (bq == nullptr) return true;
    if (q->terms.size() != bq->terms.size()) return q->terms.size() < bq->terms.size();
    return v < bv;
  }

  bool step() {
    // affine equations first: substitution is always degree-safe
    const QPoly* best = nullptr;
    int best_var = -1;
    for (const auto& q : eqs) {
      if (q.is_zero() || q.degree() != 1) continue;
      int v = smallest_var(q);
      if (better(&q, v, best, best_var)) {
        best = &q;
        best_var = v;
      }
    }
    if (best != nullptr) {
      eliminate(best_var, pivot_expr(*best, best_var));
      return true;
    }
    // variables absent from every quadratic term may be pivoted even when
    // their defining equation is quadratic in the others
    std::set<int> quad_vars;
    for (const auto& q : eqs)
      for (const auto& [k, v] : q.terms)
        if (k.second >= 0) {
          quad_vars.insert(k.first);
          quad_vars.insert(k.second);
        }
    for (const auto& q : eqs) {
      if (q.is_zero()) continue;
      for (const auto& [k, v] : q.terms) {
        if (k.first < 0 || k.second >= 0) continue;
        int x = k.first;
        if (quad_vars.count(x)) continue;
        if (better(&q, x, best, best_var)) {
          best = &q;
          best_var = x;
        }
      }
    }
    if (best != nullptr) {
      eliminate(best_var, pivot_expr(*best, best_var));
      return true;
    }
    return false;
  }

  void run() {
    while (step()) {
    }
    compact();
  }

  std::vector<int> free_vars(int nvars) const {
    std::vector<int> out;
    for (int v = 0; v < nvars; ++v)
      if (!gone.count(v)) out.push_back(v);
    return out;
  }
};

// --- exact arithmetic in Q(sqrt(zeta)) ---

AlgVal alg_add(const AlgVal& x, const AlgVal& y) { return {x.a + y.a, x.b + y.b}; }

AlgVal alg_mul(const AlgVal& x, const AlgVal& y, const Rat& zeta) {
  return {x.a * y.a + x.b * y.b * zeta, x.a * y.b + x.b * y.a};
}

AlgVal alg_scale(const AlgVal& x, const Rat& r) { return {x.a * r, x.b * r}; }

AlgVal alg_eval(const QPoly& p, const std::vector<AlgVal>& values, const Rat& zeta) {
  AlgVal out{0, 0};
  for (const auto& [k, v] : p.terms) {
    if (k.first < 0) {
      out.a += v;
    } else if (k.second < 0) {
      out = alg_add(out, alg_scale(values[static_cast<size_t>(k.first)], v));
    } else {
      AlgVal prod = alg_mul(values[static_cast<size_t>(k.first)],
                            values[static_cast<size_t>(k.second)], zeta);
      out = alg_add(out, alg_scale(prod, v));
    }
  }
  return out;
}

// sqrt(d) = mult * sqrt(z) with z a positive integer; square factors below
// 10^4 (and a perfect-square cofactor) are pulled into mult, which keeps the
// reported radicand small without requiring a full integer factorization
void split_sqrt(const Rat& d, Rat& mult, Rat& z) {
  Int num = d.get_num(), den = d.get_den();
  Int inside = num * den;  // sqrt(n/d) = sqrt(n d) / d
  mult = Rat(1) / Rat(den);
  Int square = 1;
  for (long pr = 2; pr < 10000; pr = pr == 2 ? 3 : pr + 2) {
    Int p2 = Int(pr) * pr;
    while (inside % p2 == 0) {
      inside /= p2;
      square *= pr;
    }
  }
  Int root;
  mpz_sqrt(root.get_mpz_t(), inside.get_mpz_t());
  if (root * root == inside) {
    square *= root;
    inside = 1;
  }
  mult *= Rat(square);
  z = Rat(inside);
}

struct AlgAssign {
  Rat zeta;  // 0 for rational assignments
  std::vector<AlgVal> values;
};

// Resolves the elimination chain to numbers. `seed` assigns the surviving
// free variables (all of them); eliminated variables follow in reverse
// elimination order.
AlgAssign extract(const Staged& st, int nvars, const std::map<int, AlgVal>& seed,
                  const Rat& zeta) {
  AlgAssign out;
  out.zeta = zeta;
  out.values.assign(static_cast<size_t>(nvars), AlgVal{0, 0});
  for (const auto& [v, val] : seed) out.values[static_cast<size_t>(v)] = val;
  for (auto it = st.chain.rbegin(); it != st.chain.rend(); ++it)
    out.values[static_cast<size_t>(it->first)] = alg_eval(it->second, out.values, zeta);
  return out;
}

// Finishes a staged state whose rules have reached fixpoint: case analysis on
// residual quadratics. Rational roots branch; one final irreducible
// univariate quadratic is admitted exactly in Q(sqrt(zeta)).
void finish(Staged st, int nvars, int depth, std::vector<AlgAssign>& out) {
  try {
    st.run();
  } catch (const MathError& err) {
    if (std::string(err.code()) == "Inconsistent") return;  // dead branch
    throw;
  }
  if (depth < 0) throw MathError("UnresolvedBranch", "branch budget exhausted");
  if (st.eqs.empty()) {
    std::vector<int> free = st.free_vars(nvars);
    if (!free.empty()) return;  // underdetermined slice: caller treats as failure
    out.push_back(extract(st, nvars, {}, Rat(0)));
    return;
  }
  // univariate quadratic?
  for (const auto& q : st.eqs) {
    int v = single_var_of(q);
    if (v < 0 || q.degree() != 2) continue;
    Rat a = 0, b = 0, cc = 0;
    for (const auto& [k, val] : q.terms) {
      if (k.first < 0) {
        cc = val;
      } else if (k.second < 0) {
        b = val;
      } else {
        a = val;
      }
    }
    Rat disc = b * b - 4 * a * cc;
    Rat root;
    if (disc >= 0 && rat_is_square(disc, &root)) {
      std::vector<Rat> roots{(-b + root) / (2 * a)};
      if (root != 0) roots.push_back((-b - root) / (2 * a));
      for (const Rat& r : roots) {
        Staged child = st;
        std::vector<QPoly> extra = child.eqs;
        extra.push_back(QPoly::var(v) - QPoly::constant(r));
        child.set_equations(extra);
        finish(std::move(child), nvars, depth - static_cast<int>(roots.size()), out);
      }
      return;
    }
    if (disc < 0) return;  // no real point on this branch
    // irreducible: admissible only as the last constraint, with v the last free
    if (st.eqs.size() != 1 || st.free_vars(nvars) != std::vector<int>{v})
      throw MathError("UnresolvedBranch",
                      "an irrational quadratic appears before the system is univariate");
    Rat mult, zeta;
    split_sqrt(disc, mult, zeta);
    for (int sign : {1, -1}) {
      std::map<int, AlgVal> seed{{v, AlgVal{-b / (2 * a), Rat(sign) * mult / (2 * a)}}};
      out.push_back(extract(st, nvars, seed, zeta));
    }
    return;
  }
  // fully factorable equation: split on a variable dividing every term
  for (const auto& q : st.eqs) {
    int v = factor_var_of(q);
    if (v < 0) continue;
    {
      Staged child = st;
      std::vector<QPoly> extra = child.eqs;
      extra.push_back(QPoly::var(v));
      child.set_equations(extra);
      finish(std::move(child), nvars, depth - 1, out);
    }
    {
      Staged child = st;
      std::vector<QPoly> extra = child.eqs;
      extra.push_back(cofactor(q, v));
      child.set_equations(extra);
      finish(std::move(child), nvars, depth - 1, out);
    }
    return;
  }
  throw MathError("UnresolvedBranch",
                  "residual quadratic system has no univariate or factorable equation");
}

std::vector<AlgVal> sign_image(const std::vector<AlgVal>& vals, const std::vector<int>& masks,
                               int s) {
  std::vector<AlgVal> out = vals;
  for (size_t v = 0; v < vals.size(); ++v) {
    int bits = masks[v] & s;
    int pop = 0;
    while (bits) {
      pop ^= bits & 1;
      bits >>= 1;
    }
    if (pop) out[v] = {-out[v].a, -out[v].b};
  }
  return out;
}

bool alg_less(const std::vector<AlgVal>& x, const std::vector<AlgVal>& y) {
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].a != y[i].a) return x[i].a < y[i].a;
    if (x[i].b != y[i].b) return x[i].b < y[i].b;
  }
  return false;
}

}  // namespace

BracketSolution solve_problem(const BracketProblem& p) {
  Engine& e = *p.engine;
  const int nv = static_cast<int>(p.vars.size());
  const int np = e.num_primaries();

  auto find_var = [&](int i, int j, int k, int mono) {
    for (int v = 0; v < nv; ++v) {
      const VarInfo& vi = p.vars[static_cast<size_t>(v)];
      if (vi.pair_i == i && vi.pair_j == j && vi.k == k && vi.mono == mono) return v;
    }
    throw std::logic_error("pin variable not found");
  };

  bool has_sigma = false;
  for (const auto& vi : p.vars)
    if (vi.pair_i == 0 && vi.pair_j == 0) has_sigma = true;

  int vac = e.basis(0, {0}).front();
  int a0 = find_var(1, 1, 0, vac);

  BracketSolution sol;

  // family dimension before normalization: stage the unpinned system; when
  // the staged rules resolve every equation the family is exactly the
  // surviving free variables
  Staged base;
  base.set_equations(p.equations);
  base.run();
  if (base.eqs.empty()) sol.family_dimension = static_cast<int>(base.free_vars(nv).size());

  std::vector<std::vector<std::pair<int, Rat>>> pinsets;
  if (!has_sigma) {
    pinsets.push_back({{a0, Rat(1)}});
  } else {
    int w2 = e.primary_weight(np);
    int bare2 = e.basis(w2, {np}).front();
    int kappa = find_var(1, 1, w2, bare2);
    int beta = find_var(1, np, w2, bare2);
    pinsets.push_back({{a0, Rat(1)}, {kappa, Rat(1)}});
    pinsets.push_back({{kappa, Rat(1)}, {beta, Rat(1)}});
  }

  std::vector<AlgAssign> found;
  std::vector<std::pair<int, Rat>> used;
  std::string last_error = "no pin set attempted";
  for (const auto& pins : pinsets) {
    try {
      Staged st;
      std::vector<QPoly> work = p.equations;
      for (const auto& [v, val] : pins)
        work.push_back(QPoly::var(v) - QPoly::constant(val));
      st.set_equations(work);
      std::vector<AlgAssign> branch;
      finish(std::move(st), nv, 32, branch);
      if (branch.empty()) {
        last_error = "pin set leaves residual freedom or an empty variety";
        continue;
      }
      found = std::move(branch);
      used = pins;
      break;
    } catch (const MathError& err) {
      last_error = err.what();
    }
  }
  if (found.empty())
    throw MathError("Inconsistent", "no pin set resolved the system: " + last_error);

  if (sol.family_dimension < 0) {
    // the unpinned stage could not be fully resolved without branching; the
    // pinned point is isolated, so the family through it is cut once per pin
    sol.family_dimension = static_cast<int>(used.size());
  }

  for (const auto& [v, val] : used)
    sol.pins_used.push_back(p.vars[static_cast<size_t>(v)].name + " = " + rat_str(val));
  sol.solution_count = static_cast<int>(found.size());

  // canonicalize under the residual sign orbit W_i -> -W_i, restricted to
  // sign choices that keep the pinned values intact
  std::vector<int> masks(static_cast<size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    const VarInfo& vi = p.vars[static_cast<size_t>(v)];
    int tail = e.monomial(vi.mono).tail;
    int mask = 0;
    for (int q = 1; q <= np; ++q) {
      int par = (vi.pair_i == q ? 1 : 0) + (vi.pair_j == q ? 1 : 0) + (tail == q ? 1 : 0);
      if (par & 1) mask |= 1 << (q - 1);
    }
    masks[static_cast<size_t>(v)] = mask;
  }
  const AlgAssign* best_assign = nullptr;
  std::vector<AlgVal> best;
  for (const auto& cand : found) {
    std::vector<AlgVal> local = cand.values;
    for (int s = 1; s < (1 << np); ++s) {
      std::vector<AlgVal> img = sign_image(cand.values, masks, s);
      bool pins_ok = true;
      for (const auto& [v, val] : used)
        if (!(img[static_cast<size_t>(v)] == AlgVal{val, Rat(0)})) pins_ok = false;
      if (pins_ok && alg_less(local, img)) local = std::move(img);
    }
    if (best_assign == nullptr || alg_less(best, local)) {
      best = std::move(local);
      best_assign = &cand;
    }
  }
  sol.zeta = best_assign->zeta;
  sol.values = std::move(best);
  bool any_radical = false;
  for (const auto& v : sol.values)
    if (v.b != 0) any_radical = true;
  if (!any_radical) sol.zeta = 0;
  return sol;
}

int verify_solution(const BracketProblem& p, const BracketSolution& sol) {
  if (sol.values.size() != p.vars.size())
    throw MathError("NonzeroResidual", "assignment length does not match the variable list");
  int count = 0;
  AlgVal zero{0, 0};
  for (size_t i = 0; i < p.equations.size(); ++i) {
    if (!(alg_eval(p.equations[i], sol.values, sol.zeta) == zero))
      throw MathError("NonzeroResidual", "equation " + p.equation_origin[i] + " is violated");
    ++count;
  }
  return count;
}

int verify_solution(const BracketProblem& p, const std::vector<Rat>& values) {
  BracketSolution sol;
  sol.zeta = 0;
  for (const Rat& v : values) sol.values.push_back({v, Rat(0)});
  return verify_solution(p, sol);
}

}  // namespace walg::ope
