#pragma once
// Exact lambda-bracket calculus for vertex algebras strongly generated by a
// Virasoro field L and finitely many Virasoro primaries, where the primary
// products carry polynomial unknowns. Provides the mode-product engine
// (normally ordered PBW states, straightening, iterate/commutator recursions),
// skew-symmetry images, Jacobi residual generation, and the drivers that pose
// and check the bracket systems for the algebras studied here.
//
// Everything is weight-homogeneous and truncated at a weight bound fixed per
// engine; no state of larger conformal weight is ever materialized, which is
// what keeps the calculation inside the finitely many PBW coefficients.

#include "walg/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace walg::ope {

// ---------------------------------------------------------------------------
// Polynomials of degree <= 2 in unknowns x_0, x_1, ...
// Term keys: (-1,-1) constant, (i,-1) linear, (i,j) with i <= j quadratic.

struct QPoly {
  std::map<std::pair<int, int>, Rat> terms;

  static QPoly constant(const Rat& r);
  static QPoly var(int i);

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  const Rat& constant_value() const;  // 0 if empty; requires is_constant()
  int degree() const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const Rat& r);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const Rat& r) { return a *= r; }
  bool operator==(const QPoly& o) const { return terms == o.terms; }

  /// Product; throws MathError("DegreeOverflow") above degree 2.
  friend QPoly mul(const QPoly& a, const QPoly& b);

  /// Substitutes affine expressions for variables (missing ids stay).
  QPoly substituted(const std::map<int, QPoly>& affine) const;

  /// Numeric evaluation with every variable assigned.
  Rat eval(const std::vector<Rat>& values) const;

  std::string str(const std::vector<std::string>& names) const;
};

// ---------------------------------------------------------------------------
// PBW states. A monomial is L_{-m_1} ... L_{-m_k} tail with m_1 >= ... >= m_k,
// tail 0 meaning the vacuum (then all m_i >= 2) and tail i >= 1 the i-th
// primary (then m_i >= 1). A state maps interned monomial ids to coefficients.

struct Monomial {
  std::vector<int> modes;
  int tail = 0;
  auto operator<=>(const Monomial&) const = default;
};

using State = std::map<int, QPoly>;

State state_add(const State& a, const State& b);
State state_scale(const State& a, const Rat& r);
State state_mulpoly(const State& a, const QPoly& p);

class Engine {
 public:
  /// central_charge may contain unknowns only through its rational value; the
  /// primaries are given by their conformal weights (index i+1 is primary i).
  Engine(Rat central_charge, std::vector<int> primary_weights, int weight_bound);

  int intern(const Monomial& m);
  const Monomial& monomial(int id) const;
  int weight(int id) const;
  int weight(const State& s) const;  // common weight; -1 for empty
  std::string monomial_str(int id) const;
  std::string state_str(const State& s, const std::vector<std::string>& names) const;

  int num_primaries() const { return static_cast<int>(primary_weights_.size()); }
  int primary_weight(int i) const { return primary_weights_[static_cast<size_t>(i - 1)]; }
  const Rat& central_charge() const { return c_; }
  int weight_bound() const { return weight_bound_; }

  /// All PBW monomials of the given weight, canonically ordered.
  std::vector<int> basis(int weight_value);
  /// Same, restricted to the listed tails.
  std::vector<int> basis(int weight_value, const std::vector<int>& tails);

  /// Registers the unknown-laden products W_i (n) W_j for all n >= 0 (entries
  /// beyond the vector are zero). Required before any product touching the
  /// pair; the reversed pair is derived via skew symmetry on demand.
  void set_pair_table(int i, int j, std::vector<State> products);
  const std::vector<State>& pair_table(int i, int j) const;

  /// Registers the rewrite W_i (-1) W_i -> sigma used when the square of a
  /// primary reenters the module span.
  void set_creation_rewrite(int i, State sigma);
  bool has_creation_rewrite(int i) const;
  const State& creation_rewrite(int i) const;

  // Core exact operations. Results always have weight <= weight_bound;
  // out-of-range creations throw MathError("OutOfModule").
  State apply_L(int k, const State& s);        // L_{-k} s, straightened
  State apply_T(const State& s);               // translation
  State apply_T_divided(const State& s, int r);  // T^r / r!
  State gen_product(int g, long n, int mono);  // g: 0 = L, i >= 1 = primary
  State mono_product(int mono_a, long n, int mono_b);
  State nth_product(const State& a, long n, const State& b);

  /// Given products P_n = a_(n) b for n = 0..len-1 (zero beyond), returns the
  /// skew images b_(n) a = sum_j (-1)^(n+j+1) T^j/j! P_(n+j).
  std::vector<State> skew_images(const std::vector<State>& products);

 private:
  State gen_product_uncached(int g, long n, int mono);
  State mono_product_uncached(int mono_a, long n, int mono_b);
  State apply_L_mono(int k, int mono);
  int gen_mono(int g);                             // bare state of a generator
  std::map<int, State> small_products_on_L(int g);  // g_(j) L for the few nonzero j
  const std::vector<State>& products(int i, int j);  // derives i > j by skew

  Rat c_;
  std::vector<int> primary_weights_;
  int weight_bound_;
  std::vector<Monomial> pool_;
  std::map<Monomial, int> ids_;
  std::map<std::pair<int, int>, std::vector<State>> tables_;
  std::map<std::pair<int, int>, std::vector<State>> skew_tables_;
  std::map<int, State> rewrites_;
  std::map<std::tuple<int, long, int>, State> gen_cache_;
  std::map<std::tuple<int, long, int>, State> mono_cache_;
  std::map<std::pair<int, int>, State> applyl_cache_;
};

// ---------------------------------------------------------------------------
// Jacobi residuals.

/// Generator-triple Jacobi residuals: for generators ga, gb, gc (0 = L), all
/// divided coefficients (n, m) whose result weight lies in [0, bound]:
///   ga_(n) (gb_(m) gc) - gb_(m) (ga_(n) gc)
///     - sum_{k <= n} C(n, k) (ga_(k) gb)_(n+m-k) gc.
/// Each residual state contributes one equation per monomial.
std::vector<QPoly> jacobi_equations(Engine& e, int ga, int gb, int gc);

/// Skew-symmetry equations for the pair (i, i): table minus its skew image.
std::vector<QPoly> skew_equations(Engine& e, int i);

// ---------------------------------------------------------------------------
// Solver for the resulting rational polynomial systems (degree <= 2).

struct SolveOptions {
  int max_branches = 16;
};

struct SolveResult {
  // Fully determined rational solutions (deduplicated, deterministic order).
  std::vector<std::vector<Rat>> solutions;
  // When the system is affinely underdetermined: every variable as an affine
  // polynomial in the free variables, and the free variable ids.
  bool underdetermined = false;
  std::map<int, QPoly> general;
  std::vector<int> free_vars;
};

/// Solves { eqs = 0, pins } exactly. Linear equations are eliminated by
/// fixpoint with deterministic pivoting; residual quadratics are resolved by
/// branching on single-variable quadratics or binomial products. Throws
/// MathError("UnresolvedBranch") when the residual system is out of reach.
SolveResult solve_system(const std::vector<QPoly>& eqs, int nvars,
                         const std::vector<std::pair<int, Rat>>& pins,
                         const SolveOptions& opt = {});

// ---------------------------------------------------------------------------
// Problem drivers.

struct VarInfo {
  std::string name;
  int pair_i = 0, pair_j = 0;  // bracket the unknown belongs to; 0,0 = sigma
  int k = 0;                   // plain-power index: coefficient of lambda^(K-k)
  int mono = -1;               // monomial id inside the engine
};

struct BracketProblem {
  std::shared_ptr<Engine> engine;
  std::vector<VarInfo> vars;
  std::vector<QPoly> equations;
  std::vector<std::string> equation_origin;  // parallel to equations
  int weight_bound = 0;
};

/// Ansatz generator: a Virasoro field plus primaries of the given weights,
/// with full unknown tables for every pair i <= j, an optional creation
/// rewrite for the first primary, and all skew + Jacobi equations, plus the
/// compatibility of the rewrite with the Virasoro action when present.
BracketProblem build_problem(const Rat& c, const std::vector<int>& primary_weights,
                             bool with_square_rewrite, int weight_bound);

/// Exact element a + b*sqrt(zeta) of a real quadratic extension; the zeta is
/// shared across a solution (zeta = 0 means every value is plain rational).
struct AlgVal {
  Rat a, b;
  bool operator==(const AlgVal&) const = default;
};

struct BracketSolution {
  Rat zeta;                             // 0 when the solution is rational
  std::vector<AlgVal> values;           // one per problem var
  int solution_count = 0;               // solver branches surviving the pins
  std::vector<std::string> pins_used;   // human-readable pin description
  int family_dimension = -1;            // unpinned solution family dim, if probed
};

/// Pins down the scaling freedom and solves by staged exact elimination:
/// affine equations first, then variables that occur only linearly, then case
/// analysis on the residual quadratics. A final irreducible univariate
/// quadratic is resolved exactly in Q(sqrt(zeta)). Tries the canonical pin
/// sets in order; returns the first that yields solutions, canonicalized
/// under the residual sign orbit (primary -> -primary).
BracketSolution solve_problem(const BracketProblem& p);

/// Re-expands every equation at the assignment (exactly, in Q(sqrt(zeta)))
/// and checks it is zero; returns the number of equations checked. Throws
/// MathError("NonzeroResidual") with the offending origin otherwise.
int verify_solution(const BracketProblem& p, const BracketSolution& sol);

/// Rational-assignment convenience overload.
int verify_solution(const BracketProblem& p, const std::vector<Rat>& values);

}  // namespace walg::ope
