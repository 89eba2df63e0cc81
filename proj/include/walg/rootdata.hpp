#pragma once
// Finite root system data: Gram matrices of simple roots under the normalized
// invariant form (long roots have squared length 2), reflection generators,
// Weyl groups by closure, and exact shifted-lattice point enumeration.

#include "walg/linalg.hpp"
#include "walg/rational.hpp"

#include <string>
#include <vector>

namespace walg::roots {

enum class Algebra { A1, G2, B3, F4, E7, E8 };

std::string algebra_name(Algebra a);
Algebra algebra_from_name(const std::string& name);

struct RootSystem {
  Algebra algebra;
  int rank;
  Mat gram;               // (alpha_i, alpha_j), normalized form
  int dual_coxeter;       // h-vee
  int lacety;             // squared long/short length ratio (1, 2 or 3)
  Vec weyl_vector;        // rho-bar in simple-root coordinates
  std::vector<long> coroot_scaling;  // c_i with Q-vee = span_Z { c_i alpha_i }
  // Ambient realization, only populated for E7/E8: rows are simple roots in
  // R^8 with the standard dot product.
  Mat simple_roots_ambient;
};

const RootSystem& root_system(Algebra a);

/// Simple reflections as matrices acting on simple-root coordinate columns.
std::vector<Mat> reflection_generators(Algebra a);

/// Full Weyl group with determinant signs. Elements are integer matrices on
/// simple-root coordinates, generated by closure under the reflections, and
/// cached on disk (directory override: WALG_CACHE_DIR). Supported for ranks
/// <= 4; throws MathError("UnsupportedWeylGroup") for E7/E8.
struct WeylGroup {
  std::vector<Mat> elements;
  std::vector<int> signs;  // det, +1 or -1
};
const WeylGroup& weyl_group(Algebra a);

struct SignedWeight {
  Vec coords;
  int sign;
};
/// Orbit { (w(mu), det w) } of a weight in simple-root coordinates. Requires
/// the orbit to be free (regular weight); throws MathError("NonRegularWeight")
/// if two group elements collide on mu.
std::vector<SignedWeight> weyl_orbit_signed(Algebra a, const Vec& mu);

// ---------------------------------------------------------------------------
// Lattices.

enum class LatticeKind { RootE8, RootE7, CorootA1, CorootG2, CorootB3, CorootF4 };

struct LatticeModel {
  LatticeKind kind;
  int dim;          // basis size
  int ambient_dim;  // coordinate dimension the form lives on
  Mat basis;        // rows: basis vectors in ambient coordinates
  Mat form;         // bilinear form on ambient coordinates
  Mat gram;         // basis Gram matrix (= basis * form * basis^T)
};

const LatticeModel& lattice_model(LatticeKind k);

struct LatticePoint {
  std::vector<long> coords;  // integer coordinates on the basis
  Vec ambient;               // same point in ambient coordinates
  Rat dist2;                 // |point - center|^2 under the form
};

/// All lattice points v with |v - center|^2 <= max_norm, exactly. The center
/// is given in ambient coordinates and need not lie in the lattice's span;
/// the off-span component is handled by shrinking the budget. Enumeration is
/// by exact LDL^T branch and bound; no floating point.
std::vector<LatticePoint> enumerate_shifted(const LatticeModel& m, const Vec& center, const Rat& max_norm);

/// Membership test on doubled ambient coordinates (so half-integer vectors
/// stay integral). Only for RootE8 / RootE7.
bool lattice_contains_doubled(LatticeKind k, const std::vector<long>& doubled);

}  // namespace walg::roots
