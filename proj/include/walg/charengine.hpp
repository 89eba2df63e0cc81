#pragma once
// Normalized character engines. All four engines return series in q with the
// conventional normalization "1 + O(q)": the conformal-weight prefactor is
// stripped, so characters of isomorphic algebras are directly comparable.

#include "walg/grading.hpp"
#include "walg/qseries.hpp"
#include "walg/rootdata.hpp"

namespace walg::chars {

/// Character of the universal W-algebra: one free strong generator of each
/// weight d+1, i.e. prod_d prod_{n > d+1 ... } 1/(1-q^n) with multiplicity.
qs::QSeries universal_character(const grading::WData& w, long order);

/// Boundary-level character at u (gcd conditions apply; u must also exceed
/// every degree for the closed product form to be valid).
/// Throws MathError("InvalidLevel") on violated preconditions.
qs::QSeries boundary_character(const grading::WData& w, long u, long order);

/// Sum over the lattice of q^(u |a|^2 / 2 - (xi, a)), lowest term removed by
/// the caller. Exact; enumerates every point whose exponent is below the
/// normalized order.
qs::QSeries shifted_theta(const roots::LatticeModel& m, const Vec& xi, long u, long order);

/// Near-boundary character for the Sharp cases: boundary factor times the
/// full lattice vertex algebra correction, i.e. the shifted theta together
/// with its rank free bosons prod_n (1-q^(u n))^-rank, normalized to lead 1.
qs::QSeries near_boundary_character(const grading::WData& w, long u, long order);

/// Principal W-algebra character at level -h_vee + p/u via the signed Weyl
/// sum over the coroot lattice divided by eta-type factors. Requires
/// gcd(p, u) = 1, p >= h_vee, gcd(u, lacety) = 1, and a rank <= 4 algebra.
/// Normalization is checked: throws MathError("NormalizationFailure") if the
/// lowest term is not +1 * q^(expected minimum).
qs::QSeries principal_character(roots::Algebra a, long p, long u, long order);

}  // namespace walg::chars
