#pragma once
// Virasoro module bookkeeping: Verma and vacuum characters, exact linkage
// (which highest weights admit singular vectors mapping onto a given one),
// and decomposition reports that track how a W-algebra character sits over a
// sum of Virasoro modules.

#include "walg/qseries.hpp"
#include "walg/rational.hpp"

#include <string>
#include <vector>

namespace walg::vir {

/// Character of the Verma module M(c, h): q^h prod_{n>=1} 1/(1-q^n),
/// faithful below `order`.
qs::QSeries verma_character(const Rat& h, long order);

/// Character of the vacuum Verma quotient by the L_{-1} null vector:
/// prod_{n>=2} 1/(1-q^n).
qs::QSeries vacuum_character(long order);

/// Linkage: finds the Kac pairs that mark a singular vector in M(c, h).
/// With nu = ((c-13) + sqrt((c-1)(c-25))) / 12, a pair of nonzero integers
/// (r, s), |r|, |s| <= box, is a hit when t = -(r + nu s) satisfies t >= 0
/// and t^2 = (nu+1)^2 - 4 h nu, all evaluated exactly in the quadratic field
/// Q(sqrt((c-1)(c-25))). The singular vector sits at level r*s above h.
/// Throws MathError("RationalNu") when the extension degenerates (nu
/// rational), which callers treat as outside scope here.
struct LinkageHit {
  long r;
  long s;
  Rat h_linked;  // weight of the singular vector, h + r*s
};
struct LinkageReport {
  Rat c;
  Rat h;
  std::vector<LinkageHit> hits;  // ascending (r, s)
};
LinkageReport linkage(const Rat& c, const Rat& h, long box = 24);

/// Walks a character against a growing Verma module tower. Starting from the
/// vacuum character, at each strong-generator weight the deficit between the
/// running tower character and chi spawns that many new Verma summands;
/// generators already accounted for count as absorbed (composite). The walk
/// stops at the first weight where chi drops below the free PBW closure of
/// the spawned generators (a relation / null vector, negative defect) or
/// exceeds the Verma tower (positive defect). A character exceeding even the
/// free closure throws MathError("InconsistentCharacter").
struct TowerEvent {
  int weight;
  long spawned;   // new Verma summands at this weight
  long absorbed;  // generators at this weight explained by existing states
};
struct TowerReport {
  std::vector<int> generator_weights;  // input, ascending
  std::vector<TowerEvent> events;
  std::vector<int> summand_weights;    // weights of spawned Verma summands
  int first_break = -1;                // weight of the first mismatch; -1 if none
  Rat break_defect;                    // negative: chi - closure (a relation); positive: chi - tower (excess)
  int agreement_through = 0;           // all exponents < this matched exactly
};
TowerReport tower_report(const qs::QSeries& chi, const std::vector<int>& generator_weights);

/// Character of the sum vacuum + sum_i M(h_i), exponents relative to the
/// vacuum.
qs::QSeries tower_character(const std::vector<int>& summand_weights, long order);

}  // namespace walg::vir
