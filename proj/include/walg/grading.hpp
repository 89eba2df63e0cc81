#pragma once
// Registry of the graded nilpotent data behind each W-algebra considered
// here: principal cases for A1, G2, B3, F4 and the subregular-style cases
// E7(a1), E8(a1), together with the central charge formula.

#include "walg/rational.hpp"
#include "walg/rootdata.hpp"

#include <string>
#include <vector>

namespace walg::grading {

enum class OrbitClass { Principal, Sharp };  // Sharp = the (a1) cases

struct WData {
  std::string label;            // "G2", "B3", "F4", "A1", "E7(a1)", "E8(a1)"
  roots::Algebra algebra;
  OrbitClass orbit;
  std::vector<int> degrees;     // centralizer exponents d_1 <= ... <= d_r
  std::vector<int> weight_marks;  // per simple root: degree of the root space (0 or 1)
  int dim_g;                    // dim of the ambient simple Lie algebra
  int dim_g0;                   // dim of the degree-0 part
  Vec xi_ambient;               // grading vector in ambient coordinates (Sharp cases)
};

const WData& w_data(const std::string& label);
std::vector<std::string> w_labels();

/// dim g_j for j >= 1 equals the number of degrees >= j.
int dim_gj(const WData& w, int j);

/// Strong generator conformal weights d_i + 1, ascending.
std::vector<int> generator_weights(const WData& w);

/// x in simple-root coordinates: the unique solution of (x, alpha_i) =
/// weight_marks[i].
Vec grading_element(const WData& w);

/// Central charge of the level k = -h_vee + p/u algebra. Requires p, u >= 1
/// coprime; throws MathError("InvalidLevel") otherwise.
Rat central_charge(const WData& w, long p, long u);

/// |rho-bar|^2, (rho-bar, x), |x|^2 under the normalized form; exposed for
/// cross-checks.
struct GradingNorms {
  Rat rho2;
  Rat rho_x;
  Rat x2;
};
GradingNorms grading_norms(const WData& w);

}  // namespace walg::grading
