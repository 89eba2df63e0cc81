#pragma once
// Small dense exact linear algebra over Q. Matrices are row-major vectors of
// rows; everything is sized for ranks <= 8, so no attention is paid to
// asymptotics beyond cubic elimination.

#include "walg/rational.hpp"

#include <vector>

namespace walg {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_apply(const Mat& a, const Vec& x);
Mat mat_transpose(const Mat& a);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_scale(const Mat& a, const Rat& c);
bool mat_eq(const Mat& a, const Mat& b);

/// Solves a x = b by Gaussian elimination. Throws MathError("SingularMatrix").
Vec mat_solve(const Mat& a, const Vec& b);
Mat mat_inverse(const Mat& a);
Rat mat_det(const Mat& a);

Rat dot(const Vec& x, const Vec& y);
/// x^T G y.
Rat form_ip(const Mat& g, const Vec& x, const Vec& y);

/// G = L D L^T with L unit lower triangular. Throws
/// MathError("NotPositiveDefinite") when some pivot is <= 0.
struct LdlResult {
  Mat l;
  Vec d;
};
LdlResult ldl_decompose(const Mat& g);

}  // namespace walg
