#include "walg/linalg.hpp"

namespace walg {

Mat mat_identity(int n) {
  Mat m(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  int n = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int m = static_cast<int>(b.empty() ? 0 : b[0].size());
  Mat r(n, Vec(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

Vec mat_apply(const Mat& a, const Vec& x) {
  Vec r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
  return r;
}

Mat mat_transpose(const Mat& a) {
  if (a.empty()) return a;
  Mat r(a[0].size(), Vec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

Mat mat_add(const Mat& a, const Mat& b) {
  Mat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[i][j] += b[i][j];
  return r;
}

Mat mat_scale(const Mat& a, const Rat& c) {
  Mat r = a;
  for (auto& row : r)
    for (auto& x : row) x *= c;
  return r;
}

bool mat_eq(const Mat& a, const Mat& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j]) return false;
  }
  return true;
}

namespace {

// Row-reduces [a | rhs] in place; returns false if a is singular.
bool eliminate(Mat& a, Mat& rhs) {
  int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    Rat inv = Rat(1) / a[col][col];
    for (int j = 0; j < n; ++j) a[col][j] *= inv;
    for (auto& x : rhs[col]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int j = 0; j < n; ++j) a[r][j] -= f * a[col][j];
      for (size_t j = 0; j < rhs[r].size(); ++j) rhs[r][j] -= f * rhs[col][j];
    }
  }
  return true;
}

}  // namespace

Vec mat_solve(const Mat& a, const Vec& b) {
  Mat acopy = a;
  Mat rhs(b.size());
  for (size_t i = 0; i < b.size(); ++i) rhs[i] = {b[i]};
  if (!eliminate(acopy, rhs)) throw MathError("SingularMatrix", "mat_solve on singular matrix");
  Vec x(b.size());
  for (size_t i = 0; i < b.size(); ++i) x[i] = rhs[i][0];
  return x;
}

Mat mat_inverse(const Mat& a) {
  Mat acopy = a;
  Mat rhs = mat_identity(static_cast<int>(a.size()));
  if (!eliminate(acopy, rhs)) throw MathError("SingularMatrix", "mat_inverse on singular matrix");
  return rhs;
}

Rat mat_det(const Mat& a) {
  Mat m = a;
  int n = static_cast<int>(m.size());
  Rat det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rat inv = Rat(1) / m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] * inv;
      for (int j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

Rat dot(const Vec& x, const Vec& y) {
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Rat form_ip(const Mat& g, const Vec& x, const Vec& y) {
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j) s += x[i] * g[i][j] * y[j];
  }
  return s;
}

LdlResult ldl_decompose(const Mat& g) {
  int n = static_cast<int>(g.size());
  Mat l = mat_identity(n);
  Vec d(n, 0);
  for (int j = 0; j < n; ++j) {
    Rat dj = g[j][j];
    for (int k = 0; k < j; ++k) dj -= l[j][k] * l[j][k] * d[k];
    if (dj <= 0) throw MathError("NotPositiveDefinite", "LDL^T pivot <= 0 at index " + std::to_string(j));
    d[j] = dj;
    for (int i = j + 1; i < n; ++i) {
      Rat v = g[i][j];
      for (int k = 0; k < j; ++k) v -= l[i][k] * l[j][k] * d[k];
      l[i][j] = v / dj;
    }
  }
  return {l, d};
}

}  // namespace walg
