#include "walg/rootdata.hpp"

#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace walg::roots {

std::string algebra_name(Algebra a) {
  switch (a) {
    case Algebra::A1: return "A1";
    case Algebra::G2: return "G2";
    case Algebra::B3: return "B3";
    case Algebra::F4: return "F4";
    case Algebra::E7: return "E7";
    case Algebra::E8: return "E8";
  }
  throw MathError("UnknownAlgebra", "bad enum value");
}

Algebra algebra_from_name(const std::string& name) {
  for (Algebra a : {Algebra::A1, Algebra::G2, Algebra::B3, Algebra::F4, Algebra::E7, Algebra::E8})
    if (algebra_name(a) == name) return a;
  throw MathError("UnknownAlgebra", "no root system named '" + name + "'");
}

namespace {

Mat ambient_e8() {
  Mat rows = {
      {1, -1, 0, 0, 0, 0, 0, 0},
      {0, 1, -1, 0, 0, 0, 0, 0},
      {0, 0, 1, -1, 0, 0, 0, 0},
      {0, 0, 0, 1, -1, 0, 0, 0},
      {0, 0, 0, 0, 1, -1, 0, 0},
      {0, 0, 0, 0, 0, 1, -1, 0},
      {0, 0, 0, 0, 0, 1, 1, 0},
      Vec(8, rat(-1, 2)),
  };
  return rows;
}

Mat ambient_e7() {
  Mat rows = {
      {0, 1, -1, 0, 0, 0, 0, 0},
      {0, 0, 0, 1, -1, 0, 0, 0},
      {0, 0, 0, 0, 1, -1, 0, 0},
      {rat(1, 2), rat(-1, 2), rat(1, 2), rat(-1, 2), rat(-1, 2), rat(1, 2), rat(-1, 2), rat(1, 2)},
      {rat(1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2), rat(1, 2), rat(1, 2), rat(1, 2), rat(-1, 2)},
      {rat(-1, 2), rat(1, 2), rat(1, 2), rat(-1, 2), rat(-1, 2), rat(1, 2), rat(1, 2), rat(-1, 2)},
      {rat(-1, 2), rat(-1, 2), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2), rat(-1, 2), rat(-1, 2)},
  };
  return rows;
}

Mat gram_from_ambient(const Mat& rows) {
  int n = static_cast<int>(rows.size());
  Mat g(n, Vec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = dot(rows[i], rows[j]);
  return g;
}

Vec weyl_vector_from_gram(const Mat& gram) {
  // (rho, alpha_i) = |alpha_i|^2 / 2 for every simple root.
  Vec rhs(gram.size());
  for (size_t i = 0; i < gram.size(); ++i) rhs[i] = gram[i][i] / 2;
  return mat_solve(gram, rhs);
}

RootSystem make_system(Algebra a) {
  RootSystem s;
  s.algebra = a;
  switch (a) {
    case Algebra::A1:
      s.rank = 1;
      s.gram = {{2}};
      s.dual_coxeter = 2;
      s.lacety = 1;
      s.coroot_scaling = {1};
      break;
    case Algebra::G2:
      s.rank = 2;
      s.gram = {{rat(2, 3), -1}, {-1, 2}};
      s.dual_coxeter = 4;
      s.lacety = 3;
      s.coroot_scaling = {3, 1};
      break;
    case Algebra::B3:
      s.rank = 3;
      s.gram = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
      s.dual_coxeter = 5;
      s.lacety = 2;
      s.coroot_scaling = {1, 1, 2};
      break;
    case Algebra::F4:
      s.rank = 4;
      s.gram = {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 1, rat(-1, 2)}, {0, 0, rat(-1, 2), 1}};
      s.dual_coxeter = 9;
      s.lacety = 2;
      s.coroot_scaling = {1, 1, 2, 2};
      break;
    case Algebra::E7:
      s.rank = 7;
      s.simple_roots_ambient = ambient_e7();
      s.gram = gram_from_ambient(s.simple_roots_ambient);
      s.dual_coxeter = 18;
      s.lacety = 1;
      s.coroot_scaling = std::vector<long>(7, 1);
      break;
    case Algebra::E8:
      s.rank = 8;
      s.simple_roots_ambient = ambient_e8();
      s.gram = gram_from_ambient(s.simple_roots_ambient);
      s.dual_coxeter = 30;
      s.lacety = 1;
      s.coroot_scaling = std::vector<long>(8, 1);
      break;
  }
  s.weyl_vector = weyl_vector_from_gram(s.gram);
  return s;
}

}  // namespace

const RootSystem& root_system(Algebra a) {
  static std::map<Algebra, RootSystem> cache;
  auto it = cache.find(a);
  if (it == cache.end()) it = cache.emplace(a, make_system(a)).first;
  return it->second;
}

std::vector<Mat> reflection_generators(Algebra a) {
  const RootSystem& s = root_system(a);
  std::vector<Mat> gens;
  for (int i = 0; i < s.rank; ++i) {
    // r_i(x) = x - 2 (x, alpha_i)/(alpha_i, alpha_i) alpha_i, on coordinates:
    // R = I - (2 / M_ii) e_i e_i^T M.
    Mat r = mat_identity(s.rank);
    Rat f = Rat(2) / s.gram[i][i];
    for (int j = 0; j < s.rank; ++j) r[i][j] -= f * s.gram[i][j];
    gens.push_back(r);
  }
  return gens;
}

namespace {

long expected_weyl_order(Algebra a) {
  switch (a) {
    case Algebra::A1: return 2;
    case Algebra::G2: return 12;
    case Algebra::B3: return 48;
    case Algebra::F4: return 1152;
    default: return -1;
  }
}

std::filesystem::path cache_dir() {
  if (const char* env = std::getenv("WALG_CACHE_DIR")) return env;
  if (const char* home = std::getenv("HOME")) return std::filesystem::path(home) / ".cache" / "walg";
  return std::filesystem::temp_directory_path() / "walg-cache";
}

constexpr const char* kCacheMagic = "walgweyl 1";

bool load_cached_group(const std::filesystem::path& file, int rank, long expected, WeylGroup* out) {
  std::ifstream in(file);
  if (!in) return false;
  std::string magic;
  std::getline(in, magic);
  if (magic != kCacheMagic) return false;
  long count = 0;
  in >> count;
  if (count != expected) return false;
  out->elements.assign(count, Mat(rank, Vec(rank)));
  out->signs.assign(count, 0);
  for (long e = 0; e < count; ++e) {
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) {
        long v;
        if (!(in >> v)) return false;
        out->elements[e][i][j] = v;
      }
    if (!(in >> out->signs[e])) return false;
    if (out->signs[e] != 1 && out->signs[e] != -1) return false;
  }
  return true;
}

void store_cached_group(const std::filesystem::path& file, const WeylGroup& g) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) return;  // cache is best effort
  std::ofstream out(file);
  if (!out) return;
  out << kCacheMagic << "\n" << g.elements.size() << "\n";
  for (size_t e = 0; e < g.elements.size(); ++e) {
    for (const auto& row : g.elements[e])
      for (const auto& v : row) out << v << " ";
    out << g.signs[e] << "\n";
  }
}

WeylGroup compute_weyl_group(Algebra a) {
  const RootSystem& s = root_system(a);
  auto gens = reflection_generators(a);
  WeylGroup g;
  std::map<Mat, int> seen;
  std::deque<int> queue;
  Mat id = mat_identity(s.rank);
  seen.emplace(id, 0);
  g.elements.push_back(id);
  g.signs.push_back(1);
  queue.push_back(0);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const auto& r : gens) {
      Mat next = mat_mul(r, g.elements[cur]);
      if (seen.emplace(next, static_cast<int>(g.elements.size())).second) {
        g.elements.push_back(next);
        g.signs.push_back(-g.signs[cur]);
        queue.push_back(static_cast<int>(g.elements.size()) - 1);
      }
    }
  }
  return g;
}

}  // namespace

const WeylGroup& weyl_group(Algebra a) {
  long expected = expected_weyl_order(a);
  if (expected < 0)
    throw MathError("UnsupportedWeylGroup",
                    "Weyl group of " + algebra_name(a) + " is not materialized here");
  static std::map<Algebra, WeylGroup> groups;
  auto it = groups.find(a);
  if (it != groups.end()) return it->second;

  const RootSystem& s = root_system(a);
  std::filesystem::path file = cache_dir() / ("weyl-" + algebra_name(a) + ".txt");
  WeylGroup g;
  if (!load_cached_group(file, s.rank, expected, &g)) {
    g = compute_weyl_group(a);
    if (static_cast<long>(g.elements.size()) != expected)
      throw MathError("WeylClosureFailure",
                      algebra_name(a) + " closure produced " + std::to_string(g.elements.size()) +
                          " elements, expected " + std::to_string(expected));
    store_cached_group(file, g);
  }
  return groups.emplace(a, std::move(g)).first->second;
}

std::vector<SignedWeight> weyl_orbit_signed(Algebra a, const Vec& mu) {
  const WeylGroup& g = weyl_group(a);
  std::vector<SignedWeight> orbit;
  std::map<Vec, int> seen;
  for (size_t e = 0; e < g.elements.size(); ++e) {
    Vec img = mat_apply(g.elements[e], mu);
    if (!seen.emplace(img, 1).second)
      throw MathError("NonRegularWeight", "weight has a nontrivial stabilizer in " + algebra_name(a));
    orbit.push_back({std::move(img), g.signs[e]});
  }
  return orbit;
}

// ---------------------------------------------------------------------------

namespace {

LatticeModel make_lattice(LatticeKind k) {
  LatticeModel m;
  m.kind = k;
  auto coroot = [&](Algebra a) {
    const RootSystem& s = root_system(a);
    m.dim = s.rank;
    m.ambient_dim = s.rank;
    m.form = s.gram;
    m.basis = Mat(s.rank, Vec(s.rank, 0));
    for (int i = 0; i < s.rank; ++i) m.basis[i][i] = s.coroot_scaling[static_cast<size_t>(i)];
  };
  switch (k) {
    case LatticeKind::RootE8:
      m.dim = 8;
      m.ambient_dim = 8;
      m.basis = root_system(Algebra::E8).simple_roots_ambient;
      m.form = mat_identity(8);
      break;
    case LatticeKind::RootE7:
      m.dim = 7;
      m.ambient_dim = 8;
      m.basis = root_system(Algebra::E7).simple_roots_ambient;
      m.form = mat_identity(8);
      break;
    case LatticeKind::CorootA1: coroot(Algebra::A1); break;
    case LatticeKind::CorootG2: coroot(Algebra::G2); break;
    case LatticeKind::CorootB3: coroot(Algebra::B3); break;
    case LatticeKind::CorootF4: coroot(Algebra::F4); break;
  }
  Mat bf = mat_mul(m.basis, m.form);
  m.gram = mat_mul(bf, mat_transpose(m.basis));
  return m;
}

}  // namespace

const LatticeModel& lattice_model(LatticeKind k) {
  static std::map<LatticeKind, LatticeModel> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, make_lattice(k)).first;
  return it->second;
}

std::vector<LatticePoint> enumerate_shifted(const LatticeModel& m, const Vec& center, const Rat& max_norm) {
  const int n = m.dim;
  // Project the center onto the lattice span: z solves G z = basis . form . center.
  Vec w(n, 0);
  for (int i = 0; i < n; ++i) w[i] = form_ip(m.form, m.basis[static_cast<size_t>(i)], center);
  Vec z = mat_solve(m.gram, w);
  Rat center2 = form_ip(m.form, center, center);
  Rat rho0 = center2 - form_ip(m.gram, z, z);
  // rho0 = |off-span component|^2 >= 0; every lattice point pays it.
  Rat budget = max_norm - rho0;
  std::vector<LatticePoint> out;
  if (budget < 0) return out;

  LdlResult ldl = ldl_decompose(m.gram);
  std::vector<long> x(static_cast<size_t>(n), 0);

  // Level i fixes x_i given x_{i+1..n-1}; form value so far is `used`.
  auto rec = [&](auto&& self, int i, const Rat& remaining) -> void {
    if (i < 0) {
      LatticePoint p;
      p.coords.assign(x.begin(), x.end());
      p.ambient.assign(static_cast<size_t>(m.ambient_dim), 0);
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < m.ambient_dim; ++c)
          p.ambient[static_cast<size_t>(c)] +=
              Rat(x[static_cast<size_t>(b)]) * m.basis[static_cast<size_t>(b)][static_cast<size_t>(c)];
      Vec diff = p.ambient;
      for (int c = 0; c < m.ambient_dim; ++c) diff[static_cast<size_t>(c)] -= center[static_cast<size_t>(c)];
      p.dist2 = form_ip(m.form, diff, diff);
      out.push_back(std::move(p));
      return;
    }
    // Offset from the already-fixed higher coordinates.
    Rat t = 0;
    for (int j = i + 1; j < n; ++j)
      t += ldl.l[static_cast<size_t>(j)][static_cast<size_t>(i)] * (Rat(x[static_cast<size_t>(j)]) - z[static_cast<size_t>(j)]);
    Rat centerpt = z[static_cast<size_t>(i)] - t;
    const Rat& d = ldl.d[static_cast<size_t>(i)];
    long start = static_cast<long>(rat_floor(centerpt).get_si());
    for (long v = start;; --v) {  // downward scan
      Rat y = Rat(v) - centerpt;
      Rat cost = d * y * y;
      if (cost > remaining) break;
      x[static_cast<size_t>(i)] = v;
      self(self, i - 1, remaining - cost);
    }
    for (long v = start + 1;; ++v) {  // upward scan
      Rat y = Rat(v) - centerpt;
      Rat cost = d * y * y;
      if (cost > remaining) break;
      x[static_cast<size_t>(i)] = v;
      self(self, i - 1, remaining - cost);
    }
  };
  rec(rec, n - 1, budget);
  return out;
}

bool lattice_contains_doubled(LatticeKind k, const std::vector<long>& doubled) {
  if (k != LatticeKind::RootE8 && k != LatticeKind::RootE7)
    throw MathError("UnsupportedLattice", "doubled membership is defined for the ambient E-models only");
  if (doubled.size() != 8) return false;
  long parity = ((doubled[0] % 2) + 2) % 2;
  long sum = 0;
  for (long v : doubled) {
    if ((((v % 2) + 2) % 2) != parity) return false;
    sum += v;
  }
  if (((sum % 4) + 4) % 4 != 0) return false;
  if (k == LatticeKind::RootE7 && sum != 0) return false;
  return true;
}

}  // namespace walg::roots
