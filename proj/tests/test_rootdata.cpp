#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "walg/rootdata.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

using namespace walg;
using namespace walg::roots;

namespace {

Mat mat_of(std::vector<std::vector<long>> rows) {
  Mat m;
  for (auto& r : rows) {
    Vec v;
    for (long x : r) v.push_back(Rat(x));
    m.push_back(v);
  }
  return m;
}

// brute-force shell of doubled-coordinate vectors of E8 (integers all even or
// all odd, coordinate sum divisible by 4) with |v|^2 <= max_norm
std::set<std::vector<long>> e8_doubled_brute(long max_norm) {
  std::set<std::vector<long>> out;
  std::vector<long> d(8);
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<long> vals;
    for (long v = -12 + parity; v <= 12; v += 2)
      if (v * v <= 4 * max_norm) vals.push_back(v);
    size_t n = vals.size();
    std::vector<size_t> idx(8, 0);
    while (true) {
      long norm4 = 0, sum = 0;
      for (int i = 0; i < 8; ++i) {
        d[static_cast<size_t>(i)] = vals[idx[static_cast<size_t>(i)]];
        norm4 += d[static_cast<size_t>(i)] * d[static_cast<size_t>(i)];
        sum += d[static_cast<size_t>(i)];
      }
      if (norm4 <= 4 * max_norm && sum % 4 == 0) out.insert(d);
      int pos = 7;
      while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == n) idx[static_cast<size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

std::vector<long> doubled_of(const Vec& ambient) {
  std::vector<long> d;
  for (const Rat& x : ambient) {
    Rat two = x * 2;
    REQUIRE(two.get_den() == 1);
    d.push_back(two.get_num().get_si());
  }
  return d;
}

}  // namespace

TEST_CASE("disk cache honors the env override and rejects mismatched files") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "walg-test-cache";
  fs::remove_all(dir);
  setenv("WALG_CACHE_DIR", dir.c_str(), 1);

  const WeylGroup& g2 = weyl_group(Algebra::G2);
  CHECK(g2.elements.size() == 12);
  fs::path g2file = dir / "weyl-G2.txt";
  REQUIRE(fs::exists(g2file));

  // a cached file of the wrong rank/order must be ignored, not trusted
  fs::copy_file(g2file, dir / "weyl-F4.txt", fs::copy_options::overwrite_existing);
  const WeylGroup& f4 = weyl_group(Algebra::F4);
  CHECK(f4.elements.size() == 1152);

  // the store format round-trips: magic, count, then per element 16 matrix
  // entries and a sign
  std::ifstream in(dir / "weyl-F4.txt");
  std::string magic, version;
  size_t count = 0;
  bool header_ok = static_cast<bool>(in >> magic >> version >> count);
  REQUIRE(header_ok);
  CHECK(magic == "walgweyl");
  CHECK(count == 1152);
  size_t parsed = 0;
  long x = 0;
  std::vector<long> row;
  while (in >> x) row.push_back(x);
  CHECK(row.size() == count * 17);
  for (size_t e = 0; e < count; ++e) {
    long sign = row[e * 17 + 16];
    CHECK((sign == 1 || sign == -1));
    ++parsed;
  }
  CHECK(parsed == count);
}

TEST_CASE("Weyl group orders and determinant signs") {
  struct Row {
    Algebra a;
    size_t order;
  };
  for (Row r : {Row{Algebra::A1, 2}, Row{Algebra::G2, 12}, Row{Algebra::B3, 48},
                Row{Algebra::F4, 1152}}) {
    const WeylGroup& g = weyl_group(r.a);
    REQUIRE(g.elements.size() == r.order);
    REQUIRE(g.signs.size() == r.order);
    // identity present, elements distinct, signs split evenly
    std::set<Mat> uniq(g.elements.begin(), g.elements.end());
    CHECK(uniq.size() == r.order);
    CHECK(uniq.count(mat_identity(root_system(r.a).rank)) == 1);
    long plus = 0;
    for (int s : g.signs) {
      CHECK((s == 1 || s == -1));
      if (s == 1) ++plus;
    }
    CHECK(plus * 2 == static_cast<long>(r.order));
    // every sign is the determinant of its element
    for (size_t i = 0; i < g.elements.size(); ++i)
      CHECK(mat_det(g.elements[i]) == g.signs[i]);
    // closure: products of generators stay inside
    auto gens = reflection_generators(r.a);
    for (const auto& m : gens) CHECK(uniq.count(m) == 1);
    CHECK(uniq.count(mat_mul(gens.front(), g.elements.back())) == 1);
  }
  CHECK_THROWS_WITH_AS(weyl_group(Algebra::E8), doctest::Contains("UnsupportedWeylGroup"),
                       MathError);
  CHECK_THROWS_AS(weyl_group(Algebra::E7), MathError);
}

TEST_CASE("reflection generators act on simple-root coordinates") {
  // rows are images of basis vectors under the reflection; the matrices act
  // on coordinate columns
  CHECK(reflection_generators(Algebra::G2) ==
        std::vector<Mat>{mat_of({{-1, 3}, {0, 1}}), mat_of({{1, 0}, {1, -1}})});
  CHECK(reflection_generators(Algebra::B3) ==
        std::vector<Mat>{mat_of({{-1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                         mat_of({{1, 0, 0}, {1, -1, 1}, {0, 0, 1}}),
                         mat_of({{1, 0, 0}, {0, 1, 0}, {0, 2, -1}})});
  CHECK(reflection_generators(Algebra::F4) ==
        std::vector<Mat>{
            mat_of({{-1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
            mat_of({{1, 0, 0, 0}, {1, -1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
            mat_of({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 2, -1, 1}, {0, 0, 0, 1}}),
            mat_of({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, -1}})});
  // each generator is an involution of determinant -1
  for (Algebra a : {Algebra::G2, Algebra::B3, Algebra::F4, Algebra::E7, Algebra::E8}) {
    auto gens = reflection_generators(a);
    CHECK(gens.size() == static_cast<size_t>(root_system(a).rank));
    for (const auto& r : gens) {
      CHECK(mat_det(r) == -1);
      CHECK(mat_mul(r, r) == mat_identity(root_system(a).rank));
    }
  }
}

TEST_CASE("G2 signed orbit of the Weyl vector") {
  auto orbit = weyl_orbit_signed(Algebra::G2, {Rat(5), Rat(3)});
  REQUIRE(orbit.size() == 12);
  std::set<std::pair<std::pair<long, long>, int>> got;
  for (const auto& sw : orbit)
    got.insert({{sw.coords[0].get_num().get_si(), sw.coords[1].get_num().get_si()}, sw.sign});
  std::set<std::pair<std::pair<long, long>, int>> expect{
      {{5, 3}, 1},   {{4, 3}, -1},   {{5, 2}, -1},   {{1, 2}, 1},
      {{4, 1}, 1},   {{-1, 1}, -1},  {{1, -1}, -1},  {{-4, -1}, 1},
      {{-1, -2}, 1}, {{-5, -2}, -1}, {{-4, -3}, -1}, {{-5, -3}, 1}};
  CHECK(got == expect);

  CHECK_THROWS_WITH_AS(weyl_orbit_signed(Algebra::G2, {Rat(0), Rat(0)}),
                       doctest::Contains("NonRegularWeight"), MathError);
  // (1, 2, z) is fixed by the first B3 reflection
  CHECK_THROWS_AS(weyl_orbit_signed(Algebra::B3, {Rat(1), Rat(2), Rat(1)}), MathError);
}

TEST_CASE("root system invariants") {
  struct Row {
    Algebra a;
    int rank;
    int hvee;
    int lacety;
  };
  for (Row r : {Row{Algebra::A1, 1, 2, 1}, Row{Algebra::G2, 2, 4, 3}, Row{Algebra::B3, 3, 5, 2},
                Row{Algebra::F4, 4, 9, 2}, Row{Algebra::E7, 7, 18, 1}, Row{Algebra::E8, 8, 30, 1}}) {
    const RootSystem& s = root_system(r.a);
    CHECK(s.rank == r.rank);
    CHECK(s.dual_coxeter == r.hvee);
    CHECK(s.lacety == r.lacety);
    CHECK(s.gram == mat_transpose(s.gram));
    // long roots have squared length 2, i.e. the gram diagonal tops out at 2
    Rat maxdiag = 0;
    for (int i = 0; i < s.rank; ++i)
      maxdiag = std::max(maxdiag, s.gram[static_cast<size_t>(i)][static_cast<size_t>(i)]);
    CHECK(maxdiag == 2);
    CHECK(algebra_from_name(algebra_name(r.a)) == r.a);
  }
  // the Weyl vectors feeding the character engines
  CHECK(root_system(Algebra::G2).weyl_vector == Vec{Rat(5), Rat(3)});
  CHECK(root_system(Algebra::B3).weyl_vector == Vec{rat(5, 2), Rat(4), rat(9, 2)});
  CHECK(root_system(Algebra::F4).weyl_vector == Vec{Rat(8), Rat(15), Rat(21), Rat(11)});
  CHECK(root_system(Algebra::G2).coroot_scaling == std::vector<long>{3, 1});
  CHECK(root_system(Algebra::B3).coroot_scaling == std::vector<long>{1, 1, 2});
  CHECK(root_system(Algebra::F4).coroot_scaling == std::vector<long>{1, 1, 2, 2});
}

TEST_CASE("E8 lattice shells match the coordinate brute force") {
  const LatticeModel& m = lattice_model(LatticeKind::RootE8);
  Vec zero(8, Rat(0));
  auto pts = enumerate_shifted(m, zero, 6);
  std::map<Rat, long> shell;
  std::set<std::vector<long>> got;
  for (const auto& p : pts) {
    shell[p.dist2] += 1;
    got.insert(doubled_of(p.ambient));
    // coords -> ambient consistency
    Vec amb(8, Rat(0));
    for (size_t i = 0; i < p.coords.size(); ++i)
      for (size_t j = 0; j < 8; ++j) amb[j] += Rat(p.coords[i]) * m.basis[i][j];
    CHECK(amb == p.ambient);
    CHECK(form_ip(m.form, p.ambient, p.ambient) == p.dist2);
  }
  CHECK(shell[Rat(0)] == 1);
  CHECK(shell[Rat(2)] == 240);
  CHECK(shell[Rat(4)] == 2160);
  CHECK(shell[Rat(6)] == 6720);
  CHECK(pts.size() == 1 + 240 + 2160 + 6720);
  CHECK(got == e8_doubled_brute(6));
}

TEST_CASE("E7 sits inside E8 as the sum-zero slice") {
  const LatticeModel& m = lattice_model(LatticeKind::RootE7);
  Vec zero(static_cast<size_t>(m.ambient_dim), Rat(0));
  auto pts = enumerate_shifted(m, zero, 6);
  std::set<std::vector<long>> got;
  long roots = 0;
  for (const auto& p : pts) {
    got.insert(doubled_of(p.ambient));
    if (p.dist2 == 2) ++roots;
  }
  CHECK(roots == 126);
  std::set<std::vector<long>> expect;
  for (const auto& d : e8_doubled_brute(6)) {
    long sum = 0;
    for (long x : d) sum += x;
    if (sum == 0) expect.insert(d);
  }
  CHECK(got == expect);
}

TEST_CASE("shifted enumeration matches brute force off the lattice span") {
  // center with a component orthogonal to the E7 span: the enumerator must
  // shrink the budget by the off-span distance, not drop it
  const LatticeModel& m = lattice_model(LatticeKind::RootE7);
  Vec center(8, rat(1, 8));
  center[0] += rat(1, 3);
  center[1] -= rat(1, 3);
  auto pts = enumerate_shifted(m, center, 2);
  std::set<std::vector<long>> got;
  for (const auto& p : pts) got.insert(doubled_of(p.ambient));
  std::set<std::vector<long>> expect;
  for (const auto& d : e8_doubled_brute(8)) {
    long sum = 0;
    for (long x : d) sum += x;
    if (sum != 0) continue;
    Rat dist = 0;
    for (size_t i = 0; i < 8; ++i) {
      Rat diff = rat(d[i], 2) - center[i];
      dist += diff * diff;
    }
    if (dist <= 2) expect.insert(d);
  }
  CHECK(got == expect);
  CHECK(!pts.empty());
  for (const auto& p : pts) {
    Rat dist = 0;
    for (size_t i = 0; i < 8; ++i) {
      Rat diff = p.ambient[i] - center[i];
      dist += diff * diff;
    }
    CHECK(dist == p.dist2);
    CHECK(p.dist2 <= 2);
  }
}

TEST_CASE("coroot lattice enumeration matches a basis-box brute force") {
  for (LatticeKind k : {LatticeKind::CorootG2, LatticeKind::CorootB3, LatticeKind::CorootF4,
                        LatticeKind::CorootA1}) {
    const LatticeModel& m = lattice_model(k);
    Vec center(static_cast<size_t>(m.ambient_dim), Rat(0));
    // a mildly irrational-looking rational shift exercises the branch bounds
    center[0] = rat(1, 3);
    if (m.ambient_dim > 1) center[1] = rat(-1, 5);
    auto pts = enumerate_shifted(m, center, 6);
    std::set<std::vector<long>> got;
    for (const auto& p : pts) {
      got.insert(p.coords);
      // every reported coordinate must fit the brute-force box below
      for (long c : p.coords) REQUIRE(std::abs(c) <= 8);
    }
    std::set<std::vector<long>> expect;
    std::vector<long> idx(static_cast<size_t>(m.dim), -8);
    while (true) {
      Vec amb(static_cast<size_t>(m.ambient_dim), Rat(0));
      for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < amb.size(); ++j) amb[j] += Rat(idx[i]) * m.basis[i][j];
      Vec diff = amb;
      for (size_t j = 0; j < amb.size(); ++j) diff[j] -= center[j];
      if (form_ip(m.form, diff, diff) <= 6) expect.insert(idx);
      size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] > 8) idx[pos++] = -8;
      if (pos == idx.size()) break;
    }
    CHECK(got == expect);
  }
}

TEST_CASE("doubled-coordinate membership") {
  CHECK(lattice_contains_doubled(LatticeKind::RootE8, {2, -2, 0, 0, 0, 0, 0, 0}));
  CHECK(lattice_contains_doubled(LatticeKind::RootE8, {1, 1, 1, 1, 1, 1, 1, 1}));
  CHECK_FALSE(lattice_contains_doubled(LatticeKind::RootE8, {2, 0, 0, 0, 0, 0, 0, 0}));
  CHECK_FALSE(lattice_contains_doubled(LatticeKind::RootE8, {1, 1, 1, 1, 1, 1, 1, -1}));
  CHECK_FALSE(lattice_contains_doubled(LatticeKind::RootE8, {1, 2, 0, 0, 0, 0, 0, 0}));
  CHECK(lattice_contains_doubled(LatticeKind::RootE7, {2, -2, 0, 0, 0, 0, 0, 0}));
  CHECK_FALSE(lattice_contains_doubled(LatticeKind::RootE7, {2, 2, 0, 0, 0, 0, 0, 0}));
  CHECK(lattice_contains_doubled(LatticeKind::RootE7, {1, 1, 1, 1, -1, -1, -1, -1}));
}
