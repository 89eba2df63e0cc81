#include "walg/grading.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace walg::grading {

namespace {

WData make(const std::string& label, roots::Algebra alg, OrbitClass orbit, std::vector<int> degrees,
           std::vector<int> marks, Vec xi = {}) {
  WData w;
  w.label = label;
  w.algebra = alg;
  w.orbit = orbit;
  w.degrees = std::move(degrees);
  w.weight_marks = std::move(marks);
  w.xi_ambient = std::move(xi);
  // dim g_0 = (# degrees >= 1) + (# degrees == 0); the identity
  // dim g = dim g_0 + 2 sum_j dim g_j pins dim g.
  int g1 = static_cast<int>(std::count_if(w.degrees.begin(), w.degrees.end(), [](int d) { return d >= 1; }));
  int g0 = g1 + static_cast<int>(std::count(w.degrees.begin(), w.degrees.end(), 0));
  w.dim_g0 = g0;
  long total = g0;
  for (int d : w.degrees) total += 2L * d;
  w.dim_g = static_cast<int>(total);
  return w;
}

std::map<std::string, WData> build_registry() {
  using roots::Algebra;
  std::map<std::string, WData> r;
  auto add = [&r](WData w) { r.emplace(w.label, std::move(w)); };
  add(make("A1", Algebra::A1, OrbitClass::Principal, {1}, {1}));
  add(make("G2", Algebra::G2, OrbitClass::Principal, {1, 5}, {1, 1}));
  add(make("B3", Algebra::B3, OrbitClass::Principal, {1, 3, 5}, {1, 1, 1}));
  add(make("F4", Algebra::F4, OrbitClass::Principal, {1, 5, 7, 11}, {1, 1, 1, 1}));
  add(make("E7(a1)", Algebra::E7, OrbitClass::Sharp, {1, 3, 5, 5, 7, 8, 9, 11, 13},
           {1, 1, 0, 1, 1, 1, 1},
           {rat(25, 4), rat(13, 4), rat(9, 4), rat(1, 4), rat(-3, 4), rat(-3, 4), rat(-15, 4), rat(-27, 4)}));
  add(make("E8(a1)", Algebra::E8, OrbitClass::Sharp, {1, 5, 7, 9, 11, 13, 14, 17, 19, 23},
           {1, 1, 1, 1, 0, 1, 1, 1}, {5, 4, 3, 2, 1, 1, 0, -18}));
  return r;
}

std::string normalize_label(const std::string& label) {
  if (label == "E7a1") return "E7(a1)";
  if (label == "E8a1") return "E8(a1)";
  return label;
}

}  // namespace

const WData& w_data(const std::string& label) {
  static const std::map<std::string, WData> registry = build_registry();
  auto it = registry.find(normalize_label(label));
  if (it == registry.end()) throw MathError("UnknownGrading", "no W-algebra data labeled '" + label + "'");
  return it->second;
}

std::vector<std::string> w_labels() {
  return {"A1", "G2", "B3", "F4", "E7(a1)", "E8(a1)"};
}

int dim_gj(const WData& w, int j) {
  if (j < 1) throw MathError("BadIndex", "dim_gj is defined for j >= 1");
  return static_cast<int>(std::count_if(w.degrees.begin(), w.degrees.end(), [j](int d) { return d >= j; }));
}

std::vector<int> generator_weights(const WData& w) {
  std::vector<int> out;
  for (int d : w.degrees) out.push_back(d + 1);
  std::sort(out.begin(), out.end());
  return out;
}

Vec grading_element(const WData& w) {
  const auto& s = roots::root_system(w.algebra);
  Vec rhs(w.weight_marks.begin(), w.weight_marks.end());
  return mat_solve(s.gram, rhs);
}

GradingNorms grading_norms(const WData& w) {
  const auto& s = roots::root_system(w.algebra);
  Vec x = grading_element(w);
  GradingNorms n;
  n.rho2 = form_ip(s.gram, s.weyl_vector, s.weyl_vector);
  n.rho_x = form_ip(s.gram, s.weyl_vector, x);
  n.x2 = form_ip(s.gram, x, x);
  return n;
}

Rat central_charge(const WData& w, long p, long u) {
  if (p < 1 || u < 1 || std::gcd(p, u) != 1)
    throw MathError("InvalidLevel", "level p/u = " + std::to_string(p) + "/" + std::to_string(u) +
                                        " must have coprime positive parts");
  GradingNorms n = grading_norms(w);
  Rat k(p, u);  // p/u
  Rat bracket = n.rho2 - Rat(2) * k * n.rho_x + k * k * n.x2;
  Rat scale(12 * u, p);
  scale.canonicalize();
  return Rat(w.dim_g0) - scale * bracket;
}

}  // namespace walg::grading
