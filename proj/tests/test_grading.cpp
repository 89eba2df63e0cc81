#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "walg/grading.hpp"

#include <numeric>

using namespace walg;
using namespace walg::grading;

TEST_CASE("registry dimensions and generator weights") {
  struct Row {
    const char* label;
    int dim_g;
    int dim_g0;
    std::vector<int> weights;
  };
  for (const Row& r : {
           Row{"A1", 3, 1, {2}},
           Row{"G2", 14, 2, {2, 6}},
           Row{"B3", 21, 3, {2, 4, 6}},
           Row{"F4", 52, 4, {2, 6, 8, 12}},
           Row{"E7(a1)", 133, 9, {2, 4, 6, 6, 8, 9, 10, 12, 14}},
           Row{"E8(a1)", 248, 10, {2, 6, 8, 10, 12, 14, 15, 18, 20, 24}},
       }) {
    const WData& w = w_data(r.label);
    CHECK(w.dim_g == r.dim_g);
    CHECK(w.dim_g0 == r.dim_g0);
    CHECK(generator_weights(w) == r.weights);
    // dim g = dim g_0 + 2 sum_{j >= 1} dim g_j
    long sum = 0;
    for (int j = 1; j <= 30; ++j) sum += dim_gj(w, j);
    CHECK(w.dim_g == w.dim_g0 + 2 * sum);
    CHECK(dim_gj(w, 1) == static_cast<int>(w.degrees.size()));
    // one strong generator per centralizer degree, weights = degrees + 1
    CHECK(w.degrees.size() == r.weights.size());
  }
  CHECK(w_labels().size() == 6);
  CHECK_THROWS_WITH_AS(w_data("D4"), doctest::Contains("UnknownGrading"), MathError);
  // the sharp labels accept the parenthesis-free alias used by the CLI
  CHECK(w_data("E7a1").label == "E7(a1)");
  CHECK(w_data("E8a1").label == "E8(a1)");
}

TEST_CASE("grading element pairs to the weight marks") {
  for (const std::string& label : w_labels()) {
    const WData& w = w_data(label);
    const auto& s = roots::root_system(w.algebra);
    Vec x = grading_element(w);
    // (x, alpha_i) = marks[i]; alpha_i is the i-th basis vector, so the
    // pairing is row i of gram applied to x
    for (size_t i = 0; i < w.weight_marks.size(); ++i) {
      Rat pair = 0;
      for (size_t j = 0; j < x.size(); ++j) pair += s.gram[i][j] * x[j];
      CHECK(pair == w.weight_marks[i]);
    }
    GradingNorms n = grading_norms(w);
    CHECK(n.x2 == form_ip(s.gram, x, x));
    CHECK(n.rho_x == form_ip(s.gram, s.weyl_vector, x));
    CHECK(n.rho2 == form_ip(s.gram, s.weyl_vector, s.weyl_vector));
  }
}

TEST_CASE("central charges of the four correspondences") {
  // each correspondence produces the same central charge on both sides
  CHECK(central_charge(w_data("G2"), 4, 17) == rat(-1420, 17));
  CHECK(central_charge(w_data("E7(a1)"), 18, 17) == rat(-1420, 17));
  CHECK(central_charge(w_data("G2"), 9, 7) == rat(-590, 9));
  CHECK(central_charge(w_data("E8(a1)"), 31, 27) == rat(-590, 9));
  CHECK(central_charge(w_data("B3"), 8, 7) == rat(-135, 8));
  CHECK(central_charge(w_data("E7(a1)"), 19, 16) == rat(-135, 8));
  CHECK(central_charge(w_data("F4"), 14, 13) == rat(-830, 7));
  CHECK(central_charge(w_data("E8(a1)"), 31, 28) == rat(-830, 7));
}

TEST_CASE("A1 principal charges are the minimal-model values") {
  // c(p, u) = 1 - 6 (p - u)^2 / (p u) for the Virasoro minimal models
  CHECK(central_charge(w_data("A1"), 2, 5) == rat(-22, 5));
  CHECK(central_charge(w_data("A1"), 2, 13) == rat(-350, 13));
  CHECK(central_charge(w_data("A1"), 3, 4) == rat(1, 2));
  CHECK(central_charge(w_data("A1"), 4, 5) == rat(7, 10));
  for (long p = 2; p <= 7; ++p)
    for (long u = 2; u <= 9; ++u) {
      if (std::gcd(p, u) != 1) continue;
      Rat expect = Rat(1) - rat(6 * (p - u) * (p - u), p * u);
      CHECK(central_charge(w_data("A1"), p, u) == expect);
    }
}

TEST_CASE("level preconditions") {
  CHECK_THROWS_WITH_AS(central_charge(w_data("G2"), 4, 2), doctest::Contains("InvalidLevel"),
                       MathError);
  CHECK_THROWS_AS(central_charge(w_data("B3"), 0, 7), MathError);
  CHECK_THROWS_AS(central_charge(w_data("B3"), 8, 0), MathError);
}
