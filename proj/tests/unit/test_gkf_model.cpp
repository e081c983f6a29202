#include <doctest.h>

#include "hamcoh/gkf_model.hpp"

using namespace hamcoh;

namespace {

std::vector<std::string> names(const std::vector<ModelMonomial>& basis) {
  std::vector<std::string> out;
  for (const auto& m : basis) out.push_back(m.to_string());
  return out;
}

bool contains(const std::vector<ModelMonomial>& basis, const std::string& name, int degree) {
  for (const auto& m : basis)
    if (m.to_string() == name && m.degree() == degree) return true;
  return false;
}

}  // namespace

TEST_CASE("generators") {
  const auto gens = model_generators(2);
  REQUIRE(gens.size() == 5);
  CHECK(gens[0].name() == "Gamma");
  CHECK(gens[0].degree == 2);
  CHECK(gens[0].weight == -2);
  CHECK(gens[1].degree == 4);
  CHECK(gens[2].degree == 8);
  CHECK(gens[3].degree == 3);
  CHECK(gens[4].degree == 7);
  CHECK(gens[4].parity() == 1);
  CHECK(model_generators(3, ModelConventions::odd_gamma(3))[0].degree == 5);
}

TEST_CASE("basis at n = 1") {
  // Direct expansion under k + k_1 <= 1.
  const auto basis = model_basis(1, 7);
  CHECK(names(basis) == std::vector<std::string>{"1", "Gamma", "h1", "Psi1", "Gamma*h1", "Psi1*h1"});
  CHECK(model_basis(1, 100).size() == 6);
  for (const auto& m : model_basis(1, 100)) CHECK(m.to_string() != "Psi1^2");
  const auto odd = model_basis(1, 7, ModelConventions::odd_gamma(1));
  CHECK(odd.size() == 6);
  CHECK(model_degree_bound(1) == 7);
}

TEST_CASE("basis at n = 2 contains the degree 18 classes") {
  const auto basis = model_basis(2, 18);
  CHECK(contains(basis, "Psi1^2*h1*h2", 18));
  CHECK(contains(basis, "Psi2*h1*h2", 18));
  CHECK(contains(basis, "Gamma^2", 4));
  CHECK_FALSE(contains(basis, "Gamma^3", 6));
  for (const auto& m : basis) {
    CHECK(m.nonzero());
    CHECK(m.degree() <= 18);
  }
}

TEST_CASE("differential") {
  const auto md = model_differential(1, 8);
  // d(h1) = Psi1: degree 3 -> 4.
  CHECK(md.maps[3].rows() == 1);
  CHECK(md.maps[3].cols() == 1);
  CHECK(md.maps[3].rational_at(0, 0) == 1);
  // d(Gamma h1) and d(Psi1 h1) vanish in the quotient.
  CHECK(md.maps[5].nonzeros() == 0);
  CHECK(md.maps[7].nonzeros() == 0);
}

TEST_CASE("d squared vanishes on the model") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& conv : {ModelConventions{}, ModelConventions::odd_gamma(n)}) {
      const auto md = model_differential(n, 20, conv);
      for (std::size_t d = 0; d + 1 < md.maps.size(); ++d) {
        const auto& a = md.maps[d];
        const auto& b = md.maps[d + 1];
        for (std::size_t c = 0; c < a.cols(); ++c) {
          std::vector<Rational> e(a.cols(), 0);
          e[c] = 1;
          for (const auto& x : b.multiply(a.multiply(e))) CHECK(x == 0);
        }
      }
    }
}

TEST_CASE("predictions at n = 1") {
  CHECK(predicted_betti(1, 0, 10, true).nonzero_betti() == std::map<int, long long>{{7, 1}});
  CHECK(predicted_betti(1, 0, 10, false).nonzero_betti() == std::map<int, long long>{{0, 1}, {7, 1}});
  CHECK(predicted_betti(1, -2, 10, true).nonzero_betti() == std::map<int, long long>{{2, 1}, {5, 1}});
  CHECK(predicted_betti(1, -4, 10, true).nonzero_betti().empty());
  CHECK(predicted_betti(1, -2, 10, true, ModelConventions::odd_gamma(1)).nonzero_betti() ==
        std::map<int, long long>{{1, 1}, {4, 1}});
  CHECK_THROWS_WITH_AS(predicted_betti(1, 2, 10, true), "model covers non-positive weight only",
                       std::invalid_argument);
}

TEST_CASE("vanishing degrees inside the model") {
  for (int n = 1; n <= 3; ++n) {
    const auto t = predicted_betti(n, 0, 4 * n + 7, true);
    for (int k : {1, 2, 4, 6}) CHECK(t.betti(4 * n + k) == 0);
  }
  const auto t = predicted_betti(2, 0, 20, true);
  CHECK(t.betti(18) == 2);
}

TEST_CASE("parity of degrees") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : model_basis(n, 40)) {
      int odd = 0;
      for (bool h : m.h_flags) odd += h;
      CHECK(m.degree() % 2 == odd % 2);
    }
}

TEST_CASE("anomaly targets") {
  CHECK(anomaly_target(1, 1) == std::pair<int, int>{6, 0});
  CHECK(anomaly_target(1, 0) == std::pair<int, int>{5, 0});
  CHECK(anomaly_target(2, 9) == std::pair<int, int>{18, 0});
  CHECK_THROWS(anomaly_target(1, -1));
}
