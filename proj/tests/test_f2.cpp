#include <random>

#include "bordered/errors.hpp"
#include "bordered/f2.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bordered;
using namespace bordered::f2;

namespace {

F2Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (coin(rng)) e.emplace_back(r, c);
  return F2Matrix(rows, cols, e);
}

}  // namespace

TEST_CASE("vector arithmetic") {
  F2Vector a{0, 3, 5};
  F2Vector b{3, 4};
  CHECK((a + b) == F2Vector{0, 4, 5});
  a.toggle(5);
  CHECK(a == F2Vector{0, 3});
  CHECK_THROWS_AS(F2Vector({1, 1}), Error);
}

TEST_CASE("matrix basics") {
  F2Matrix m(2, 3, {{0, 0}, {0, 2}, {1, 1}});
  CHECK(m.at(0, 2));
  CHECK_FALSE(m.at(1, 2));
  CHECK(m.apply(F2Vector{0, 1}) == F2Vector{0, 1});
  CHECK(m.transpose().transpose() == m);
  CHECK(m * F2Matrix::identity(3) == m);
  CHECK_THROWS_AS(F2Matrix(2, 2, {{2, 0}}), Error);
  CHECK_THROWS_AS(F2Matrix(2, 2, {{1, 0}, {1, 0}}), Error);
  CHECK_THROWS_AS(m * m, Error);
}

TEST_CASE("rank, kernel and solve of a small matrix") {
  // Rows: x0 + x1, x1 + x2, x0 + x2 (dependent).
  F2Matrix m(3, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 2}});
  CHECK(rank(m) == 2);
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == F2Vector{0, 1, 2});
  CHECK(solve(m, F2Vector{0, 1, 2}) == std::nullopt);
  auto x = solve(m, F2Vector{0, 2});
  REQUIRE(x);
  CHECK(m.apply(*x) == F2Vector{0, 2});
  CHECK_THROWS_AS(solve(m, F2Vector{3}), Error);
}

TEST_CASE("homology of a short complex") {
  // Boundary of a filled triangle: 1 face, 3 edges, 3 vertices.
  F2Matrix d2(3, 1, {{0, 0}, {1, 0}, {2, 0}});
  F2Matrix d1(3, 3, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}});
  CHECK(homology_dim(d2, d1) == 0);
  CHECK(homology_dim(F2Matrix(3, 0), d1) == 1);
  CHECK_THROWS_AS(homology_dim(F2Matrix(3, 1, {{0, 0}}), d1), Error);
  CHECK_THROWS_AS(homology_dim(F2Matrix(2, 1), d1), Error);
}

TEST_CASE("agreement with dense elimination") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 1 + rng() % 40, cols = 1 + rng() % 40;
    double density = 0.05 + 0.5 * static_cast<double>(rng() % 100) / 100.0;
    F2Matrix m = random_matrix(rng, rows, cols, density);
    CHECK(rank(m) == oracle::dense_rank(m));
    auto k = kernel_basis(m);
    CHECK(k.size() == cols - oracle::dense_rank(m));
    for (const auto& v : k) CHECK(m.apply(v).empty());
    std::vector<int> b(rows);
    for (auto& bit : b) bit = static_cast<int>(rng() % 2);
    std::vector<std::size_t> support;
    for (std::size_t r = 0; r < rows; ++r)
      if (b[r]) support.push_back(r);
    auto x = solve(m, F2Vector(support));
    CHECK(x.has_value() == oracle::dense_solvable(m, b));
    if (x) CHECK(m.apply(*x) == F2Vector(support));
  }
}
