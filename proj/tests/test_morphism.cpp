#include <random>

#include "bordered/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace bordered;
using testsupport::random_closed;
using testsupport::random_morphism;
using testsupport::torus_identity;

TEST_CASE("identity is closed and a unit for composition") {
  auto I = torus_identity();
  auto id = identity_morphism(I);
  CHECK(is_closed(id).closed);
  std::mt19937_64 rng(5);
  auto f = random_morphism(I, I, 2, 6, rng);
  CHECK(compose(id, f).table() == f.table());
  CHECK(compose(f, id).table() == f.table());
  CHECK(add(f, f).is_zero());
}

TEST_CASE("differential matches key-by-key evaluation and squares to zero") {
  auto I = torus_identity();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto h = random_morphism(I, I, 1, 1 + rng() % 6, rng);
    auto dh = morphism_differential(h);
    CHECK(dh.table() == oracle::morphism_d(h, h.arity_bound() + 1));
    CHECK(morphism_differential(dh).is_zero());
    CHECK(is_closed(dh).closed);
  }
}

TEST_CASE("composition is associative and preserves closedness") {
  auto I = torus_identity();
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_closed(I, 0, 4, rng), g = random_closed(I, 0, 4, rng), h = random_closed(I, 1, 3, rng);
    CHECK(compose(h, compose(g, f)).table() == compose(compose(h, g), f).table());
    CHECK(is_closed(compose(g, f)).closed);
  }
}

TEST_CASE("homotopy search") {
  auto I = torus_identity();
  auto id = identity_morphism(I);
  std::mt19937_64 rng(10);
  auto h = random_morphism(I, I, 0, 3, rng);
  auto f = add(id, morphism_differential(h));
  auto r = is_homotopic(f, id, 2);
  CHECK(r.found);
  REQUIRE(r.witness);
  CHECK(add(morphism_differential(*r.witness), add(f, id)).is_zero());

  // Id is not null-homotopic: it is an isomorphism on homology of rank 10.
  auto zero = zero_morphism(I, I);
  auto none = is_homotopic(id, zero, 2);
  CHECK_FALSE(none.found);
  CHECK(none.cap == 2);
  CHECK(induced_on_homology(id) == f2::F2Matrix::identity(10));
  CHECK(is_naive_quasi_iso(f));
  CHECK_FALSE(is_naive_quasi_iso(zero));

  try {
    is_homotopic(h, id, 1);
    FAIL("accepted a morphism that is not closed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotClosed);
  }
}

TEST_CASE("cone of a quasi-isomorphism is acyclic") {
  auto I = torus_identity();
  std::mt19937_64 rng(12);
  auto f = random_closed(I, 0, 6, rng);
  auto c = cone(f, "C");
  CHECK(c->size() == 2 * I->size());
  CHECK(check_structure(*c).passed);
  CHECK(homology(*c) == 0);
  CHECK(c->generator(0).name == "i_'");
  auto z = cone(zero_morphism(I, I), "Z");
  CHECK(homology(*z) == 20);
}

TEST_CASE("shape and symbol errors") {
  auto I = torus_identity();
  auto A = testsupport::torus_algebra();
  auto other = identity_bimodule(std::make_shared<const DGAlgebra>(build_dga(testsupport::torus(), "B")), "I2");
  CHECK_THROWS_AS(compose(identity_morphism(other), identity_morphism(I)), Error);
  Table t;
  t[Key{0, {}}] = {Term{static_cast<std::uint32_t>(A->index_of("r[1-3]")), 0}};
  CHECK_THROWS_AS(make_morphism(I, I, t), Error);
}
