#include <random>

#include "bordered/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace bordered;
using testsupport::torus_algebra;
using testsupport::torus_identity;

TEST_CASE("identity bimodule is a valid bimodule") {
  const auto& I = *torus_identity();
  CHECK(I.size() == 4);
  auto rep = check_structure(I);
  CHECK(rep.passed);
  CHECK(rep.bound == 2);
  CHECK(structure_relation(I).empty());
  CHECK(oracle::relation_table(I, 2).empty());
  CHECK(homology(I) == 10);
}

TEST_CASE("construction rejects bad symbols and idempotents") {
  auto A = torus_algebra();
  auto i0 = A->index_of("i0"), i1 = A->index_of("i1");
  std::vector<Generator> gens{{"x", i0, i0}};
  Table t;
  t[Key{0, {}}] = {Term{static_cast<std::uint32_t>(A->index_of("r[2-3]")), 0}};
  try {
    make_bimodule("M", A, A, gens, t);
    FAIL("idempotent mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IdempotentMismatch);
  }
  t.clear();
  t[Key{0, {}}] = {Term{0, 3}};
  CHECK_THROWS_AS(make_bimodule("M", A, A, gens, t), Error);
  (void)i1;
}

TEST_CASE("relation matches the key-by-key evaluation on corrupted tables") {
  auto A = torus_algebra();
  const auto& I = *torus_identity();
  std::mt19937_64 rng(3);
  std::size_t tried = 0, broken = 0;
  while (tried < 60) {
    Table t = I.d1();
    std::uint32_t x = static_cast<std::uint32_t>(rng() % I.size());
    Inputs in;
    std::size_t len = rng() % 2;
    for (std::size_t i = 0; i < len; ++i) in.push_back(static_cast<std::uint32_t>(rng() % A->size()));
    Term term{static_cast<std::uint32_t>(rng() % A->size()), static_cast<std::uint32_t>(rng() % I.size())};
    Span& s = t[Key{x, in}];
    std::vector<Term> v = s;
    v.push_back(term);
    s = reduce_terms(v);
    if (s.empty()) t.erase(Key{x, in});
    BimodulePtr m;
    try {
      m = make_bimodule("M", A, A, I.generators(), t);
    } catch (const Error&) {
      continue;
    }
    ++tried;
    auto rep = check_structure(*m);
    auto expected = oracle::relation_table(*m, rep.bound);
    CHECK(structure_relation(*m) == expected);
    CHECK(rep.passed == expected.empty());
    if (!expected.empty()) {
      ++broken;
      REQUIRE(rep.witness);
      CHECK(*rep.witness == expected.begin()->first);
    }
  }
  CHECK(broken > 0);
}

TEST_CASE("D_n by either recursion order") {
  const auto& I = *torus_identity();
  auto A = torus_algebra();
  auto seqs = oracle::all_inputs(*A, 3);
  for (std::uint32_t x = 0; x < I.size(); ++x)
    for (const auto& in : seqs)
      for (std::size_t n = 1; n <= 3; ++n)
        CHECK(compute_Dn(I, x, in, n, DnOrder::LastFirst) == compute_Dn(I, x, in, n, DnOrder::FirstPeel));
  CHECK_THROWS_AS(compute_Dn(I, 0, {}, 0), Error);
}

TEST_CASE("arity-zero complex of the identity") {
  auto c = arity_zero_complex(*torus_identity());
  CHECK(c.basis.size() == c.boundary.cols());
  CHECK((c.boundary * c.boundary).is_zero());
}
