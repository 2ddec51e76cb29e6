#include <random>

#include "bordered/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace bordered;
using testsupport::random_closed;
using testsupport::torus_identity;

namespace {

bool isomorphic(const TypeDABimodule& a, const TypeDABimodule& b) { return find_relabeling(a, b).has_value(); }

std::vector<BimodulePtr> shipped() {
  auto I = torus_identity();
  std::mt19937_64 rng(21);
  return {I, cone(random_closed(I, 0, 6, rng), "C"), cone(zero_morphism(I, I), "Z")};
}

}  // namespace

TEST_CASE("identity boxed with itself") {
  auto I = torus_identity();
  auto II = box_bimodules(I, I);
  CHECK(II->name() == "I*I");
  CHECK(II->generator(1).name == "i0|i0");
  CHECK(equal_under_renaming(*II, *I, [](const std::string& s) { return s.substr(0, s.find('|')); }));
  CHECK(homology(*II) == homology(*I));
  CHECK(II->d1() == oracle::box_table(*I, *I, 2));
}

TEST_CASE("unit laws and agreement with the direct formula") {
  auto I = torus_identity();
  for (const auto& m : shipped()) {
    auto left = box_bimodules(I, m), right = box_bimodules(m, I);
    CHECK(isomorphic(*left, *m));
    CHECK(isomorphic(*right, *m));
    CHECK(left->d1() == oracle::box_table(*I, *m, m->arity_bound()));
    CHECK(right->d1() == oracle::box_table(*m, *I, m->arity_bound()));
    CHECK(check_structure(*box_bimodules(m, m)).passed);
  }
}

TEST_CASE("products of morphisms") {
  auto I = torus_identity();
  auto id = identity_morphism(I);
  auto b = box_morphisms(id, id);
  CHECK(b.table() == identity_morphism(b.source_ptr()).table());
  std::mt19937_64 rng(22);
  auto f = random_closed(I, 0, 6, rng), g = random_closed(I, 0, 6, rng);
  auto fg = box_morphisms(f, g);
  CHECK(is_closed(fg).closed);
  // Over the identity bimodule the product is the composite G o F.
  auto s = find_relabeling(fg.source(), *I);
  REQUIRE(s);
  auto moved = transport(fg, I, *s, I, *s);
  CHECK(moved.table() == compose(g, f).table());
}

TEST_CASE("middle algebra mismatch and step budget") {
  auto I = torus_identity();
  auto B = std::make_shared<const DGAlgebra>(build_dga(testsupport::torus(), "B"));
  auto other = identity_bimodule(B, "J");
  try {
    box_bimodules(I, other);
    FAIL("mismatched middle algebras accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MiddleAlgebraMismatch);
  }
  try {
    box_bimodules(I, I, BoxOptions{3});
    FAIL("budget ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConverging);
  }
}
