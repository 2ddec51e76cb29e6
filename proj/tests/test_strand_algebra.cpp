#include "bordered/errors.hpp"
#include "bordered/strand_algebra.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace bordered;

namespace {

Elem el(const DGAlgebra& a, std::initializer_list<const char*> names) {
  std::vector<std::size_t> v;
  for (auto n : names) v.push_back(a.index_of(n));
  return reduce_mod2(v);
}

}  // namespace

TEST_CASE("basis sizes match brute-force enumeration") {
  const auto& t = testsupport::torus();
  CHECK(enumerate_basis(t).size() == 16);
  CHECK(oracle::count_basis(t) == 16);
  auto g2 = make_pmc(2, {{1, 3}, {2, 4}, {5, 7}, {6, 8}});
  CHECK(enumerate_basis(g2).size() == oracle::count_basis(g2));
  auto g2b = make_pmc(2, {{1, 5}, {2, 6}, {3, 7}, {4, 8}});
  CHECK(enumerate_basis(g2b).size() == oracle::count_basis(g2b));
  for (const auto& d : enumerate_basis(t)) CHECK(is_valid_diagram(t, d));
}

TEST_CASE("names round-trip") {
  const auto& t = testsupport::torus();
  for (const auto& d : enumerate_basis(t)) CHECK(parse_diagram(t, diagram_name(t, d)) == d);
  CHECK(idempotent_alias(t, 0) == "i_");
  CHECK(idempotent_alias(t, 3) == "i01");
  CHECK(parse_diagram(t, "i0") == parse_diagram(t, "h(1 3)"));
  CHECK_THROWS_AS(parse_diagram(t, "r[3-1]"), Error);
  CHECK_THROWS_AS(parse_diagram(t, "q"), Error);
}

TEST_CASE("torus products and differentials") {
  const auto& A = *testsupport::torus_algebra();
  CHECK(A.size() == 16);
  CHECK(A.idempotents().size() == 4);
  auto m = [&](const char* x, const char* y) { return A.mul(A.index_of(x), A.index_of(y)); };
  CHECK(m("r[1-2]", "r[2-3]") == el(A, {"r[1-3]"}));
  CHECK(m("r[1-2]", "r[2-4]") == el(A, {"r[1-4]"}));
  CHECK(m("r[2-3]", "r[1-2]").empty());
  CHECK(m("i0", "r[1-3]") == el(A, {"r[1-3]"}));
  CHECK(m("i1", "r[1-3]").empty());
  auto d = [&](const char* x) { return A.d(A.index_of(x)); };
  CHECK(d("r[1-3]h(2 4)") == el(A, {"r[1-2]r[2-3]"}));
  CHECK(d("r[1-4]r[2-3]") == el(A, {"r[1-3]r[2-4]"}));
  CHECK(d("r[2-4]h(1 3)") == el(A, {"r[2-3]r[3-4]"}));
  CHECK(d("r[1-3]").empty());
}

TEST_CASE("genus-1 axioms hold exhaustively") {
  auto rep = verify_dga(*testsupport::torus_algebra(), 100000);
  CHECK(rep.passed());
  for (const auto& c : rep.checks) {
    CHECK(c.exhaustive);
    CHECK_MESSAGE(c.passed, c.name << ": " << c.witness);
  }
}

TEST_CASE("a broken product table is caught") {
  const auto& A = *testsupport::torus_algebra();
  DGAlgebraData data;
  data.name = "broken";
  data.names = A.basis_names();
  data.idempotents = A.idempotents();
  for (std::size_t a = 0; a < A.size(); ++a) {
    for (std::size_t b = 0; b < A.size(); ++b)
      if (!A.mul(a, b).empty()) data.mult.emplace_back(a, b, A.mul(a, b));
    if (!A.d(a).empty()) data.diff.emplace_back(a, A.d(a));
  }
  // Drop d(r[1-3]h(2 4)): Leibniz then fails.
  auto bad = A.index_of("r[1-3]h(2 4)");
  data.diff.erase(std::remove_if(data.diff.begin(), data.diff.end(), [&](auto& p) { return p.first == bad; }),
                  data.diff.end());
  DGAlgebra broken(data);
  auto rep = verify_dga(broken, 100000);
  CHECK_FALSE(rep.passed());
}
