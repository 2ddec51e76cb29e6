#include <algorithm>
#include <numeric>

#include "bordered/errors.hpp"
#include "bordered/pmc.hpp"
#include "doctest.h"

using namespace bordered;

namespace {

// All perfect matchings of 1..n.
void matchings(std::vector<int> rest, std::vector<PointPair>& cur, std::vector<std::vector<PointPair>>& out) {
  if (rest.empty()) {
    out.push_back(cur);
    return;
  }
  int a = rest[0];
  for (std::size_t i = 1; i < rest.size(); ++i) {
    std::vector<int> next;
    for (std::size_t j = 1; j < rest.size(); ++j)
      if (j != i) next.push_back(rest[j]);
    cur.emplace_back(a, rest[i]);
    matchings(next, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("torus and genus-2 circles") {
  auto t = make_pmc(1, {{1, 3}, {2, 4}});
  CHECK(t.genus() == 1);
  CHECK(t.partner(3) == 1);
  CHECK(t.pair_of(4) == 1);
  CHECK(t.to_string() == "GENUS 1 PAIRS (1 3) (2 4)");
  CHECK(validate(t));
  auto g2 = make_pmc(2, {{1, 3}, {2, 4}, {5, 7}, {6, 8}});
  CHECK(surgery_component_count(g2) == 1);
  CHECK(validate_report(g2).handleslide_valid == true);
  CHECK(make_pmc(1, {{3, 1}, {4, 2}}) == t);
}

TEST_CASE("malformed and degenerate matchings") {
  CHECK_THROWS_AS(make_pmc(1, {{1, 3}, {2, 5}}), Error);
  CHECK_THROWS_AS(make_pmc(1, {{1, 3}, {1, 4}}), Error);
  CHECK_THROWS_AS(make_pmc(1, {{1, 3}}), Error);
  try {
    make_pmc(1, {{1, 2}, {3, 4}});
    FAIL("accepted a degenerate matching");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateMatching);
  }
  auto bad = make_unchecked_pmc(1, {{1, 2}, {3, 4}});
  CHECK(surgery_component_count(bad) == 3);
  CHECK_FALSE(validate(bad));
  CHECK(handleslide_valid(bad) == false);
}

TEST_CASE("reversal preserves validity") {
  auto g2 = make_pmc(2, {{1, 5}, {2, 6}, {3, 7}, {4, 8}});
  auto r = reverse(reverse(g2));
  CHECK(r == g2);
  CHECK(validate(reverse(g2)) == validate(g2));
}

TEST_CASE("the two validity criteria agree on every matching up to genus 2") {
  for (int g = 1; g <= 2; ++g) {
    std::vector<int> pts(static_cast<std::size_t>(4 * g));
    std::iota(pts.begin(), pts.end(), 1);
    std::vector<PointPair> cur;
    std::vector<std::vector<PointPair>> all;
    matchings(pts, cur, all);
    std::size_t valid = 0;
    for (const auto& m : all) {
      auto v = validate_report(make_unchecked_pmc(g, m));
      CHECK_FALSE(v.criteria_diverge());
      valid += v.valid() ? 1 : 0;
    }
    CHECK(all.size() == (g == 1 ? 3u : 105u));
    if (g == 1) CHECK(valid == 1);
  }
}
