#include <random>

#include "bordered/clf.hpp"
#include "bordered/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bordered;
using namespace bordered::clf;

namespace {

Word w(const char* s) { return parse_word(s); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("words") {
  CHECK(to_text(w("abb'a")) == "aa");
  CHECK(to_text(w("e")) == "e");
  CHECK(w("aa'").empty());
  CHECK(to_text(inverse(w("ab'T[z]"))) == "T[z]'ba'");
  CHECK(to_text(concat(w("ab"), w("b'c"))) == "ac");
  CHECK(to_text(w("T[a@z]")) == "T[a@z]");
  CHECK(to_text(expand(w("T[a@z]"))) == "aT[z]a'");
  CHECK(to_text(expand(w("T[T[y]@z]"))) == "T[y]T[z]T[y]'");
  CHECK(equivalent(w("T[a@z]b"), w("aT[z]a'b")));
  CHECK_FALSE(equivalent(w("ab"), w("ba")));
  CHECK(kind_of([] { parse_word("a)"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_word("ae"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_word("T[a@z"); }) == ErrorKind::ParseError);
  CHECK(to_text(parse_label("ab@z")) == "ab@z");
  CHECK(to_text(parse_label("e@z")) == "z");
}

TEST_CASE("leaves and composition") {
  auto c = make_clf(w("a"), w("b"), parse_label("z"));
  CHECK(to_text(c.initial()) == "ab");
  CHECK(to_text(c.resulting()) == "aT[z]b");
  auto hc = compose_h(identity(w("u")), identity(w("v")));
  CHECK(to_text(initial_word(hc)) == "uv");
  CHECK(to_text(resulting_word(hc)) == "uv");
  CHECK(kind_of([&] { compose_v(crit(c), identity(w("ab"))); }) == ErrorKind::BoundaryMismatch);
  CHECK(kind_of([] { compose_h(identity({}, "", "P"), identity({}, "Q", "")); }) == ErrorKind::BoundaryMismatch);
  auto f = factor_leaf(crit(c));
  CHECK(leaf_count(f) == 3);
  CHECK(equivalent(initial_word(f), c.initial()));
  CHECK(equivalent(resulting_word(f), c.resulting()));
}

TEST_CASE("normalization of a vertical pair") {
  auto e = parse_expr("V(CRIT(fl=a, fr=e, vc=z), CRIT(fl=aT[z], fr=e, vc=y))");
  auto n = normalize_horizontal(e);
  CHECK(n.rewrites == 1);
  CHECK(vcomp_count(n.expr) == 0);
  auto leaves = horizontal_leaves(n.expr);
  REQUIRE(leaves.size() == 3);
  CHECK(leaves[1]->kind == Node::Kind::Identity);
  CHECK(to_text(leaves[1]->word) == "T[z]'a'");
  CHECK(equivalent(initial_word(n.expr), initial_word(e)));
  CHECK(equivalent(resulting_word(n.expr), resulting_word(e)));
  CHECK(to_text(normalize_horizontal(n.expr).expr) == to_text(n.expr));
}

TEST_CASE("hurwitz moves") {
  auto e = parse_expr("H(CRIT(fl=e, fr=e, vc=z), CRIT(fl=e, fr=e, vc=y))");
  auto h = hurwitz(e, 0);
  CHECK(to_text(h) == "H(CRIT(fl=e, fr=e, vc=T[z]@y), CRIT(fl=e, fr=e, vc=z))");
  CHECK(equivalent(resulting_word(h), resulting_word(e)));
  auto hh = hurwitz(h, 0);
  CHECK(to_text(hh) != to_text(e));
  CHECK(equivalent(resulting_word(hh), resulting_word(e)));
  CHECK(crit_count(hh) == 2);
  // Empty identities between the leaves are pruned first.
  auto gap = parse_expr("H(H(CRIT(fl=e, fr=e, vc=z), ID(e)), CRIT(fl=e, fr=e, vc=y))");
  CHECK(to_text(hurwitz(gap, 0)) == to_text(h));
  CHECK(kind_of([] { hurwitz(parse_expr("H(CRIT(fl=a, fr=e, vc=z), CRIT(fl=e, fr=e, vc=y))"), 0); }) ==
        ErrorKind::NotInTwistForm);
  CHECK(kind_of([&] { hurwitz(e, 1); }) == ErrorKind::NotInTwistForm);
}

TEST_CASE("standard form") {
  auto wg = make_clf({}, {}, parse_label("z"));
  auto one = standard_form(parse_expr("CRIT(fl=e, fr=e, vc=z)"), wg);
  CHECK(to_text(one.expr) == "H(H(ID(e), CRIT(fl=e, fr=e, vc=z)), ID(e))");
  auto conj = standard_form(parse_expr("H(ID(b), CRIT(fl=e, fr=c, vc=a@z))"), wg);
  REQUIRE(conj.conjugators.size() == 1);
  CHECK(to_text(conj.conjugators[0]) == "a");
  CHECK(to_text(conj.expr) == "H(H(ID(ba), CRIT(fl=e, fr=e, vc=z)), ID(a'c))");
  CHECK(kind_of([&] { standard_form(parse_expr("CRIT(fl=e, fr=e, vc=y)"), wg); }) == ErrorKind::IncompatibleCycle);
  CHECK(kind_of([&] { standard_form(parse_expr("CRIT(fl=e, fr=e, vc=z)"), make_clf(w("a"), {}, parse_label("z"))); }) ==
        ErrorKind::NotInTwistForm);
}

TEST_CASE("expression text round-trips") {
  for (const char* s : {"ID(e)", "ID(ab', l=P, r=Q)", "CRIT(fl=a, fr=b, vc=c@z, l=P, r=Q, m=R)",
                        "V(CRIT(fl=e, fr=e, vc=z), ID(T[z]))"})
    CHECK(to_text(parse_expr(s)) == s);
  CHECK(kind_of([] { parse_expr("X(ID(e))"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_expr("H(ID(e))"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_expr("CRIT(fl=e, vc=z)"); }) == ErrorKind::ParseError);
}

TEST_CASE("evaluation") {
  auto I = testsupport::torus_identity();
  Assignment a;
  CHECK(kind_of([&] { evaluate(identity({}), a); }) == ErrorKind::AssignmentIncomplete);
  a.unit = I;
  auto unit = evaluate(identity({}), a);
  CHECK(unit.table() == identity_morphism(I).table());
  CHECK(kind_of([&] { evaluate(identity(w("a")), a); }) == ErrorKind::AssignmentIncomplete);
  a.default_letter = I;
  CHECK(kind_of([&] { evaluate(parse_expr("CRIT(fl=e, fr=e, vc=z)"), a); }) == ErrorKind::AssignmentIncomplete);
  std::mt19937_64 rng(4);
  a.crits.emplace("z", testsupport::random_closed(I, 0, 6, rng));
  a.crits.emplace("y", testsupport::random_closed(I, 0, 6, rng));
  auto e = parse_expr("V(CRIT(fl=e, fr=e, vc=z), CRIT(fl=T[z], fr=e, vc=y))");
  auto f = evaluate(e, a);
  CHECK(is_closed(f).closed);
  auto g = align(evaluate(normalize_horizontal(e).expr, a), f.source_ptr(), f.target_ptr());
  CHECK(is_homotopic(f, g, 4).found);
  // A morphism between bimodules of different size cannot be aligned.
  auto c = cone(identity_morphism(I), "C");
  CHECK(kind_of([&] { align(identity_morphism(c), I, I); }) == ErrorKind::BoundaryMismatch);
}
