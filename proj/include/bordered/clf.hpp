#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bordered/box.hpp"
#include "bordered/morphism.hpp"

namespace bordered::clf {

struct CycleLabel;

/// A formal mapping-class generator, or the twist T(label) about a cycle.
struct Letter {
  std::string symbol;                        // plain letters
  std::shared_ptr<const CycleLabel> twist;   // twist letters
  bool inverse = false;

  bool is_twist() const { return static_cast<bool>(twist); }
  Letter inverted() const;
};

/// Letters in application order: [l1, ..., ln] is ln o ... o l1.
/// Always freely reduced.
struct Word {
  std::vector<Letter> letters;
  bool empty() const { return letters.empty(); }
};

/// Vanishing cycle written prefix@base. T(P@s) stands for the word
/// P T(s) P^-1, so the prefix acts on the base from the right.
struct CycleLabel {
  Word prefix;
  std::string base;
};

std::string to_text(const Letter& l);
std::string to_text(const Word& w);
std::string to_text(const CycleLabel& c);
bool operator==(const Letter& a, const Letter& b);
bool operator==(const Word& a, const Word& b);
bool operator==(const CycleLabel& a, const CycleLabel& b);

Word reduce(std::vector<Letter> letters);
Word concat(const Word& a, const Word& b);
Word inverse(const Word& w);
Word twist_word(const CycleLabel& c);
/// Recursively replaces T(P@s) by P T(e@s) P^-1 and reduces.
Word expand(const Word& w);
/// Equality of the expanded, reduced words.
bool equivalent(const Word& a, const Word& b);

/// Throws Error(ParseError).
Word parse_word(const std::string& text);
CycleLabel parse_label(const std::string& text);

struct AbstractCLF {
  Word fl, fr;
  CycleLabel cycle;
  Word initial() const;    // fl then fr
  Word resulting() const;  // fl, T(cycle), fr
  bool pure_twist() const { return fl.empty() && fr.empty(); }
};

AbstractCLF make_clf(Word fl, Word fr, CycleLabel cycle);

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Identity, Crit, HComp, VComp };
  Kind kind = Kind::Identity;
  Word word;         // Identity
  AbstractCLF clf;   // Crit
  Expr first, second;  // HComp: left, right. VComp: bottom, top.
  // Formal boundary circles; the middle marker labels the circle a Crit leaf
  // is factored through.
  std::string left, right, middle;
};

Expr identity(Word w, std::string left = "", std::string right = "");
Expr crit(AbstractCLF c, std::string left = "", std::string right = "", std::string middle = "");
/// Throws Error(BoundaryMismatch) when the markers disagree.
Expr compose_h(Expr left, Expr right);
/// Throws Error(BoundaryMismatch) unless resulting(bottom) = initial(top).
Expr compose_v(Expr bottom, Expr top);

Word initial_word(const Expr& e);
Word resulting_word(const Expr& e);
std::size_t vcomp_count(const Expr& e);
std::size_t crit_count(const Expr& e);
std::size_t leaf_count(const Expr& e);
std::string to_text(const Expr& e);
/// Parses ID(..), CRIT(fl=.., fr=.., vc=..), H(.., ..), V(.., ..).
Expr parse_expr(const std::string& text);

/// Identity(fl) o_h Crit(e, e, cycle) o_h Identity(fr).
Expr factor_leaf(const Expr& leaf);

struct NormalizeResult {
  Expr expr;
  std::size_t rewrites = 0;
};
/// W1 o_v W2  ->  W1 o_h Identity(f^-1) o_h W2 with f the shared word,
/// applied bottom-up until no VComp remains.
NormalizeResult normalize_horizontal(const Expr& e);

/// Leaves of a VComp-free expression, left to right.
std::vector<Expr> horizontal_leaves(const Expr& e);
/// Left-nested HComp chain.
Expr chain(const std::vector<Expr>& leaves);
/// Drops Identity(e) leaves whose markers agree (keeps one if nothing else remains).
std::vector<Expr> prune_identities(std::vector<Expr> leaves);
/// I(u) o_h I(v) -> I(u then v).
std::vector<Expr> merge_identities(std::vector<Expr> leaves);

/// Swaps the Crit leaves at positions i, i+1 of the pruned chain:
/// Crit(z) o_h Crit(z')  ->  Crit(T(z) P'@s') o_h Crit(z).
/// Throws Error(NotInTwistForm).
Expr hurwitz(const Expr& e, std::size_t i);

struct StandardForm {
  Expr expr;
  std::vector<Word> conjugators;  // P Q^-1 for each Crit leaf, left to right
};
/// Rewrites every Crit leaf as I(P Q^-1) o_h Wg o_h I(Q P^-1), where P@s is
/// its cycle and Q@s that of Wg, then merges neighbouring identities.
/// Throws Error(IncompatibleCycle) on a different base and
/// Error(NotInTwistForm) if Wg is not a pure twist.
StandardForm standard_form(const Expr& e, const AbstractCLF& wg);

struct Assignment {
  BimodulePtr unit;
  std::map<std::string, BimodulePtr> letters;  // keyed by letter text
  BimodulePtr default_letter;
  std::map<std::string, DAMorphism> crits;     // keyed by cycle label text
  std::optional<DAMorphism> default_crit;
};

/// Box product of the letter bimodules in word order; the unit for e.
/// Throws Error(AssignmentIncomplete).
BimodulePtr bimodule_of_word(const Word& w, const Assignment& a, const BoxOptions& options = {});

/// HComp -> box_morphisms, VComp -> compose, Identity -> identity_morphism,
/// Crit -> the assigned morphism moved onto the boundary bimodules. Boundary
/// bimodules are matched up to generator relabeling; failures raise
/// Error(BoundaryMismatch).
DAMorphism evaluate(const Expr& e, const Assignment& a, const BoxOptions& options = {});

/// Moves `f` onto the given source and target along generator relabelings.
/// Throws Error(BoundaryMismatch) when no relabeling exists.
DAMorphism align(const DAMorphism& f, const BimodulePtr& source, const BimodulePtr& target);

}  // namespace bordered::clf
