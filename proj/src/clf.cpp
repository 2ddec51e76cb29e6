#include "bordered/clf.hpp"

#include <algorithm>
#include <cctype>

#include "bordered/errors.hpp"

namespace bordered::clf {

Letter Letter::inverted() const {
  Letter l = *this;
  l.inverse = !l.inverse;
  return l;
}

std::string to_text(const Letter& l) {
  std::string core = l.is_twist() ? "T[" + to_text(*l.twist) + "]" : l.symbol;
  return l.inverse ? core + "'" : core;
}

std::string to_text(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w.letters) out += to_text(l);
  return out;
}

std::string to_text(const CycleLabel& c) {
  if (c.prefix.empty()) return c.base;
  return to_text(c.prefix) + "@" + c.base;
}

bool operator==(const Letter& a, const Letter& b) { return to_text(a) == to_text(b); }
bool operator==(const Word& a, const Word& b) { return to_text(a) == to_text(b); }
bool operator==(const CycleLabel& a, const CycleLabel& b) { return to_text(a) == to_text(b); }

namespace {

bool cancels(const Letter& a, const Letter& b) { return a.inverse != b.inverse && a.inverted() == b; }

Letter twist_letter(CycleLabel c) {
  Letter l;
  l.twist = std::make_shared<const CycleLabel>(std::move(c));
  return l;
}

}  // namespace

Word reduce(std::vector<Letter> letters) {
  Word w;
  for (auto& l : letters) {
    if (!w.letters.empty() && cancels(w.letters.back(), l))
      w.letters.pop_back();
    else
      w.letters.push_back(std::move(l));
  }
  return w;
}

Word concat(const Word& a, const Word& b) {
  std::vector<Letter> v = a.letters;
  v.insert(v.end(), b.letters.begin(), b.letters.end());
  return reduce(std::move(v));
}

Word inverse(const Word& w) {
  std::vector<Letter> v;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v.push_back(it->inverted());
  return reduce(std::move(v));
}

Word twist_word(const CycleLabel& c) { return Word{{twist_letter(c)}}; }

Word expand(const Word& w) {
  std::vector<Letter> out;
  for (const auto& l : w.letters) {
    if (!l.is_twist() || l.twist->prefix.empty()) {
      out.push_back(l);
      continue;
    }
    Word p = expand(l.twist->prefix);
    Letter core = twist_letter(CycleLabel{{}, l.twist->base});
    core.inverse = l.inverse;
    out.insert(out.end(), p.letters.begin(), p.letters.end());
    out.push_back(core);
    Word pi = inverse(p);
    out.insert(out.end(), pi.letters.begin(), pi.letters.end());
  }
  return reduce(std::move(out));
}

bool equivalent(const Word& a, const Word& b) { return expand(a) == expand(b); }

namespace {

[[noreturn]] void parse_fail(const std::string& text, std::size_t pos, const std::string& what) {
  throw Error(ErrorKind::ParseError, "column " + std::to_string(pos + 1) + " of '" + text + "': " + what);
}

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::size_t matching(const std::string& s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(' || s[i] == '[') ++depth;
    if (s[i] == ')' || s[i] == ']') {
      if (--depth == 0) return i;
    }
  }
  return std::string::npos;
}

}  // namespace

Word parse_word(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (text.empty()) parse_fail(raw, 0, "empty word (write e)");
  if (text == "e") return {};
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    Letter l;
    if (text[i] == 'T' && i + 1 < text.size() && text[i + 1] == '[') {
      std::size_t close = matching(text, i + 1);
      if (close == std::string::npos) parse_fail(text, i, "unbalanced '['");
      l.twist = std::make_shared<const CycleLabel>(parse_label(text.substr(i + 2, close - i - 2)));
      i = close + 1;
    } else if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      l.symbol = text.substr(i, j - i);
      if (l.symbol == "e") parse_fail(text, i, "'e' denotes the empty word and cannot be a letter");
      i = j;
    } else {
      parse_fail(text, i, "expected a letter");
    }
    while (i < text.size() && text[i] == '\'') {
      l.inverse = !l.inverse;
      ++i;
    }
    letters.push_back(std::move(l));
  }
  return reduce(std::move(letters));
}

CycleLabel parse_label(const std::string& raw) {
  std::string text = strip(raw);
  // The base follows the last top-level '@'.
  int depth = 0;
  std::size_t at = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[') ++depth;
    if (text[i] == ']') --depth;
    if (text[i] == '@' && depth == 0) at = i;
  }
  CycleLabel c;
  std::string base = at == std::string::npos ? text : strip(text.substr(at + 1));
  if (at != std::string::npos) c.prefix = parse_word(text.substr(0, at));
  if (base.empty() || !(std::isalpha(static_cast<unsigned char>(base[0])) || base[0] == '_'))
    parse_fail(text, at == std::string::npos ? 0 : at + 1, "expected a cycle symbol");
  for (char ch : base)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) parse_fail(text, 0, "bad cycle symbol");
  c.base = base;
  return c;
}

Word AbstractCLF::initial() const { return concat(fl, fr); }

Word AbstractCLF::resulting() const { return concat(concat(fl, twist_word(cycle)), fr); }

AbstractCLF make_clf(Word fl, Word fr, CycleLabel cycle) {
  return AbstractCLF{reduce(std::move(fl.letters)), reduce(std::move(fr.letters)),
                     CycleLabel{reduce(std::move(cycle.prefix.letters)), std::move(cycle.base)}};
}

Expr identity(Word w, std::string left, std::string right) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Identity;
  n->word = std::move(w);
  n->left = std::move(left);
  n->right = std::move(right);
  return n;
}

Expr crit(AbstractCLF c, std::string left, std::string right, std::string middle) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Crit;
  n->clf = std::move(c);
  n->left = std::move(left);
  n->right = std::move(right);
  n->middle = middle.empty() ? n->left : std::move(middle);
  return n;
}

Expr compose_h(Expr left, Expr right) {
  if (left->right != right->left)
    throw Error(ErrorKind::BoundaryMismatch, "horizontal composition: right boundary '" + left->right +
                                                 "' does not match left boundary '" + right->left + "'");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::HComp;
  n->left = left->left;
  n->right = right->right;
  n->first = std::move(left);
  n->second = std::move(right);
  return n;
}

Expr compose_v(Expr bottom, Expr top) {
  Word r = resulting_word(bottom), i = initial_word(top);
  if (!equivalent(r, i))
    throw Error(ErrorKind::BoundaryMismatch,
                "vertical composition: resulting word " + to_text(r) + " differs from initial word " + to_text(i));
  if (bottom->left != top->left || bottom->right != top->right)
    throw Error(ErrorKind::BoundaryMismatch, "vertical composition: side boundaries differ");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::VComp;
  n->left = bottom->left;
  n->right = bottom->right;
  n->first = std::move(bottom);
  n->second = std::move(top);
  return n;
}

Word initial_word(const Expr& e) {
  switch (e->kind) {
    case Node::Kind::Identity: return e->word;
    case Node::Kind::Crit: return e->clf.initial();
    case Node::Kind::HComp: return concat(initial_word(e->first), initial_word(e->second));
    case Node::Kind::VComp: return initial_word(e->first);
  }
  return {};
}

Word resulting_word(const Expr& e) {
  switch (e->kind) {
    case Node::Kind::Identity: return e->word;
    case Node::Kind::Crit: return e->clf.resulting();
    case Node::Kind::HComp: return concat(resulting_word(e->first), resulting_word(e->second));
    case Node::Kind::VComp: return resulting_word(e->second);
  }
  return {};
}

std::size_t vcomp_count(const Expr& e) {
  if (e->kind == Node::Kind::Identity || e->kind == Node::Kind::Crit) return 0;
  return (e->kind == Node::Kind::VComp ? 1 : 0) + vcomp_count(e->first) + vcomp_count(e->second);
}

std::size_t crit_count(const Expr& e) {
  if (e->kind == Node::Kind::Crit) return 1;
  if (e->kind == Node::Kind::Identity) return 0;
  return crit_count(e->first) + crit_count(e->second);
}

std::size_t leaf_count(const Expr& e) {
  if (e->kind == Node::Kind::Crit || e->kind == Node::Kind::Identity) return 1;
  return leaf_count(e->first) + leaf_count(e->second);
}

std::string to_text(const Expr& e) {
  auto marks = [&](std::initializer_list<std::pair<const char*, const std::string*>> ms) {
    std::string out;
    for (auto [k, v] : ms)
      if (!v->empty()) out += std::string(", ") + k + "=" + *v;
    return out;
  };
  switch (e->kind) {
    case Node::Kind::Identity:
      return "ID(" + to_text(e->word) + marks({{"l", &e->left}, {"r", &e->right}}) + ")";
    case Node::Kind::Crit: {
      std::string mid = e->middle == e->left ? std::string() : e->middle;
      return "CRIT(fl=" + to_text(e->clf.fl) + ", fr=" + to_text(e->clf.fr) + ", vc=" + to_text(e->clf.cycle) +
             marks({{"l", &e->left}, {"r", &e->right}, {"m", &mid}}) + ")";
    }
    case Node::Kind::HComp: return "H(" + to_text(e->first) + ", " + to_text(e->second) + ")";
    case Node::Kind::VComp: return "V(" + to_text(e->first) + ", " + to_text(e->second) + ")";
  }
  return {};
}

namespace {

// Splits at top-level commas.
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(strip(cur));
  return out;
}

}  // namespace

Expr parse_expr(const std::string& raw) {
  std::string text = strip(raw);
  std::size_t open = text.find('(');
  if (open == std::string::npos || text.back() != ')') parse_fail(text, 0, "expected NAME(...)");
  if (matching(text, open) != text.size() - 1) parse_fail(text, open, "unbalanced parentheses");
  std::string head = strip(text.substr(0, open));
  auto args = split_args(text.substr(open + 1, text.size() - open - 2));
  std::map<std::string, std::string> named;
  std::vector<std::string> positional;
  for (auto& a : args) {
    auto eq = a.find('=');
    bool is_named = eq != std::string::npos && a.find('(') > eq && a.find('[') > eq;
    if (is_named)
      named[strip(a.substr(0, eq))] = strip(a.substr(eq + 1));
    else
      positional.push_back(a);
  }
  auto opt = [&](const char* k) {
    auto it = named.find(k);
    return it == named.end() ? std::string() : it->second;
  };
  if (head == "ID") {
    if (positional.size() != 1) parse_fail(text, open, "ID takes one word");
    return identity(parse_word(positional[0]), opt("l"), opt("r"));
  }
  if (head == "CRIT") {
    for (const char* k : {"fl", "fr", "vc"})
      if (!named.count(k)) parse_fail(text, open, std::string("CRIT needs ") + k + "=");
    return crit(make_clf(parse_word(named["fl"]), parse_word(named["fr"]), parse_label(named["vc"])), opt("l"),
                opt("r"), opt("m"));
  }
  if (head == "H" || head == "V") {
    if (positional.size() != 2) parse_fail(text, open, head + " takes two expressions");
    Expr a = parse_expr(positional[0]);
    Expr b = parse_expr(positional[1]);
    return head == "H" ? compose_h(a, b) : compose_v(a, b);
  }
  parse_fail(text, 0, "unknown constructor '" + head + "'");
}

Expr factor_leaf(const Expr& leaf) {
  if (leaf->kind != Node::Kind::Crit) return leaf;
  const auto& c = leaf->clf;
  Expr core = crit(make_clf({}, {}, c.cycle), leaf->middle, leaf->middle, leaf->middle);
  return compose_h(compose_h(identity(c.fl, leaf->left, leaf->middle), core),
                   identity(c.fr, leaf->middle, leaf->right));
}

NormalizeResult normalize_horizontal(const Expr& e) {
  NormalizeResult r;
  if (e->kind == Node::Kind::Identity || e->kind == Node::Kind::Crit) {
    r.expr = e;
    return r;
  }
  auto a = normalize_horizontal(e->first);
  auto b = normalize_horizontal(e->second);
  r.rewrites = a.rewrites + b.rewrites;
  if (e->kind == Node::Kind::HComp) {
    r.expr = compose_h(a.expr, b.expr);
    return r;
  }
  Word shared = resulting_word(a.expr);
  Expr bridge = identity(inverse(shared), a.expr->right, b.expr->left);
  r.expr = compose_h(compose_h(a.expr, bridge), b.expr);
  ++r.rewrites;
  return r;
}

std::vector<Expr> horizontal_leaves(const Expr& e) {
  if (e->kind == Node::Kind::VComp)
    throw Error(ErrorKind::NotInTwistForm, "expression still contains a vertical composition");
  if (e->kind != Node::Kind::HComp) return {e};
  auto a = horizontal_leaves(e->first);
  auto b = horizontal_leaves(e->second);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Expr chain(const std::vector<Expr>& leaves) {
  if (leaves.empty()) throw Error(ErrorKind::InvalidArgument, "empty chain");
  Expr out = leaves.front();
  for (std::size_t i = 1; i < leaves.size(); ++i) out = compose_h(out, leaves[i]);
  return out;
}

std::vector<Expr> prune_identities(std::vector<Expr> leaves) {
  std::vector<Expr> out;
  for (auto& l : leaves)
    if (!(l->kind == Node::Kind::Identity && l->word.empty() && l->left == l->right)) out.push_back(l);
  if (out.empty() && !leaves.empty()) out.push_back(leaves.front());
  return out;
}

std::vector<Expr> merge_identities(std::vector<Expr> leaves) {
  std::vector<Expr> out;
  for (auto& l : leaves) {
    if (!out.empty() && out.back()->kind == Node::Kind::Identity && l->kind == Node::Kind::Identity)
      out.back() = identity(concat(out.back()->word, l->word), out.back()->left, l->right);
    else
      out.push_back(l);
  }
  return out;
}

Expr hurwitz(const Expr& e, std::size_t i) {
  auto leaves = prune_identities(horizontal_leaves(e));
  auto twist_form = [](const Expr& l) { return l->kind == Node::Kind::Crit && l->clf.pure_twist(); };
  if (i + 1 >= leaves.size() || !twist_form(leaves[i]) || !twist_form(leaves[i + 1]))
    throw Error(ErrorKind::NotInTwistForm, "positions " + std::to_string(i) + ", " + std::to_string(i + 1) +
                                               " are not adjacent pure-twist critical leaves");
  const Expr& a = leaves[i];
  const Expr& b = leaves[i + 1];
  CycleLabel moved{concat(twist_word(a->clf.cycle), b->clf.cycle.prefix), b->clf.cycle.base};
  Expr first = crit(make_clf({}, {}, moved), a->left, a->right, a->middle);
  Expr second = crit(a->clf, b->left, b->right, b->middle);
  leaves[i] = first;
  leaves[i + 1] = second;
  return chain(leaves);
}

StandardForm standard_form(const Expr& e, const AbstractCLF& wg) {
  if (!wg.pure_twist()) throw Error(ErrorKind::NotInTwistForm, "the designated leaf must have empty f_l and f_r");
  const Word& q = wg.cycle.prefix;
  StandardForm out;
  std::vector<Expr> leaves;
  for (const auto& l : horizontal_leaves(e)) {
    if (l->kind != Node::Kind::Crit) {
      leaves.push_back(l);
      continue;
    }
    if (l->clf.cycle.base != wg.cycle.base)
      throw Error(ErrorKind::IncompatibleCycle, "cycle " + to_text(l->clf.cycle) + " is not a conjugate of " +
                                                    to_text(wg.cycle) + " at the word level");
    Word conj = concat(l->clf.cycle.prefix, inverse(q));
    out.conjugators.push_back(conj);
    leaves.push_back(identity(l->clf.fl, l->left, l->middle));
    leaves.push_back(identity(conj, l->middle, l->middle));
    leaves.push_back(crit(wg, l->middle, l->middle, l->middle));
    leaves.push_back(identity(inverse(conj), l->middle, l->middle));
    leaves.push_back(identity(l->clf.fr, l->middle, l->right));
  }
  leaves = merge_identities(std::move(leaves));
  if (leaves.front()->kind != Node::Kind::Identity)
    leaves.insert(leaves.begin(), identity({}, leaves.front()->left, leaves.front()->left));
  if (leaves.back()->kind != Node::Kind::Identity)
    leaves.push_back(identity({}, leaves.back()->right, leaves.back()->right));
  out.expr = chain(leaves);
  return out;
}

BimodulePtr bimodule_of_word(const Word& w, const Assignment& a, const BoxOptions& options) {
  auto letter = [&](const Letter& l) {
    auto it = a.letters.find(to_text(l));
    if (it != a.letters.end()) return it->second;
    if (a.default_letter) return a.default_letter;
    throw Error(ErrorKind::AssignmentIncomplete, "no bimodule assigned to letter " + to_text(l));
  };
  if (w.empty()) {
    if (!a.unit) throw Error(ErrorKind::AssignmentIncomplete, "no unit bimodule assigned");
    return a.unit;
  }
  BimodulePtr out = letter(w.letters.front());
  for (std::size_t i = 1; i < w.letters.size(); ++i) out = box_bimodules(out, letter(w.letters[i]), options);
  return out;
}

DAMorphism align(const DAMorphism& f, const BimodulePtr& source, const BimodulePtr& target) {
  if (f.source_ptr() == source && f.target_ptr() == target) return f;
  auto s = find_relabeling(f.source(), *source);
  auto t = find_relabeling(f.target(), *target);
  if (!s || !t)
    throw Error(ErrorKind::BoundaryMismatch, "morphism " + f.source().name() + " -> " + f.target().name() +
                                                 " does not match boundary bimodules " + source->name() + " -> " +
                                                 target->name());
  return transport(f, source, *s, target, *t);
}

DAMorphism evaluate(const Expr& e, const Assignment& a, const BoxOptions& options) {
  switch (e->kind) {
    case Node::Kind::Identity:
      return identity_morphism(bimodule_of_word(e->word, a, options));
    case Node::Kind::Crit: {
      std::string key = to_text(e->clf.cycle);
      auto it = a.crits.find(key);
      const DAMorphism* f = nullptr;
      if (it != a.crits.end())
        f = &it->second;
      else if (a.default_crit)
        f = &*a.default_crit;
      else
        throw Error(ErrorKind::AssignmentIncomplete, "no morphism assigned to critical leaf with cycle " + key);
      return align(*f, bimodule_of_word(e->clf.initial(), a, options),
                   bimodule_of_word(e->clf.resulting(), a, options));
    }
    case Node::Kind::HComp:
      return box_morphisms(evaluate(e->first, a, options), evaluate(e->second, a, options), options);
    case Node::Kind::VComp: {
      DAMorphism bottom = evaluate(e->first, a, options);
      DAMorphism top = evaluate(e->second, a, options);
      DAMorphism moved = align(top, bottom.target_ptr(), top.target_ptr());
      return compose(moved, bottom);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown expression node");
}

}  // namespace bordered::clf
