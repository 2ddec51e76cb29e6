#include "bordered/document.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bordered/box.hpp"
#include "bordered/errors.hpp"
#include "bordered/strand_algebra.hpp"

namespace bordered::doc {

std::string to_string(const Location& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

void Document::declare(const std::string& name, DeclKind kind, Location where) {
  auto it = declared_at.find(name);
  if (it != declared_at.end())
    throw Error(ErrorKind::DuplicateName,
                to_string(where) + ": '" + name + "' already declared at " + to_string(it->second));
  declared_at[name] = where;
  order.emplace_back(name, kind);
}

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw Error(ErrorKind::UnresolvedReference, std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

}  // namespace

const PointedMatchedCircle& Document::pmc(const std::string& n) const { return lookup(pmcs, n, "pointed matched circle"); }
const AlgebraPtr& Document::algebra(const std::string& n) const { return lookup(algebras, n, "algebra"); }
const BimodulePtr& Document::bimodule(const std::string& n) const { return lookup(bimodules, n, "bimodule"); }
const DAMorphism& Document::morphism(const std::string& n) const { return lookup(morphisms, n, "morphism"); }
const clf::Expr& Document::expr(const std::string& n) const { return lookup(clfs, n, "CLF expression"); }
const clf::Assignment& Document::assignment(const std::string& n) const { return lookup(assignments, n, "assignment"); }

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Source text with comments blanked out so offsets keep their meaning.
class Source {
 public:
  explicit Source(const std::string& raw) : text_(raw) {
    bool comment = false;
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        comment = false;
        line_starts_.push_back(i + 1);
        continue;
      }
      if (text_[i] == '#') comment = true;
      if (comment) text_[i] = ' ';
    }
  }
  const std::string& text() const { return text_; }
  Location locate(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return {line, offset - line_starts_[line - 1] + 1};
  }

 private:
  std::string text_;
  std::vector<std::size_t> line_starts_;
};

struct Piece {
  std::string text;
  std::size_t offset = 0;
};

// Whitespace split that keeps bracketed and parenthesised runs together.
std::vector<Piece> tokenize(const Piece& p) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = std::string::npos;
  for (std::size_t i = 0; i <= p.text.size(); ++i) {
    char c = i < p.text.size() ? p.text[i] : ' ';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (is_space(c) && depth <= 0) {
      if (start != std::string::npos) out.push_back({p.text.substr(start, i - start), p.offset + start});
      start = std::string::npos;
    } else if (start == std::string::npos) {
      start = i;
    }
  }
  return out;
}

Piece trim(const Piece& p) {
  std::size_t b = 0, e = p.text.size();
  while (b < e && is_space(p.text[b])) ++b;
  while (e > b && is_space(p.text[e - 1])) --e;
  return {p.text.substr(b, e - b), p.offset + b};
}

// Split at `sep` outside brackets and parentheses.
std::vector<Piece> split_top(const Piece& p, char sep) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < p.text.size(); ++i) {
    char c = p.text[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim({p.text.substr(start, i - start), p.offset + start}));
      start = i + 1;
    }
  }
  out.push_back(trim({p.text.substr(start), p.offset + start}));
  return out;
}

std::size_t find_top(const std::string& s, char sep) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(' || s[i] == '[') ++depth;
    if (s[i] == ')' || s[i] == ']') --depth;
    if (s[i] == sep && depth == 0) return i;
  }
  return std::string::npos;
}

struct Statement {
  Piece head;
  bool has_body = false;
  Piece body;
};

class Parser {
 public:
  Parser(Document& doc, const std::string& text) : doc_(doc), src_(text) {}

  void run() {
    for (const auto& st : statements()) {
      try {
        statement(st);
      } catch (const Error& e) {
        std::string msg = e.what();
        // Messages from this parser already carry a location.
        if (!msg.empty() && std::isdigit(static_cast<unsigned char>(msg[0])))
          throw;
        throw Error(e.kind(), to_string(src_.locate(st.head.offset)) + ": " + msg);
      }
    }
  }

 private:
  Document& doc_;
  Source src_;

  [[noreturn]] void fail(std::size_t offset, const std::string& msg, ErrorKind kind = ErrorKind::ParseError) const {
    throw Error(kind, to_string(src_.locate(offset)) + ": " + msg);
  }

  Location at(std::size_t offset) const { return src_.locate(offset); }

  // A statement ends at a newline outside brackets, or at the brace that
  // closes its body.
  std::vector<Statement> statements() const {
    const std::string& t = src_.text();
    std::vector<Statement> out;
    std::size_t i = 0;
    while (i < t.size()) {
      while (i < t.size() && is_space(t[i])) ++i;
      if (i >= t.size()) break;
      std::size_t start = i;
      int depth = 0;
      Statement st;
      while (i < t.size()) {
        char c = t[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == '{') {
          st.head = trim({t.substr(start, i - start), start});
          std::size_t close = t.find('}', i + 1);
          if (close == std::string::npos) fail(i, "unterminated '{'");
          st.has_body = true;
          st.body = {t.substr(i + 1, close - i - 1), i + 1};
          i = close + 1;
          std::size_t eol = i;
          while (eol < t.size() && t[eol] != '\n') {
            if (!is_space(t[eol])) fail(eol, "unexpected text after '}'");
            ++eol;
          }
          break;
        }
        if (c == '}') fail(i, "unmatched '}'");
        if (c == '\n' && depth <= 0) break;
        ++i;
      }
      if (!st.has_body) {
        if (depth > 0) fail(start, "unbalanced brackets");
        st.head = trim({t.substr(start, i - start), start});
      }
      out.push_back(std::move(st));
    }
    return out;
  }

  std::vector<Piece> body_items(const Statement& st) const {
    std::vector<Piece> out;
    for (auto& p : split_top(st.body, ';'))
      if (!p.text.empty()) out.push_back(p);
    return out;
  }

  void expect_tokens(const std::vector<Piece>& tok, std::size_t n, std::size_t offset, const char* form) const {
    if (tok.size() != n) fail(offset, std::string("expected ") + form);
  }

  void statement(const Statement& st) {
    auto tok = tokenize(st.head);
    const std::string& kw = tok.at(0).text;
    if (kw == "PMC") return pmc(st, tok);
    if (kw == "ALGEBRA") return algebra(st, tok);
    if (kw == "BIMODULE") return bimodule(st, tok);
    if (kw == "MORPHISM") return morphism(st, tok);
    if (kw == "CLF") return clf_decl(st);
    if (kw == "ASSIGN") return assign(st, tok);
    if (kw == "RUN") {
      if (st.has_body || tok.size() < 2) fail(st.head.offset, "expected RUN <command> ...");
      Command c;
      for (std::size_t i = 1; i < tok.size(); ++i) c.args.push_back(tok[i].text);
      c.where = at(st.head.offset);
      doc_.commands.push_back(std::move(c));
      return;
    }
    fail(tok[0].offset, "expected PMC, ALGEBRA, BIMODULE, MORPHISM, CLF, ASSIGN or RUN, found '" + kw + "'");
  }

  int integer(const Piece& p) const {
    try {
      std::size_t used = 0;
      int v = std::stoi(p.text, &used);
      if (used == p.text.size()) return v;
    } catch (const std::exception&) {
    }
    fail(p.offset, "expected an integer, found '" + p.text + "'");
  }

  void pmc(const Statement& st, const std::vector<Piece>& tok) {
    if (st.has_body || tok.size() < 5 || tok[2].text != "GENUS" || tok[4].text != "PAIRS")
      fail(st.head.offset, "expected PMC <name> GENUS <g> PAIRS (a b) ...");
    int g = integer(tok[3]);
    std::vector<PointPair> pairs;
    for (std::size_t i = 5; i < tok.size(); ++i) {
      const auto& p = tok[i];
      if (p.text.size() < 2 || p.text.front() != '(' || p.text.back() != ')')
        fail(p.offset, "expected a pair (a b), found '" + p.text + "'");
      auto inner = tokenize({p.text.substr(1, p.text.size() - 2), p.offset + 1});
      if (inner.size() != 2) fail(p.offset, "a pair has exactly two points");
      pairs.emplace_back(integer(inner[0]), integer(inner[1]));
    }
    auto c = make_pmc(g, pairs);
    doc_.declare(tok[1].text, DeclKind::Pmc, at(tok[1].offset));
    doc_.pmcs.emplace(tok[1].text, std::move(c));
  }

  template <class F>
  auto resolve(const Piece& p, F&& f) const -> decltype(f(p.text)) {
    try {
      return f(p.text);
    } catch (const Error& e) {
      fail(p.offset, e.what(), e.kind());
    }
  }

  void algebra(const Statement& st, const std::vector<Piece>& tok) {
    if (st.has_body || tok.size() != 4 || tok[2].text != "FROM") fail(st.head.offset, "expected ALGEBRA <name> FROM <pmc>");
    const auto& c = resolve(tok[3], [&](const std::string& n) -> const PointedMatchedCircle& { return doc_.pmc(n); });
    auto a = std::make_shared<const DGAlgebra>(build_dga(c, tok[1].text));
    doc_.declare(tok[1].text, DeclKind::Algebra, at(tok[1].offset));
    doc_.algebras.emplace(tok[1].text, std::move(a));
  }

  std::size_t element(const DGAlgebra& a, const Piece& p) const {
    auto i = a.find(p.text);
    if (!i) fail(p.offset, "'" + p.text + "' is not a basis element of " + a.name(), ErrorKind::UnknownSymbol);
    return *i;
  }

  std::uint32_t generator(const TypeDABimodule* m, const std::vector<Generator>* gens, const Piece& p) const {
    if (m) {
      auto i = m->find(p.text);
      if (!i) fail(p.offset, "'" + p.text + "' is not a generator of " + m->name(), ErrorKind::UnknownSymbol);
      return static_cast<std::uint32_t>(*i);
    }
    for (std::size_t i = 0; i < gens->size(); ++i)
      if ((*gens)[i].name == p.text) return static_cast<std::uint32_t>(i);
    fail(p.offset, "undeclared generator '" + p.text + "'", ErrorKind::UnknownSymbol);
  }

  // "<kw> x [a1 a2] = b : y + ..." into the accumulator.
  void entry(const Piece& item, const char* kw, const DGAlgebra& left, const DGAlgebra& right,
             const TypeDABimodule* src, const std::vector<Generator>* src_gens, const TypeDABimodule* dst,
             const std::vector<Generator>* dst_gens, Table& table) const {
    std::size_t eq = find_top(item.text, '=');
    if (eq == std::string::npos) fail(item.offset, std::string("expected ") + kw + " x [inputs] = b : y + ...");
    auto lhs = tokenize({item.text.substr(0, eq), item.offset});
    if (lhs.size() != 3 || lhs[2].text.front() != '[' || lhs[2].text.back() != ']')
      fail(item.offset, std::string("expected ") + kw + " x [inputs] on the left of '='");
    Key key;
    key.gen = generator(src, src_gens, lhs[1]);
    const Piece& in = lhs[2];
    for (const auto& a : tokenize({in.text.substr(1, in.text.size() - 2), in.offset + 1}))
      key.inputs.push_back(static_cast<std::uint32_t>(element(right, a)));
    Piece rhs = trim({item.text.substr(eq + 1), item.offset + eq + 1});
    std::vector<Term> terms;
    if (rhs.text != "0") {
      for (const auto& t : split_top(rhs, '+')) {
        std::size_t colon = t.text.rfind(':');
        if (colon == std::string::npos || find_top(t.text, ':') == std::string::npos)
          fail(t.offset, "expected a term b : y, found '" + t.text + "'");
        Piece b = trim({t.text.substr(0, colon), t.offset});
        Piece y = trim({t.text.substr(colon + 1), t.offset + colon + 1});
        terms.push_back({static_cast<std::uint32_t>(element(left, b)), generator(dst, dst_gens, y)});
      }
    }
    auto& span = table[key];
    std::vector<Term> all = span;
    all.insert(all.end(), terms.begin(), terms.end());
    span = reduce_terms(std::move(all));
    if (span.empty()) table.erase(key);
  }

  BimodulePtr renamed(const BimodulePtr& m, const std::string& name) const {
    return std::make_shared<const TypeDABimodule>(name, m->left_ptr(), m->right_ptr(), m->generators(), m->d1());
  }

  void bimodule(const Statement& st, const std::vector<Piece>& tok) {
    if (tok.size() < 2) fail(st.head.offset, "expected BIMODULE <name> ...");
    const std::string& name = tok[1].text;
    BimodulePtr m;
    if (tok.size() >= 3 && tok[2].text == "=") {
      if (st.has_body) fail(st.body.offset, "a derived BIMODULE takes no body");
      std::string op = tok.size() > 3 ? tok[3].text : "";
      if (op == "IDENTITY" && tok.size() == 5) {
        m = identity_bimodule(resolve(tok[4], [&](const std::string& n) { return doc_.algebra(n); }), name);
      } else if (op == "BOX" && tok.size() == 6) {
        auto n1 = resolve(tok[4], [&](const std::string& n) { return doc_.bimodule(n); });
        auto n2 = resolve(tok[5], [&](const std::string& n) { return doc_.bimodule(n); });
        m = renamed(box_bimodules(n1, n2), name);
      } else if (op == "CONE" && tok.size() == 5) {
        m = cone(resolve(tok[4], [&](const std::string& n) { return doc_.morphism(n); }), name);
      } else {
        fail(st.head.offset, "expected BIMODULE <name> = IDENTITY <A> | BOX <N> <M> | CONE <F>");
      }
    } else {
      if (tok.size() != 5 || tok[2].text != "OVER" || !st.has_body)
        fail(st.head.offset, "expected BIMODULE <name> OVER <A1> <A2> { ... }");
      auto a1 = resolve(tok[3], [&](const std::string& n) { return doc_.algebra(n); });
      auto a2 = resolve(tok[4], [&](const std::string& n) { return doc_.algebra(n); });
      std::vector<Generator> gens;
      Table table;
      for (const auto& item : body_items(st)) {
        auto t = tokenize(item);
        if (t[0].text == "GEN") {
          if (t.size() != 4 || t[2].text.rfind("L=", 0) != 0 || t[3].text.rfind("R=", 0) != 0)
            fail(item.offset, "expected GEN x L=<idempotent> R=<idempotent>");
          for (const auto& g : gens)
            if (g.name == t[1].text) fail(t[1].offset, "generator '" + g.name + "' declared twice", ErrorKind::DuplicateName);
          Piece l{t[2].text.substr(2), t[2].offset + 2}, r{t[3].text.substr(2), t[3].offset + 2};
          gens.push_back({t[1].text, element(*a1, l), element(*a2, r)});
        } else if (t[0].text == "D1") {
          entry(item, "D1", *a1, *a2, nullptr, &gens, nullptr, &gens, table);
        } else {
          fail(item.offset, "expected GEN or D1, found '" + t[0].text + "'");
        }
      }
      m = make_bimodule(name, a1, a2, std::move(gens), std::move(table));
    }
    doc_.declare(name, DeclKind::Bimodule, at(tok[1].offset));
    doc_.bimodules.emplace(name, std::move(m));
  }

  void morphism(const Statement& st, const std::vector<Piece>& tok) {
    if (tok.size() < 2) fail(st.head.offset, "expected MORPHISM <name> ...");
    const std::string& name = tok[1].text;
    auto bim = [&](const Piece& p) { return resolve(p, [&](const std::string& n) { return doc_.bimodule(n); }); };
    auto mor = [&](const Piece& p) -> const DAMorphism& {
      return resolve(p, [&](const std::string& n) -> const DAMorphism& { return doc_.morphism(n); });
    };
    std::optional<DAMorphism> f;
    if (tok.size() >= 3 && tok[2].text == "=") {
      if (st.has_body) fail(st.body.offset, "a derived MORPHISM takes no body");
      std::string op = tok.size() > 3 ? tok[3].text : "";
      std::size_t n = tok.size();
      if (op == "IDENTITY" && n == 5) f = identity_morphism(bim(tok[4]));
      else if (op == "ZERO" && n == 6) f = zero_morphism(bim(tok[4]), bim(tok[5]));
      else if (op == "COMPOSE" && n == 6) f = compose(mor(tok[4]), mor(tok[5]));
      else if (op == "BOX" && n == 6) f = box_morphisms(mor(tok[4]), mor(tok[5]));
      else if (op == "SUM" && n == 6) f = add(mor(tok[4]), mor(tok[5]));
      else if (op == "DIFF" && n == 5) f = morphism_differential(mor(tok[4]));
      else
        fail(st.head.offset,
             "expected MORPHISM <name> = IDENTITY M | ZERO M N | COMPOSE G F | BOX F G | SUM F G | DIFF H");
    } else {
      if (tok.size() != 6 || tok[2].text != "FROM" || tok[4].text != "TO" || !st.has_body)
        fail(st.head.offset, "expected MORPHISM <name> FROM <M> TO <N> { ... }");
      auto src = bim(tok[3]);
      auto dst = bim(tok[5]);
      Table table;
      for (const auto& item : body_items(st)) {
        auto t = tokenize(item);
        if (t[0].text != "F") fail(item.offset, "expected F x [inputs] = b : y + ...");
        entry(item, "F", src->left_algebra(), src->right_algebra(), src.get(), nullptr, dst.get(), nullptr, table);
      }
      f = make_morphism(src, dst, std::move(table));
    }
    doc_.declare(name, DeclKind::Morphism, at(tok[1].offset));
    doc_.morphisms.emplace(name, std::move(*f));
  }

  void clf_decl(const Statement& st) {
    std::size_t eq = st.head.text.find('=');
    auto tok = tokenize({st.head.text.substr(0, eq == std::string::npos ? st.head.text.size() : eq), st.head.offset});
    if (st.has_body || eq == std::string::npos || tok.size() != 2) fail(st.head.offset, "expected CLF <name> = <expression>");
    Piece body = trim({st.head.text.substr(eq + 1), st.head.offset + eq + 1});
    clf::Expr e;
    try {
      e = clf::parse_expr(body.text);
    } catch (const Error& err) {
      fail(body.offset, err.what(), err.kind());
    }
    doc_.declare(tok[1].text, DeclKind::Clf, at(tok[1].offset));
    doc_.clfs.emplace(tok[1].text, std::move(e));
  }

  void assign(const Statement& st, const std::vector<Piece>& tok) {
    if (tok.size() != 2 || !st.has_body) fail(st.head.offset, "expected ASSIGN <name> { ... }");
    clf::Assignment a;
    auto bim = [&](const Piece& p) { return resolve(p, [&](const std::string& n) { return doc_.bimodule(n); }); };
    auto mor = [&](const Piece& p) -> const DAMorphism& {
      return resolve(p, [&](const std::string& n) -> const DAMorphism& { return doc_.morphism(n); });
    };
    for (const auto& item : body_items(st)) {
      auto t = tokenize(item);
      const std::string& kw = t[0].text;
      if (kw == "UNIT" && t.size() == 2) {
        a.unit = bim(t[1]);
      } else if (kw == "DEFAULT" && t.size() == 2) {
        a.default_letter = bim(t[1]);
      } else if (kw == "CRITDEFAULT" && t.size() == 2) {
        a.default_crit = mor(t[1]);
      } else if (kw == "LETTER" && t.size() == 3) {
        clf::Word w;
        try {
          w = clf::parse_word(t[1].text);
        } catch (const Error& e) {
          fail(t[1].offset, e.what(), e.kind());
        }
        if (w.letters.size() != 1) fail(t[1].offset, "expected a single letter");
        a.letters[clf::to_text(w.letters[0])] = bim(t[2]);
      } else if (kw == "CRIT" && t.size() == 3) {
        clf::CycleLabel c;
        try {
          c = clf::parse_label(t[1].text);
        } catch (const Error& e) {
          fail(t[1].offset, e.what(), e.kind());
        }
        a.crits.insert_or_assign(clf::to_text(c), mor(t[2]));
      } else {
        fail(item.offset, "expected UNIT M, DEFAULT M, LETTER a M, CRIT label F or CRITDEFAULT F");
      }
    }
    doc_.declare(tok[1].text, DeclKind::Assignment, at(tok[1].offset));
    doc_.assignments.emplace(tok[1].text, std::move(a));
  }
};

std::string render_inputs(const DGAlgebra& a, const Inputs& in) {
  std::string out = "[";
  for (std::size_t i = 0; i < in.size(); ++i) out += (i ? " " : "") + a.basis_name(in[i]);
  return out + "]";
}

std::string render_terms(const DGAlgebra& a, const TypeDABimodule& target, const Span& s) {
  if (s.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? " + " : "") + a.basis_name(s[i].alg) + " : " + target.generator(s[i].gen).name;
  return out;
}

}  // namespace

Document parse_document(const std::string& text) {
  Document d;
  parse_into(d, text);
  return d;
}

void parse_into(Document& doc, const std::string& text) { Parser(doc, text).run(); }

std::string emit_pmc(const std::string& name, const PointedMatchedCircle& c) {
  return "PMC " + name + " " + c.to_string() + "\n";
}

std::string emit_bimodule(const TypeDABimodule& m) {
  std::ostringstream out;
  const auto& A1 = m.left_algebra();
  const auto& A2 = m.right_algebra();
  out << "BIMODULE " << m.name() << " OVER " << A1.name() << " " << A2.name() << " {\n";
  for (const auto& g : m.generators())
    out << "  GEN " << g.name << " L=" << A1.basis_name(g.left) << " R=" << A2.basis_name(g.right) << ";\n";
  for (const auto& [k, s] : m.d1())
    out << "  D1 " << m.generator(k.gen).name << " " << render_inputs(A2, k.inputs) << " = " << render_terms(A1, m, s)
        << ";\n";
  out << "}\n";
  return out.str();
}

std::string emit_morphism(const std::string& name, const DAMorphism& f) {
  std::ostringstream out;
  const auto& src = f.source();
  out << "MORPHISM " << name << " FROM " << src.name() << " TO " << f.target().name() << " {\n";
  for (const auto& [k, s] : f.table())
    out << "  F " << src.generator(k.gen).name << " " << render_inputs(src.right_algebra(), k.inputs) << " = "
        << render_terms(src.left_algebra(), f.target(), s) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace bordered::doc
