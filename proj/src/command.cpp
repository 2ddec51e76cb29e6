#include "bordered/command.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "bordered/box.hpp"
#include "bordered/errors.hpp"

namespace bordered::cmd {

using json = nlohmann::ordered_json;

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "error";
}

namespace {

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> options;

  const std::string& at(std::size_t i, const char* usage) const {
    if (i >= positional.size()) throw Error(ErrorKind::InvalidArgument, std::string("usage: ") + usage);
    return positional[i];
  }
  void expect(std::size_t n, const char* usage) const {
    if (positional.size() != n) throw Error(ErrorKind::InvalidArgument, std::string("usage: ") + usage);
  }
  std::optional<std::string> opt(const std::string& k) const {
    auto it = options.find(k);
    if (it == options.end()) return std::nullopt;
    return it->second;
  }
  std::size_t number(const std::string& k, std::size_t fallback) const {
    auto v = opt(k);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      unsigned long long n = std::stoull(*v, &used);
      if (used == v->size()) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidArgument, k + " expects a non-negative integer, got '" + *v + "'");
  }
};

Args split_args(const std::vector<std::string>& raw) {
  static const std::vector<std::string> valued{"--budget", "--cap", "-o"};
  Args a;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string& s = raw[i];
    if (std::find(valued.begin(), valued.end(), s) != valued.end()) {
      if (i + 1 >= raw.size()) throw Error(ErrorKind::InvalidArgument, s + " needs a value");
      a.options[s] = raw[++i];
    } else if (s.size() > 1 && s[0] == '-' && !std::isdigit(static_cast<unsigned char>(s[1]))) {
      throw Error(ErrorKind::InvalidArgument, "unknown option '" + s + "'");
    } else {
      a.positional.push_back(s);
    }
  }
  return a;
}

void add_lines(CommandResult& r, const std::string& block) {
  std::size_t start = 0;
  while (start < block.size()) {
    std::size_t nl = block.find('\n', start);
    if (nl == std::string::npos) nl = block.size();
    r.lines.push_back(block.substr(start, nl - start));
    start = nl + 1;
  }
}

void pass_if(CommandResult& r, bool ok) { r.status = ok ? Status::Pass : Status::Fail; }

void pmc_cmd(const Args& a, doc::Document& d, CommandResult& r) {
  const char* usage = "pmc check NAME";
  a.expect(2, usage);
  if (a.positional[0] != "check") throw Error(ErrorKind::InvalidArgument, std::string("usage: ") + usage);
  const auto& c = d.pmc(a.positional[1]);
  auto v = validate_report(c);
  std::string hs = v.handleslide_valid ? (*v.handleslide_valid ? "valid" : "invalid") : "undecided";
  r.payload["name"] = a.positional[1];
  r.payload["genus"] = c.genus();
  r.payload["points"] = c.num_points();
  r.payload["surgery_components"] = v.surgery_components;
  r.payload["handleslide"] = hs;
  r.payload["criteria_agree"] = !v.criteria_diverge();
  r.lines.push_back("pmc " + a.positional[1] + ": " + c.to_string());
  r.lines.push_back("surgery components: " + std::to_string(v.surgery_components));
  r.lines.push_back("handleslide criterion: " + hs);
  pass_if(r, v.valid());
}

void algebra_cmd(const Args& a, doc::Document& d, CommandResult& r) {
  const char* usage = "algebra build|verify NAME [--budget N]";
  a.expect(2, usage);
  const auto& alg = d.algebra(a.positional[1]);
  r.payload["name"] = alg->name();
  r.payload["dimension"] = alg->size();
  r.payload["idempotents"] = alg->idempotents().size();
  if (a.positional[0] == "build") {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < alg->size(); ++i) nonzero += alg->d(i).empty() ? 0 : 1;
    r.payload["nonzero_differentials"] = nonzero;
    r.payload["nonzero_products"] = alg->mult_table().size();
    r.lines.push_back("algebra " + alg->name() + ": dimension " + std::to_string(alg->size()) + ", " +
                      std::to_string(alg->idempotents().size()) + " idempotents");
    r.lines.push_back("nonzero products: " + std::to_string(alg->mult_table().size()) +
                      ", nonzero differentials: " + std::to_string(nonzero));
    return;
  }
  if (a.positional[0] != "verify") throw Error(ErrorKind::InvalidArgument, std::string("usage: ") + usage);
  std::size_t budget = a.number("--budget", 100000);
  auto rep = verify_dga(*alg, budget);
  r.payload["budget"] = budget;
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"check", c.name},
                      {"passed", c.passed},
                      {"exhaustive", c.exhaustive},
                      {"instances", c.instances},
                      {"witness", c.witness}});
    r.lines.push_back(c.name + ": " + (c.passed ? "pass" : "FAIL") + " (" + (c.exhaustive ? "exhaustive" : "sampled") +
                      ", " + std::to_string(c.instances) + " instances)" + (c.passed ? "" : " witness " + c.witness));
  }
  r.payload["checks"] = checks;
  pass_if(r, rep.passed());
}

void structure_lines(CommandResult& r, const TypeDABimodule& m) {
  auto rep = check_structure(m);
  r.payload["name"] = m.name();
  r.payload["generators"] = m.size();
  r.payload["entries"] = m.d1().size();
  r.payload["arity_bound"] = rep.bound;
  r.payload["structure_relation"] = rep.passed;
  r.lines.push_back("bimodule " + m.name() + ": " + std::to_string(m.size()) + " generators, " +
                    std::to_string(m.d1().size()) + " table entries");
  if (rep.passed) {
    r.lines.push_back("structure relation holds for all inputs of length <= " + std::to_string(rep.bound));
  } else {
    std::string w = m.render_key(*rep.witness) + " -> " + m.render_span(rep.value);
    r.payload["witness"] = w;
    r.lines.push_back("structure relation fails at " + w);
  }
  pass_if(r, rep.passed);
}

void bimodule_cmd(const Args& a, doc::Document& d, CommandResult& r) {
  const char* usage = "bimodule verify|emit NAME";
  a.expect(2, usage);
  const auto& m = d.bimodule(a.positional[1]);
  if (a.positional[0] == "verify") return structure_lines(r, *m);
  if (a.positional[0] != "emit") throw Error(ErrorKind::InvalidArgument, std::string("usage: ") + usage);
  std::string text = doc::emit_bimodule(*m);
  r.payload["text"] = text;
  add_lines(r, text);
}

void boxtensor_cmd(const Args& a, doc::Document& d, CommandResult& r) {
  a.expect(2, "boxtensor N M [-o NAME]");
  auto n = d.bimodule(a.positional[0]);
  auto m = d.bimodule(a.positional[1]);
  auto p = box_bimodules(n, m);
  if (auto name = a.opt("-o")) {
    p = std::make_shared<const TypeDABimodule>(*name, p->left_ptr(), p->right_ptr(), p->generators(), p->d1());
    d.declare(*name, doc::DeclKind::Bimodule, {});
    d.bimodules.emplace(*name, p);
  }
  structure_lines(r, *p);
  std::string text = doc::emit_bimodule(*p);
  r.payload["text"] = text;
  add_lines(r, text);
}

void store_morphism(const Args& a, doc::Document& d, const DAMorphism& f) {
  if (auto name = a.opt("-o")) {
    d.declare(*name, doc::DeclKind::Morphism, {});
    d.morphisms.emplace(*name, f);
  }
}

void closed_lines(CommandResult& r, const DAMorphism& f, const std::string& name) {
  auto rep = is_closed(f);
  r.payload["name"] = name;
  r.payload["source"] = f.source().name();
  r.payload["target"] = f.target().name();
  r.payload["entries"] = f.table().size();
  r.payload["closed"] = rep.closed;
  r.lines.push_back("morphism " + name + ": " + f.source().name() + " -> " + f.target().name() + ", " +
                    std::to_string(f.table().size()) + " table entries");
  if (rep.closed) {
    r.lines.push_back("closed");
  } else {
    std::string w = f.render_key(*rep.witness) + " -> " + f.render_span(rep.value);
    r.payload["witness"] = w;
    r.lines.push_back("not closed: dF is nonzero at " + w);
  }
  pass_if(r, rep.closed);
}

void homotopy_lines(CommandResult& r, const DAMorphism& f, const DAMorphism& g, std::size_t cap) {
  auto h = is_homotopic(f, g, cap);
  r.payload["cap"] = cap;
  r.payload["unknowns"] = h.unknowns;
  r.payload["equations"] = h.equations;
  r.payload["homotopic"] = h.found;
  r.payload["detail"] = h.message;
  r.lines.push_back("homotopy search at arity cap " + std::to_string(cap) + ": " + std::to_string(h.unknowns) +
                    " unknowns, " + std::to_string(h.equations) + " equations");
  r.lines.push_back(h.found ? "homotopic: " + h.message : "not within cap: " + h.message);
  pass_if(r, h.found);
}

void morphism_cmd(const Args& a, doc::Document& d, CommandResult& r) {
  const char* usage = "morphism verify|emit F | compose G F | box F G | homotopic F G [--cap N] [-o NAME]";
  const std::string& sub = a.at(0, usage);
  if (sub == "verify" || sub == "emit") {
    a.expect(2, usage);
    const auto& f = d.morphism(a.positional[1]);
    if (sub == "verify") return closed_lines(r, f, a.positional[1]);
    std::string text = doc::emit_morphism(a.positional[1], f);
    r.payload["text"] = text;
    return add_lines(r, text);
  }
  a.expect(3, usage);
  const auto& x = d.morphism(a.positional[1]);
  const auto& y = d.morphism(a.positional[2]);
  if (sub == "homotopic") return homotopy_lines(r, x, y, a.number("--cap", 4));
  DAMorphism out = sub == "compose" ? compose(x, y)
                   : sub == "box"   ? box_morphisms(x, y)
                                    : throw Error(ErrorKind::InvalidArgument, std::string("usage: ") + usage);
  store_morphism(a, d, out);
  closed_lines(r, out, a.opt("-o").value_or(sub == "compose" ? a.positional[1] + "." + a.positional[2]
                                                              : a.positional[1] + "*" + a.positional[2]));
}

void homology_cmd(const Args& a, doc::Document& d, CommandResult& r) {
  a.expect(1, "homology NAME");
  const auto& m = d.bimodule(a.positional[0]);
  auto h = homology(*m);
  r.payload["name"] = m->name();
  r.payload["homology"] = h;
  r.lines.push_back("dim H(" + m->name() + ") = " + std::to_string(h));
}

void words_payload(CommandResult& r, const clf::Expr& e) {
  r.payload["expression"] = clf::to_text(e);
  r.payload["initial"] = clf::to_text(clf::initial_word(e));
  r.payload["resulting"] = clf::to_text(clf::resulting_word(e));
  r.payload["leaves"] = clf::leaf_count(e);
  r.payload["critical"] = clf::crit_count(e);
  r.lines.push_back("expression: " + clf::to_text(e));
  r.lines.push_back("initial word: " + clf::to_text(clf::initial_word(e)));
  r.lines.push_back("resulting word: " + clf::to_text(clf::resulting_word(e)));
}

bool same_boundary(const clf::Expr& a, const clf::Expr& b) {
  return clf::equivalent(clf::initial_word(a), clf::initial_word(b)) &&
         clf::equivalent(clf::resulting_word(a), clf::resulting_word(b));
}

void store_clf(const Args& a, doc::Document& d, const clf::Expr& e) {
  if (auto name = a.opt("-o")) {
    d.declare(*name, doc::DeclKind::Clf, {});
    d.clfs.emplace(*name, e);
  }
}

void clf_cmd(const Args& a, doc::Document& d, CommandResult& r) {
  const char* usage =
      "clf normalize NAME | hurwitz NAME I | standard NAME LABEL | evaluate NAME ASSIGNMENT [--cap N] [-o NAME]";
  const std::string& sub = a.at(0, usage);
  const auto& e = d.expr(a.at(1, usage));
  if (sub == "normalize") {
    a.expect(2, usage);
    auto n = clf::normalize_horizontal(e);
    store_clf(a, d, n.expr);
    r.payload["rewrites"] = n.rewrites;
    words_payload(r, n.expr);
    bool ok = clf::vcomp_count(n.expr) == 0 && same_boundary(e, n.expr);
    r.payload["boundary_preserved"] = ok;
    r.lines.push_back("rewrites: " + std::to_string(n.rewrites) + ", boundary words preserved: " + (ok ? "yes" : "no"));
    return pass_if(r, ok);
  }
  if (sub == "hurwitz") {
    a.expect(3, usage);
    std::size_t i = 0;
    try {
      i = std::stoul(a.positional[2]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "hurwitz expects a leaf position");
    }
    auto h = clf::hurwitz(e, i);
    store_clf(a, d, h);
    words_payload(r, h);
    bool ok = same_boundary(e, h) && clf::crit_count(e) == clf::crit_count(h);
    r.payload["boundary_preserved"] = ok;
    r.lines.push_back(std::string("boundary words and critical count preserved: ") + (ok ? "yes" : "no"));
    return pass_if(r, ok);
  }
  if (sub == "standard") {
    a.expect(3, usage);
    auto wg = clf::make_clf({}, {}, clf::parse_label(a.positional[2]));
    auto s = clf::standard_form(e, wg);
    store_clf(a, d, s.expr);
    words_payload(r, s.expr);
    json conj = json::array();
    std::string line = "conjugators:";
    for (const auto& w : s.conjugators) {
      conj.push_back(clf::to_text(w));
      line += " " + clf::to_text(w);
    }
    r.payload["conjugators"] = conj;
    r.lines.push_back(line);
    bool ok = same_boundary(e, s.expr);
    r.payload["boundary_preserved"] = ok;
    r.lines.push_back(std::string("boundary words preserved: ") + (ok ? "yes" : "no"));
    return pass_if(r, ok);
  }
  if (sub == "evaluate") {
    a.expect(3, usage);
    const auto& asg = d.assignment(a.positional[2]);
    std::size_t cap = a.number("--cap", 4);
    DAMorphism f = clf::evaluate(e, asg);
    store_morphism(a, d, f);
    closed_lines(r, f, a.opt("-o").value_or(a.positional[1]));
    bool closed = r.status == Status::Pass;
    auto n = clf::normalize_horizontal(e);
    DAMorphism g = clf::align(clf::evaluate(n.expr, asg), f.source_ptr(), f.target_ptr());
    r.lines.push_back("comparing with the horizontal normal form:");
    CommandResult h;
    homotopy_lines(h, f, g, cap);
    r.payload["normal_form"] = h.payload;
    r.lines.insert(r.lines.end(), h.lines.begin(), h.lines.end());
    return pass_if(r, closed && h.status == Status::Pass);
  }
  throw Error(ErrorKind::InvalidArgument, std::string("usage: ") + usage);
}

}  // namespace

CommandResult execute(const std::vector<std::string>& raw, doc::Document& d, const std::string& location) {
  CommandResult r;
  for (std::size_t i = 0; i < raw.size(); ++i) r.command += (i ? " " : "") + raw[i];
  try {
    if (raw.empty()) throw Error(ErrorKind::InvalidArgument, "empty command");
    Args a = split_args({raw.begin() + 1, raw.end()});
    const std::string& c = raw[0];
    if (c == "pmc") pmc_cmd(a, d, r);
    else if (c == "algebra") algebra_cmd(a, d, r);
    else if (c == "bimodule") bimodule_cmd(a, d, r);
    else if (c == "boxtensor") boxtensor_cmd(a, d, r);
    else if (c == "morphism") morphism_cmd(a, d, r);
    else if (c == "homology") homology_cmd(a, d, r);
    else if (c == "clf") clf_cmd(a, d, r);
    else throw Error(ErrorKind::InvalidArgument, "unknown command '" + c + "'");
  } catch (const Error& e) {
    r.status = e.kind() == ErrorKind::NonConverging ? Status::Fail : Status::Error;
    r.diagnostics.push_back({location, std::string(to_string(e.kind())) + ": " + e.what()});
  }
  return r;
}

std::vector<CommandResult> run_all(doc::Document& d) {
  std::vector<CommandResult> out;
  for (const auto& c : d.commands) out.push_back(execute(c.args, d, doc::to_string(c.where)));
  return out;
}

std::string render_text(const CommandResult& r) {
  std::string out = "== " + r.command + "\n";
  for (const auto& l : r.lines) out += "  " + l + "\n";
  for (const auto& dg : r.diagnostics)
    out += "  " + (dg.location.empty() ? std::string() : dg.location + ": ") + dg.message + "\n";
  out += "status: " + to_string(r.status) + "\n";
  return out;
}

json render_json(const CommandResult& r) {
  json diags = json::array();
  for (const auto& dg : r.diagnostics) diags.push_back({{"location", dg.location}, {"message", dg.message}});
  return {{"command", r.command}, {"status", to_string(r.status)}, {"report", r.payload}, {"diagnostics", diags}};
}

Status combined(const std::vector<CommandResult>& rs) {
  Status s = Status::Pass;
  for (const auto& r : rs)
    if (static_cast<int>(r.status) > static_cast<int>(s)) s = r.status;
  return s;
}

}  // namespace bordered::cmd
