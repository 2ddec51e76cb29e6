#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bordered/clf.hpp"
#include "bordered/morphism.hpp"
#include "bordered/pmc.hpp"

namespace bordered::doc {

struct Location {
  std::size_t line = 0;
  std::size_t column = 0;
};

std::string to_string(const Location& loc);

enum class DeclKind { Pmc, Algebra, Bimodule, Morphism, Clf, Assignment };

struct Command {
  std::vector<std::string> args;
  Location where;
};

/// Named declarations in the order they were read. Every name is unique
/// across kinds.
struct Document {
  std::map<std::string, PointedMatchedCircle> pmcs;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, BimodulePtr> bimodules;
  std::map<std::string, DAMorphism> morphisms;
  std::map<std::string, clf::Expr> clfs;
  std::map<std::string, clf::Assignment> assignments;
  std::vector<Command> commands;  // RUN lines
  std::vector<std::pair<std::string, DeclKind>> order;
  std::map<std::string, Location> declared_at;

  bool has(const std::string& name) const { return declared_at.count(name) > 0; }
  /// Throws Error(DuplicateName).
  void declare(const std::string& name, DeclKind kind, Location where);

  /// Throw Error(UnresolvedReference).
  const PointedMatchedCircle& pmc(const std::string& name) const;
  const AlgebraPtr& algebra(const std::string& name) const;
  const BimodulePtr& bimodule(const std::string& name) const;
  const DAMorphism& morphism(const std::string& name) const;
  const clf::Expr& expr(const std::string& name) const;
  const clf::Assignment& assignment(const std::string& name) const;
};

/// Parses a whole document. Errors carry "line:column:" prefixes and the
/// kinds ParseError, DuplicateName, UnresolvedReference, or whatever the
/// constructing module raises.
Document parse_document(const std::string& text);
/// Appends the declarations in `text` to `doc`.
void parse_into(Document& doc, const std::string& text);

std::string emit_pmc(const std::string& name, const PointedMatchedCircle& c);
std::string emit_bimodule(const TypeDABimodule& m);
std::string emit_morphism(const std::string& name, const DAMorphism& f);

}  // namespace bordered::doc
