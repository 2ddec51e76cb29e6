#include <fstream>
#include <random>
#include <sstream>

#include "bordered/command.hpp"
#include "bordered/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bordered;
using namespace bordered::doc;

namespace {

const char* kHeader =
    "PMC T GENUS 1 PAIRS (1 3) (2 4)\n"
    "ALGEBRA A_T FROM T\n"
    "BIMODULE I = IDENTITY A_T\n";

std::string error_of(const std::string& text, ErrorKind* kind = nullptr) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    if (kind) *kind = e.kind();
    return e.what();
  }
  return "";
}

cmd::CommandResult run(Document& d, const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> args;
  for (std::string s; in >> s;) args.push_back(s);
  return cmd::execute(args, d);
}

}  // namespace

TEST_CASE("declarations") {
  auto d = parse_document(std::string(kHeader) + "# comment line\nMORPHISM Id = IDENTITY I  # trailing\n");
  CHECK(d.pmcs.at("T").genus() == 1);
  CHECK(d.algebras.at("A_T")->size() == 16);
  CHECK(d.bimodules.at("I")->size() == 4);
  CHECK(d.morphisms.count("Id") == 1);
  CHECK(d.order.size() == 4);
}

TEST_CASE("diagnostics carry locations") {
  ErrorKind k{};
  CHECK(error_of("PMC T GENUS 1 PAIRS (1 3) (2 5)\n", &k).rfind("1:1:", 0) == 0);
  CHECK(k == ErrorKind::MalformedMatching);
  CHECK(error_of("PMC T GENUS 1 PAIRS (1 3 (2 4)\n", &k) != "");
  CHECK(k == ErrorKind::ParseError);
  CHECK(error_of("PMC T GENUS x PAIRS (1 3) (2 4)\n", &k).rfind("1:13:", 0) == 0);
  CHECK(k == ErrorKind::ParseError);
  CHECK(error_of("\nALGEBRA A FROM Nope\n", &k).rfind("2:16:", 0) == 0);
  CHECK(k == ErrorKind::UnresolvedReference);
  error_of(std::string(kHeader) + "BIMODULE I = IDENTITY A_T\n", &k);
  CHECK(k == ErrorKind::DuplicateName);
  error_of(std::string(kHeader) + "BIMODULE M OVER A_T A_T {\n  GEN x L=i0 R=i0;\n  D1 x [] = r[2-3] : x;\n}\n", &k);
  CHECK(k == ErrorKind::IdempotentMismatch);
  auto msg = error_of(std::string(kHeader) + "BIMODULE M OVER A_T A_T {\n  GEN x L=i0 R=i0;\n  D1 x [q] = 0;\n}\n", &k);
  CHECK(k == ErrorKind::UnknownSymbol);
  CHECK(msg.rfind("6:9:", 0) == 0);
  error_of("FOO bar\n", &k);
  CHECK(k == ErrorKind::ParseError);
}

TEST_CASE("emitted bimodules and morphisms parse back to the same value") {
  auto d = parse_document(kHeader);
  auto I = d.bimodules.at("I");
  std::mt19937_64 rng(31);
  auto f = testsupport::random_closed(I, 1, 5, rng);
  auto c = cone(f, "C");
  Document copy = d;
  copy.morphisms.emplace("F", f);
  parse_into(copy, emit_bimodule(*c));
  CHECK(same_bimodule(*copy.bimodules.at("C"), *c));
  CHECK(copy.bimodules.at("C")->name() == "C");
  parse_into(copy, emit_morphism("F2", f));
  CHECK(copy.morphisms.at("F2").table() == f.table());
  auto ii = box_bimodules(I, I);
  parse_into(copy, emit_bimodule(*ii));
  CHECK(same_bimodule(*copy.bimodules.at("I*I"), *ii));
}

TEST_CASE("command exit codes") {
  auto d = parse_document(std::string(kHeader) +
                          "MORPHISM Id = IDENTITY I\nMORPHISM Z = ZERO I I\n"
                          "MORPHISM H FROM I TO I {\n  F i0 [] = r[1-3] : i0;\n}\n");
  CHECK(run(d, "algebra verify A_T").exit_code() == 0);
  CHECK(run(d, "homology I").payload["homology"] == 10);
  auto miss = run(d, "morphism homotopic Id Z --cap 1");
  CHECK(miss.exit_code() == 1);
  CHECK(miss.payload["cap"] == 1);
  CHECK(run(d, "morphism verify H").exit_code() == 1);
  auto bad = run(d, "morphism verify Nope");
  CHECK(bad.exit_code() == 2);
  REQUIRE(bad.diagnostics.size() == 1);
  CHECK(bad.diagnostics[0].message.find("UnresolvedReference") == 0);
  CHECK(run(d, "algebra verify A_T --budget x").exit_code() == 2);
  CHECK(run(d, "frobnicate").exit_code() == 2);
  CHECK(run(d, "boxtensor I I -o II").exit_code() == 0);
  CHECK(d.bimodules.count("II") == 1);
  CHECK(run(d, "boxtensor I I -o II").exit_code() == 2);
}

TEST_CASE("tutorial runs and matches its golden report") {
  std::ifstream in(std::string(BORDERED_DATA_DIR) + "/torus_tutorial.bfh");
  std::stringstream text;
  text << in.rdbuf();
  auto d = parse_document(text.str());
  auto results = cmd::run_all(d);
  CHECK(cmd::combined(results) == cmd::Status::Pass);
  std::string report;
  for (const auto& r : results) report += cmd::render_text(r);
  std::ifstream gold(std::string(BORDERED_DATA_DIR) + "/torus_tutorial.expected");
  std::stringstream expected;
  expected << gold.rdbuf();
  std::string e = expected.str();
  // The golden file ends with the CLI's summary line.
  CHECK(e.rfind(report, 0) == 0);
}
