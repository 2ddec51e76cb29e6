// Command-line driver: `bordered [--format text|json] [--threads N] -f FILE <command> ...`
// or `bordered run FILE` to execute every RUN line of a document.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bordered/command.hpp"
#include "bordered/errors.hpp"
#include "bordered/parallel.hpp"

namespace {

using bordered::cmd::CommandResult;
using bordered::cmd::Status;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bordered::Error(bordered::ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void print(const std::vector<CommandResult>& rs, bool as_json, bool batch) {
  if (as_json) {
    nlohmann::ordered_json out;
    if (batch) {
      out["status"] = bordered::cmd::to_string(bordered::cmd::combined(rs));
      out["results"] = nlohmann::ordered_json::array();
      for (const auto& r : rs) out["results"].push_back(bordered::cmd::render_json(r));
    } else {
      out = bordered::cmd::render_json(rs.front());
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : rs) {
    std::cout << bordered::cmd::render_text(r);
    ++counts[r.exit_code()];
  }
  if (batch)
    std::cout << "summary: " << rs.size() << " commands, " << counts[0] << " pass, " << counts[1] << " fail, "
              << counts[2] << " error\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bordered Floer algebra toolkit"};
  std::string format = "text";
  std::size_t threads = 0;
  std::string file;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
  app.add_option("-f,--file", file, "Document to load before running the command");
  app.prefix_command();
  app.footer(
      "Commands:\n"
      "  run FILE\n"
      "  pmc check NAME\n"
      "  algebra build|verify NAME [--budget N]\n"
      "  bimodule verify|emit NAME\n"
      "  boxtensor N M [-o NAME]\n"
      "  morphism verify|emit F | compose G F | box F G | homotopic F G [--cap N] [-o NAME]\n"
      "  homology NAME\n"
      "  clf normalize NAME | hurwitz NAME I | standard NAME LABEL | evaluate NAME ASSIGNMENT [--cap N]");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (threads > 0) bordered::set_thread_count(threads);
  bool as_json = format == "json";
  std::vector<std::string> args = app.remaining();
  bool batch = !args.empty() && args[0] == "run";
  if (batch) {
    if (args.size() != 2) {
      std::cerr << "usage: run FILE\n";
      return 2;
    }
    file = args[1];
  }
  if (args.empty() || file.empty()) {
    std::cerr << app.help();
    return 2;
  }
  bordered::doc::Document doc;
  try {
    doc = bordered::doc::parse_document(read_file(file));
  } catch (const bordered::Error& e) {
    CommandResult r;
    r.command = batch ? "run" : "load";
    r.status = Status::Error;
    r.diagnostics.push_back({file, std::string(bordered::to_string(e.kind())) + ": " + e.what()});
    print({r}, as_json, false);
    return 2;
  }
  std::vector<CommandResult> results;
  if (batch)
    results = bordered::cmd::run_all(doc);
  else
    results.push_back(bordered::cmd::execute(args, doc));
  print(results, as_json, batch);
  return static_cast<int>(bordered::cmd::combined(results));
}
