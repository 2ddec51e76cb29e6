#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bordered/document.hpp"

namespace bordered::cmd {

enum class Status { Pass = 0, Fail = 1, Error = 2 };

std::string to_string(Status s);

struct Diagnostic {
  std::string location;
  std::string message;
};

struct CommandResult {
  std::string command;
  Status status = Status::Pass;
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
  std::vector<std::string> lines;  // human-readable report
  std::vector<Diagnostic> diagnostics;

  int exit_code() const { return static_cast<int>(status); }
};

/// Runs one command against the document. Commands with -o add their result
/// to the document. Library errors become Status::Error with a diagnostic;
/// a step budget overrun is reported as a failure.
CommandResult execute(const std::vector<std::string>& args, doc::Document& d, const std::string& location = "");

/// Every RUN line in order.
std::vector<CommandResult> run_all(doc::Document& d);

std::string render_text(const CommandResult& r);
nlohmann::ordered_json render_json(const CommandResult& r);
/// Worst status of the batch (error over fail over pass).
Status combined(const std::vector<CommandResult>& rs);

}  // namespace bordered::cmd
