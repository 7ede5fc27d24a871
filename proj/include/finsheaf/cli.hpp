#pragma once

// Task execution over a parsed workspace, with text and JSON reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finsheaf/io.hpp"

namespace finsheaf {

enum class Status { pass = 0, fail = 1, input_error = 2 };

struct TaskReport {
    std::string name, kind;
    Status status = Status::pass;
    Json data = Json::object();
    std::vector<std::string> lines;
};

struct RunOptions {
    std::optional<std::string> task;  // run only the task with this name
    std::uint64_t seed = 1;
    std::optional<int> depth;
};

/// Runs the tasks (possibly concurrently); reports come back in declaration order.
std::vector<TaskReport> run_tasks(const Workspace& W, const RunOptions& opt = {});
TaskReport run_task(const Workspace& W, const Task& t, const RunOptions& opt, std::size_t index = 0);
/// Finite model of a simplicial complex: {"simplices": [...], "covering": [[vertices]...], "mod": p}.
TaskReport run_model(const Json& params, const std::string& name = "model");

std::string render_text(const std::vector<TaskReport>& reports);
std::string render_json(const std::vector<TaskReport>& reports);
/// 2 if any input error, else 1 if any failure, else 0.
int exit_code(const std::vector<TaskReport>& reports);
/// One line per declared object, for the check command.
std::vector<std::string> describe_workspace(const Workspace& W);

}  // namespace finsheaf
