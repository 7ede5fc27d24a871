#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "finsheaf/cli.hpp"

using namespace finsheaf;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path, "cannot open file");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sheaves of modules on finite ringed spaces"};
    app.require_subcommand(1);
    std::size_t max_ring = 64;
    app.add_option("--max-ring-size", max_ring, "largest ring accepted in a document")->check(CLI::PositiveNumber);

    std::string file, task, format = "text", complex_file;
    std::uint64_t seed = 1;
    int depth = -1;
    bool canonical = false;

    CLI::App* check = app.add_subcommand("check", "parse and validate a workspace document");
    check->add_option("file", file, "workspace document")->required();
    check->add_flag("--canonical", canonical, "print the canonical serialization");

    CLI::App* run = app.add_subcommand("run", "run the tasks of a workspace document");
    run->add_option("file", file, "workspace document")->required();
    run->add_option("--task", task, "run only the task with this name");
    run->add_option("--seed", seed, "seed for randomized suites");
    run->add_option("--depth", depth, "injective resolution depth")->check(CLI::NonNegativeNumber);
    run->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));

    CLI::App* model = app.add_subcommand("model", "finite model of a simplicial complex");
    model->add_option("--complex", complex_file, "simplicial complex document")->required();
    model->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        ParseOptions popt;
        popt.max_ring_size = max_ring;
        if (*check) {
            Workspace W = parse_workspace_text(slurp(file), popt);
            if (canonical) {
                std::cout << serialize(W).dump(2) << "\n";
            } else {
                for (const auto& l : describe_workspace(W)) std::cout << l << "\n";
                std::cout << "OK\n";
            }
            return 0;
        }
        if (*run) {
            Workspace W = parse_workspace_text(slurp(file), popt);
            RunOptions opt;
            if (!task.empty()) opt.task = task;
            opt.seed = seed;
            if (depth >= 0) opt.depth = depth;
            std::vector<TaskReport> reports = run_tasks(W, opt);
            std::cout << (format == "json" ? render_json(reports) : render_text(reports));
            return exit_code(reports);
        }
        Json doc;
        try {
            doc = Json::parse(slurp(complex_file), nullptr, true, true);
        } catch (const Json::parse_error& e) {
            throw InputError(complex_file, std::string("syntax error: ") + e.what());
        }
        std::vector<TaskReport> reports{run_model(doc)};
        std::cout << (format == "json" ? render_json(reports) : render_text(reports));
        return exit_code(reports);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
