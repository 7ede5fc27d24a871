#pragma once

// Workspace documents: named rings, spaces, sheaves, complexes, maps and
// tasks in a JSON-compatible syntax, with canonical serialization.

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "finsheaf/cxalg.hpp"

namespace finsheaf {

using Json = nlohmann::ordered_json;

/// Input error carrying the path of the offending record.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& path, const std::string& what) : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

template <class T>
struct Named {
    std::vector<std::pair<std::string, T>> items;

    const T* find(const std::string& name) const {
        for (const auto& [k, v] : items)
            if (k == name) return &v;
        return nullptr;
    }
    void add(const std::string& name, T v) { items.emplace_back(name, std::move(v)); }
    std::size_t size() const { return items.size(); }
};

struct Task {
    std::string name, kind;
    Json params;
};

struct Workspace {
    Named<RingPtr> rings;
    Named<SpacePtr> spaces;
    Named<SheafPtr> sheaves;
    Named<SheafComplex> complexes;
    Named<RingedMap> maps;
    std::vector<Task> tasks;
};

struct ParseOptions {
    std::size_t max_ring_size = 64;
};

Workspace parse_workspace(const Json& doc, const ParseOptions& opt = {});
Workspace parse_workspace_text(const std::string& text, const ParseOptions& opt = {});
/// Explicit form: every ring as a table, every sheaf by stalks and covering restrictions.
Json serialize(const Workspace& W);
/// Structural equality of all declared objects and tasks.
bool equal(const Workspace& a, const Workspace& b);

Json to_json(const FiniteModule& M);
Json to_json(const AbGroup& G);
/// Stalks and covering restrictions of a sheaf; point names from its space.
Json to_json(const SheafModule& M);

}  // namespace finsheaf
