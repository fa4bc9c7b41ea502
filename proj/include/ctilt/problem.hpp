#pragma once

// Problem files: a bound quiver algebra, named modules and maps, and the
// subcategory, atlas, d and seed a command works on.
//
//   # comment
//   field rationals
//   vertices 1 2 3
//   arrow a1 1 2
//   arrow a2 2 3
//   relation a1.a2                  (terms "c path" joined by + and -; = 0)
//   maxlen 16
//   module P12 dims 1 1 0           (block: one matrix per arrow, rows = target
//     a1 = [1]                       dim, columns = source dim, rows split by
//   end                              ";"; omitted arrows act by zero)
//   module X = P12 + S1             (direct sum of earlier modules)
//   map f S3 P23                    (block: one matrix per vertex; omitted
//     3 = [1]                        vertices are zero)
//   end
//   subcategory P12 P23 S1 S3
//   atlas S1 S2 S3 P12 P23
//   d 2
//   seed 0

#include "ctilt/module.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctilt {

struct ParseIssue {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

/// All problems found in a file, each with its 1-based line and column.
class ParseError : public InputError {
public:
    explicit ParseError(std::vector<ParseIssue> issues);
    const std::vector<ParseIssue>& issues() const { return issues_; }

private:
    std::vector<ParseIssue> issues_;
};

struct NamedMap {
    std::string name;
    std::string source, target;
    ModuleMap map;
};

struct ProblemFile {
    AlgebraPtr algebra;
    std::vector<std::string> module_order;
    std::map<std::string, Module> modules;
    std::vector<NamedMap> maps;
    std::vector<std::string> subcategory;
    std::vector<std::string> atlas;
    std::size_t d = 1;
    std::uint64_t seed = 0;

    const Module& module(const std::string& name) const;
    const NamedMap& map(const std::string& name) const;
    std::vector<Module> list(const std::vector<std::string>& names) const;
};

/// Throws ParseError listing every syntax, name and shape problem.
ProblemFile parse_problem(const std::string& text);
/// Reads and parses a file; InputError if it cannot be read.
ProblemFile load_problem(const std::string& path);

}  // namespace ctilt
