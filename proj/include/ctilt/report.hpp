#pragma once

// Command dispatch over a problem file and the JSON / human reports.

#include "ctilt/problem.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ctilt {

using Json = nlohmann::ordered_json;

struct CommandOptions {
    std::optional<std::uint64_t> seed;     // overrides the file
    std::optional<std::size_t> max_ext;    // ext-table depth, default max(1, d - 1)
    std::optional<std::string> map;        // dkernel / dcokernel, default the first map
    std::optional<std::string> module;     // m-resolve, default every atlas member
};

/// Every report carries the same top-level keys. Each failure is an object
/// with condition, first, second, ext_index, dimension and detail.
struct Report {
    std::string command;
    bool verdict = true;
    Json failures = Json::array();
    Json data = Json::object();
    std::optional<Json> timings;

    void fail(const std::string& condition, const std::string& first = "", const std::string& second = "",
              std::size_t ext_index = 0, std::size_t dimension = 0, const std::string& detail = "");

    Json to_json() const;
    /// Throws InputError if a top-level key is missing or mistyped.
    static Report from_json(const Json& j);

    friend bool operator==(const Report&, const Report&) = default;
};

const std::vector<std::string>& command_names();

/// InputError for an unknown command or data the command needs but the file
/// lacks. Mathematical failures (uncertified atlas, construction leaving the
/// subcategory, ...) become failures in the report.
Report run_command(const std::string& command, const ProblemFile& problem, const CommandOptions& options = {});

/// "json" or "human"; InputError otherwise. Ends with a newline.
std::string emit_report(const Report& report, const std::string& format);

}  // namespace ctilt
