#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctilt/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace ctilt;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".problem"; }

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<ParseIssue> issues_of(const std::string& text)
{
    try {
        parse_problem(text);
    } catch (const ParseError& e) {
        return e.issues();
    }
    return {};
}

bool has_issue(const std::vector<ParseIssue>& issues, std::size_t line, const std::string& text)
{
    for (const auto& i : issues)
        if (i.line == line && i.message.find(text) != std::string::npos) return true;
    return false;
}

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(CTILT_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

const std::string header = "field rationals\nvertices 1 2\narrow a 1 2\n";

}  // namespace

TEST_CASE("bundled fixtures parse")
{
    const ProblemFile n3 = load_problem(fixture("n3"));
    CHECK(n3.modules.size() == 5);
    CHECK(n3.d == 2);
    CHECK(n3.algebra->dim() == 5);
    CHECK(n3.atlas.size() == 5);
    CHECK(n3.subcategory == std::vector<std::string>{"P12", "P23", "S1", "S3"});
    CHECK(n3.maps.size() == 2);
    for (const auto& name : {"a2", "n4", "a3", "point"}) CHECK_NOTHROW(load_problem(fixture(name)));
    CHECK_THROWS_AS(load_problem(fixture("missing")), InputError);
}

TEST_CASE("relations, rationals and direct sums")
{
    const std::string text = "field rationals\nvertices 1 2 3 4\n"
                             "arrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\n"
                             "relation a.b - 1/2 c.d\n"
                             "module X dims 1 1 1 1\n  a = [1]\n  b = [1/2]\n  c = [1]\n  d = [1]\nend\n"
                             "module S4 dims 0 0 0 1\nend\n"
                             "module Y = X + S4\n";
    const ProblemFile p = parse_problem(text);
    CHECK(p.algebra->dim() == 9);
    CHECK(p.module("Y").dims() == std::vector<std::size_t>{1, 1, 1, 2});
    CHECK(p.module("X").action(1)(0, 0) == Rational(1, 2));
    CHECK(p.module_order == std::vector<std::string>{"X", "S4", "Y"});
    CHECK_NOTHROW(parse_problem("field rationals\nvertices 1 2 3\narrow a 1 2\narrow b 2 3\nrelation 2*a.b\n"));
}

TEST_CASE("parse errors carry positions")
{
    CHECK(has_issue(issues_of("vertices 1\n"), 1, "missing 'field rationals'"));
    CHECK(has_issue(issues_of("field reals\nvertices 1\n"), 1, "field must be 'rationals'"));
    CHECK(has_issue(issues_of(header + "colour blue\n"), 4, "unknown field 'colour'"));
    CHECK(has_issue(issues_of(header + "arrow b 2 7\n"), 4, "undefined vertex '7'"));
    CHECK(has_issue(issues_of(header + "relation a.z\n"), 4, "undefined arrow 'z'"));
    CHECK(has_issue(issues_of(header + "module M dims 1 1\n  a = [1/0]\nend\n"), 5, "zero denominator"));
    CHECK(has_issue(issues_of(header + "module M dims 1 1\n  a = [x]\nend\n"), 5, "malformed rational 'x'"));
    CHECK(has_issue(issues_of(header + "module M dims 1 1\n  a = [1]\n"), 4, "missing 'end'"));
    CHECK(has_issue(issues_of(header + "subcategory Q\n"), 4, "undefined module 'Q'"));
    CHECK(has_issue(issues_of(header + "d 0\n"), 4, "expected an integer >= 1"));
    CHECK(has_issue(issues_of(header + "seed -3\n"), 4, "expected an integer"));
    CHECK(has_issue(issues_of(header + "module M = A + B\n"), 4, "undefined module 'A'"));
    CHECK(has_issue(issues_of(header + "d 2\nd 3\n"), 5, "duplicate 'd'"));
    const auto col = issues_of(header + "arrow b 2 7\n");
    REQUIRE(!col.empty());
    CHECK(col[0].column == 11);
}

TEST_CASE("shape errors name the module and arrow")
{
    const auto issues = issues_of(header + "module M dims 1 1\n  a = [1 2 3; 4 5 6]\nend\n");
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].line == 5);
    CHECK(issues[0].message.find("module 'M' arrow 'a'") != std::string::npos);
    CHECK(issues[0].message.find("expected a 1x1 matrix, got 2x3") != std::string::npos);

    CHECK(has_issue(issues_of(header + "module M dims 1\nend\n"), 4, "expected 2 dimensions"));
    CHECK(has_issue(issues_of(header + "module M dims 1 1\n  a = [1 2; 3]\nend\n"), 5, "rows of different lengths"));
    CHECK(has_issue(issues_of(header + "module M dims 1 1\nend\nmodule N dims 1 1\n  a = [1]\nend\n"
                                       "map f M N\n  1 = [1]\nend\n"),
                    9, "does not commute"));
    CHECK(has_issue(issues_of(header + "module M dims 1 1\nend\nmap f M M\n  1 = [1 1]\nend\n"), 7,
                    "map 'f' vertex '1': expected a 1x1 matrix"));
    // A zero-dimensional side takes the empty matrix.
    CHECK(issues_of(header + "module M dims 1 0\n  a = []\nend\n").empty());
}

TEST_CASE("relations the module violates are reported")
{
    const std::string text = "field rationals\nvertices 1 2 3\narrow a 1 2\narrow b 2 3\nrelation a.b\n"
                             "module M dims 1 1 1\n  a = [1]\n  b = [1]\nend\n";
    CHECK(has_issue(issues_of(text), 6, "module 'M'"));
}

TEST_CASE("commands need their inputs")
{
    ProblemFile p = load_problem(fixture("n3"));
    p.subcategory.clear();
    CHECK_THROWS_AS(run_command("check-ct", p), InputError);
    CHECK_THROWS_AS(run_command("dkernel", p), InputError);
    CHECK_THROWS_AS(run_command("launch", p), InputError);
    ProblemFile q = load_problem(fixture("n3"));
    CHECK_THROWS_AS(run_command("dkernel", q, {std::nullopt, std::nullopt, "nope", std::nullopt}), InputError);
    CHECK_THROWS_AS(emit_report(run_command("validate", q), "xml"), InputError);
}

TEST_CASE("reports for the N3 fixture")
{
    const ProblemFile p = load_problem(fixture("n3"));
    CHECK(run_command("check-ct", p).verdict);
    const Report search = run_command("search-ct", p);
    CHECK(search.data["count"] == 1);
    CHECK(search.data["results"][0] == Json({"S1", "S3", "P12", "P23"}));

    ProblemFile full = p;
    full.subcategory = full.atlas;
    const Report cot = run_command("cotorsion-check", full);
    CHECK_FALSE(cot.verdict);
    CHECK(cot.failures[0]["condition"] == "Ext1 orthogonality");
    CHECK(cot.failures[0]["ext_index"] == 1);

    const Report ext = run_command("ext-table", p);
    CHECK(ext.data["ext"].size() == 4);
    const std::string text = emit_report(ext, "human");
    CHECK(text.find("P12  P23   S1   S3") != std::string::npos);

    ProblemFile proj = p;
    proj.subcategory = {"P12", "P23", "S3"};
    const Report fr = run_command("functor-report", proj);
    CHECK_FALSE(fr.verdict);
    CHECK(fr.failures[0]["condition"] == "precondition");

    const Report dk = run_command("dkernel", p, {std::nullopt, std::nullopt, "top", std::nullopt});
    CHECK(dk.verdict);
    CHECK(dk.data["objects"][0]["summands"] == "S3");
    CHECK(dk.data["exactness"] == "both");

    ProblemFile broken = p;
    broken.atlas = {"S1", "S3", "P12", "P23"};
    const Report bad_atlas = run_command("check-ct", broken);
    CHECK_FALSE(bad_atlas.verdict);
    CHECK(bad_atlas.failures[0]["condition"] == "atlas certification");
}

TEST_CASE("JSON reports round-trip")
{
    const ProblemFile p = load_problem(fixture("n3"));
    for (const auto& cmd : command_names()) {
        Report r = run_command(cmd, p, {std::nullopt, std::nullopt, "top", std::nullopt});
        const Json parsed = Json::parse(emit_report(r, "json"));
        CHECK(parsed == r.to_json());
        CHECK(Report::from_json(parsed) == r);
        for (const auto& key : {"command", "verdict", "failures", "data"}) CHECK(parsed.contains(key));
        CHECK_FALSE(parsed.contains("timings"));
    }
    CHECK_THROWS_AS(Report::from_json(Json{{"command", "x"}}), InputError);
}

TEST_CASE("command-line tool: exit codes and byte-identical output")
{
    const std::string n3 = fixture("n3");
    CHECK(run("check-ct " + n3).status == 0);
    CHECK(run("search-ct " + n3).status == 0);
    CHECK(run("validate " + fixture("a2")).status == 0);
    CHECK(run("search-ct " + fixture("a2")).status == 0);
    CHECK(run("bogus " + n3).status == 2);
    CHECK(run("validate /nonexistent.problem").status == 2);
    CHECK(run("check-ct " + n3 + " --format yaml").status == 2);

    const std::string tmp = std::string(FIXTURE_DIR) + "/../build_cli_test_full.problem";
    {
        std::string text = read_file(n3);
        text.replace(text.find("subcategory P12 P23 S1 S3"), 25, "subcategory S1 S2 S3 P12 P23");
        std::ofstream(tmp) << text;
    }
    const Run full = run("cotorsion-check " + tmp);
    CHECK(full.status == 1);
    CHECK(full.out.find("Ext1 orthogonality") != std::string::npos);
    std::remove(tmp.c_str());

    for (const auto& cmd : command_names()) {
        const std::string args = cmd + " " + n3 + " --map top --format human";
        CHECK(run(args).out == run(args).out);
        CHECK(run(cmd + " " + n3 + " --map socle").out == run(cmd + " " + n3 + " --map socle").out);
    }
    for (const auto& name : {"a2", "a3", "n3", "n4", "point"})
        for (const auto& cmd : {"validate", "ext-table", "check-ct", "search-ct", "m-resolve", "functor-report"})
            CHECK_MESSAGE(run(std::string(cmd) + " " + fixture(name)).status == 0, cmd, " on ", name);
    CHECK(run("dkernel " + n3 + " --map top").status == 0);
    CHECK(run("dcokernel " + n3 + " --map socle").status == 0);

    const Run timed = run("ext-table " + n3 + " --timings");
    CHECK(timed.out.find("\"timings\"") != std::string::npos);
    CHECK(run("ext-table " + n3).out.find("timings") == std::string::npos);
}
