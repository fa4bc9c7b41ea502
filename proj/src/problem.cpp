#include "ctilt/problem.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace ctilt {

namespace {

struct Token {
    std::string text;
    std::size_t column = 0;
};

struct Line {
    std::size_t number = 0;
    std::vector<Token> tokens;
    std::string raw;
};

// A top-level statement, with the body lines of module and map blocks.
struct Statement {
    Line head;
    std::vector<Line> body;
};

std::vector<Token> tokenize(const std::string& text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        out.push_back({text.substr(start, i - start), start + 1});
    }
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) { split(text); }

    ProblemFile run()
    {
        collect();
        if (!issues_.empty()) throw ParseError(issues_);
        build_algebra_section();
        if (!issues_.empty()) throw ParseError(issues_);
        build_modules();
        build_maps();
        build_lists();
        if (!issues_.empty()) throw ParseError(issues_);
        return std::move(problem_);
    }

private:
    std::vector<Statement> statements_;
    std::vector<ParseIssue> issues_;
    ProblemFile problem_;

    std::optional<Statement> field_, vertices_, maxlen_, subcategory_, atlas_, d_, seed_;
    std::vector<Statement> arrows_, relations_, modules_, maps_;

    void error(const Line& l, std::size_t column, std::string message)
    {
        issues_.push_back({l.number, column, std::move(message)});
    }
    void error(const Line& l, const Token& t, std::string message) { error(l, t.column, std::move(message)); }

    void split(const std::string& text)
    {
        std::istringstream in(text);
        std::string raw;
        std::size_t number = 0;
        std::optional<Statement> open;
        while (std::getline(in, raw)) {
            ++number;
            std::string content = raw.substr(0, raw.find('#'));
            Line line{number, tokenize(content), content};
            if (line.tokens.empty()) continue;
            const std::string& key = line.tokens[0].text;
            if (open) {
                if (key == "end") {
                    if (line.tokens.size() > 1) error(line, line.tokens[1], "unexpected text after 'end'");
                    statements_.push_back(std::move(*open));
                    open.reset();
                } else if (key == "module" || key == "map") {
                    error(open->head, 1, "block '" + open->head.raw + "' is missing 'end'");
                    statements_.push_back(std::move(*open));
                    open.reset();
                } else {
                    open->body.push_back(std::move(line));
                    continue;
                }
                if (key == "end") continue;
            }
            const bool block = (key == "module" && !(line.tokens.size() > 2 && line.tokens[2].text == "=")) ||
                               key == "map";
            if (block)
                open = Statement{std::move(line), {}};
            else
                statements_.push_back({std::move(line), {}});
        }
        if (open) {
            error(open->head, 1, "block '" + open->head.raw + "' is missing 'end'");
            statements_.push_back(std::move(*open));
        }
    }

    void once(std::optional<Statement>& slot, const Statement& s)
    {
        if (slot) error(s.head, 1, "duplicate '" + s.head.tokens[0].text + "' (first on line " +
                                      std::to_string(slot->head.number) + ")");
        else slot = s;
    }

    void collect()
    {
        for (const auto& s : statements_) {
            const std::string& key = s.head.tokens[0].text;
            if (key == "field") once(field_, s);
            else if (key == "vertices") once(vertices_, s);
            else if (key == "maxlen") once(maxlen_, s);
            else if (key == "subcategory") once(subcategory_, s);
            else if (key == "atlas") once(atlas_, s);
            else if (key == "d") once(d_, s);
            else if (key == "seed") once(seed_, s);
            else if (key == "arrow") arrows_.push_back(s);
            else if (key == "relation") relations_.push_back(s);
            else if (key == "module") modules_.push_back(s);
            else if (key == "map") maps_.push_back(s);
            else if (key == "end") error(s.head, 1, "'end' outside a block");
            else error(s.head, 1, "unknown field '" + key + "'");
        }
        if (!field_) {
            issues_.push_back({1, 1, "missing 'field rationals'"});
        } else {
            const auto& t = field_->head.tokens;
            if (t.size() != 2 || t[1].text != "rationals")
                error(field_->head, t.size() > 1 ? t[1].column : 1, "field must be 'rationals'");
        }
        if (!vertices_) issues_.push_back({1, 1, "missing 'vertices'"});
    }

    std::optional<Rational> rational(const Line& l, const Token& t)
    {
        static const std::regex pattern(R"([+-]?[0-9]+(/[0-9]+)?)");
        if (!std::regex_match(t.text, pattern)) {
            error(l, t, "malformed rational '" + t.text + "'");
            return std::nullopt;
        }
        std::string text = t.text;
        if (text[0] == '+') text.erase(0, 1);
        const auto slash = text.find('/');
        if (slash != std::string::npos && text.find_first_not_of('0', slash + 1) == std::string::npos) {
            error(l, t, "zero denominator in '" + t.text + "'");
            return std::nullopt;
        }
        Rational r(text, 10);
        r.canonicalize();
        return r;
    }

    std::optional<std::size_t> count(const Line& l, const Token& t, std::size_t minimum)
    {
        static const std::regex pattern("[0-9]+");
        if (!std::regex_match(t.text, pattern) || t.text.size() > 18 || std::stoull(t.text) < minimum) {
            error(l, t, "expected an integer >= " + std::to_string(minimum) + ", got '" + t.text + "'");
            return std::nullopt;
        }
        return std::stoull(t.text);
    }

    std::optional<Path> path(const Quiver& q, const Line& l, const Token& t, std::size_t offset = 0)
    {
        const std::string text = t.text.substr(offset);
        std::vector<std::size_t> arrows;
        std::size_t start = 0;
        while (true) {
            const auto dot = text.find('.', start);
            const std::string label = text.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
            const auto a = q.arrow_index(label);
            if (!a) {
                error(l, t.column + offset + start, "undefined arrow '" + label + "'");
                return std::nullopt;
            }
            arrows.push_back(*a);
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
        for (std::size_t k = 0; k + 1 < arrows.size(); ++k)
            if (q.arrow(arrows[k]).target != q.arrow(arrows[k + 1]).source) {
                error(l, t, "path '" + text + "' is not composable");
                return std::nullopt;
            }
        return Path::of_arrows(q, arrows);
    }

    void build_algebra_section()
    {
        const Line& vl = vertices_->head;
        std::vector<std::string> vertices;
        for (std::size_t k = 1; k < vl.tokens.size(); ++k) vertices.push_back(vl.tokens[k].text);
        if (vertices.empty()) error(vl, 1, "no vertices declared");

        std::vector<Arrow> arrows;
        for (const auto& s : arrows_) {
            const auto& t = s.head.tokens;
            if (t.size() != 4) {
                error(s.head, 1, "expected 'arrow LABEL SOURCE TARGET'");
                continue;
            }
            const auto src = std::find(vertices.begin(), vertices.end(), t[2].text);
            const auto tgt = std::find(vertices.begin(), vertices.end(), t[3].text);
            if (src == vertices.end()) error(s.head, t[2], "undefined vertex '" + t[2].text + "'");
            if (tgt == vertices.end()) error(s.head, t[3], "undefined vertex '" + t[3].text + "'");
            if (src == vertices.end() || tgt == vertices.end()) continue;
            arrows.push_back({t[1].text, static_cast<std::size_t>(src - vertices.begin()),
                              static_cast<std::size_t>(tgt - vertices.begin())});
        }
        if (!issues_.empty()) return;
        Quiver q;
        try {
            q = Quiver(vertices, arrows);
        } catch (const InputError& e) {
            error(vl, 1, e.what());
            return;
        }

        RelationSet relations;
        for (const auto& s : relations_) {
            const auto& t = s.head.tokens;
            Relation rel;
            bool ok = true;
            std::size_t i = 1;
            while (i < t.size() && ok) {
                Rational sign(1);
                if (t[i].text == "+" || t[i].text == "-") {
                    if (t[i].text == "-") sign = -1;
                    ++i;
                } else if (!rel.terms.empty()) {
                    error(s.head, t[i], "expected '+' or '-'");
                    ok = false;
                    break;
                }
                if (i >= t.size()) {
                    error(s.head, t.back().column, "relation ends with a sign");
                    ok = false;
                    break;
                }
                Rational coef(1);
                std::size_t offset = 0;
                const auto star = t[i].text.find('*');
                if (star != std::string::npos) {
                    const auto c = rational(s.head, {t[i].text.substr(0, star), t[i].column});
                    if (!c) { ok = false; break; }
                    coef = *c;
                    offset = star + 1;
                } else if (i + 1 < t.size() && t[i + 1].text != "+" && t[i + 1].text != "-") {
                    const auto c = rational(s.head, t[i]);
                    if (!c) { ok = false; break; }
                    coef = *c;
                    ++i;
                }
                const auto p = path(q, s.head, t[i], offset);
                if (!p) { ok = false; break; }
                rel.terms.push_back({sign * coef, *p});
                ++i;
            }
            if (!ok) continue;
            if (rel.terms.empty()) {
                error(s.head, 1, "empty relation");
                continue;
            }
            relations.push_back(std::move(rel));
        }

        std::size_t maxlen = 16;
        if (maxlen_) {
            const auto& t = maxlen_->head.tokens;
            if (t.size() != 2) error(maxlen_->head, 1, "expected 'maxlen N'");
            else if (const auto n = count(maxlen_->head, t[1], 1)) maxlen = *n;
        }
        if (!issues_.empty()) return;
        try {
            problem_.algebra = build_algebra(q, relations, maxlen);
        } catch (const std::runtime_error& e) {
            const Line& where = relations_.empty() ? vl : relations_.front().head;
            error(where, 1, std::string("algebra: ") + e.what());
        }
    }

    // "[1 0; 0 1]" with the expected shape; "[]" for any shape with a zero side.
    std::optional<Matrix> matrix(const Line& l, std::size_t rows, std::size_t cols, const std::string& what)
    {
        const auto open = l.raw.find('['), close = l.raw.rfind(']');
        if (open == std::string::npos || close == std::string::npos || close < open) {
            error(l, 1, what + ": expected a matrix in brackets");
            return std::nullopt;
        }
        if (!tokenize(l.raw.substr(close + 1)).empty()) {
            error(l, close + 2, what + ": unexpected text after ']'");
            return std::nullopt;
        }
        const std::string inner = l.raw.substr(open + 1, close - open - 1);
        std::vector<std::vector<Token>> parsed;
        std::size_t start = 0;
        while (true) {
            const auto semi = inner.find(';', start);
            auto row = tokenize(inner.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
            for (auto& t : row) t.column += open + 1 + start;
            parsed.push_back(std::move(row));
            if (semi == std::string::npos) break;
            start = semi + 1;
        }
        if (parsed.size() == 1 && parsed[0].empty()) parsed.clear();
        const std::size_t got_rows = parsed.size();
        const std::size_t got_cols = parsed.empty() ? 0 : parsed[0].size();
        for (const auto& row : parsed)
            if (row.size() != got_cols) {
                error(l, open + 1, what + ": rows of different lengths");
                return std::nullopt;
            }
        const bool empty_ok = parsed.empty() && (rows == 0 || cols == 0);
        if (!empty_ok && (got_rows != rows || got_cols != cols)) {
            error(l, open + 1,
                  what + ": expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got " +
                      std::to_string(got_rows) + "x" + std::to_string(got_cols));
            return std::nullopt;
        }
        Matrix m(rows, cols);
        bool ok = true;
        for (std::size_t r = 0; r < got_rows; ++r)
            for (std::size_t c = 0; c < got_cols; ++c) {
                const auto v = rational(l, parsed[r][c]);
                if (v) m(r, c) = *v;
                else ok = false;
            }
        if (!ok) return std::nullopt;
        return m;
    }

    bool fresh_name(const Line& l, const Token& t)
    {
        if (problem_.modules.count(t.text)) {
            error(l, t, "module '" + t.text + "' defined twice");
            return false;
        }
        return true;
    }

    void build_modules()
    {
        const AlgebraPtr& alg = problem_.algebra;
        const Quiver& q = alg->quiver();
        for (const auto& s : modules_) {
            const auto& t = s.head.tokens;
            if (t.size() < 3) {
                error(s.head, 1, "expected 'module NAME dims ...' or 'module NAME = A + B'");
                continue;
            }
            const std::string& name = t[1].text;
            if (!fresh_name(s.head, t[1])) continue;
            if (t[2].text == "=") {
                std::vector<Module> parts;
                bool ok = t.size() > 3;
                for (std::size_t k = 3; k < t.size(); ++k) {
                    if ((k - 3) % 2 == 1) {
                        if (t[k].text != "+") {
                            error(s.head, t[k], "expected '+'");
                            ok = false;
                        }
                        continue;
                    }
                    const auto it = problem_.modules.find(t[k].text);
                    if (it == problem_.modules.end()) {
                        error(s.head, t[k], "undefined module '" + t[k].text + "'");
                        ok = false;
                    } else {
                        parts.push_back(it->second);
                    }
                }
                if (!ok || parts.empty()) {
                    if (t.size() == 3) error(s.head, 1, "module '" + name + "': empty sum");
                    continue;
                }
                problem_.modules.emplace(name, direct_sum(parts, alg).sum);
                problem_.module_order.push_back(name);
                continue;
            }
            if (t[2].text != "dims") {
                error(s.head, t[2], "expected 'dims' or '='");
                continue;
            }
            if (t.size() - 3 != q.vertex_count()) {
                error(s.head, t[2], "module '" + name + "': expected " + std::to_string(q.vertex_count()) +
                                        " dimensions, got " + std::to_string(t.size() - 3));
                continue;
            }
            std::vector<std::size_t> dims;
            bool ok = true;
            for (std::size_t k = 3; k < t.size(); ++k) {
                const auto n = count(s.head, t[k], 0);
                ok = ok && n.has_value();
                dims.push_back(n.value_or(0));
            }
            if (!ok) continue;
            std::vector<Matrix> actions;
            for (const auto& a : q.arrows()) actions.emplace_back(dims[a.target], dims[a.source]);
            std::vector<bool> seen(q.arrow_count(), false);
            for (const auto& l : s.body) {
                if (l.tokens.size() < 2 || l.tokens[1].text.rfind('=', 0) != 0) {
                    error(l, 1, "module '" + name + "': expected 'ARROW = [...]'");
                    ok = false;
                    continue;
                }
                const auto a = q.arrow_index(l.tokens[0].text);
                if (!a) {
                    error(l, l.tokens[0], "module '" + name + "': undefined arrow '" + l.tokens[0].text + "'");
                    ok = false;
                    continue;
                }
                if (seen[*a]) {
                    error(l, l.tokens[0], "module '" + name + "': arrow '" + l.tokens[0].text + "' given twice");
                    ok = false;
                    continue;
                }
                seen[*a] = true;
                const Arrow& arr = q.arrow(*a);
                const auto m = matrix(l, dims[arr.target], dims[arr.source], "module '" + name + "' arrow '" + arr.label + "'");
                if (m) actions[*a] = *m;
                else ok = false;
            }
            if (!ok) continue;
            Module mod(alg, dims, actions);
            const Diagnostics diag = validate_module(mod);
            for (const auto& f : diag.failures) error(s.head, 1, "module '" + name + "': " + f);
            if (!diag.ok()) continue;
            problem_.modules.emplace(name, std::move(mod));
            problem_.module_order.push_back(name);
        }
    }

    void build_maps()
    {
        const Quiver& q = problem_.algebra->quiver();
        for (const auto& s : maps_) {
            const auto& t = s.head.tokens;
            if (t.size() != 4) {
                error(s.head, 1, "expected 'map NAME SOURCE TARGET'");
                continue;
            }
            const std::string& name = t[1].text;
            bool ok = true;
            for (const auto& m : problem_.maps)
                if (m.name == name) {
                    error(s.head, t[1], "map '" + name + "' defined twice");
                    ok = false;
                }
            for (std::size_t k : {2u, 3u})
                if (!problem_.modules.count(t[k].text)) {
                    error(s.head, t[k], "undefined module '" + t[k].text + "'");
                    ok = false;
                }
            if (!ok) continue;
            const Module& src = problem_.modules.at(t[2].text);
            const Module& tgt = problem_.modules.at(t[3].text);
            std::vector<Matrix> comps;
            for (std::size_t v = 0; v < q.vertex_count(); ++v) comps.emplace_back(tgt.dim(v), src.dim(v));
            std::vector<bool> seen(q.vertex_count(), false);
            for (const auto& l : s.body) {
                if (l.tokens.size() < 2 || l.tokens[1].text.rfind('=', 0) != 0) {
                    error(l, 1, "map '" + name + "': expected 'VERTEX = [...]'");
                    ok = false;
                    continue;
                }
                const auto v = q.vertex_index(l.tokens[0].text);
                if (!v) {
                    error(l, l.tokens[0], "map '" + name + "': undefined vertex '" + l.tokens[0].text + "'");
                    ok = false;
                    continue;
                }
                if (seen[*v]) {
                    error(l, l.tokens[0], "map '" + name + "': vertex '" + l.tokens[0].text + "' given twice");
                    ok = false;
                    continue;
                }
                seen[*v] = true;
                const auto m = matrix(l, tgt.dim(*v), src.dim(*v), "map '" + name + "' vertex '" + q.vertex(*v) + "'");
                if (m) comps[*v] = *m;
                else ok = false;
            }
            if (!ok) continue;
            ModuleMap f(src, tgt, comps);
            if (!is_homomorphism(f)) {
                error(s.head, 1, "map '" + name + "' does not commute with the arrow actions");
                continue;
            }
            problem_.maps.push_back({name, t[2].text, t[3].text, std::move(f)});
        }
    }

    std::vector<std::string> names(const Statement& s)
    {
        std::vector<std::string> out;
        for (std::size_t k = 1; k < s.head.tokens.size(); ++k) {
            const Token& t = s.head.tokens[k];
            if (!problem_.modules.count(t.text)) error(s.head, t, "undefined module '" + t.text + "'");
            else if (std::find(out.begin(), out.end(), t.text) != out.end())
                error(s.head, t, "module '" + t.text + "' listed twice");
            else out.push_back(t.text);
        }
        return out;
    }

    void build_lists()
    {
        if (subcategory_) problem_.subcategory = names(*subcategory_);
        if (atlas_) problem_.atlas = names(*atlas_);
        if (d_) {
            const auto& t = d_->head.tokens;
            if (t.size() != 2) error(d_->head, 1, "expected 'd N'");
            else if (const auto n = count(d_->head, t[1], 1)) problem_.d = *n;
        }
        if (seed_) {
            const auto& t = seed_->head.tokens;
            if (t.size() != 2) error(seed_->head, 1, "expected 'seed N'");
            else if (const auto n = count(seed_->head, t[1], 0)) problem_.seed = *n;
        }
    }
};

std::string render_issues(const std::vector<ParseIssue>& issues)
{
    std::string s;
    for (const auto& i : issues)
        s += (s.empty() ? "" : "\n") + ("line " + std::to_string(i.line) + ", column " + std::to_string(i.column) +
                                        ": " + i.message);
    return s;
}

}  // namespace

ParseError::ParseError(std::vector<ParseIssue> issues) : InputError(render_issues(issues)), issues_(std::move(issues)) {}

const Module& ProblemFile::module(const std::string& name) const
{
    const auto it = modules.find(name);
    if (it == modules.end()) throw InputError("undefined module '" + name + "'");
    return it->second;
}

const NamedMap& ProblemFile::map(const std::string& name) const
{
    for (const auto& m : maps)
        if (m.name == name) return m;
    throw InputError("undefined map '" + name + "'");
}

std::vector<Module> ProblemFile::list(const std::vector<std::string>& names) const
{
    std::vector<Module> out;
    for (const auto& n : names) out.push_back(module(n));
    return out;
}

ProblemFile parse_problem(const std::string& text) { return Parser(text).run(); }

ProblemFile load_problem(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

}  // namespace ctilt
