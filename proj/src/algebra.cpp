#include "ctilt/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace ctilt {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows))
{
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            if (vertices_[i] == vertices_[j]) throw InputError("duplicate vertex label '" + vertices_[i] + "'");
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        const auto& a = arrows_[i];
        if (a.source >= vertices_.size() || a.target >= vertices_.size())
            throw InputError("arrow '" + a.label + "' refers to a missing vertex");
        for (std::size_t j = i + 1; j < arrows_.size(); ++j)
            if (a.label == arrows_[j].label) throw InputError("duplicate arrow label '" + a.label + "'");
    }
}

std::optional<std::size_t> Quiver::vertex_index(const std::string& label) const
{
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i] == label) return i;
    return std::nullopt;
}

std::optional<std::size_t> Quiver::arrow_index(const std::string& label) const
{
    for (std::size_t i = 0; i < arrows_.size(); ++i)
        if (arrows_[i].label == label) return i;
    return std::nullopt;
}

Quiver Quiver::opposite() const
{
    std::vector<Arrow> reversed_arrows;
    reversed_arrows.reserve(arrows_.size());
    for (const auto& a : arrows_) reversed_arrows.push_back({a.label, a.target, a.source});
    return Quiver(vertices_, std::move(reversed_arrows));
}

Path Path::of_arrows(const Quiver& q, std::vector<std::size_t> arrows)
{
    if (arrows.empty()) throw InputError("empty arrow sequence");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i) {
        if (q.arrow(arrows[i]).target != q.arrow(arrows[i + 1]).source) {
            throw InputError("arrows '" + q.arrow(arrows[i]).label + "' and '" + q.arrow(arrows[i + 1]).label +
                             "' do not compose");
        }
    }
    Path p;
    p.source = q.arrow(arrows.front()).source;
    p.target = q.arrow(arrows.back()).target;
    p.arrows = std::move(arrows);
    return p;
}

bool deglex_less(const Path& a, const Path& b)
{
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.arrows != b.arrows) return a.arrows < b.arrows;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
}

Path concat(const Path& a, const Path& b)
{
    if (a.target != b.source) throw std::logic_error("concat of non-composable paths");
    Path p{a.source, b.target, a.arrows};
    p.arrows.insert(p.arrows.end(), b.arrows.begin(), b.arrows.end());
    return p;
}

Path reversed(const Path& p)
{
    Path r{p.target, p.source, p.arrows};
    std::reverse(r.arrows.begin(), r.arrows.end());
    return r;
}

std::string path_label(const Quiver& q, const Path& p)
{
    if (p.trivial()) return "e" + q.vertex(p.source);
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i > 0) s += '.';
        s += q.arrow(p.arrows[i]).label;
    }
    return s;
}

// ---------------------------------------------------------------------------
// AlgebraTable

namespace {

void accumulate(std::map<std::size_t, Rational>& acc, const SparseVector& v, const Rational& scale)
{
    for (const auto& [i, c] : v) acc[i] += scale * c;
}

SparseVector to_sparse(const std::map<std::size_t, Rational>& acc)
{
    SparseVector out;
    for (const auto& [i, c] : acc)
        if (sgn(c) != 0) out.emplace_back(i, c);
    return out;
}

std::string render(const AlgebraTable& t, const SparseVector& v)
{
    if (v.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k > 0) s += " + ";
        s += to_string(v[k].second) + "*" + t.label(v[k].first);
    }
    return s;
}

}  // namespace

AlgebraTable::AlgebraTable(std::vector<std::string> labels, std::vector<std::size_t> idempotents,
                           std::vector<SparseVector> products)
    : labels_(std::move(labels)), idempotents_(std::move(idempotents)), products_(std::move(products))
{
    if (products_.size() != labels_.size() * labels_.size())
        throw InputError("structure constant table has wrong size");
    for (auto e : idempotents_)
        if (e >= labels_.size()) throw InputError("idempotent index out of range");
}

SparseVector AlgebraTable::multiply(const SparseVector& x, const SparseVector& y) const
{
    std::map<std::size_t, Rational> acc;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) accumulate(acc, product(i, j), a * b);
    return to_sparse(acc);
}

AlgebraTable opposite_table(const AlgebraTable& table)
{
    const std::size_t n = table.dim();
    std::vector<SparseVector> products(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) products[i * n + j] = table.product(j, i);
    return AlgebraTable(table.labels(), table.idempotents(), std::move(products));
}

Diagnostics validate_algebra(const AlgebraTable& t)
{
    Diagnostics diag;
    const std::size_t n = t.dim();
    for (auto e : t.idempotents()) {
        for (auto f : t.idempotents()) {
            const SparseVector expected = e == f ? SparseVector{{e, Rational(1)}} : SparseVector{};
            if (t.product(e, f) != expected) {
                diag.add("idempotent failure: " + t.label(e) + " * " + t.label(f) + " = " + render(t, t.product(e, f)));
            }
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        std::map<std::size_t, Rational> left, right;
        for (auto e : t.idempotents()) {
            accumulate(left, t.product(e, x), 1);
            accumulate(right, t.product(x, e), 1);
        }
        const SparseVector unit{{x, Rational(1)}};
        if (to_sparse(left) != unit || to_sparse(right) != unit)
            diag.add("idempotent failure: vertex idempotents do not act as the identity on " + t.label(x));
    }
    std::size_t reported = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const SparseVector lhs = t.multiply(t.product(i, j), {{k, Rational(1)}});
                const SparseVector rhs = t.multiply({{i, Rational(1)}}, t.product(j, k));
                if (lhs != rhs && reported++ < 20) {
                    diag.add("associativity failure on (" + t.label(i) + ", " + t.label(j) + ", " + t.label(k) +
                             "): " + render(t, lhs) + " vs " + render(t, rhs));
                }
            }
        }
    }
    return diag;
}

// ---------------------------------------------------------------------------
// Algebra

Algebra::Algebra(Quiver quiver, RelationSet relations, std::vector<Path> basis, AlgebraTable table)
    : quiver_(std::move(quiver)), relations_(std::move(relations)), basis_(std::move(basis)), table_(std::move(table))
{
    const std::size_t nv = quiver_.vertex_count();
    between_.assign(nv * nv, {});
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        index_.emplace(basis_[i], i);
        between_[basis_[i].source * nv + basis_[i].target].push_back(i);
    }
}

std::optional<std::size_t> Algebra::basis_index(const Path& p) const
{
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Algebra::vertex_element(std::size_t v) const
{
    return *basis_index(Path::trivial_at(v));
}

std::size_t Algebra::arrow_element(std::size_t a) const
{
    const auto& arrow = quiver_.arrow(a);
    auto idx = basis_index(Path{arrow.source, arrow.target, {a}});
    if (!idx) throw AlgebraError("arrow '" + arrow.label + "' is not a basis element");
    return *idx;
}

const std::vector<std::size_t>& Algebra::paths_between(std::size_t from, std::size_t to) const
{
    return between_.at(from * quiver_.vertex_count() + to);
}

bool same_algebra(const Algebra& a, const Algebra& b)
{
    return &a == &b || (a.quiver_ == b.quiver_ && a.relations_ == b.relations_ && a.basis_ == b.basis_ &&
                        a.table_ == b.table_);
}

namespace {

struct Rule {
    Path lhs;
    std::vector<RelationTerm> rhs;
    std::size_t relation = 0;
};

using PathCombination = std::map<Path, Rational, PathLess>;

class Rewriter {
public:
    explicit Rewriter(std::vector<Rule> rules) : rules_(std::move(rules)) {}

    const std::vector<Rule>& rules() const { return rules_; }

    /// One rewrite of `rule` applied at `pos` inside `p`.
    PathCombination apply(const Path& p, std::size_t rule, std::size_t pos) const
    {
        PathCombination out;
        const auto& r = rules_[rule];
        for (const auto& term : r.rhs) {
            Path q{p.source, p.target, {}};
            q.arrows.assign(p.arrows.begin(), p.arrows.begin() + static_cast<std::ptrdiff_t>(pos));
            q.arrows.insert(q.arrows.end(), term.path.arrows.begin(), term.path.arrows.end());
            q.arrows.insert(q.arrows.end(), p.arrows.begin() + static_cast<std::ptrdiff_t>(pos + r.lhs.length()),
                            p.arrows.end());
            out[q] += term.coefficient;
        }
        return out;
    }

    PathCombination normal_form(PathCombination pending) const
    {
        PathCombination result;
        while (!pending.empty()) {
            auto last = std::prev(pending.end());
            const Path p = last->first;
            const Rational c = last->second;
            pending.erase(last);
            if (sgn(c) == 0) continue;
            bool reduced = false;
            for (std::size_t pos = 0; pos < p.length() && !reduced; ++pos) {
                for (std::size_t r = 0; r < rules_.size() && !reduced; ++r) {
                    const auto& lhs = rules_[r].lhs.arrows;
                    if (pos + lhs.size() <= p.length() &&
                        std::equal(lhs.begin(), lhs.end(), p.arrows.begin() + static_cast<std::ptrdiff_t>(pos))) {
                        for (const auto& [q, qc] : apply(p, r, pos)) pending[q] += c * qc;
                        reduced = true;
                    }
                }
            }
            if (!reduced) result[p] += c;
        }
        for (auto it = result.begin(); it != result.end();) {
            it = sgn(it->second) == 0 ? result.erase(it) : std::next(it);
        }
        return result;
    }

    bool has_lhs_suffix(const Path& p) const
    {
        for (const auto& r : rules_) {
            const auto& lhs = r.lhs.arrows;
            if (lhs.size() <= p.length() &&
                std::equal(lhs.begin(), lhs.end(), p.arrows.end() - static_cast<std::ptrdiff_t>(lhs.size())))
                return true;
        }
        return false;
    }

private:
    std::vector<Rule> rules_;
};

std::vector<Rule> make_rules(const Quiver& q, const RelationSet& relations)
{
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < relations.size(); ++i) {
        const auto& rel = relations[i];
        if (rel.terms.empty()) throw InputError("relation " + std::to_string(i + 1) + " has no terms");
        PathCombination combined;
        for (const auto& term : rel.terms) {
            const Path& p = term.path;
            if (p.length() < 2)
                throw InputError("relation " + std::to_string(i + 1) + ": path '" + path_label(q, p) +
                                 "' has length < 2");
            for (auto a : p.arrows)
                if (a >= q.arrow_count()) throw InputError("relation uses an unknown arrow");
            Path::of_arrows(q, p.arrows);
            if (p.source != rel.terms.front().path.source || p.target != rel.terms.front().path.target)
                throw InputError("relation " + std::to_string(i + 1) + " mixes paths with different endpoints");
            combined[p] += term.coefficient;
        }
        for (auto it = combined.begin(); it != combined.end();) {
            it = sgn(it->second) == 0 ? combined.erase(it) : std::next(it);
        }
        if (combined.empty()) continue;
        auto lead = std::prev(combined.end());
        Rule rule{lead->first, {}, i};
        const Rational lead_coeff = lead->second;
        combined.erase(lead);
        for (const auto& [p, c] : combined) rule.rhs.push_back({-c / lead_coeff, p});
        rules.push_back(std::move(rule));
    }
    return rules;
}

void check_confluence(const Quiver& q, const Rewriter& rw)
{
    const auto& rules = rw.rules();
    auto fail = [&](const Path& word, std::size_t r1, std::size_t r2) {
        throw AlgebraError("non-confluent rewriting on critical pair '" + path_label(q, word) +
                           "' between relations " + std::to_string(rules[r1].relation + 1) + " and " +
                           std::to_string(rules[r2].relation + 1));
    };
    for (std::size_t r1 = 0; r1 < rules.size(); ++r1) {
        const auto& u = rules[r1].lhs.arrows;
        for (std::size_t r2 = 0; r2 < rules.size(); ++r2) {
            const auto& v = rules[r2].lhs.arrows;
            // Proper overlaps: a suffix of u equals a prefix of v.
            for (std::size_t k = 1; k < std::min(u.size(), v.size()); ++k) {
                if (!std::equal(u.end() - static_cast<std::ptrdiff_t>(k), u.end(), v.begin())) continue;
                std::vector<std::size_t> w = u;
                w.insert(w.end(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
                const Path word = Path::of_arrows(q, w);
                const auto a = rw.normal_form(rw.apply(word, r1, 0));
                const auto b = rw.normal_form(rw.apply(word, r2, u.size() - k));
                if (a != b) fail(word, r1, r2);
            }
            // Inclusions: v occurs inside u.
            if (r1 == r2 || v.size() > u.size()) continue;
            for (std::size_t pos = 0; pos + v.size() <= u.size(); ++pos) {
                if (!std::equal(v.begin(), v.end(), u.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
                const Path word = rules[r1].lhs;
                const auto a = rw.normal_form(rw.apply(word, r1, 0));
                const auto b = rw.normal_form(rw.apply(word, r2, pos));
                if (a != b) fail(word, r1, r2);
            }
        }
    }
}

}  // namespace

AlgebraPtr build_algebra(const Quiver& quiver, const RelationSet& relations, std::size_t max_path_len)
{
    if (max_path_len < 2) throw InputError("max_path_len must be at least 2");
    const Rewriter rw(make_rules(quiver, relations));
    check_confluence(quiver, rw);

    std::vector<Path> basis;
    std::vector<Path> frontier;
    for (std::size_t v = 0; v < quiver.vertex_count(); ++v) frontier.push_back(Path::trivial_at(v));
    while (!frontier.empty()) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            basis.push_back(p);
            for (std::size_t a = 0; a < quiver.arrow_count(); ++a) {
                if (quiver.arrow(a).source != p.target) continue;
                Path ext{p.source, quiver.arrow(a).target, p.arrows};
                ext.arrows.push_back(a);
                if (rw.has_lhs_suffix(ext)) continue;
                if (ext.length() >= max_path_len) {
                    throw AlgebraError("path '" + path_label(quiver, ext) + "' of length " +
                                       std::to_string(ext.length()) +
                                       " survives rewriting; the algebra may be infinite-dimensional");
                }
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    std::sort(basis.begin(), basis.end(), deglex_less);

    std::map<Path, std::size_t, PathLess> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

    const std::size_t n = basis.size();
    std::vector<SparseVector> products(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (basis[i].target != basis[j].source) continue;
            const auto nf = rw.normal_form({{concat(basis[i], basis[j]), Rational(1)}});
            SparseVector v;
            for (const auto& [p, c] : nf) v.emplace_back(index.at(p), c);
            std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            products[i * n + j] = std::move(v);
        }
    }
    std::vector<std::string> labels;
    std::vector<std::size_t> idempotents;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(path_label(quiver, basis[i]));
        if (basis[i].trivial()) idempotents.push_back(i);
    }
    AlgebraTable table(std::move(labels), std::move(idempotents), std::move(products));
    return std::make_shared<const Algebra>(quiver, relations, std::move(basis), std::move(table));
}

AlgebraPtr opposite_algebra(const Algebra& alg)
{
    std::lock_guard lock(alg.opposite_mutex_);
    if (alg.opposite_) return alg.opposite_;
    if (auto back = alg.opposite_of_.lock()) return back;

    RelationSet rels;
    for (const auto& r : alg.relations()) {
        Relation rr;
        for (const auto& t : r.terms) rr.terms.push_back({t.coefficient, reversed(t.path)});
        rels.push_back(std::move(rr));
    }
    std::vector<Path> basis;
    for (const auto& p : alg.basis()) basis.push_back(reversed(p));
    AlgebraTable table = opposite_table(alg.table());
    const Diagnostics diag = validate_algebra(table);
    if (!diag.ok()) throw AlgebraError("opposite algebra is not well-formed: " + diag.failures.front());
    auto op = std::make_shared<const Algebra>(alg.quiver().opposite(), std::move(rels), std::move(basis),
                                              std::move(table));
    if (auto self = alg.weak_from_this().lock()) {
        op->opposite_of_ = self;
        alg.opposite_ = op;
    }
    return op;
}
}  // namespace ctilt
