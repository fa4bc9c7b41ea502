#pragma once

// Bound quiver algebras: quiver + relations -> basis of reduced paths with
// structure constants.
//
// Paths compose left to right: the path a.b on 1 -a-> 2 -b-> 3 traverses a
// first, and the product of basis paths p * q is the concatenation "p then q"
// (zero unless p ends where q starts). Representations of the quiver are then
// right modules over the algebra.

#include "ctilt/error.hpp"
#include "ctilt/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ctilt {

struct Arrow {
    std::string label;
    std::size_t source = 0;
    std::size_t target = 0;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
public:
    Quiver() = default;
    /// Throws InputError on duplicate labels or dangling endpoints.
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::string& vertex(std::size_t v) const { return vertices_.at(v); }
    const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    std::optional<std::size_t> vertex_index(const std::string& label) const;
    std::optional<std::size_t> arrow_index(const std::string& label) const;

    /// Same labels, every arrow reversed.
    Quiver opposite() const;

    friend bool operator==(const Quiver&, const Quiver&) = default;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

/// A path in a quiver. An empty arrow list is the trivial path at `source`
/// (== `target`).
struct Path {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> arrows;

    std::size_t length() const { return arrows.size(); }
    bool trivial() const { return arrows.empty(); }

    static Path trivial_at(std::size_t v) { return {v, v, {}}; }
    static Path of_arrows(const Quiver& q, std::vector<std::size_t> arrows);

    friend bool operator==(const Path&, const Path&) = default;
};

/// Length first, then lexicographic in arrow declaration order, then source
/// vertex (only relevant for trivial paths).
bool deglex_less(const Path& a, const Path& b);

struct PathLess {
    bool operator()(const Path& a, const Path& b) const { return deglex_less(a, b); }
};

/// Concatenation "a then b"; requires a.target == b.source.
Path concat(const Path& a, const Path& b);
Path reversed(const Path& p);
std::string path_label(const Quiver& q, const Path& p);

struct RelationTerm {
    Rational coefficient;
    Path path;

    friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};

/// A linear combination of parallel paths of length >= 2, read as "= 0".
struct Relation {
    std::vector<RelationTerm> terms;

    friend bool operator==(const Relation&, const Relation&) = default;
};

using RelationSet = std::vector<Relation>;

/// Sparse vector over an algebra basis: sorted by index, no zero entries.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// A finite-dimensional algebra given by a basis and structure constants.
/// Used both for bound quiver algebras and for endomorphism algebras.
class AlgebraTable {
public:
    AlgebraTable() = default;
    /// `products` is dim*dim row-major: products[i*dim + j] = b_i * b_j.
    AlgebraTable(std::vector<std::string> labels, std::vector<std::size_t> idempotents,
                 std::vector<SparseVector> products);

    std::size_t dim() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    /// Basis indices of the vertex idempotents.
    const std::vector<std::size_t>& idempotents() const { return idempotents_; }
    const SparseVector& product(std::size_t i, std::size_t j) const { return products_.at(i * dim() + j); }
    const std::vector<SparseVector>& products() const { return products_; }

    /// x * y for arbitrary sparse vectors.
    SparseVector multiply(const SparseVector& x, const SparseVector& y) const;

    friend bool operator==(const AlgebraTable&, const AlgebraTable&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<std::size_t> idempotents_;
    std::vector<SparseVector> products_;
};

/// Same basis, products swapped.
AlgebraTable opposite_table(const AlgebraTable& table);

/// Checks associativity on all basis triples and that the marked idempotents
/// are orthogonal idempotents summing to the identity.
Diagnostics validate_algebra(const AlgebraTable& table);

/// A bound quiver algebra: the quiver and relations it came from, the basis of
/// reduced paths and the multiplication table over that basis.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    Algebra(Quiver quiver, RelationSet relations, std::vector<Path> basis, AlgebraTable table);

    const Quiver& quiver() const { return quiver_; }
    const RelationSet& relations() const { return relations_; }
    const std::vector<Path>& basis() const { return basis_; }
    const AlgebraTable& table() const { return table_; }
    std::size_t dim() const { return basis_.size(); }

    std::optional<std::size_t> basis_index(const Path& p) const;
    std::size_t vertex_element(std::size_t v) const;
    std::size_t arrow_element(std::size_t a) const;
    /// Basis indices of paths from `from` to `to`, in basis order.
    const std::vector<std::size_t>& paths_between(std::size_t from, std::size_t to) const;

    friend bool same_algebra(const Algebra& a, const Algebra& b);
    friend std::shared_ptr<const Algebra> opposite_algebra(const Algebra& alg);

private:
    Quiver quiver_;
    RelationSet relations_;
    std::vector<Path> basis_;
    AlgebraTable table_;
    std::map<Path, std::size_t, PathLess> index_;
    std::vector<std::vector<std::size_t>> between_;

    // The opposite is built once; the opposite's opposite points back here.
    mutable std::mutex opposite_mutex_;
    mutable std::shared_ptr<const Algebra> opposite_;
    mutable std::weak_ptr<const Algebra> opposite_of_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Builds the algebra kQ/I. Each relation is oriented as a rewriting rule whose
/// left-hand side is its deg-lex largest path. Throws InputError for malformed
/// relations and AlgebraError when a reduced path of length max_path_len
/// exists or a critical pair does not resolve.
AlgebraPtr build_algebra(const Quiver& quiver, const RelationSet& relations, std::size_t max_path_len);

/// Algebra over the opposite quiver: same basis order, reversed paths,
/// reversed relations, transposed multiplication. Throws AlgebraError if the
/// transposed table fails validation. Cached per algebra, so that
/// opposite(opposite(A)) is A itself when A is held by an AlgebraPtr.
AlgebraPtr opposite_algebra(const Algebra& alg);

/// Structural equality of quiver, relations, basis and table.
bool same_algebra(const Algebra& a, const Algebra& b);
inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b)
{
    return a == b || (a && b && same_algebra(*a, *b));
}

}  // namespace ctilt
