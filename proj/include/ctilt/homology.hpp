#pragma once

// Hom spaces, projectives and injectives, kernels and cokernels, projective
// resolutions and Ext.

#include "ctilt/module.hpp"

#include <optional>
#include <vector>

namespace ctilt {

/// Basis of Hom(m, n): the solution space of the intertwining equations, one
/// map per free variable in row-reduced order.
std::vector<ModuleMap> hom_basis(const Module& m, const Module& n);

/// Coordinates of maps in a fixed basis of a Hom space.
class HomCoordinates {
public:
    HomCoordinates(std::vector<ModuleMap> basis);

    const std::vector<ModuleMap>& basis() const { return basis_; }
    std::size_t dimension() const { return basis_.size(); }
    /// Column of coordinates; throws std::logic_error if f is not in the span.
    Matrix coordinates(const ModuleMap& f) const;
    ModuleMap combine(const Matrix& coords) const;

private:
    std::vector<ModuleMap> basis_;
    CoordinateSolver solver_;
};

/// Rank of the span of the given maps (as vectors in the ambient space of all
/// vertex-wise linear maps).
std::size_t span_rank(const std::vector<ModuleMap>& maps);

/// Rank of Hom(y, n) -> Hom(x, n), phi |-> phi o f, for f : x -> y.
std::size_t precomposition_rank(const ModuleMap& f, const Module& n);
/// Rank of Hom(n, x) -> Hom(n, y), phi |-> f o phi, for f : x -> y.
std::size_t postcomposition_rank(const ModuleMap& f, const Module& n);

/// e_v A: basis at vertex w the reduced paths from v to w.
Module std_projective(const AlgebraPtr& alg, std::size_t vertex);
/// D(A^op e_v ...): the dual of the opposite-algebra projective at v.
Module std_injective(const AlgebraPtr& alg, std::size_t vertex);

/// The map of sums of standard projectives given by left multiplication:
/// entry (t, s) is an element of e_{targets[t]} A e_{sources[s]} and
/// determines the component P(sources[s]) -> P(targets[t]).
ModuleMap projective_map(const AlgebraPtr& alg, const std::vector<std::size_t>& sources,
                         const std::vector<std::size_t>& targets,
                         const std::vector<std::vector<SparseVector>>& entries);
Module projective_sum(const AlgebraPtr& alg, const std::vector<std::size_t>& vertices);

/// Vector-space dual over the opposite algebra: actions transposed.
Module dualize(const Module& m);
ModuleMap dualize(const ModuleMap& f);

/// Submodule spanned by per-vertex column bases, with its inclusion. The
/// spaces must be closed under the arrow actions.
std::pair<Module, ModuleMap> submodule(const Module& m, const std::vector<Matrix>& bases);

std::pair<Module, ModuleMap> map_kernel(const ModuleMap& f);
std::pair<Module, ModuleMap> map_cokernel(const ModuleMap& f);
std::pair<Module, ModuleMap> map_image(const ModuleMap& f);

/// Top of m: the quotient by the images of all arrows, as per-vertex column
/// bases of a complement of the radical.
std::vector<Matrix> top_complement(const Module& m);

struct ProjectiveCover {
    Module projective;
    ModuleMap map;
    /// Vertex of each indecomposable summand, in summand order.
    std::vector<std::size_t> vertices;
};

/// Minimal projective cover; throws InputError for the zero module.
ProjectiveCover projective_cover(const Module& m);

/// terms[0] -> m is the augmentation, differentials[k-1] : terms[k] -> terms[k-1].
struct Resolution {
    std::vector<Module> terms;
    std::vector<ModuleMap> differentials;
    ModuleMap augmentation;
    /// Summand vertices of each term (projective resolutions only).
    std::vector<std::vector<std::size_t>> vertices;

    std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
};

/// Minimal projective resolution up to terms[length]; stops early when a
/// syzygy vanishes.
Resolution projective_resolution(const Module& m, std::size_t length);

/// True when every composite is zero and the sequence
///   ... -> terms[1] -> terms[0] -> target -> 0
/// is exact (and terms[last] injects when `closed`), by ranks.
bool is_exact_resolution(const Resolution& r, bool closed);

std::size_t ext_dim(const Module& m, const Module& n, std::size_t i);
/// dim Ext^k(m, n) for k = 0..max_i from one resolution of m.
std::vector<std::size_t> ext_dims(const Module& m, const Module& n, std::size_t max_i);
std::vector<std::size_t> ext_dims(const Resolution& projective_res, const Module& n, std::size_t max_i);

/// Transpose Tr m over the opposite algebra, from a minimal presentation.
Module transpose(const Module& m);

}  // namespace ctilt
