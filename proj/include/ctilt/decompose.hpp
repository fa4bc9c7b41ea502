#pragma once

// Endomorphism algebras, indecomposability, isomorphism tests, Krull-Schmidt
// decomposition and the Auslander-Reiten translate.

#include "ctilt/homology.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ctilt {

/// End(m) with structure constants in the hom_basis order:
/// basis[x] o basis[y] = sum_z constants[x * dim + y](z, 0) basis[z].
struct EndomorphismAlgebra {
    Module module;
    std::vector<ModuleMap> basis;
    std::vector<Matrix> constants;

    std::size_t dim() const { return basis.size(); }
};

EndomorphismAlgebra endomorphism_algebra(const Module& m);

/// Gram matrix of the trace form tr(L_x L_y); its kernel is the Jacobson
/// radical in characteristic zero.
Matrix trace_form(const EndomorphismAlgebra& end);

/// dim End(m) - dim rad End(m).
std::size_t radical_codimension(const EndomorphismAlgebra& end);

/// True iff m is nonzero and End(m)/rad End(m) is one-dimensional. Modules
/// whose endomorphism ring modulo the radical is a proper division algebra
/// over the rationals are reported as decomposable-or-unknown (false).
bool is_indecomposable(const Module& m);

/// An invertible map m -> n, searched among Hom basis elements and seeded
/// random combinations (25 attempts). nullopt means "not proven isomorphic".
std::optional<ModuleMap> find_isomorphism(const Module& m, const Module& n, std::uint64_t seed = 0);
bool is_isomorphic(const Module& m, const Module& n, std::uint64_t seed = 0);

/// m = (+)_k classes[type[k]], with summand_maps carrying the k-th copy in
/// and out of m. `certificate` is the invertible map from the external direct
/// sum of the copies (in k order) to m.
struct Decomposition {
    std::vector<Module> classes;
    std::vector<std::size_t> multiplicities;

    std::vector<std::size_t> type;
    std::vector<ModuleMap> inclusions;   // classes[type[k]] -> m
    std::vector<ModuleMap> projections;  // m -> classes[type[k]]
    ModuleMap certificate;

    std::size_t copies() const { return type.size(); }
};

/// Splits m by Fitting decompositions of seeded random endomorphisms at their
/// rational eigenvalues. Each split step gets a budget of 25 draws; running
/// out throws DecompositionError. Classes are ordered by dimension vector.
Decomposition decompose(const Module& m, std::uint64_t seed);

/// Auslander-Reiten translate D Tr m; nullopt iff m is projective. Throws
/// PreconditionError when m is not indecomposable.
std::optional<Module> tau(const Module& m);
/// Tr D m; nullopt iff m is injective.
std::optional<Module> tau_inverse(const Module& m);

}  // namespace ctilt
