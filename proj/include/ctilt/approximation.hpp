#pragma once

// Approximations by a subcategory add(M_1 (+) ... (+) M_n), d-kernels,
// d-cokernels, add(M)-resolutions and Hom-exactness checks.

#include "ctilt/decompose.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctilt {

/// Pairwise non-isomorphic indecomposables M_1, ..., M_n standing for add of
/// their sum.
class Subcategory {
public:
    Subcategory() = default;
    /// Throws InputError if a member is not indecomposable, two members are
    /// isomorphic, or a member lives over another algebra.
    Subcategory(AlgebraPtr algebra, std::vector<Module> members, std::vector<std::string> names = {});
    /// No checks; for members already known to be indecomposable and pairwise
    /// non-isomorphic, such as a subset of a certified atlas.
    static Subcategory unchecked(AlgebraPtr algebra, std::vector<Module> members, std::vector<std::string> names);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<Module>& members() const { return members_; }
    const Module& member(std::size_t i) const { return members_.at(i); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    /// Index of the member isomorphic to m, if any.
    std::optional<std::size_t> find(const Module& m) const;
    bool contains_projectives() const;
    bool contains_injectives() const;

private:
    AlgebraPtr algebra_;
    std::vector<Module> members_;
    std::vector<std::string> names_;
};

/// An object of add(sub) written as a sum of member copies, with the maps
/// carrying each copy in and out.
struct AddDecomposition {
    std::vector<std::size_t> members;    // member index of each copy
    std::vector<ModuleMap> inclusions;   // member -> object
    std::vector<ModuleMap> projections;  // object -> member

    /// Copies per member.
    std::vector<std::size_t> multiplicities(std::size_t members_count) const;
};

/// Splits m over the members of sub; nullopt if some summand is not
/// isomorphic to a member.
std::optional<AddDecomposition> decompose_in(const Module& m, const Subcategory& sub, std::uint64_t seed = 0);

/// Member names with multiplicities, e.g. "P12 + S1^2", or "0".
std::string describe(const AddDecomposition& d, const Subcategory& sub);

/// A map between x and an object of add(sub) whose copies are listed.
struct Approximation {
    Module object;
    ModuleMap map;  // object -> x (right) or x -> object (left)
    AddDecomposition structure;
};

/// Every map from a member to x factors through `map`. Built from the
/// universal candidate and minimised by dropping copies greedily (members in
/// order, last copy first).
Approximation right_approximation(const Module& x, const Subcategory& sub);
/// Every map from x to a member factors through `map`.
Approximation left_approximation(const Module& x, const Subcategory& sub);

/// X^0 -> X^1 -> ... -> X^{d+1}.
struct DSequence {
    std::vector<Module> objects;
    std::vector<ModuleMap> maps;

    std::size_t d() const { return maps.empty() ? 0 : maps.size() - 1; }
};

/// f followed by its d-cokernel X^1 -> ... -> X^{d+1}: the cokernel of f,
/// then alternately a left approximation and the cokernel of the composite.
/// Throws ConstructionError naming the stage when the last cokernel is not in
/// add(sub) or the result fails the contravariant Hom-exactness test.
DSequence d_cokernel(const ModuleMap& f, const Subcategory& sub, std::size_t d);
/// The d-kernel X^0 -> ... -> X^d of f, followed by f. Dual construction.
DSequence d_kernel(const ModuleMap& f, const Subcategory& sub, std::size_t d);

/// 0 -> M_k -> ... -> M_1 -> x -> 0 with M_i in add(sub), from iterated right
/// approximations. Throws PreconditionError if sub misses a projective and
/// ConstructionError if it does not close within d terms.
Resolution m_resolution(const Module& x, const Subcategory& sub, std::size_t d);

/// Hom(-, Y) and Hom(Y, -) exactness of a sequence against every member Y.
/// Contravariant: 0 -> (X^{d+1}, Y) -> ... -> (X^0, Y) exact at X^{d+1}..X^1
/// (the d-cokernel condition). Covariant: 0 -> (Y, X^0) -> ... -> (Y, X^{d+1})
/// exact at X^0..X^d (the d-kernel condition).
struct DExactReport {
    bool complex = true;  // consecutive composites vanish
    std::optional<std::size_t> bad_composite;
    bool contravariant = true;
    bool covariant = true;
    // First failing object index and the member witnessing it.
    std::optional<std::size_t> contravariant_position, covariant_position;
    std::optional<std::size_t> contravariant_member, covariant_member;

    bool both() const { return complex && contravariant && covariant; }
    /// "both", "contravariant", "covariant" or "neither".
    std::string verdict() const;
};

DExactReport verify_d_exact(const DSequence& seq, const Subcategory& sub);

}  // namespace ctilt
