#pragma once

#include "ctilt/algebra.hpp"
#include "ctilt/matrix.hpp"

#include <span>
#include <vector>

namespace ctilt {

/// A finite-dimensional right module, given as a representation of the quiver:
/// one vector space per vertex and one matrix per arrow (target-dim rows,
/// source-dim columns).
class Module {
public:
    Module() = default;
    /// Throws InputError on shape mismatch. Relations are not checked here; see
    /// validate_module.
    Module(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Matrix> actions);

    static Module zero(AlgebraPtr algebra);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim(std::size_t v) const { return dims_.at(v); }
    std::size_t total_dim() const;
    const Matrix& action(std::size_t arrow) const { return actions_.at(arrow); }
    const std::vector<Matrix>& actions() const { return actions_; }
    bool is_zero() const { return total_dim() == 0; }

    /// Matrix of the action of a path: for a.b this is action(b) * action(a).
    Matrix path_action(const Path& p) const;

    /// Same data attached to another (structurally identical) algebra object.
    Module rebind(AlgebraPtr algebra) const;

    friend bool operator==(const Module& a, const Module& b);

private:
    AlgebraPtr algebra_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> actions_;
};

/// A module homomorphism, one matrix per vertex.
class ModuleMap {
public:
    ModuleMap() = default;
    /// Throws InputError on shape mismatch. Intertwining is not checked here;
    /// see is_homomorphism.
    ModuleMap(Module source, Module target, std::vector<Matrix> comps);

    static ModuleMap zero(const Module& source, const Module& target);
    static ModuleMap identity(const Module& m);

    const Module& source() const { return source_; }
    const Module& target() const { return target_; }
    const Matrix& comp(std::size_t v) const { return comps_.at(v); }
    const std::vector<Matrix>& comps() const { return comps_; }

    bool is_zero() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_isomorphism() const;
    std::size_t rank() const;

    /// All component entries concatenated vertex by vertex, as one column.
    Matrix vectorize() const;

    friend ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
    friend ModuleMap operator*(const Rational& s, const ModuleMap& f);

private:
    Module source_;
    Module target_;
    std::vector<Matrix> comps_;
};

/// g after f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
/// Inverse of an isomorphism; throws std::invalid_argument otherwise.
ModuleMap inverse(const ModuleMap& f);

/// Reports every relation that does not vanish on the representation.
Diagnostics validate_module(const Module& m);
/// Checks comps(j) * action_source(a) == action_target(a) * comps(i) for all arrows.
bool is_homomorphism(const ModuleMap& f);

/// Direct sum with its canonical inclusions and projections.
struct DirectSum {
    Module sum;
    std::vector<ModuleMap> inclusions;
    std::vector<ModuleMap> projections;
};
DirectSum direct_sum(std::span<const Module> summands, const AlgebraPtr& algebra);

/// Map from a direct sum given by its components out of each summand.
ModuleMap map_from_sum(const DirectSum& source, std::span<const ModuleMap> components, const Module& target);
/// Map into a direct sum given by its components into each summand.
ModuleMap map_into_sum(const Module& source, std::span<const ModuleMap> components, const DirectSum& target);

/// Throws InputError when the two modules live over different algebras.
void require_same_algebra(const Module& a, const Module& b, const char* context);

}  // namespace ctilt
