#pragma once

// Finitely presented functors on add(M) as right modules over the Auslander
// algebra Gamma = End(M_1 (+) ... (+) M_n), effaceable functors and the
// restriction to the projective members.

#include "ctilt/cluster_tilting.hpp"

#include <string>
#include <vector>

namespace ctilt {

/// Gamma with multiplication g * h = g o h. Its basis is the union of bases of
/// Hom(M_i, M_j); each End(M_i) block starts with the identity. Contravariant
/// functors on add(M) are right Gamma-modules.
class AuslanderAlgebra {
public:
    explicit AuslanderAlgebra(Subcategory sub);

    const Subcategory& subcategory() const { return sub_; }
    const AlgebraTable& table() const { return table_; }
    std::size_t dim() const { return table_.dim(); }
    std::size_t members() const { return sub_.size(); }

    const ModuleMap& element(std::size_t b) const { return elements_.at(b); }
    std::size_t source(std::size_t b) const { return sources_.at(b); }
    std::size_t target(std::size_t b) const { return targets_.at(b); }
    /// Basis indices of Hom(M_i, M_j).
    const std::vector<std::size_t>& block(std::size_t i, std::size_t j) const { return blocks_.at(i * members() + j); }
    std::size_t identity(std::size_t i) const { return block(i, i).front(); }
    /// Coordinates of f : M_i -> M_j in the Gamma basis.
    SparseVector coordinates(const ModuleMap& f, std::size_t i, std::size_t j) const;

    /// Members isomorphic to indecomposable projectives (the idempotent e).
    const std::vector<bool>& e_marked() const { return e_marked_; }
    /// Member index of P(v), when every projective is a member.
    const std::vector<std::size_t>& projective_member() const { return projective_member_; }
    bool has_all_projectives() const { return !projective_member_.empty(); }
    /// Image in e Gamma e of each basis path p of A: left multiplication by p
    /// carried through the chosen isomorphisms P(v) -> member. Empty unless
    /// every projective is a member.
    const std::vector<SparseVector>& path_images() const { return path_images_; }

private:
    Subcategory sub_;
    AlgebraTable table_;
    std::vector<ModuleMap> elements_;
    std::vector<std::size_t> sources_, targets_;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<HomCoordinates> coords_;
    std::vector<bool> e_marked_;
    std::vector<std::size_t> projective_member_;
    std::vector<SparseVector> path_images_;
};

/// Values F(M_i) and, for each basis element g : M_i -> M_j, the matrix
/// F(g) : F(M_j) -> F(M_i).
struct FunctorModule {
    std::vector<std::size_t> dims;
    std::vector<Matrix> actions;

    std::size_t total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
};

/// Natural transformation, one matrix per member.
struct FunctorMap {
    FunctorModule source, target;
    std::vector<Matrix> comps;
};

/// F(identity) = identity and F(g o h) = F(h) F(g) on all basis pairs.
Diagnostics validate_functor(const FunctorModule& f, const AuslanderAlgebra& gamma);
/// F applied to a linear combination of basis elements of Hom(M_i, M_j).
Matrix functor_action(const FunctorModule& f, const AuslanderAlgebra& gamma, const SparseVector& g, std::size_t i,
                      std::size_t j);
bool is_natural(const FunctorMap& eta, const AuslanderAlgebra& gamma);

/// Hom(-, x) restricted to the members, acting by precomposition.
FunctorModule yoneda_module(const Module& x, const AuslanderAlgebra& gamma);
/// Hom(-, f) : Hom(-, x) -> Hom(-, y) for f : x -> y.
FunctorMap yoneda_map(const ModuleMap& f, const AuslanderAlgebra& gamma);
FunctorModule functor_cokernel(const FunctorMap& eta, const AuslanderAlgebra& gamma);
/// dim of the space of natural transformations F -> G.
std::size_t functor_hom_dim(const FunctorModule& f, const FunctorModule& g, const AuslanderAlgebra& gamma);

/// F vanishes at every member isomorphic to a projective.
bool is_effaceable(const FunctorModule& f, const AuslanderAlgebra& gamma);
/// The A-module with F(P(v)) at vertex v and arrow a : v -> w acting by F of
/// left multiplication by a. PreconditionError unless every projective is a
/// member.
Module e_restrict(const FunctorModule& f, const AuslanderAlgebra& gamma);

struct QuotientReport {
    std::size_t gamma_dim = 0;
    std::size_t e_gamma_e_dim = 0;
    std::size_t algebra_dim = 0;
    std::vector<std::string> e_members;
    /// "algebra" if e Gamma e matches A, "opposite" if it matches A^op,
    /// "none" otherwise.
    std::string structure_match;
    std::vector<std::vector<std::size_t>> hom_a;      // dim Hom_A(M_i, M_j)
    std::vector<std::vector<std::size_t>> hom_gamma;  // dim Hom(yoneda M_i, yoneda M_j)
    std::vector<bool> restriction;                    // e_restrict(yoneda M_i) iso M_i

    bool dims_ok() const { return e_gamma_e_dim == algebra_dim; }
    bool structure_ok() const { return structure_match != "none"; }
    bool fully_faithful() const { return hom_a == hom_gamma; }
    bool restriction_ok() const;
    bool verdict() const { return dims_ok() && structure_ok() && fully_faithful() && restriction_ok(); }
};

/// Throws PreconditionError unless sub is d-cluster tilting in the atlas.
QuotientReport quotient_equivalence_report(const Subcategory& sub, const CertifiedAtlas& atlas, std::size_t d);

/// F evaluated on an object of add(sub) and on a map between two such objects.
Matrix functor_on_map(const FunctorModule& f, const AuslanderAlgebra& gamma, const ModuleMap& g,
                      const AddDecomposition& source, const AddDecomposition& target);

struct SequenceExactness {
    bool exact = true;
    /// First object index X^p where 0 -> F(X^{d+1}) -> ... -> F(X^0) is not exact.
    std::optional<std::size_t> position;
};

/// Left exactness of F on each sequence: 0 -> F(X^{d+1}) -> ... -> F(X^0)
/// exact at every term but F(X^0). Objects must lie in add(sub).
std::vector<SequenceExactness> left_d_exactness_check(const FunctorModule& f, const std::vector<DSequence>& sequences,
                                                      const AuslanderAlgebra& gamma);

}  // namespace ctilt
