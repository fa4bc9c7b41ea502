#pragma once

// Lists of indecomposables, Ext tables, d-rigidity, d-cluster tilting checks
// and search, and the cotorsion-pair test for d = 2.

#include "ctilt/approximation.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ctilt {

/// A claimed complete and irredundant list of indecomposable modules.
struct IndecAtlas {
    AlgebraPtr algebra;
    std::vector<Module> modules;
    std::vector<std::string> names;
};

/// Checks every module is valid and indecomposable, no two are isomorphic,
/// every standard projective and injective is present, and the list is closed
/// under tau and tau inverse. Each failure names its witness.
Diagnostics certify_atlas(const IndecAtlas& atlas, std::uint64_t seed = 0);

/// An atlas that passed certify_atlas, with cached Ext dimensions between its
/// members.
class CertifiedAtlas {
public:
    /// Throws PreconditionError carrying the diagnostics if certification fails.
    static CertifiedAtlas certify(IndecAtlas atlas, std::uint64_t seed = 0);

    const AlgebraPtr& algebra() const { return atlas_.algebra; }
    std::size_t size() const { return atlas_.modules.size(); }
    const Module& module(std::size_t i) const { return atlas_.modules.at(i); }
    const std::string& name(std::size_t i) const { return atlas_.names.at(i); }
    const std::vector<std::string>& names() const { return atlas_.names; }
    bool is_projective(std::size_t i) const { return projective_.at(i); }
    bool is_injective(std::size_t i) const { return injective_.at(i); }

    /// dim Ext^k(module(i), module(j)).
    std::size_t ext(std::size_t i, std::size_t j, std::size_t k) const;
    /// Index of the member isomorphic to m, if any.
    std::optional<std::size_t> index_of(const Module& m) const;
    /// Atlas indices of the members of sub; PreconditionError if one is missing.
    std::vector<std::size_t> indices_of(const Subcategory& sub) const;
    /// The members at the given indices, in that order.
    Subcategory subcategory(const std::vector<std::size_t>& indices) const;
    Subcategory full() const;

private:
    CertifiedAtlas() = default;

    struct ExtCache {
        std::mutex mutex;
        std::size_t depth = 0;
        std::vector<std::vector<std::size_t>> dims;  // [i * n + j][k]
    };

    IndecAtlas atlas_;
    std::vector<bool> projective_, injective_;
    std::shared_ptr<ExtCache> cache_;
};

/// One violated condition: the modules involved, the Ext degree and the
/// offending dimension (0 where not applicable).
struct CTFailure {
    std::string condition;
    std::string first;
    std::string second;
    std::size_t ext_index = 0;
    std::size_t dimension = 0;
};

/// 0 -> a -> b -> c -> 0 built from an approximation, terms described in
/// member names.
struct ApproximationSequence {
    std::string kind;  // "left" or "right"
    std::string module;
    std::string first, middle, last;
};

struct CTReport {
    bool verdict = true;
    std::vector<CTFailure> failures;
    std::vector<ApproximationSequence> sequences;  // nontrivial ones only

    void fail(CTFailure f)
    {
        verdict = false;
        failures.push_back(std::move(f));
    }
};

/// table.at(i, j, k) = dim Ext^k(M_i, M_j) for 1 <= k <= max_i.
struct ExtTable {
    std::vector<std::string> names;
    std::size_t max_i = 0;
    std::vector<std::size_t> dims;

    std::size_t at(std::size_t i, std::size_t j, std::size_t k) const
    {
        return dims.at((i * names.size() + j) * max_i + (k - 1));
    }
};

ExtTable ext_table(const Subcategory& sub, std::size_t max_i);

/// Ext^k(M_i, M_j) = 0 for all members and 1 <= k <= d - 1.
CTReport is_d_rigid(const Subcategory& sub, std::size_t d);

/// Generating-cogenerating, d-rigid, and equal to both Ext-orthogonal
/// closures of itself inside the atlas. Functorial finiteness holds for every
/// finite subcategory and is not tested.
CTReport is_d_cluster_tilting(const Subcategory& sub, const CertifiedAtlas& atlas, std::size_t d);
CTReport is_d_cluster_tilting(const std::vector<std::size_t>& indices, const CertifiedAtlas& atlas, std::size_t d);

/// All d-cluster tilting subsets of the atlas, as sorted index lists in
/// lexicographic order. Exhaustive over supersets of the projectives and
/// injectives, pruned by rigidity.
std::vector<std::vector<std::size_t>> search_d_ct(const CertifiedAtlas& atlas, std::size_t d);

/// (add sub, add sub) is a complete cotorsion pair in mod A: Ext^1-orthogonal
/// closures on both sides equal sub, and every atlas member X has sequences
/// 0 -> X -> Y -> X' -> 0 and 0 -> Y' -> X'' -> X -> 0 with all other terms in
/// add(sub), built from minimal approximations.
CTReport check_cotorsion_pair(const Subcategory& sub, const CertifiedAtlas& atlas);

}  // namespace ctilt
