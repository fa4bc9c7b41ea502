#pragma once

// Small algebras used across the test suites, with their indecomposables
// written down by hand as interval representations.

#include "ctilt/algebra.hpp"
#include "ctilt/module.hpp"
#include "ctilt/matrix.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace ctilt::testing {

/// Linear quiver 1 -> 2 -> ... -> n with arrows a1, a2, ..., and the
/// relations "every path of length `nilpotency`" (0 for none).
inline AlgebraPtr linear_algebra(std::size_t n, std::size_t nilpotency)
{
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    for (std::size_t v = 0; v < n; ++v) vertices.push_back(std::to_string(v + 1));
    for (std::size_t v = 0; v + 1 < n; ++v) arrows.push_back({"a" + std::to_string(v + 1), v, v + 1});
    Quiver q(vertices, arrows);
    RelationSet rels;
    if (nilpotency >= 2) {
        for (std::size_t start = 0; start + nilpotency < n + 1; ++start) {
            std::vector<std::size_t> path;
            for (std::size_t k = 0; k < nilpotency; ++k) path.push_back(start + k);
            if (path.back() >= arrows.size()) break;
            rels.push_back({{{Rational(1), Path::of_arrows(q, path)}}});
        }
    }
    return build_algebra(q, rels, 16);
}

/// Interval module [i, j] (1-based, inclusive) over a linear algebra.
inline Module interval(const AlgebraPtr& alg, std::size_t i, std::size_t j)
{
    const auto& q = alg->quiver();
    std::vector<std::size_t> dims(q.vertex_count(), 0);
    for (std::size_t v = i; v <= j; ++v) dims[v - 1] = 1;
    std::vector<Matrix> actions;
    for (const auto& a : q.arrows()) {
        Matrix m(dims[a.target], dims[a.source]);
        if (dims[a.target] == 1 && dims[a.source] == 1) m(0, 0) = 1;
        actions.push_back(m);
    }
    return Module(alg, dims, actions);
}

struct Fixture {
    AlgebraPtr algebra;
    std::map<std::string, Module> modules;
    std::vector<std::string> atlas;
    std::vector<std::string> ct;  // add(A + DA) when it is cluster tilting

    const Module& operator[](const std::string& name) const { return modules.at(name); }
    std::vector<Module> list(const std::vector<std::string>& names) const
    {
        std::vector<Module> out;
        for (const auto& n : names) out.push_back(modules.at(n));
        return out;
    }
};

/// 1 -> 2, no relations. Indecomposables S1, S2, P12.
inline Fixture fix_a2()
{
    Fixture f;
    f.algebra = linear_algebra(2, 0);
    f.modules.emplace("S1", interval(f.algebra, 1, 1));
    f.modules.emplace("S2", interval(f.algebra, 2, 2));
    f.modules.emplace("P12", interval(f.algebra, 1, 2));
    f.atlas = {"S1", "S2", "P12"};
    return f;
}

/// 1 -> 2 -> 3 with the length-two path killed.
inline Fixture fix_n3()
{
    Fixture f;
    f.algebra = linear_algebra(3, 2);
    f.modules.emplace("S1", interval(f.algebra, 1, 1));
    f.modules.emplace("S2", interval(f.algebra, 2, 2));
    f.modules.emplace("S3", interval(f.algebra, 3, 3));
    f.modules.emplace("P12", interval(f.algebra, 1, 2));
    f.modules.emplace("P23", interval(f.algebra, 2, 3));
    f.atlas = {"S1", "S2", "S3", "P12", "P23"};
    f.ct = {"P12", "P23", "S1", "S3"};
    return f;
}

/// 1 -> 2 -> 3 -> 4 with radical square zero: seven interval modules.
inline Fixture fix_n4()
{
    Fixture f;
    f.algebra = linear_algebra(4, 2);
    for (std::size_t i = 1; i <= 4; ++i) f.modules.emplace("S" + std::to_string(i), interval(f.algebra, i, i));
    for (std::size_t i = 1; i <= 3; ++i)
        f.modules.emplace("P" + std::to_string(i) + std::to_string(i + 1), interval(f.algebra, i, i + 1));
    f.atlas = {"S1", "S2", "S3", "S4", "P12", "P23", "P34"};
    f.ct = {"P12", "P23", "P34", "S1", "S4"};  // 3-cluster tilting
    return f;
}

/// 1 -> 2 -> 3 hereditary: six interval modules.
inline Fixture fix_a3()
{
    Fixture f;
    f.algebra = linear_algebra(3, 0);
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = i; j <= 3; ++j) {
            const std::string name = i == j ? "S" + std::to_string(i) : "M" + std::to_string(i) + std::to_string(j);
            f.modules.emplace(name, interval(f.algebra, i, j));
            f.atlas.push_back(name);
        }
    return f;
}

/// One vertex, no arrows: the ground field.
inline Fixture fix_point()
{
    Fixture f;
    f.algebra = linear_algebra(1, 0);
    f.modules.emplace("S1", interval(f.algebra, 1, 1));
    f.atlas = {"S1"};
    f.ct = {"S1"};
    return f;
}

inline Module sum_of(const Fixture& f, const std::vector<std::string>& names)
{
    const auto parts = f.list(names);
    return direct_sum(parts, f.algebra).sum;
}

inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> e(-2, 2);
    while (true) {
        Matrix g(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) g(r, c) = e(rng);
        if (rank(g) == n) return g;
    }
}

// Same module in a scrambled basis at every vertex.
inline Module scramble(const Module& m, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const auto& q = m.algebra()->quiver();
    std::vector<Matrix> g;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) g.push_back(random_invertible(rng, m.dim(v)));
    std::vector<Matrix> actions;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        actions.push_back(g[q.arrow(a).target] * m.action(a) * *inverse(g[q.arrow(a).source]));
    return Module(m.algebra(), m.dims(), actions);
}

}  // namespace ctilt::testing
