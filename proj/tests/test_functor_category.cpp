#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctilt/functor_category.hpp"
#include "fixtures.hpp"

using namespace ctilt;
using namespace ctilt::testing;

namespace {

Subcategory sub_of(const Fixture& f, const std::vector<std::string>& names)
{
    return Subcategory(f.algebra, f.list(names), names);
}

CertifiedAtlas certified(const Fixture& f) { return CertifiedAtlas::certify({f.algebra, f.list(f.atlas), f.atlas}); }

std::size_t hom_total(const Subcategory& sub)
{
    std::size_t total = 0;
    for (const auto& a : sub.members())
        for (const auto& b : sub.members()) total += hom_basis(a, b).size();
    return total;
}

}  // namespace

TEST_CASE("Auslander algebra of the 2-cluster tilting subcategory of N3")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);  // P12 P23 S1 S3
    const AuslanderAlgebra gamma(ct);
    CHECK(gamma.dim() == 7);
    CHECK(gamma.dim() == hom_total(ct));
    CHECK(validate_algebra(gamma.table()).ok());
    CHECK(gamma.e_marked() == std::vector<bool>{true, true, false, true});
    CHECK(gamma.block(1, 0).size() == 1);
    CHECK(gamma.block(0, 2).size() == 1);
    CHECK(gamma.block(3, 1).size() == 1);
    CHECK(gamma.block(2, 0).empty());
    for (std::size_t i = 0; i < 4; ++i) CHECK(gamma.element(gamma.identity(i)).is_isomorphism());
}

TEST_CASE("Auslander algebra of a point")
{
    const auto pt = fix_point();
    const AuslanderAlgebra gamma(sub_of(pt, {"S1"}));
    CHECK(gamma.dim() == 1);
    CHECK(validate_algebra(gamma.table()).ok());
    CHECK_THROWS_AS(AuslanderAlgebra{Subcategory{}}, InputError);
}

TEST_CASE("property: Gamma dimension and associativity on every fixture")
{
    for (const auto& fx : {fix_a2(), fix_n3(), fix_n4(), fix_a3()}) {
        const Subcategory full = sub_of(fx, fx.atlas);
        const AuslanderAlgebra gamma(full);
        CHECK(gamma.dim() == hom_total(full));
        CHECK(validate_algebra(gamma.table()).ok());
    }
}

TEST_CASE("Yoneda modules")
{
    const auto n3 = fix_n3();
    const AuslanderAlgebra gamma(sub_of(n3, n3.ct));
    const FunctorModule s1 = yoneda_module(n3["S1"], gamma);
    CHECK(s1.dims == std::vector<std::size_t>{1, 0, 1, 0});
    CHECK(yoneda_module(n3["P12"], gamma).dims == std::vector<std::size_t>{1, 1, 0, 0});
    CHECK(yoneda_module(Module::zero(n3.algebra), gamma).is_zero());
    for (const auto& [name, x] : n3.modules) CHECK(validate_functor(yoneda_module(x, gamma), gamma).ok());

    FunctorModule broken = s1;
    broken.actions[gamma.identity(0)] = Matrix{{2}};
    CHECK_FALSE(validate_functor(broken, gamma).ok());
}

TEST_CASE("Yoneda maps are natural and preserve composition")
{
    const auto n3 = fix_n3();
    const AuslanderAlgebra gamma(sub_of(n3, n3.ct));
    const auto f = hom_basis(n3["S3"], n3["P23"]).front();
    const auto g = hom_basis(n3["P23"], n3["P12"]).front();
    const FunctorMap yf = yoneda_map(f, gamma), yg = yoneda_map(g, gamma);
    CHECK(is_natural(yf, gamma));
    CHECK(is_natural(yg, gamma));
    const FunctorMap ygf = yoneda_map(compose(g, f), gamma);
    for (std::size_t i = 0; i < 4; ++i) CHECK(ygf.comps[i] == yg.comps[i] * yf.comps[i]);
}

TEST_CASE("effaceable functors")
{
    const auto n3 = fix_n3();
    const AuslanderAlgebra gamma(sub_of(n3, n3.ct));
    const auto epi = hom_basis(n3["P12"], n3["S1"]).front();
    const FunctorModule c = functor_cokernel(yoneda_map(epi, gamma), gamma);
    CHECK(c.dims == std::vector<std::size_t>{0, 0, 1, 0});
    CHECK(validate_functor(c, gamma).ok());
    CHECK(is_effaceable(c, gamma));
    CHECK(e_restrict(c, gamma).is_zero());
    CHECK_FALSE(is_effaceable(yoneda_module(n3["S1"], gamma), gamma));
    CHECK(is_effaceable(yoneda_module(Module::zero(n3.algebra), gamma), gamma));
}

TEST_CASE("property: cokernel of Hom(-, g) is effaceable iff g is surjective")
{
    for (const auto& fx : {fix_n3(), fix_n4()}) {
        const Subcategory ct = sub_of(fx, fx.ct);
        const AuslanderAlgebra gamma(ct);
        std::size_t epis = 0, others = 0;
        for (const auto& x : ct.members())
            for (const auto& y : ct.members()) {
                std::vector<ModuleMap> maps = hom_basis(x, y);
                maps.push_back(ModuleMap::zero(x, y));
                for (const auto& g : maps) {
                    const FunctorModule c = functor_cokernel(yoneda_map(g, gamma), gamma);
                    CHECK(validate_functor(c, gamma).ok());
                    CHECK(is_effaceable(c, gamma) == g.is_surjective());
                    (g.is_surjective() ? epis : others)++;
                }
            }
        CHECK(epis > 0);
        CHECK(others > 0);
    }
}

TEST_CASE("restriction to projective members")
{
    const auto n3 = fix_n3();
    const AuslanderAlgebra gamma(sub_of(n3, n3.ct));
    for (const auto& [name, x] : n3.modules) {
        const Module r = e_restrict(yoneda_module(x, gamma), gamma);
        CHECK(validate_module(r).ok());
        CHECK(r.dims() == x.dims());
        CHECK(is_isomorphic(r, x));
    }
    CHECK(e_restrict(yoneda_module(Module::zero(n3.algebra), gamma), gamma).is_zero());

    const AuslanderAlgebra partial(sub_of(n3, {"P12", "S1"}));
    CHECK_FALSE(partial.has_all_projectives());
    CHECK_THROWS_AS(e_restrict(yoneda_module(n3["S1"], partial), partial), PreconditionError);
}

TEST_CASE("property: e_restrict is additive on Yoneda cokernel sequences")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);
    const AuslanderAlgebra gamma(ct);
    for (const auto& x : ct.members())
        for (const auto& y : ct.members())
            for (const auto& g : hom_basis(x, y)) {
                const FunctorMap eta = yoneda_map(g, gamma);
                const FunctorModule c = functor_cokernel(eta, gamma);
                const Module rc = e_restrict(c, gamma);
                const Module ry = e_restrict(eta.target, gamma);
                for (std::size_t v = 0; v < 3; ++v) {
                    const std::size_t i = gamma.projective_member()[v];
                    CHECK(ry.dim(v) == rank(eta.comps[i]) + rc.dim(v));
                }
            }
}

TEST_CASE("functor Hom dimensions")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);
    const AuslanderAlgebra gamma(ct);
    const auto epi = hom_basis(n3["P12"], n3["S1"]).front();
    const FunctorModule simple = functor_cokernel(yoneda_map(epi, gamma), gamma);
    // Hom(P, F) = F(P) for representables: the simple at S1 is reached only from (-, S1).
    CHECK(functor_hom_dim(yoneda_module(n3["S1"], gamma), simple, gamma) == 1);
    CHECK(functor_hom_dim(yoneda_module(n3["P12"], gamma), simple, gamma) == 0);
    CHECK(functor_hom_dim(simple, yoneda_module(n3["S1"], gamma), gamma) == 0);
}

TEST_CASE("quotient equivalence report")
{
    const auto n3 = fix_n3();
    const auto atlas = certified(n3);
    const QuotientReport r = quotient_equivalence_report(sub_of(n3, n3.ct), atlas, 2);
    CHECK(r.gamma_dim == 7);
    CHECK(r.e_gamma_e_dim == 5);
    CHECK(r.algebra_dim == 5);
    CHECK(r.e_members == std::vector<std::string>{"P12", "P23", "S3"});
    CHECK(r.structure_match == "algebra");
    CHECK(r.hom_a.size() * r.hom_a.size() == 16);
    CHECK(r.fully_faithful());
    CHECK(r.restriction_ok());
    CHECK(r.verdict());

    CHECK_THROWS_AS(quotient_equivalence_report(sub_of(n3, {"P12", "P23", "S3"}), atlas, 2), PreconditionError);

    const auto pt = fix_point();
    CHECK(quotient_equivalence_report(sub_of(pt, {"S1"}), certified(pt), 2).verdict());

    const auto n4 = fix_n4();
    const QuotientReport r4 = quotient_equivalence_report(sub_of(n4, n4.ct), certified(n4), 3);
    CHECK(r4.verdict());
    CHECK(r4.algebra_dim == 7);
}

TEST_CASE("property: the full atlas passes the quotient report at d = 1")
{
    for (const auto& fx : {fix_a2(), fix_n3(), fix_n4(), fix_a3()}) {
        const QuotientReport r = quotient_equivalence_report(sub_of(fx, fx.atlas), certified(fx), 1);
        CHECK(r.verdict());
        CHECK(r.e_gamma_e_dim == fx.algebra->dim());
    }
}

TEST_CASE("left d-exactness of functors")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);
    const AuslanderAlgebra gamma(ct);
    const auto g = hom_basis(n3["P12"], n3["S1"]).front();
    const DSequence s = d_kernel(g, ct, 2);  // S3 -> P23 -> P12 -> S1
    for (const auto& y : ct.members()) CHECK(left_d_exactness_check(yoneda_module(y, gamma), {s}, gamma)[0].exact);

    const FunctorModule simple = functor_cokernel(yoneda_map(g, gamma), gamma);
    const auto bad = left_d_exactness_check(simple, {s}, gamma)[0];
    CHECK_FALSE(bad.exact);
    CHECK(*bad.position == 3);

    const FunctorModule zero = yoneda_module(Module::zero(n3.algebra), gamma);
    CHECK(left_d_exactness_check(zero, {s}, gamma)[0].exact);
}
