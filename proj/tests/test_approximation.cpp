#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctilt/approximation.hpp"
#include "fixtures.hpp"

using namespace ctilt;
using namespace ctilt::testing;

namespace {

Subcategory sub_of(const Fixture& f, const std::vector<std::string>& names)
{
    return Subcategory(f.algebra, f.list(names), names);
}

// Direct check that every map member -> x factors through a : a0 -> x.
bool is_right_approximation(const ModuleMap& a, const Subcategory& sub)
{
    for (const auto& m : sub.members()) {
        std::vector<ModuleMap> reached;
        for (const auto& h : hom_basis(m, a.source())) reached.push_back(compose(a, h));
        const auto all = hom_basis(m, a.target());
        auto joined = reached;
        joined.insert(joined.end(), all.begin(), all.end());
        if (span_rank(joined) != span_rank(reached)) return false;
    }
    return true;
}

bool is_left_approximation(const ModuleMap& a, const Subcategory& sub)
{
    for (const auto& m : sub.members()) {
        std::vector<ModuleMap> reached;
        for (const auto& h : hom_basis(a.target(), m)) reached.push_back(compose(h, a));
        const auto all = hom_basis(a.source(), m);
        auto joined = reached;
        joined.insert(joined.end(), all.begin(), all.end());
        if (span_rank(joined) != span_rank(reached)) return false;
    }
    return true;
}

std::vector<long> alternating_dims(const DSequence& s)
{
    std::vector<long> out(s.objects.front().dims().size(), 0);
    for (std::size_t k = 0; k < s.objects.size(); ++k)
        for (std::size_t v = 0; v < out.size(); ++v)
            out[v] += (k % 2 ? -1 : 1) * static_cast<long>(s.objects[k].dim(v));
    return out;
}

}  // namespace

TEST_CASE("subcategory validation")
{
    const auto n3 = fix_n3();
    CHECK_NOTHROW(sub_of(n3, n3.ct));
    const auto a2 = fix_a2();
    const std::vector<Module> parts{a2["S1"], a2["S2"]};
    CHECK_THROWS_AS(Subcategory(a2.algebra, {direct_sum(parts, a2.algebra).sum}), InputError);
    CHECK_THROWS_AS(Subcategory(a2.algebra, {a2["S1"], a2["S1"]}), InputError);
    const Subcategory ct = sub_of(n3, n3.ct);
    CHECK(ct.contains_projectives());
    CHECK(ct.contains_injectives());
    CHECK(*ct.find(n3["S1"]) == 2);
    CHECK_FALSE(ct.find(n3["S2"]));
    CHECK_FALSE(sub_of(n3, {"P12", "S1"}).contains_projectives());
}

TEST_CASE("right approximation examples")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);

    const auto a = right_approximation(n3["S2"], ct);
    CHECK(a.structure.members == std::vector<std::size_t>{1});
    CHECK(a.object == n3["P23"]);
    CHECK(a.map.is_surjective());
    CHECK(is_right_approximation(a.map, ct));

    const auto b = right_approximation(n3["P12"], ct);
    CHECK(b.map.is_isomorphism());

    const auto z = right_approximation(Module::zero(n3.algebra), ct);
    CHECK(z.object.is_zero());
    CHECK(z.structure.members.empty());
}

TEST_CASE("left approximation examples")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);

    const auto a = left_approximation(n3["S2"], ct);
    CHECK(a.structure.members == std::vector<std::size_t>{0});
    CHECK(a.object == n3["P12"]);
    CHECK(a.map.is_injective());
    CHECK(is_left_approximation(a.map, ct));

    CHECK(left_approximation(n3["S3"], ct).map.is_isomorphism());
    CHECK(left_approximation(Module::zero(n3.algebra), ct).object.is_zero());
}

TEST_CASE("property: approximations by subcategories with all projectives or injectives")
{
    for (const auto& fx : {fix_a2(), fix_n3(), fix_n4(), fix_a3()}) {
        std::vector<std::vector<std::string>> subs{fx.atlas};
        if (!fx.ct.empty()) subs.push_back(fx.ct);
        for (const auto& names : subs) {
            const Subcategory sub = sub_of(fx, names);
            for (const auto& [name, x] : fx.modules) {
                const auto r = right_approximation(x, sub);
                const auto l = left_approximation(x, sub);
                CHECK(is_right_approximation(r.map, sub));
                CHECK(is_left_approximation(l.map, sub));
                CHECK(is_homomorphism(r.map));
                CHECK(is_homomorphism(l.map));
                if (sub.contains_projectives()) CHECK(r.map.is_surjective());
                if (sub.contains_injectives()) CHECK(l.map.is_injective());
                if (sub.find(x)) {
                    CHECK(r.map.is_isomorphism());
                    CHECK(l.map.is_isomorphism());
                }
            }
        }
    }
}

TEST_CASE("d-cokernel of the socle inclusion into [2,3]")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);
    const auto f = hom_basis(n3["S3"], n3["P23"]).front();
    const DSequence s = d_cokernel(f, ct, 2);
    REQUIRE(s.objects.size() == 4);
    CHECK(is_isomorphic(s.objects[1], n3["P23"]));
    CHECK(is_isomorphic(s.objects[2], n3["P12"]));
    CHECK(is_isomorphic(s.objects[3], n3["S1"]));
    const auto report = verify_d_exact(s, ct);
    CHECK(report.verdict() == "both");
    CHECK(alternating_dims(s) == std::vector<long>{0, 0, 0});
}

TEST_CASE("d-cokernels of identities and zero maps")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);
    const DSequence id = d_cokernel(ModuleMap::identity(n3["P12"]), ct, 2);
    for (std::size_t k = 2; k < id.objects.size(); ++k) CHECK(id.objects[k].is_zero());

    const DSequence z = d_cokernel(ModuleMap::zero(Module::zero(n3.algebra), n3["P23"]), ct, 2);
    CHECK(z.maps[1].is_isomorphism());
    CHECK(z.objects[3].is_zero());
    CHECK_THROWS_AS(d_cokernel(ModuleMap::identity(n3["P12"]), ct, 0), InputError);
    CHECK_THROWS_AS(d_cokernel(ModuleMap::identity(n3["S2"]), ct, 2), PreconditionError);
}

TEST_CASE("d-kernel of [1,2] -> S1")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);
    const auto g = hom_basis(n3["P12"], n3["S1"]).front();
    const DSequence s = d_kernel(g, ct, 2);
    REQUIRE(s.objects.size() == 4);
    CHECK(is_isomorphic(s.objects[0], n3["S3"]));
    CHECK(is_isomorphic(s.objects[1], n3["P23"]));
    CHECK(is_isomorphic(s.objects[2], n3["P12"]));
    CHECK(verify_d_exact(s, ct).both());
    CHECK(alternating_dims(s) == std::vector<long>{0, 0, 0});

    const DSequence id = d_kernel(ModuleMap::identity(n3["S1"]), ct, 2);
    for (std::size_t k = 0; k + 2 < id.objects.size(); ++k) CHECK(id.objects[k].is_zero());
    const DSequence z = d_kernel(ModuleMap::zero(n3["S1"], Module::zero(n3.algebra)), ct, 2);
    CHECK(z.maps[1].is_isomorphism());
}

TEST_CASE("d-cokernel leaves the subcategory when it is not cluster tilting")
{
    const auto n3 = fix_n3();
    // Without S1 the cokernel S2 -> [1,2] -> S1 cannot close.
    const Subcategory sub = sub_of(n3, {"P12", "P23", "S3"});
    const auto f = hom_basis(n3["S3"], n3["P23"]).front();
    try {
        d_cokernel(f, sub, 2);
        FAIL("expected ConstructionError");
    } catch (const ConstructionError& e) {
        CHECK(std::string(e.what()).find("stage 3") != std::string::npos);
    }
}

TEST_CASE("verify_d_exact on padded split sequences and planted defects")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);
    const std::vector<Module> parts{n3["S3"], n3["P12"]};
    const DirectSum sum = direct_sum(parts, n3.algebra);
    const Module zero = Module::zero(n3.algebra);
    DSequence split{{zero, n3["S3"], sum.sum, n3["P12"], zero},
                    {ModuleMap::zero(zero, n3["S3"]), sum.inclusions[0], sum.projections[1],
                     ModuleMap::zero(n3["P12"], zero)}};
    CHECK(verify_d_exact(split, ct).verdict() == "both");

    const auto g = hom_basis(n3["P12"], n3["S1"]).front();
    DSequence s = d_kernel(g, ct, 2);
    s.maps[1] = ModuleMap::zero(s.objects[1], s.objects[2]);
    const auto r = verify_d_exact(s, ct);
    CHECK_FALSE(r.both());
    CHECK(r.verdict() == "neither");
    REQUIRE(r.contravariant_position);
    CHECK((*r.contravariant_position == 1 || *r.contravariant_position == 2));
    REQUIRE(r.covariant_position);
    CHECK((*r.covariant_position == 1 || *r.covariant_position == 2));

    DSequence not_complex = split;
    not_complex.objects[3] = n3["S3"];
    not_complex.maps[2] = sum.projections[0];
    not_complex.maps[3] = ModuleMap::zero(n3["S3"], zero);
    const auto nc = verify_d_exact(not_complex, ct);
    CHECK_FALSE(nc.complex);
    CHECK(*nc.bad_composite == 1);
    CHECK(nc.verdict() == "neither");
}

TEST_CASE("add(M)-resolutions over [1,2], [2,3], S1, S3")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);
    const Resolution r = m_resolution(n3["S2"], ct, 2);
    REQUIRE(r.terms.size() == 2);
    CHECK(r.terms[0] == n3["P23"]);
    CHECK(r.terms[1] == n3["S3"]);
    CHECK(is_exact_resolution(r, true));

    CHECK(m_resolution(n3["S1"], ct, 2).terms.size() == 1);
    CHECK(m_resolution(Module::zero(n3.algebra), ct, 2).terms.empty());
    CHECK_THROWS_AS(m_resolution(n3["S2"], ct, 1), ConstructionError);
    CHECK_THROWS_AS(m_resolution(n3["S2"], sub_of(n3, {"P12", "S1"}), 2), PreconditionError);

    for (const auto& [name, x] : n3.modules) {
        const Resolution res = m_resolution(x, ct, 2);
        CHECK(res.terms.size() <= 2);
        CHECK(is_exact_resolution(res, true));
        for (const auto& t : res.terms) CHECK(decompose_in(t, ct).has_value());
    }
}

TEST_CASE("decompose_in and describe")
{
    const auto n3 = fix_n3();
    const Subcategory ct = sub_of(n3, n3.ct);
    const std::vector<Module> parts{n3["S1"], n3["P12"], n3["S1"]};
    const auto d = decompose_in(direct_sum(parts, n3.algebra).sum, ct);
    REQUIRE(d);
    CHECK(describe(*d, ct) == "P12 + S1^2");
    CHECK_FALSE(decompose_in(n3["S2"], ct));
    CHECK(describe(*decompose_in(Module::zero(n3.algebra), ct), ct) == "0");
}
