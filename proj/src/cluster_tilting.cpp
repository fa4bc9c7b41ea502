#include "ctilt/cluster_tilting.hpp"

#include <algorithm>
#include <functional>

namespace ctilt {

namespace {

std::string dims_text(const Module& m)
{
    std::string s = "(";
    for (std::size_t v = 0; v < m.dims().size(); ++v) s += (v ? "," : "") + std::to_string(m.dim(v));
    return s + ")";
}

}  // namespace

Diagnostics certify_atlas(const IndecAtlas& atlas, std::uint64_t seed)
{
    Diagnostics diag;
    const auto& mods = atlas.modules;
    if (atlas.names.size() != mods.size()) {
        diag.add("atlas needs one name per module");
        return diag;
    }
    std::vector<bool> usable(mods.size(), true);
    for (std::size_t i = 0; i < mods.size(); ++i) {
        if (!same_algebra(mods[i].algebra(), atlas.algebra)) {
            diag.add("module " + atlas.names[i] + " lives over another algebra");
            usable[i] = false;
            continue;
        }
        for (const auto& f : validate_module(mods[i]).failures) diag.add("module " + atlas.names[i] + ": " + f);
        if (!is_indecomposable(mods[i])) {
            diag.add("indecomposability failure: " + atlas.names[i]);
            usable[i] = false;
        }
    }
    if (!diag.ok()) return diag;

    for (std::size_t i = 0; i < mods.size(); ++i)
        for (std::size_t j = i + 1; j < mods.size(); ++j)
            if (is_isomorphic(mods[i], mods[j], seed))
                diag.add("irredundancy failure: " + atlas.names[i] + " and " + atlas.names[j] + " are isomorphic");

    auto present = [&](const Module& m) {
        for (std::size_t i = 0; i < mods.size(); ++i)
            if (mods[i].dims() == m.dims() && is_isomorphic(mods[i], m, seed)) return true;
        return false;
    };
    const auto& q = atlas.algebra->quiver();
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        const Module p = std_projective(atlas.algebra, v);
        if (!present(p)) diag.add("missing projective P(" + q.vertex(v) + ") with dimension vector " + dims_text(p));
        const Module inj = std_injective(atlas.algebra, v);
        if (!present(inj)) diag.add("missing injective I(" + q.vertex(v) + ") with dimension vector " + dims_text(inj));
    }
    for (std::size_t i = 0; i < mods.size(); ++i) {
        if (const auto t = tau(mods[i]); t && !present(*t))
            diag.add("tau closure failure: tau(" + atlas.names[i] + ") with dimension vector " + dims_text(*t) +
                     " is not in the atlas");
        if (const auto t = tau_inverse(mods[i]); t && !present(*t))
            diag.add("tau closure failure: tau^-1(" + atlas.names[i] + ") with dimension vector " + dims_text(*t) +
                     " is not in the atlas");
    }
    return diag;
}

CertifiedAtlas CertifiedAtlas::certify(IndecAtlas atlas, std::uint64_t seed)
{
    const Diagnostics diag = certify_atlas(atlas, seed);
    if (!diag.ok()) {
        std::string msg = "atlas not certified:";
        for (const auto& f : diag.failures) msg += "\n  " + f;
        throw PreconditionError(msg);
    }
    CertifiedAtlas out;
    out.atlas_ = std::move(atlas);
    const std::size_t n = out.size();
    out.projective_.assign(n, false);
    out.injective_.assign(n, false);
    for (std::size_t v = 0; v < out.algebra()->quiver().vertex_count(); ++v) {
        out.projective_[*out.index_of(std_projective(out.algebra(), v))] = true;
        out.injective_[*out.index_of(std_injective(out.algebra(), v))] = true;
    }
    out.cache_ = std::make_shared<ExtCache>();
    return out;
}

std::size_t CertifiedAtlas::ext(std::size_t i, std::size_t j, std::size_t k) const
{
    std::lock_guard lock(cache_->mutex);
    const std::size_t n = size();
    if (k > cache_->depth || cache_->dims.empty()) {
        const std::size_t depth = std::max<std::size_t>(k, 2);
        cache_->dims.assign(n * n, {});
        for (std::size_t a = 0; a < n; ++a) {
            const Resolution res = projective_resolution(module(a), depth + 1);
            for (std::size_t b = 0; b < n; ++b) cache_->dims[a * n + b] = ext_dims(res, module(b), depth);
        }
        cache_->depth = depth;
    }
    return cache_->dims.at(i * n + j).at(k);
}

std::optional<std::size_t> CertifiedAtlas::index_of(const Module& m) const
{
    for (std::size_t i = 0; i < size(); ++i)
        if (module(i).dims() == m.dims() && is_isomorphic(module(i), m)) return i;
    return std::nullopt;
}

std::vector<std::size_t> CertifiedAtlas::indices_of(const Subcategory& sub) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const auto idx = index_of(sub.member(i));
        if (!idx) throw PreconditionError("subcategory member " + sub.name(i) + " is not in the atlas");
        out.push_back(*idx);
    }
    return out;
}

Subcategory CertifiedAtlas::subcategory(const std::vector<std::size_t>& indices) const
{
    std::vector<Module> members;
    std::vector<std::string> names;
    for (auto i : indices) {
        members.push_back(module(i));
        names.push_back(name(i));
    }
    return Subcategory::unchecked(algebra(), std::move(members), std::move(names));
}

Subcategory CertifiedAtlas::full() const
{
    return Subcategory::unchecked(algebra(), atlas_.modules, atlas_.names);
}

ExtTable ext_table(const Subcategory& sub, std::size_t max_i)
{
    if (max_i < 1) throw InputError("ext_table: max_i must be at least 1");
    ExtTable table{sub.names(), max_i, {}};
    const std::size_t n = sub.size();
    table.dims.assign(n * n * max_i, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const Resolution res = projective_resolution(sub.member(i), max_i + 1);
        for (std::size_t j = 0; j < n; ++j) {
            const auto e = ext_dims(res, sub.member(j), max_i);
            for (std::size_t k = 1; k <= max_i; ++k) table.dims[(i * n + j) * max_i + (k - 1)] = e[k];
        }
    }
    return table;
}

CTReport is_d_rigid(const Subcategory& sub, std::size_t d)
{
    if (d < 1) throw InputError("d must be at least 1");
    CTReport report;
    if (d == 1) return report;
    const ExtTable table = ext_table(sub, d - 1);
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (std::size_t j = 0; j < sub.size(); ++j)
            for (std::size_t k = 1; k < d; ++k)
                if (const auto e = table.at(i, j, k)) report.fail({"rigidity", sub.name(i), sub.name(j), k, e});
    return report;
}

CTReport is_d_cluster_tilting(const std::vector<std::size_t>& indices, const CertifiedAtlas& atlas, std::size_t d)
{
    if (d < 1) throw InputError("d must be at least 1");
    CTReport report;
    std::vector<bool> in(atlas.size(), false);
    for (auto i : indices) in.at(i) = true;

    for (std::size_t x = 0; x < atlas.size(); ++x) {
        if (atlas.is_projective(x) && !in[x]) report.fail({"generating", atlas.name(x), "", 0, 0});
        if (atlas.is_injective(x) && !in[x]) report.fail({"cogenerating", atlas.name(x), "", 0, 0});
    }
    for (auto i : indices)
        for (auto j : indices)
            for (std::size_t k = 1; k < d; ++k)
                if (const auto e = atlas.ext(i, j, k)) report.fail({"rigidity", atlas.name(i), atlas.name(j), k, e});

    for (std::size_t x = 0; x < atlas.size(); ++x) {
        if (in[x]) continue;
        bool left = true, right = true;
        for (auto j : indices) {
            for (std::size_t k = 1; k < d; ++k) {
                left = left && atlas.ext(x, j, k) == 0;
                right = right && atlas.ext(j, x, k) == 0;
            }
        }
        if (left) report.fail({"left orthogonal outside subcategory", atlas.name(x), "", 0, 0});
        if (right) report.fail({"right orthogonal outside subcategory", atlas.name(x), "", 0, 0});
    }
    return report;
}

CTReport is_d_cluster_tilting(const Subcategory& sub, const CertifiedAtlas& atlas, std::size_t d)
{
    return is_d_cluster_tilting(atlas.indices_of(sub), atlas, d);
}

std::vector<std::vector<std::size_t>> search_d_ct(const CertifiedAtlas& atlas, std::size_t d)
{
    if (d < 1) throw InputError("d must be at least 1");
    auto compatible = [&](std::size_t x, const std::vector<std::size_t>& set) {
        for (std::size_t k = 1; k < d; ++k) {
            if (atlas.ext(x, x, k) != 0) return false;
            for (auto y : set)
                if (atlas.ext(x, y, k) != 0 || atlas.ext(y, x, k) != 0) return false;
        }
        return true;
    };

    std::vector<std::size_t> core, free;
    for (std::size_t x = 0; x < atlas.size(); ++x)
        (atlas.is_projective(x) || atlas.is_injective(x) ? core : free).push_back(x);
    std::vector<std::size_t> current;
    for (auto x : core) {
        if (!compatible(x, current)) return {};
        current.push_back(x);
    }

    std::vector<std::vector<std::size_t>> results;
    std::function<void(std::size_t)> descend = [&](std::size_t pos) {
        if (pos == free.size()) {
            std::vector<std::size_t> set = current;
            std::sort(set.begin(), set.end());
            if (is_d_cluster_tilting(set, atlas, d).verdict) results.push_back(std::move(set));
            return;
        }
        const std::size_t x = free[pos];
        if (compatible(x, current)) {
            current.push_back(x);
            descend(pos + 1);
            current.pop_back();
        }
        descend(pos + 1);
    };
    descend(0);
    std::sort(results.begin(), results.end());
    return results;
}

CTReport check_cotorsion_pair(const Subcategory& sub, const CertifiedAtlas& atlas)
{
    CTReport report;
    const auto indices = atlas.indices_of(sub);
    std::vector<bool> in(atlas.size(), false);
    for (auto i : indices) in[i] = true;

    for (std::size_t x = 0; x < atlas.size(); ++x) {
        if (in[x]) {
            for (auto j : indices)
                if (const auto e = atlas.ext(x, j, 1))
                    report.fail({"Ext1 orthogonality", atlas.name(x), atlas.name(j), 1, e});
            continue;
        }
        bool left = true, right = true;
        for (auto j : indices) {
            left = left && atlas.ext(x, j, 1) == 0;
            right = right && atlas.ext(j, x, 1) == 0;
        }
        if (left) report.fail({"left Ext1-perpendicular outside subcategory", atlas.name(x), "", 1, 0});
        if (right) report.fail({"right Ext1-perpendicular outside subcategory", atlas.name(x), "", 1, 0});
    }

    for (std::size_t x = 0; x < atlas.size(); ++x) {
        const Module& m = atlas.module(x);
        const Approximation la = left_approximation(m, sub);
        if (!la.map.is_injective()) {
            report.fail({"left approximation is not injective", atlas.name(x), "", 0, 0});
        } else {
            const Module c = map_cokernel(la.map).first;
            const auto dec = decompose_in(c, sub);
            if (!dec)
                report.fail({"cokernel of left approximation outside subcategory", atlas.name(x), "", 0, 0});
            else if (!c.is_zero())
                report.sequences.push_back(
                    {"left", atlas.name(x), atlas.name(x), describe(la.structure, sub), describe(*dec, sub)});
        }
        const Approximation ra = right_approximation(m, sub);
        if (!ra.map.is_surjective()) {
            report.fail({"right approximation is not surjective", atlas.name(x), "", 0, 0});
        } else {
            const Module k = map_kernel(ra.map).first;
            const auto dec = decompose_in(k, sub);
            if (!dec)
                report.fail({"kernel of right approximation outside subcategory", atlas.name(x), "", 0, 0});
            else if (!k.is_zero())
                report.sequences.push_back(
                    {"right", atlas.name(x), describe(*dec, sub), describe(ra.structure, sub), atlas.name(x)});
        }
    }
    return report;
}

}  // namespace ctilt
