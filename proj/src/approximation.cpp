#include "ctilt/approximation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ctilt {

namespace {

std::string dims_text(const Module& m)
{
    std::string s = "(";
    for (std::size_t v = 0; v < m.dims().size(); ++v) s += (v ? "," : "") + std::to_string(m.dim(v));
    return s + ")";
}

}  // namespace

Subcategory::Subcategory(AlgebraPtr algebra, std::vector<Module> members, std::vector<std::string> names)
    : algebra_(std::move(algebra)), members_(std::move(members)), names_(std::move(names))
{
    if (names_.empty())
        for (std::size_t i = 0; i < members_.size(); ++i) names_.push_back("M" + std::to_string(i + 1));
    if (names_.size() != members_.size()) throw InputError("subcategory: one name per member required");
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (!same_algebra(members_[i].algebra(), algebra_))
            throw InputError("subcategory member " + names_[i] + " lives over another algebra");
        if (!is_indecomposable(members_[i])) throw InputError("subcategory member " + names_[i] + " is not indecomposable");
        for (std::size_t j = 0; j < i; ++j)
            if (is_isomorphic(members_[j], members_[i]))
                throw InputError("subcategory members " + names_[j] + " and " + names_[i] + " are isomorphic");
    }
}

Subcategory Subcategory::unchecked(AlgebraPtr algebra, std::vector<Module> members, std::vector<std::string> names)
{
    Subcategory sub;
    sub.algebra_ = std::move(algebra);
    sub.members_ = std::move(members);
    sub.names_ = std::move(names);
    return sub;
}

std::optional<std::size_t> Subcategory::find(const Module& m) const
{
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (members_[i].dims() == m.dims() && is_isomorphic(members_[i], m)) return i;
    return std::nullopt;
}

bool Subcategory::contains_projectives() const
{
    for (std::size_t v = 0; v < algebra_->quiver().vertex_count(); ++v)
        if (!find(std_projective(algebra_, v))) return false;
    return true;
}

bool Subcategory::contains_injectives() const
{
    for (std::size_t v = 0; v < algebra_->quiver().vertex_count(); ++v)
        if (!find(std_injective(algebra_, v))) return false;
    return true;
}

std::vector<std::size_t> AddDecomposition::multiplicities(std::size_t members_count) const
{
    std::vector<std::size_t> out(members_count, 0);
    for (auto m : members) ++out.at(m);
    return out;
}

std::optional<AddDecomposition> decompose_in(const Module& m, const Subcategory& sub, std::uint64_t seed)
{
    AddDecomposition out;
    if (m.is_zero()) return out;
    const Decomposition dec = decompose(m, seed);
    std::vector<std::size_t> member_of(dec.classes.size());
    std::vector<ModuleMap> theta(dec.classes.size());
    for (std::size_t c = 0; c < dec.classes.size(); ++c) {
        bool found = false;
        for (std::size_t j = 0; j < sub.size() && !found; ++j) {
            if (auto iso = find_isomorphism(sub.member(j), dec.classes[c], seed)) {
                member_of[c] = j;
                theta[c] = *iso;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    std::vector<std::size_t> order(dec.copies());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return member_of[dec.type[a]] < member_of[dec.type[b]]; });
    for (auto k : order) {
        const std::size_t c = dec.type[k];
        out.members.push_back(member_of[c]);
        out.inclusions.push_back(compose(dec.inclusions[k], theta[c]));
        out.projections.push_back(compose(inverse(theta[c]), dec.projections[k]));
    }
    return out;
}

std::string describe(const AddDecomposition& d, const Subcategory& sub)
{
    if (d.members.empty()) return "0";
    const auto mult = d.multiplicities(sub.size());
    std::string out;
    for (std::size_t i = 0; i < mult.size(); ++i) {
        if (mult[i] == 0) continue;
        if (!out.empty()) out += " + ";
        out += sub.name(i);
        if (mult[i] > 1) out += "^" + std::to_string(mult[i]);
    }
    return out;
}

namespace {

struct Candidate {
    std::size_t member;
    ModuleMap map;
    // blocks[j]: vectorised images of Hom(M_j, member) (right) or
    // Hom(member, M_j) (left) under composition with `map`.
    std::vector<Matrix> blocks;
};

bool spans_enough(const std::vector<Candidate>& cands, const std::vector<bool>& keep,
                  const std::vector<std::size_t>& targets)
{
    for (std::size_t j = 0; j < targets.size(); ++j) {
        if (targets[j] == 0) continue;
        Matrix cols;
        bool first = true;
        for (std::size_t k = 0; k < cands.size(); ++k) {
            if (!keep[k] || cands[k].blocks[j].cols() == 0) continue;
            cols = first ? cands[k].blocks[j] : hstack(cols, cands[k].blocks[j]);
            first = false;
        }
        if (first || rank(cols) != targets[j]) return false;
    }
    return true;
}

Matrix vectorized(const std::vector<ModuleMap>& maps)
{
    if (maps.empty()) return Matrix();
    Matrix out = maps.front().vectorize();
    for (std::size_t k = 1; k < maps.size(); ++k) out = hstack(out, maps[k].vectorize());
    return out;
}

/// Greedy minimisation: members in order, the last copy of each first.
std::vector<bool> minimise(const std::vector<Candidate>& cands, const std::vector<std::size_t>& targets,
                           std::size_t members)
{
    std::vector<bool> keep(cands.size(), true);
    for (std::size_t i = 0; i < members; ++i) {
        for (std::size_t k = cands.size(); k-- > 0;) {
            if (cands[k].member != i) continue;
            keep[k] = false;
            if (!spans_enough(cands, keep, targets)) keep[k] = true;
        }
    }
    return keep;
}

Approximation assemble(const Module& x, const Subcategory& sub, const std::vector<Candidate>& cands,
                       const std::vector<bool>& keep, bool right)
{
    std::vector<Module> parts;
    std::vector<ModuleMap> comps;
    Approximation out;
    for (std::size_t k = 0; k < cands.size(); ++k) {
        if (!keep[k]) continue;
        parts.push_back(sub.member(cands[k].member));
        comps.push_back(cands[k].map);
        out.structure.members.push_back(cands[k].member);
    }
    const DirectSum sum = direct_sum(parts, sub.algebra());
    out.object = sum.sum;
    out.map = right ? map_from_sum(sum, comps, x) : map_into_sum(x, comps, sum);
    out.structure.inclusions = sum.inclusions;
    out.structure.projections = sum.projections;
    return out;
}

}  // namespace

Approximation right_approximation(const Module& x, const Subcategory& sub)
{
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (auto& f : hom_basis(sub.member(i), x)) cands.push_back({i, std::move(f), {}});
    std::vector<std::size_t> targets;
    for (std::size_t j = 0; j < sub.size(); ++j) {
        targets.push_back(hom_basis(sub.member(j), x).size());
        std::vector<std::vector<ModuleMap>> into(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) into[i] = hom_basis(sub.member(j), sub.member(i));
        for (auto& c : cands) {
            std::vector<ModuleMap> images;
            for (const auto& g : into[c.member]) images.push_back(compose(c.map, g));
            c.blocks.push_back(vectorized(images));
        }
    }
    return assemble(x, sub, cands, minimise(cands, targets, sub.size()), true);
}

Approximation left_approximation(const Module& x, const Subcategory& sub)
{
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (auto& f : hom_basis(x, sub.member(i))) cands.push_back({i, std::move(f), {}});
    std::vector<std::size_t> targets;
    for (std::size_t j = 0; j < sub.size(); ++j) {
        targets.push_back(hom_basis(x, sub.member(j)).size());
        std::vector<std::vector<ModuleMap>> out_of(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) out_of[i] = hom_basis(sub.member(i), sub.member(j));
        for (auto& c : cands) {
            std::vector<ModuleMap> images;
            for (const auto& g : out_of[c.member]) images.push_back(compose(g, c.map));
            c.blocks.push_back(vectorized(images));
        }
    }
    return assemble(x, sub, cands, minimise(cands, targets, sub.size()), false);
}

namespace {

void require_in_add(const Module& m, const Subcategory& sub, const char* what)
{
    if (!decompose_in(m, sub)) throw PreconditionError(std::string(what) + " is not in add of the subcategory");
}

}  // namespace

DSequence d_cokernel(const ModuleMap& f, const Subcategory& sub, std::size_t d)
{
    if (d < 1) throw InputError("d must be at least 1");
    require_in_add(f.source(), sub, "d_cokernel: source");
    require_in_add(f.target(), sub, "d_cokernel: target");

    DSequence seq{{f.source(), f.target()}, {f}};
    auto [c, pi] = map_cokernel(f);
    for (std::size_t stage = 2; stage <= d; ++stage) {
        const Approximation la = left_approximation(c, sub);
        seq.maps.push_back(compose(la.map, pi));
        seq.objects.push_back(la.object);
        std::tie(c, pi) = map_cokernel(la.map);
    }
    seq.objects.push_back(c);
    seq.maps.push_back(pi);
    if (!decompose_in(c, sub))
        throw ConstructionError("d-cokernel: stage " + std::to_string(d + 1) + " cokernel " + dims_text(c) +
                                " is not in add of the subcategory");
    const DExactReport report = verify_d_exact(seq, sub);
    if (!report.complex)
        throw ConstructionError("d-cokernel: composite at stage " + std::to_string(*report.bad_composite) +
                                " is nonzero");
    if (!report.contravariant)
        throw ConstructionError("d-cokernel: Hom(-, " + sub.name(*report.contravariant_member) +
                                ") is not exact at stage " + std::to_string(*report.contravariant_position));
    return seq;
}

DSequence d_kernel(const ModuleMap& f, const Subcategory& sub, std::size_t d)
{
    if (d < 1) throw InputError("d must be at least 1");
    require_in_add(f.source(), sub, "d_kernel: source");
    require_in_add(f.target(), sub, "d_kernel: target");

    // Built from the right end, reversed at the end.
    std::vector<Module> objects{f.target(), f.source()};
    std::vector<ModuleMap> maps{f};
    auto [k, iota] = map_kernel(f);
    for (std::size_t stage = d - 1; stage >= 1; --stage) {
        const Approximation ra = right_approximation(k, sub);
        maps.push_back(compose(iota, ra.map));
        objects.push_back(ra.object);
        std::tie(k, iota) = map_kernel(ra.map);
    }
    objects.push_back(k);
    maps.push_back(iota);
    DSequence seq{{objects.rbegin(), objects.rend()}, {maps.rbegin(), maps.rend()}};
    if (!decompose_in(k, sub))
        throw ConstructionError("d-kernel: stage 0 kernel " + dims_text(k) + " is not in add of the subcategory");
    const DExactReport report = verify_d_exact(seq, sub);
    if (!report.complex)
        throw ConstructionError("d-kernel: composite at stage " + std::to_string(*report.bad_composite) +
                                " is nonzero");
    if (!report.covariant)
        throw ConstructionError("d-kernel: Hom(" + sub.name(*report.covariant_member) + ", -) is not exact at stage " +
                                std::to_string(*report.covariant_position));
    return seq;
}

Resolution m_resolution(const Module& x, const Subcategory& sub, std::size_t d)
{
    if (!sub.contains_projectives()) throw PreconditionError("m_resolution: subcategory misses a projective");
    Resolution res;
    if (x.is_zero()) {
        res.augmentation = ModuleMap::zero(Module::zero(sub.algebra()), x);
        return res;
    }
    Approximation ra = right_approximation(x, sub);
    res.terms.push_back(ra.object);
    res.augmentation = ra.map;
    auto [k, iota] = map_kernel(ra.map);
    while (!k.is_zero()) {
        if (res.terms.size() >= d)
            throw ConstructionError("add-resolution does not close within " + std::to_string(d) +
                                    " terms: kernel " + dims_text(k) + " remains");
        ra = right_approximation(k, sub);
        res.terms.push_back(ra.object);
        res.differentials.push_back(compose(iota, ra.map));
        std::tie(k, iota) = map_kernel(ra.map);
    }
    return res;
}

std::string DExactReport::verdict() const
{
    if (!complex) return "neither";
    if (contravariant && covariant) return "both";
    if (contravariant) return "contravariant";
    if (covariant) return "covariant";
    return "neither";
}

DExactReport verify_d_exact(const DSequence& seq, const Subcategory& sub)
{
    DExactReport report;
    const std::size_t n = seq.maps.size();
    if (seq.objects.size() != n + 1) throw InputError("verify_d_exact: need one more object than maps");
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!compose(seq.maps[k + 1], seq.maps[k]).is_zero()) {
            report.complex = false;
            report.bad_composite = k;
            break;
        }
    }
    auto note = [](std::optional<std::size_t>& pos, std::optional<std::size_t>& member, std::size_t p, std::size_t y) {
        if (!pos || p < *pos) {
            pos = p;
            member = y;
        }
    };
    for (std::size_t y = 0; y < sub.size(); ++y) {
        const Module& obj = sub.member(y);
        std::vector<std::size_t> pre, post;
        for (const auto& f : seq.maps) {
            pre.push_back(precomposition_rank(f, obj));
            post.push_back(postcomposition_rank(f, obj));
        }
        // Contravariant at X^p, 1 <= p <= n: in from (X^{p+1}, Y), out to (X^{p-1}, Y).
        for (std::size_t p = 1; p <= n; ++p) {
            const std::size_t dim = hom_basis(seq.objects[p], obj).size();
            const std::size_t in = p == n ? 0 : pre[p];
            if (in + pre[p - 1] != dim) {
                report.contravariant = false;
                note(report.contravariant_position, report.contravariant_member, p, y);
            }
        }
        // Covariant at X^p, 0 <= p < n: in from (Y, X^{p-1}), out to (Y, X^{p+1}).
        for (std::size_t p = 0; p < n; ++p) {
            const std::size_t dim = hom_basis(obj, seq.objects[p]).size();
            const std::size_t in = p == 0 ? 0 : post[p - 1];
            if (in + post[p] != dim) {
                report.covariant = false;
                note(report.covariant_position, report.covariant_member, p, y);
            }
        }
    }
    return report;
}

}  // namespace ctilt
