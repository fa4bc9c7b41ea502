#include "ctilt/functor_category.hpp"

#include <map>
#include <numeric>

namespace ctilt {

namespace {

SparseVector to_sparse(const std::map<std::size_t, Rational>& acc)
{
    SparseVector out;
    for (const auto& [i, c] : acc)
        if (c != 0) out.emplace_back(i, c);
    return out;
}

// sum_k coeffs[k] * vectors[index_k]
SparseVector combine(const std::vector<SparseVector>& vectors, const SparseVector& coeffs)
{
    std::map<std::size_t, Rational> acc;
    for (const auto& [k, c] : coeffs)
        for (const auto& [i, a] : vectors.at(k)) acc[i] += c * a;
    return to_sparse(acc);
}

// End(m) basis with the identity first.
std::vector<ModuleMap> endomorphism_basis(const Module& m)
{
    std::vector<ModuleMap> out{ModuleMap::identity(m)};
    for (const auto& h : hom_basis(m, m)) {
        out.push_back(h);
        if (span_rank(out) < out.size()) out.pop_back();
    }
    return out;
}

struct Yoneda {
    FunctorModule functor;
    std::vector<std::vector<ModuleMap>> bases;  // hom_basis(M_i, x)
    std::vector<HomCoordinates> coords;
};

Yoneda build_yoneda(const Module& x, const AuslanderAlgebra& gamma)
{
    const Subcategory& sub = gamma.subcategory();
    require_same_algebra(x, sub.member(0), "yoneda_module");
    Yoneda y;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        y.bases.push_back(hom_basis(sub.member(i), x));
        y.coords.emplace_back(y.bases.back());
        y.functor.dims.push_back(y.bases.back().size());
    }
    for (std::size_t b = 0; b < gamma.dim(); ++b) {
        const std::size_t i = gamma.source(b), j = gamma.target(b);
        Matrix act(y.functor.dims[i], y.functor.dims[j]);
        for (std::size_t c = 0; c < y.functor.dims[j]; ++c)
            act.set_block(0, c, y.coords[i].coordinates(compose(y.bases[j][c], gamma.element(b))));
        y.functor.actions.push_back(std::move(act));
    }
    return y;
}

}  // namespace

AuslanderAlgebra::AuslanderAlgebra(Subcategory sub) : sub_(std::move(sub))
{
    if (sub_.empty()) throw InputError("Auslander algebra of an empty subcategory");
    const std::size_t n = sub_.size();
    std::vector<std::string> labels;
    blocks_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto basis = i == j ? endomorphism_basis(sub_.member(i)) : hom_basis(sub_.member(i), sub_.member(j));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                blocks_[i * n + j].push_back(elements_.size());
                elements_.push_back(basis[k]);
                sources_.push_back(i);
                targets_.push_back(j);
                labels.push_back(i == j && k == 0 ? "id_" + sub_.name(i)
                                                  : sub_.name(i) + "->" + sub_.name(j) + "#" + std::to_string(k));
            }
            coords_.emplace_back(basis);
        }
    }

    const std::size_t dim = elements_.size();
    std::vector<SparseVector> products(dim * dim);
    for (std::size_t g = 0; g < dim; ++g)
        for (std::size_t h = 0; h < dim; ++h)
            if (sources_[g] == targets_[h])
                products[g * dim + h] = coordinates(compose(elements_[g], elements_[h]), sources_[h], targets_[g]);
    std::vector<std::size_t> idempotents;
    for (std::size_t i = 0; i < n; ++i) idempotents.push_back(blocks_[i * n + i].front());
    table_ = AlgebraTable(std::move(labels), std::move(idempotents), std::move(products));

    const AlgebraPtr& alg = sub_.algebra();
    const std::size_t nv = alg->quiver().vertex_count();
    e_marked_.assign(n, false);
    std::vector<std::size_t> member(nv);
    std::vector<ModuleMap> iso(nv);  // P(v) -> member
    bool all = true;
    for (std::size_t v = 0; v < nv; ++v) {
        const Module p = std_projective(alg, v);
        const auto idx = sub_.find(p);
        if (!idx) {
            all = false;
            continue;
        }
        e_marked_[*idx] = true;
        member[v] = *idx;
        const auto f = find_isomorphism(p, sub_.member(*idx));
        if (!f) throw DecompositionError("no isomorphism found from P(" + alg->quiver().vertex(v) + ") to " + sub_.name(*idx));
        iso[v] = *f;
    }
    if (!all) return;
    projective_member_ = member;
    for (std::size_t b = 0; b < alg->dim(); ++b) {
        const Path& p = alg->basis()[b];
        const std::size_t s = p.source, t = p.target;
        const ModuleMap left = projective_map(alg, {t}, {s}, {{SparseVector{{b, Rational(1)}}}});
        const ModuleMap carried = compose(iso[s], compose(left, inverse(iso[t])));
        path_images_.push_back(coordinates(carried, member[t], member[s]));
    }
}

SparseVector AuslanderAlgebra::coordinates(const ModuleMap& f, std::size_t i, std::size_t j) const
{
    const Matrix c = coords_.at(i * members() + j).coordinates(f);
    const auto& blk = block(i, j);
    SparseVector out;
    for (std::size_t k = 0; k < blk.size(); ++k)
        if (c(k, 0) != 0) out.emplace_back(blk[k], c(k, 0));
    return out;
}

std::size_t FunctorModule::total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

Matrix functor_action(const FunctorModule& f, const AuslanderAlgebra& gamma, const SparseVector& g, std::size_t i,
                      std::size_t j)
{
    Matrix out(f.dims.at(i), f.dims.at(j));
    for (const auto& [b, c] : g) {
        if (gamma.source(b) != i || gamma.target(b) != j)
            throw std::invalid_argument("functor_action: element outside Hom(M_i, M_j)");
        out += c * f.actions.at(b);
    }
    return out;
}

Diagnostics validate_functor(const FunctorModule& f, const AuslanderAlgebra& gamma)
{
    Diagnostics diag;
    const auto& names = gamma.subcategory().names();
    if (f.dims.size() != gamma.members() || f.actions.size() != gamma.dim()) {
        diag.add("functor shape does not match the Auslander algebra");
        return diag;
    }
    for (std::size_t b = 0; b < gamma.dim(); ++b) {
        const auto& a = f.actions[b];
        if (a.rows() != f.dims[gamma.source(b)] || a.cols() != f.dims[gamma.target(b)])
            diag.add("action of " + gamma.table().label(b) + " has the wrong shape");
    }
    if (!diag.ok()) return diag;
    for (std::size_t i = 0; i < gamma.members(); ++i)
        if (!(f.actions[gamma.identity(i)] == Matrix::identity(f.dims[i])))
            diag.add("identity of " + names[i] + " does not act as the identity");
    for (std::size_t g = 0; g < gamma.dim(); ++g)
        for (std::size_t h = 0; h < gamma.dim(); ++h) {
            if (gamma.source(g) != gamma.target(h)) continue;
            const Matrix lhs = functor_action(f, gamma, gamma.table().product(g, h), gamma.source(h), gamma.target(g));
            if (!(lhs == f.actions[h] * f.actions[g]))
                diag.add("functoriality failure on " + gamma.table().label(g) + " o " + gamma.table().label(h));
        }
    return diag;
}

bool is_natural(const FunctorMap& eta, const AuslanderAlgebra& gamma)
{
    for (std::size_t b = 0; b < gamma.dim(); ++b) {
        const std::size_t i = gamma.source(b), j = gamma.target(b);
        if (!(eta.target.actions[b] * eta.comps[j] == eta.comps[i] * eta.source.actions[b])) return false;
    }
    return true;
}

FunctorModule yoneda_module(const Module& x, const AuslanderAlgebra& gamma) { return build_yoneda(x, gamma).functor; }

FunctorMap yoneda_map(const ModuleMap& f, const AuslanderAlgebra& gamma)
{
    const Yoneda src = build_yoneda(f.source(), gamma);
    const Yoneda tgt = build_yoneda(f.target(), gamma);
    FunctorMap out{src.functor, tgt.functor, {}};
    for (std::size_t i = 0; i < gamma.members(); ++i) {
        Matrix c(tgt.functor.dims[i], src.functor.dims[i]);
        for (std::size_t k = 0; k < src.functor.dims[i]; ++k)
            c.set_block(0, k, tgt.coords[i].coordinates(compose(f, src.bases[i][k])));
        out.comps.push_back(std::move(c));
    }
    return out;
}

FunctorModule functor_cokernel(const FunctorMap& eta, const AuslanderAlgebra& gamma)
{
    const std::size_t n = gamma.members();
    std::vector<Matrix> quotient(n), section(n);
    FunctorModule out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = eta.target.dims[i];
        const Matrix image = image_basis(eta.comps[i]);
        const Matrix rest = complement_basis(image);
        const Matrix inv = *inverse(hstack(image, rest));
        quotient[i] = inv.block(image.cols(), 0, rest.cols(), m);
        section[i] = rest;
        out.dims.push_back(rest.cols());
    }
    for (std::size_t b = 0; b < gamma.dim(); ++b)
        out.actions.push_back(quotient[gamma.source(b)] * eta.target.actions[b] * section[gamma.target(b)]);
    return out;
}

std::size_t functor_hom_dim(const FunctorModule& f, const FunctorModule& g, const AuslanderAlgebra& gamma)
{
    const std::size_t n = gamma.members();
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + g.dims[i] * f.dims[i];
    const std::size_t unknowns = offset[n];
    if (unknowns == 0) return 0;

    // G(b) eta_j - eta_i F(b) = 0 for every basis element b : M_i -> M_j.
    std::vector<std::vector<Rational>> rows;
    for (std::size_t b = 0; b < gamma.dim(); ++b) {
        const std::size_t i = gamma.source(b), j = gamma.target(b);
        const Matrix& gb = g.actions[b];
        const Matrix& fb = f.actions[b];
        for (std::size_t r = 0; r < g.dims[i]; ++r)
            for (std::size_t c = 0; c < f.dims[j]; ++c) {
                std::vector<Rational> row(unknowns);
                for (std::size_t k = 0; k < g.dims[j]; ++k) row[offset[j] + k * f.dims[j] + c] += gb(r, k);
                for (std::size_t k = 0; k < f.dims[i]; ++k) row[offset[i] + r * f.dims[i] + k] -= fb(k, c);
                rows.push_back(std::move(row));
            }
    }
    Matrix system(rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < unknowns; ++c) system(r, c) = rows[r][c];
    return unknowns - rank(system);
}

bool is_effaceable(const FunctorModule& f, const AuslanderAlgebra& gamma)
{
    for (std::size_t i = 0; i < gamma.members(); ++i)
        if (gamma.e_marked()[i] && f.dims.at(i) != 0) return false;
    return true;
}

Module e_restrict(const FunctorModule& f, const AuslanderAlgebra& gamma)
{
    if (!gamma.has_all_projectives())
        throw PreconditionError("e_restrict needs every indecomposable projective among the members");
    const AlgebraPtr& alg = gamma.subcategory().algebra();
    const auto& member = gamma.projective_member();
    const Quiver& q = alg->quiver();
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) dims.push_back(f.dims.at(member[v]));
    std::vector<Matrix> actions;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& arr = q.arrow(a);
        const SparseVector& g = gamma.path_images().at(alg->arrow_element(a));
        actions.push_back(functor_action(f, gamma, g, member[arr.target], member[arr.source]));
    }
    return Module(alg, std::move(dims), std::move(actions));
}

bool QuotientReport::restriction_ok() const
{
    return std::all_of(restriction.begin(), restriction.end(), [](bool b) { return b; });
}

QuotientReport quotient_equivalence_report(const Subcategory& sub, const CertifiedAtlas& atlas, std::size_t d)
{
    if (sub.empty() || !is_d_cluster_tilting(sub, atlas, d).verdict)
        throw PreconditionError("quotient report needs a " + std::to_string(d) + "-cluster tilting subcategory");
    const AuslanderAlgebra gamma(sub);
    const AlgebraPtr& alg = sub.algebra();
    const std::size_t n = sub.size();

    QuotientReport r;
    r.gamma_dim = gamma.dim();
    r.algebra_dim = alg->dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (!gamma.e_marked()[i]) continue;
        r.e_members.push_back(sub.name(i));
        for (std::size_t j = 0; j < n; ++j)
            if (gamma.e_marked()[j]) r.e_gamma_e_dim += gamma.block(i, j).size();
    }

    // Structure constants of A carried into e Gamma e, in both orders.
    const auto& img = gamma.path_images();
    Matrix span(gamma.dim(), img.size());
    for (std::size_t p = 0; p < img.size(); ++p)
        for (const auto& [b, c] : img[p]) span(b, p) = c;
    bool direct = rank(span) == alg->dim() && r.dims_ok(), opposite = direct;
    for (std::size_t p = 0; p < img.size() && (direct || opposite); ++p)
        for (std::size_t q = 0; q < img.size(); ++q) {
            const SparseVector expected = combine(img, alg->table().product(p, q));
            direct = direct && gamma.table().multiply(img[p], img[q]) == expected;
            opposite = opposite && gamma.table().multiply(img[q], img[p]) == expected;
        }
    r.structure_match = direct ? "algebra" : opposite ? "opposite" : "none";

    std::vector<FunctorModule> yon;
    for (std::size_t i = 0; i < n; ++i) yon.push_back(yoneda_module(sub.member(i), gamma));
    r.hom_a.assign(n, std::vector<std::size_t>(n));
    r.hom_gamma.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r.hom_a[i][j] = gamma.block(i, j).size();
            r.hom_gamma[i][j] = functor_hom_dim(yon[i], yon[j], gamma);
        }
    for (std::size_t i = 0; i < n; ++i) r.restriction.push_back(is_isomorphic(e_restrict(yon[i], gamma), sub.member(i)));
    return r;
}

Matrix functor_on_map(const FunctorModule& f, const AuslanderAlgebra& gamma, const ModuleMap& g,
                      const AddDecomposition& source, const AddDecomposition& target)
{
    std::vector<std::size_t> src_off{0}, tgt_off{0};
    for (auto m : source.members) src_off.push_back(src_off.back() + f.dims.at(m));
    for (auto m : target.members) tgt_off.push_back(tgt_off.back() + f.dims.at(m));
    Matrix out(src_off.back(), tgt_off.back());
    for (std::size_t a = 0; a < source.members.size(); ++a)
        for (std::size_t b = 0; b < target.members.size(); ++b) {
            const std::size_t i = source.members[a], j = target.members[b];
            const ModuleMap c = compose(target.projections[b], compose(g, source.inclusions[a]));
            out.set_block(src_off[a], tgt_off[b], functor_action(f, gamma, gamma.coordinates(c, i, j), i, j));
        }
    return out;
}

std::vector<SequenceExactness> left_d_exactness_check(const FunctorModule& f, const std::vector<DSequence>& sequences,
                                                      const AuslanderAlgebra& gamma)
{
    std::vector<SequenceExactness> out;
    for (const auto& seq : sequences) {
        std::vector<AddDecomposition> parts;
        for (std::size_t k = 0; k < seq.objects.size(); ++k) {
            auto dec = decompose_in(seq.objects[k], gamma.subcategory());
            if (!dec) throw PreconditionError("object " + std::to_string(k) + " of the sequence is not in add(M)");
            parts.push_back(std::move(*dec));
        }
        // fm[k] = F(maps[k]) : F(X^{k+1}) -> F(X^k)
        std::vector<Matrix> fm;
        std::vector<std::size_t> dims;
        for (std::size_t k = 0; k < seq.maps.size(); ++k)
            fm.push_back(functor_on_map(f, gamma, seq.maps[k], parts[k], parts[k + 1]));
        for (std::size_t k = 0; k < seq.objects.size(); ++k) {
            std::size_t total = 0;
            for (auto m : parts[k].members) total += f.dims.at(m);
            dims.push_back(total);
        }

        SequenceExactness res;
        const std::size_t last = seq.objects.size() - 1;
        if (rank(fm[last - 1]) != dims[last]) {
            res.exact = false;
            res.position = last;
        }
        for (std::size_t p = last - 1; res.exact && p >= 1; --p) {
            const bool complex = (fm[p - 1] * fm[p]).is_zero();
            if (!complex || rank(fm[p - 1]) + rank(fm[p]) != dims[p]) {
                res.exact = false;
                res.position = p;
            }
        }
        out.push_back(res);
    }
    return out;
}

}  // namespace ctilt
