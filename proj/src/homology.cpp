#include "ctilt/homology.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace ctilt {

std::vector<ModuleMap> hom_basis(const Module& m, const Module& n)
{
    require_same_algebra(m, n, "hom_basis");
    const auto& q = m.algebra()->quiver();
    const std::size_t nv = q.vertex_count();
    std::vector<std::size_t> offset(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
    const std::size_t nvars = offset[nv];
    if (nvars == 0) return {};

    std::size_t neqs = 0;
    for (const auto& a : q.arrows()) neqs += n.dim(a.target) * m.dim(a.source);
    Matrix eqs(neqs, nvars);
    std::size_t row = 0;
    for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
        const auto& a = q.arrow(ai);
        const std::size_t i = a.source, j = a.target;
        const Matrix& ma = m.action(ai);
        const Matrix& na = n.action(ai);
        for (std::size_t r = 0; r < n.dim(j); ++r) {
            for (std::size_t c = 0; c < m.dim(i); ++c, ++row) {
                // (phi_j * M_a - N_a * phi_i)(r, c) = 0
                for (std::size_t k = 0; k < m.dim(j); ++k) eqs(row, offset[j] + r * m.dim(j) + k) += ma(k, c);
                for (std::size_t k = 0; k < n.dim(i); ++k) eqs(row, offset[i] + k * m.dim(i) + c) -= na(r, k);
            }
        }
    }
    const Matrix kernel = kernel_basis(eqs);
    std::vector<ModuleMap> basis;
    basis.reserve(kernel.cols());
    for (std::size_t b = 0; b < kernel.cols(); ++b) {
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < nv; ++v) {
            Matrix c(n.dim(v), m.dim(v));
            for (std::size_t r = 0; r < n.dim(v); ++r)
                for (std::size_t s = 0; s < m.dim(v); ++s) c(r, s) = kernel(offset[v] + r * m.dim(v) + s, b);
            comps.push_back(std::move(c));
        }
        basis.emplace_back(m, n, std::move(comps));
    }
    return basis;
}

namespace {

Matrix stacked_columns(const std::vector<ModuleMap>& maps)
{
    if (maps.empty()) return Matrix();
    Matrix first = maps.front().vectorize();
    Matrix out(first.rows(), maps.size());
    for (std::size_t k = 0; k < maps.size(); ++k) out.set_block(0, k, maps[k].vectorize());
    return out;
}

}  // namespace

HomCoordinates::HomCoordinates(std::vector<ModuleMap> basis) : basis_(std::move(basis))
{
    if (!basis_.empty()) solver_ = CoordinateSolver(stacked_columns(basis_));
}

Matrix HomCoordinates::coordinates(const ModuleMap& f) const
{
    if (basis_.empty()) {
        if (!f.is_zero()) throw std::logic_error("HomCoordinates: nonzero map in a zero Hom space");
        return Matrix(0, 1);
    }
    auto c = solver_.coordinates(f.vectorize());
    if (!c) throw std::logic_error("HomCoordinates: map outside the Hom space");
    return *c;
}

ModuleMap HomCoordinates::combine(const Matrix& coords) const
{
    if (basis_.empty()) throw std::logic_error("HomCoordinates: combine in a zero Hom space");
    ModuleMap f = ModuleMap::zero(basis_.front().source(), basis_.front().target());
    for (std::size_t k = 0; k < basis_.size(); ++k)
        if (sgn(coords(k, 0)) != 0) f = f + coords(k, 0) * basis_[k];
    return f;
}

std::size_t span_rank(const std::vector<ModuleMap>& maps)
{
    if (maps.empty()) return 0;
    return rank(stacked_columns(maps));
}

std::size_t precomposition_rank(const ModuleMap& f, const Module& n)
{
    std::vector<ModuleMap> images;
    for (const auto& phi : hom_basis(f.target(), n)) images.push_back(compose(phi, f));
    return span_rank(images);
}

std::size_t postcomposition_rank(const ModuleMap& f, const Module& n)
{
    std::vector<ModuleMap> images;
    for (const auto& phi : hom_basis(n, f.source())) images.push_back(compose(f, phi));
    return span_rank(images);
}

namespace {

/// Position of a basis element inside paths_between(from, to).
std::size_t position_in(const Algebra& alg, std::size_t from, std::size_t to, std::size_t element)
{
    const auto& list = alg.paths_between(from, to);
    for (std::size_t k = 0; k < list.size(); ++k)
        if (list[k] == element) return k;
    throw std::logic_error("basis element outside the expected path space");
}

}  // namespace

Module std_projective(const AlgebraPtr& alg, std::size_t vertex)
{
    const auto& q = alg->quiver();
    if (vertex >= q.vertex_count()) throw InputError("std_projective: no such vertex");
    std::vector<std::size_t> dims;
    for (std::size_t w = 0; w < q.vertex_count(); ++w) dims.push_back(alg->paths_between(vertex, w).size());
    std::vector<Matrix> actions;
    for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
        const auto& a = q.arrow(ai);
        const std::size_t elem = alg->arrow_element(ai);
        Matrix act(dims[a.target], dims[a.source]);
        const auto& from = alg->paths_between(vertex, a.source);
        for (std::size_t c = 0; c < from.size(); ++c) {
            for (const auto& [b, coeff] : alg->table().product(from[c], elem))
                act(position_in(*alg, vertex, a.target, b), c) += coeff;
        }
        actions.push_back(std::move(act));
    }
    return Module(alg, std::move(dims), std::move(actions));
}

Module std_injective(const AlgebraPtr& alg, std::size_t vertex)
{
    const auto op = opposite_algebra(*alg);
    return dualize(std_projective(op, vertex)).rebind(alg);
}

Module projective_sum(const AlgebraPtr& alg, const std::vector<std::size_t>& vertices)
{
    std::vector<Module> parts;
    for (auto v : vertices) parts.push_back(std_projective(alg, v));
    return direct_sum(parts, alg).sum;
}

ModuleMap projective_map(const AlgebraPtr& alg, const std::vector<std::size_t>& sources,
                         const std::vector<std::size_t>& targets,
                         const std::vector<std::vector<SparseVector>>& entries)
{
    const Module source = projective_sum(alg, sources);
    const Module target = projective_sum(alg, targets);
    const std::size_t nv = alg->quiver().vertex_count();
    std::vector<Matrix> comps;
    for (std::size_t w = 0; w < nv; ++w) {
        Matrix c(target.dim(w), source.dim(w));
        std::size_t col0 = 0;
        for (std::size_t s = 0; s < sources.size(); ++s) {
            const auto& paths = alg->paths_between(sources[s], w);
            std::size_t row0 = 0;
            for (std::size_t t = 0; t < targets.size(); ++t) {
                for (std::size_t k = 0; k < paths.size(); ++k) {
                    for (const auto& [b, coeff] : entries.at(t).at(s)) {
                        for (const auto& [r, rc] : alg->table().product(b, paths[k]))
                            c(row0 + position_in(*alg, targets[t], w, r), col0 + k) += coeff * rc;
                    }
                }
                row0 += alg->paths_between(targets[t], w).size();
            }
            col0 += paths.size();
        }
        comps.push_back(std::move(c));
    }
    return ModuleMap(source, target, std::move(comps));
}

Module dualize(const Module& m)
{
    std::vector<Matrix> actions;
    for (const auto& a : m.actions()) actions.push_back(a.transpose());
    return Module(opposite_algebra(*m.algebra()), m.dims(), std::move(actions));
}

ModuleMap dualize(const ModuleMap& f)
{
    std::vector<Matrix> comps;
    for (const auto& c : f.comps()) comps.push_back(c.transpose());
    return ModuleMap(dualize(f.target()), dualize(f.source()), std::move(comps));
}

std::pair<Module, ModuleMap> submodule(const Module& m, const std::vector<Matrix>& bases)
{
    const auto& q = m.algebra()->quiver();
    std::vector<std::size_t> dims;
    for (const auto& b : bases) dims.push_back(b.cols());
    std::vector<Matrix> actions;
    for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
        const auto& a = q.arrow(ai);
        auto x = solve_linear(bases[a.target], m.action(ai) * bases[a.source]);
        if (!x) throw std::logic_error("submodule: subspace not closed under arrow '" + a.label + "'");
        actions.push_back(std::move(*x));
    }
    Module sub(m.algebra(), std::move(dims), std::move(actions));
    ModuleMap inc(sub, m, bases);
    return {std::move(sub), std::move(inc)};
}

std::pair<Module, ModuleMap> map_kernel(const ModuleMap& f)
{
    std::vector<Matrix> bases;
    for (const auto& c : f.comps()) bases.push_back(kernel_basis(c));
    return submodule(f.source(), bases);
}

std::pair<Module, ModuleMap> map_image(const ModuleMap& f)
{
    std::vector<Matrix> bases;
    for (const auto& c : f.comps()) bases.push_back(image_basis(c));
    return submodule(f.target(), bases);
}

std::pair<Module, ModuleMap> map_cokernel(const ModuleMap& f)
{
    const Module& n = f.target();
    const auto& q = n.algebra()->quiver();
    std::vector<Matrix> quotients, sections;
    for (const auto& c : f.comps()) {
        // Rows of Q span the functionals vanishing on the image.
        Matrix quot = kernel_basis(c.transpose()).transpose();
        auto section = solve_linear(quot, Matrix::identity(quot.rows()));
        sections.push_back(std::move(*section));
        quotients.push_back(std::move(quot));
    }
    std::vector<std::size_t> dims;
    for (const auto& qm : quotients) dims.push_back(qm.rows());
    std::vector<Matrix> actions;
    for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
        const auto& a = q.arrow(ai);
        actions.push_back(quotients[a.target] * n.action(ai) * sections[a.source]);
    }
    Module coker(n.algebra(), std::move(dims), std::move(actions));
    ModuleMap proj(n, coker, std::move(quotients));
    return {std::move(coker), std::move(proj)};
}

std::vector<Matrix> top_complement(const Module& m)
{
    const auto& q = m.algebra()->quiver();
    std::vector<Matrix> out;
    for (std::size_t w = 0; w < q.vertex_count(); ++w) {
        Matrix radical(m.dim(w), 0);
        for (std::size_t ai = 0; ai < q.arrow_count(); ++ai)
            if (q.arrow(ai).target == w) radical = hstack(radical, m.action(ai));
        out.push_back(complement_basis(image_basis(radical)));
    }
    return out;
}

ProjectiveCover projective_cover(const Module& m)
{
    if (m.is_zero()) throw InputError("projective_cover of the zero module");
    const auto& alg = m.algebra();
    const std::size_t nv = alg->quiver().vertex_count();
    const auto tops = top_complement(m);
    std::vector<std::size_t> vertices;
    std::vector<Matrix> generators;
    for (std::size_t v = 0; v < nv; ++v) {
        for (std::size_t k = 0; k < tops[v].cols(); ++k) {
            vertices.push_back(v);
            generators.push_back(tops[v].col(k));
        }
    }
    Module p = projective_sum(alg, vertices);
    std::vector<Matrix> comps;
    for (std::size_t w = 0; w < nv; ++w) {
        Matrix c(m.dim(w), 0);
        for (std::size_t s = 0; s < vertices.size(); ++s) {
            for (auto b : alg->paths_between(vertices[s], w))
                c = hstack(c, m.path_action(alg->basis()[b]) * generators[s]);
        }
        comps.push_back(std::move(c));
    }
    ModuleMap cover(p, m, std::move(comps));
    return {std::move(p), std::move(cover), std::move(vertices)};
}

Resolution projective_resolution(const Module& m, std::size_t length)
{
    Resolution res;
    if (m.is_zero()) {
        res.augmentation = ModuleMap::zero(Module::zero(m.algebra()), m);
        return res;
    }
    auto cover = projective_cover(m);
    res.terms.push_back(cover.projective);
    res.vertices.push_back(cover.vertices);
    res.augmentation = cover.map;
    auto [kernel, inclusion] = map_kernel(cover.map);
    for (std::size_t k = 1; k <= length && !kernel.is_zero(); ++k) {
        auto next = projective_cover(kernel);
        ModuleMap d = compose(inclusion, next.map);
        res.terms.push_back(next.projective);
        res.vertices.push_back(next.vertices);
        std::tie(kernel, inclusion) = map_kernel(d);
        res.differentials.push_back(std::move(d));
    }
    return res;
}

bool is_exact_resolution(const Resolution& r, bool closed)
{
    if (r.terms.empty()) return r.augmentation.target().is_zero();
    if (!r.augmentation.is_surjective()) return false;
    std::vector<std::size_t> ranks{r.augmentation.rank()};
    for (std::size_t k = 0; k < r.differentials.size(); ++k) {
        const auto& d = r.differentials[k];
        const ModuleMap& prev = k == 0 ? r.augmentation : r.differentials[k - 1];
        if (!compose(prev, d).is_zero()) return false;
        ranks.push_back(d.rank());
    }
    for (std::size_t k = 0; k + 1 < ranks.size(); ++k)
        if (ranks[k + 1] != r.terms[k].total_dim() - ranks[k]) return false;
    if (closed && ranks.back() != r.terms.back().total_dim()) return false;
    return true;
}

std::vector<std::size_t> ext_dims(const Resolution& res, const Module& n, std::size_t max_i)
{
    std::vector<std::size_t> out(max_i + 1, 0);
    auto induced_rank = [&](std::size_t k) -> std::size_t {
        // rank of Hom(P_{k-1}, n) -> Hom(P_k, n)
        if (k == 0 || k > res.differentials.size()) return 0;
        return precomposition_rank(res.differentials[k - 1], n);
    };
    for (std::size_t k = 0; k <= max_i && k < res.terms.size(); ++k) {
        const std::size_t h = hom_basis(res.terms[k], n).size();
        out[k] = h - induced_rank(k + 1) - induced_rank(k);
    }
    return out;
}

std::vector<std::size_t> ext_dims(const Module& m, const Module& n, std::size_t max_i)
{
    require_same_algebra(m, n, "ext_dims");
    return ext_dims(projective_resolution(m, max_i + 1), n, max_i);
}

std::size_t ext_dim(const Module& m, const Module& n, std::size_t i)
{
    return ext_dims(m, n, i)[i];
}

Module transpose(const Module& m)
{
    const auto& alg = m.algebra();
    const auto op = opposite_algebra(*alg);
    if (m.is_zero()) return Module::zero(op);
    const auto res = projective_resolution(m, 1);
    if (res.terms.size() < 2) return Module::zero(op);

    const auto& p0 = res.vertices[0];
    const auto& p1 = res.vertices[1];
    const ModuleMap& d = res.differentials[0];
    // Entry (t, s): the component in copy t of P0 of the image of the
    // generator of copy s of P1.
    std::vector<std::vector<SparseVector>> entries(p1.size(), std::vector<SparseVector>(p0.size()));
    for (std::size_t s = 0; s < p1.size(); ++s) {
        const std::size_t i = p1[s];
        std::size_t col = 0;
        for (std::size_t s2 = 0; s2 < s; ++s2) col += alg->paths_between(p1[s2], i).size();
        const auto& own = alg->paths_between(i, i);
        for (std::size_t k = 0; k < own.size(); ++k)
            if (alg->basis()[own[k]].trivial()) col += k;
        std::size_t row = 0;
        for (std::size_t t = 0; t < p0.size(); ++t) {
            const auto& paths = alg->paths_between(p0[t], i);
            SparseVector elem;
            for (std::size_t k = 0; k < paths.size(); ++k) {
                const Rational& c = d.comp(i)(row + k, col);
                if (sgn(c) != 0) elem.emplace_back(paths[k], c);
            }
            std::sort(elem.begin(), elem.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            entries[s][t] = std::move(elem);
            row += paths.size();
        }
    }
    // Hom(-, A) turns right multiplication into left multiplication over A^op.
    const ModuleMap dual = projective_map(op, p0, p1, entries);
    return map_cokernel(dual).first;
}

}  // namespace ctilt
