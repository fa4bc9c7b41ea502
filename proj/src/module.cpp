#include "ctilt/module.hpp"

#include <numeric>
#include <stdexcept>

namespace ctilt {

Module::Module(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Matrix> actions)
    : algebra_(std::move(algebra)), dims_(std::move(dims)), actions_(std::move(actions))
{
    if (!algebra_) throw InputError("module without algebra");
    const auto& q = algebra_->quiver();
    if (dims_.size() != q.vertex_count()) throw InputError("module dimension vector has wrong length");
    if (actions_.size() != q.arrow_count()) throw InputError("module has wrong number of arrow matrices");
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arrow = q.arrow(a);
        if (actions_[a].rows() != dims_[arrow.target] || actions_[a].cols() != dims_[arrow.source]) {
            throw InputError("arrow '" + arrow.label + "' needs a " + std::to_string(dims_[arrow.target]) + "x" +
                             std::to_string(dims_[arrow.source]) + " matrix, got " +
                             std::to_string(actions_[a].rows()) + "x" + std::to_string(actions_[a].cols()));
        }
    }
}

Module Module::zero(AlgebraPtr algebra)
{
    const auto& q = algebra->quiver();
    std::vector<Matrix> actions;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) actions.emplace_back(0, 0);
    return Module(std::move(algebra), std::vector<std::size_t>(q.vertex_count(), 0), std::move(actions));
}

std::size_t Module::total_dim() const
{
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
}

Matrix Module::path_action(const Path& p) const
{
    Matrix m = Matrix::identity(dims_.at(p.source));
    for (auto a : p.arrows) m = actions_.at(a) * m;
    return m;
}

Module Module::rebind(AlgebraPtr algebra) const
{
    if (!same_algebra(algebra, algebra_)) throw InputError("rebind to a different algebra");
    return Module(std::move(algebra), dims_, actions_);
}

bool operator==(const Module& a, const Module& b)
{
    return same_algebra(a.algebra_, b.algebra_) && a.dims_ == b.dims_ && a.actions_ == b.actions_;
}

void require_same_algebra(const Module& a, const Module& b, const char* context)
{
    if (!same_algebra(a.algebra(), b.algebra())) throw InputError(std::string(context) + ": modules over different algebras");
}

ModuleMap::ModuleMap(Module source, Module target, std::vector<Matrix> comps)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps))
{
    require_same_algebra(source_, target_, "ModuleMap");
    if (comps_.size() != source_.dims().size()) throw InputError("module map has wrong number of components");
    for (std::size_t v = 0; v < comps_.size(); ++v) {
        if (comps_[v].rows() != target_.dim(v) || comps_[v].cols() != source_.dim(v)) {
            throw InputError("module map component at vertex '" + source_.algebra()->quiver().vertex(v) +
                             "' needs a " + std::to_string(target_.dim(v)) + "x" + std::to_string(source_.dim(v)) +
                             " matrix");
        }
    }
}

ModuleMap ModuleMap::zero(const Module& source, const Module& target)
{
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < source.dims().size(); ++v) comps.emplace_back(target.dim(v), source.dim(v));
    return ModuleMap(source, target, std::move(comps));
}

ModuleMap ModuleMap::identity(const Module& m)
{
    std::vector<Matrix> comps;
    for (auto d : m.dims()) comps.push_back(Matrix::identity(d));
    return ModuleMap(m, m, std::move(comps));
}

bool ModuleMap::is_zero() const
{
    for (const auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

std::size_t ModuleMap::rank() const
{
    std::size_t r = 0;
    for (const auto& c : comps_) r += ctilt::rank(c);
    return r;
}

bool ModuleMap::is_injective() const
{
    return rank() == source_.total_dim();
}

bool ModuleMap::is_surjective() const
{
    return rank() == target_.total_dim();
}

bool ModuleMap::is_isomorphism() const
{
    return source_.dims() == target_.dims() && is_injective();
}

Matrix ModuleMap::vectorize() const
{
    std::size_t n = 0;
    for (const auto& c : comps_) n += c.rows() * c.cols();
    Matrix v(n, 1);
    std::size_t k = 0;
    for (const auto& c : comps_)
        for (const auto& x : c.entries()) v(k++, 0) = x;
    return v;
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b)
{
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < a.comps_.size(); ++v) comps.push_back(a.comps_[v] + b.comps_.at(v));
    return ModuleMap(a.source_, a.target_, std::move(comps));
}

ModuleMap operator*(const Rational& s, const ModuleMap& f)
{
    std::vector<Matrix> comps;
    for (const auto& c : f.comps_) comps.push_back(s * c);
    return ModuleMap(f.source_, f.target_, std::move(comps));
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f)
{
    if (g.source().dims() != f.target().dims()) throw std::invalid_argument("compose: dimension mismatch");
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < f.comps().size(); ++v) comps.push_back(g.comp(v) * f.comp(v));
    return ModuleMap(f.source(), g.target(), std::move(comps));
}

ModuleMap inverse(const ModuleMap& f)
{
    std::vector<Matrix> comps;
    for (const auto& c : f.comps()) {
        auto inv = ctilt::inverse(c);
        if (!inv) throw std::invalid_argument("inverse of a non-invertible module map");
        comps.push_back(std::move(*inv));
    }
    return ModuleMap(f.target(), f.source(), std::move(comps));
}

Diagnostics validate_module(const Module& m)
{
    Diagnostics diag;
    const auto& alg = *m.algebra();
    for (std::size_t r = 0; r < alg.relations().size(); ++r) {
        const auto& rel = alg.relations()[r];
        if (rel.terms.empty()) continue;
        const auto& first = rel.terms.front().path;
        Matrix value(m.dim(first.target), m.dim(first.source));
        for (const auto& t : rel.terms) value += t.coefficient * m.path_action(t.path);
        if (!value.is_zero()) {
            std::string text;
            for (const auto& t : rel.terms) {
                if (!text.empty()) text += " + ";
                text += to_string(t.coefficient) + "*" + path_label(alg.quiver(), t.path);
            }
            diag.add("relation failure: " + text + " does not vanish");
        }
    }
    return diag;
}

bool is_homomorphism(const ModuleMap& f)
{
    const auto& q = f.source().algebra()->quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arrow = q.arrow(a);
        if (!(f.comp(arrow.target) * f.source().action(a) == f.target().action(a) * f.comp(arrow.source)))
            return false;
    }
    return true;
}

DirectSum direct_sum(std::span<const Module> summands, const AlgebraPtr& algebra)
{
    const auto& q = algebra->quiver();
    const std::size_t nv = q.vertex_count();
    std::vector<std::size_t> dims(nv, 0);
    for (const auto& s : summands) {
        if (!same_algebra(s.algebra(), algebra)) throw InputError("direct_sum: summand over a different algebra");
        for (std::size_t v = 0; v < nv; ++v) dims[v] += s.dim(v);
    }
    std::vector<Matrix> actions;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        std::vector<Matrix> blocks;
        for (const auto& s : summands) blocks.push_back(s.action(a));
        actions.push_back(block_diagonal(blocks));
    }
    DirectSum out{Module(algebra, dims, std::move(actions)), {}, {}};
    std::vector<std::size_t> offset(nv, 0);
    for (const auto& s : summands) {
        std::vector<Matrix> inc, proj;
        for (std::size_t v = 0; v < nv; ++v) {
            Matrix i(dims[v], s.dim(v));
            for (std::size_t k = 0; k < s.dim(v); ++k) i(offset[v] + k, k) = 1;
            proj.push_back(i.transpose());
            inc.push_back(std::move(i));
            offset[v] += s.dim(v);
        }
        out.inclusions.emplace_back(s, out.sum, std::move(inc));
        out.projections.emplace_back(out.sum, s, std::move(proj));
    }
    return out;
}

ModuleMap map_from_sum(const DirectSum& source, std::span<const ModuleMap> components, const Module& target)
{
    ModuleMap f = ModuleMap::zero(source.sum, target);
    for (std::size_t k = 0; k < components.size(); ++k) f = f + compose(components[k], source.projections.at(k));
    return f;
}

ModuleMap map_into_sum(const Module& source, std::span<const ModuleMap> components, const DirectSum& target)
{
    ModuleMap f = ModuleMap::zero(source, target.sum);
    for (std::size_t k = 0; k < components.size(); ++k) f = f + compose(target.inclusions.at(k), components[k]);
    return f;
}

}  // namespace ctilt
