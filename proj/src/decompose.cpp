#include "ctilt/decompose.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ctilt {

EndomorphismAlgebra endomorphism_algebra(const Module& m)
{
    EndomorphismAlgebra end{m, hom_basis(m, m), {}};
    const HomCoordinates coords(end.basis);
    const std::size_t n = end.dim();
    end.constants.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) end.constants.push_back(coords.coordinates(compose(end.basis[x], end.basis[y])));
    return end;
}

Matrix trace_form(const EndomorphismAlgebra& end)
{
    const std::size_t n = end.dim();
    // tr(L_z) = sum_y c_{zy}^y, and tr(L_x L_y) = tr(L_{xy}).
    std::vector<Rational> trace(n);
    for (std::size_t z = 0; z < n; ++z)
        for (std::size_t y = 0; y < n; ++y) trace[z] += end.constants[z * n + y](y, 0);
    Matrix form(n, n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) form(x, y) += end.constants[x * n + y](z, 0) * trace[z];
    return form;
}

std::size_t radical_codimension(const EndomorphismAlgebra& end)
{
    return rank(trace_form(end));
}

bool is_indecomposable(const Module& m)
{
    if (m.is_zero()) return false;
    return radical_codimension(endomorphism_algebra(m)) == 1;
}

std::optional<ModuleMap> find_isomorphism(const Module& m, const Module& n, std::uint64_t seed)
{
    require_same_algebra(m, n, "find_isomorphism");
    if (m.dims() != n.dims()) return std::nullopt;
    if (m.is_zero()) return ModuleMap::zero(m, n);
    const auto basis = hom_basis(m, n);
    if (basis.empty() || hom_basis(n, m).empty()) return std::nullopt;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (std::size_t attempt = 0; attempt < 25; ++attempt) {
        ModuleMap f = ModuleMap::zero(m, n);
        if (attempt < basis.size() && attempt < 5) {
            f = basis[attempt];
        } else {
            for (const auto& b : basis) f = f + Rational(coeff(rng)) * b;
        }
        if (f.is_isomorphism()) return f;
    }
    return std::nullopt;
}

bool is_isomorphic(const Module& m, const Module& n, std::uint64_t seed)
{
    return find_isomorphism(m, n, seed).has_value();
}

namespace {

/// Coefficients c_0..c_n of det(x I - a), by Faddeev-LeVerrier.
std::vector<Rational> characteristic_polynomial(const Matrix& a)
{
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = a * mk + c[n - k + 1] * Matrix::identity(n);
        const Matrix amk = a * mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return c;
}

/// Positive divisors of |x|, or nothing if x is too large to factor by trial
/// division.
std::optional<std::vector<mpz_class>> divisors(const mpz_class& x)
{
    mpz_class v = abs(x);
    if (v > mpz_class("1000000000000")) return std::nullopt;
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            if (d * d != v) out.push_back(v / d);
        }
    }
    return out;
}

std::vector<Rational> rational_roots(std::vector<Rational> poly)
{
    std::vector<Rational> roots;
    std::size_t low = 0;
    while (low < poly.size() && sgn(poly[low]) == 0) ++low;
    if (low > 0) roots.push_back(0);
    poly.erase(poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(low));
    if (poly.size() < 2) return roots;

    mpz_class scale = 1;
    for (const auto& c : poly) scale = lcm(scale, mpz_class(c.get_den()));
    std::vector<mpz_class> ints;
    for (const auto& c : poly) {
        mpq_class scaled = c * scale;
        ints.push_back(scaled.get_num());
    }
    const auto ps = divisors(ints.front());
    const auto qs = divisors(ints.back());
    if (!ps || !qs) return roots;

    auto eval = [&](const Rational& x) {
        Rational acc = 0;
        for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + poly[k];
        return acc;
    };
    for (const auto& p : *ps) {
        for (const auto& q : *qs) {
            for (int sign : {1, -1}) {
                const mpz_class num = sign * p;
                Rational x(num, q);
                x.canonicalize();
                if (sgn(eval(x)) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

Matrix matrix_power(Matrix base, std::size_t exponent)
{
    Matrix result = Matrix::identity(base.rows());
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        base = base * base;
        exponent >>= 1;
    }
    return result;
}

struct Piece {
    Module module;
    ModuleMap inclusion;   // module -> whole
    ModuleMap projection;  // whole -> module
};

/// m = ker psi^N (+) im psi^N for psi = phi - lambda, when both are nonzero.
std::optional<std::pair<Piece, Piece>> fitting_split(const Module& m, const ModuleMap& phi, const Rational& lambda)
{
    const std::size_t n = m.total_dim();
    std::vector<Matrix> kernels, images;
    std::size_t image_dim = 0;
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
        const Matrix psi = phi.comp(v) - lambda * Matrix::identity(m.dim(v));
        const Matrix power = matrix_power(psi, n);
        kernels.push_back(kernel_basis(power));
        images.push_back(image_basis(power));
        image_dim += images.back().cols();
    }
    if (image_dim == 0 || image_dim == n) return std::nullopt;

    auto [k, k_inc] = submodule(m, kernels);
    auto [i, i_inc] = submodule(m, images);
    std::vector<Matrix> k_proj, i_proj;
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
        const Matrix inv = *inverse(hstack(kernels[v], images[v]));
        k_proj.push_back(inv.block(0, 0, kernels[v].cols(), m.dim(v)));
        i_proj.push_back(inv.block(kernels[v].cols(), 0, images[v].cols(), m.dim(v)));
    }
    Piece kp{k, k_inc, ModuleMap(m, k, std::move(k_proj))};
    Piece ip{i, i_inc, ModuleMap(m, i, std::move(i_proj))};
    return std::make_pair(std::move(kp), std::move(ip));
}

ModuleMap candidate_endomorphism(const EndomorphismAlgebra& end, std::size_t attempt, std::mt19937_64& rng)
{
    if (attempt % 2 == 0 && attempt / 2 < end.dim()) return end.basis[attempt / 2];
    std::uniform_int_distribution<int> coeff(-3, 3);
    ModuleMap f = ModuleMap::zero(end.module, end.module);
    for (const auto& b : end.basis) f = f + Rational(coeff(rng)) * b;
    return f;
}

void split_into(const Module& m, std::mt19937_64& rng, std::vector<Piece>& out)
{
    const EndomorphismAlgebra end = endomorphism_algebra(m);
    if (radical_codimension(end) == 1) {
        out.push_back({m, ModuleMap::identity(m), ModuleMap::identity(m)});
        return;
    }
    for (std::size_t attempt = 0; attempt < 25; ++attempt) {
        const ModuleMap phi = candidate_endomorphism(end, attempt, rng);
        std::vector<Matrix> blocks(phi.comps().begin(), phi.comps().end());
        for (const auto& lambda : rational_roots(characteristic_polynomial(block_diagonal(blocks)))) {
            auto parts = fitting_split(m, phi, lambda);
            if (!parts) continue;
            for (const Piece* half : {&parts->first, &parts->second}) {
                std::vector<Piece> sub;
                split_into(half->module, rng, sub);
                for (auto& p : sub)
                    out.push_back({p.module, compose(half->inclusion, p.inclusion), compose(p.projection, half->projection)});
            }
            return;
        }
    }
    throw DecompositionError("no splitting endomorphism found within 25 draws for a module of dimension vector (" +
                             [&] {
                                 std::string s;
                                 for (std::size_t v = 0; v < m.dims().size(); ++v)
                                     s += (v ? "," : "") + std::to_string(m.dim(v));
                                 return s;
                             }() +
                             ")");
}

}  // namespace

Decomposition decompose(const Module& m, std::uint64_t seed)
{
    Decomposition dec;
    if (m.is_zero()) {
        dec.certificate = ModuleMap::zero(m, m);
        return dec;
    }
    std::mt19937_64 rng(seed);
    std::vector<Piece> pieces;
    split_into(m, rng, pieces);

    std::vector<Module> classes;
    std::vector<std::size_t> type;
    std::vector<ModuleMap> inclusions, projections;
    for (const auto& p : pieces) {
        std::size_t cls = classes.size();
        ModuleMap theta = ModuleMap::identity(p.module);
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (auto iso = find_isomorphism(classes[c], p.module, seed)) {
                cls = c;
                theta = *iso;
                break;
            }
        }
        if (cls == classes.size()) classes.push_back(p.module);
        type.push_back(cls);
        inclusions.push_back(compose(p.inclusion, theta));
        projections.push_back(compose(inverse(theta), p.projection));
    }

    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return classes[a].dims() < classes[b].dims(); });
    std::vector<std::size_t> rank_of(classes.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        rank_of[order[r]] = r;
        dec.classes.push_back(classes[order[r]]);
    }
    dec.multiplicities.assign(classes.size(), 0);
    std::vector<std::size_t> copies(type.size());
    std::iota(copies.begin(), copies.end(), 0);
    std::stable_sort(copies.begin(), copies.end(),
                     [&](std::size_t a, std::size_t b) { return rank_of[type[a]] < rank_of[type[b]]; });
    std::vector<Module> summands;
    for (auto k : copies) {
        dec.type.push_back(rank_of[type[k]]);
        dec.inclusions.push_back(inclusions[k]);
        dec.projections.push_back(projections[k]);
        ++dec.multiplicities[rank_of[type[k]]];
        summands.push_back(dec.classes[rank_of[type[k]]]);
    }
    const DirectSum sum = direct_sum(summands, m.algebra());
    dec.certificate = map_from_sum(sum, dec.inclusions, m);
    if (!dec.certificate.is_isomorphism()) throw DecompositionError("summand inclusions do not assemble to an isomorphism");
    return dec;
}

std::optional<Module> tau(const Module& m)
{
    if (!is_indecomposable(m)) throw PreconditionError("tau: module is not indecomposable");
    const Module tr = transpose(m);
    if (tr.is_zero()) return std::nullopt;
    return dualize(tr).rebind(m.algebra());
}

std::optional<Module> tau_inverse(const Module& m)
{
    if (!is_indecomposable(m)) throw PreconditionError("tau_inverse: module is not indecomposable");
    const Module tr = transpose(dualize(m));
    if (tr.is_zero()) return std::nullopt;
    return tr.rebind(m.algebra());
}

}  // namespace ctilt
