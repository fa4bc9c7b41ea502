#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctilt/matrix.hpp"

#include <random>

using namespace ctilt;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t max_dim)
{
    std::uniform_int_distribution<std::size_t> dim(0, max_dim);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> den(1, 4);
    Matrix m(dim(rng), dim(rng));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            // about half the entries stay zero so rank deficiency is common
            if (entry(rng) > 0) {
                m(r, c) = Rational(entry(rng), den(rng));
                m(r, c).canonicalize();
            }
        }
    return m;
}

}  // namespace

TEST_CASE("rational parsing is exact and canonical")
{
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(parse_rational("-6/3") == Rational(-2));
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 100000);
    for (int i = 0; i < 100; ++i) {
        Rational x(num(rng), den(rng));
        x.canonicalize();
        CHECK(parse_rational(to_string(x)) == x);
    }
}

TEST_CASE("rref examples")
{
    auto [r1, p1] = rref(Matrix::identity(2));
    CHECK(r1 == Matrix::identity(2));
    CHECK(p1 == std::vector<std::size_t>{0, 1});

    auto [r2, p2] = rref(Matrix{{1, 2}, {2, 4}});
    CHECK(r2 == Matrix{{1, 2}, {0, 0}});
    CHECK(p2 == std::vector<std::size_t>{0});

    auto [r3, p3] = rref(Matrix{{0, 1}, {1, 0}});
    CHECK(r3 == Matrix::identity(2));
    CHECK(p3 == std::vector<std::size_t>{0, 1});
}

TEST_CASE("kernel_basis examples")
{
    CHECK(kernel_basis(Matrix::identity(3)).cols() == 0);

    const Matrix k1 = kernel_basis(Matrix{{1, 1}});
    REQUIRE(k1.cols() == 1);
    CHECK(k1(0, 0) == -k1(1, 0));
    CHECK(sgn(k1(0, 0)) != 0);

    const Matrix k2 = kernel_basis(Matrix{{1, 2}, {2, 4}});
    REQUIRE(k2.cols() == 1);
    CHECK(k2(0, 0) == -2 * k2(1, 0));
}

TEST_CASE("solve_linear examples")
{
    const Matrix b{{3}, {-1}};
    CHECK(*solve_linear(Matrix::identity(2), b) == b);

    auto x = solve_linear(Matrix{{1, 1}}, Matrix{{2}});
    REQUIRE(x);
    CHECK((*x)(0, 0) + (*x)(1, 0) == 2);

    CHECK_FALSE(solve_linear(Matrix{{1}, {2}}, Matrix{{1}, {1}}));
    CHECK_THROWS_AS(solve_linear(Matrix{{1}, {2}}, Matrix{{1}}), std::invalid_argument);
}

TEST_CASE("zero-sized matrices behave as zero maps")
{
    Matrix empty_rows(0, 3);
    CHECK(rank(empty_rows) == 0);
    CHECK(kernel_basis(empty_rows) == Matrix::identity(3));
    Matrix empty_cols(2, 0);
    CHECK(kernel_basis(empty_cols).cols() == 0);
    CHECK((empty_rows.transpose() * Matrix(0, 4)).is_zero());
    CHECK(inverse(Matrix(0, 0)).has_value());
}

TEST_CASE("property: rref idempotent, rank-nullity, solvability criterion on random matrices")
{
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix m = random_matrix(rng, 6);
        const auto once = rref(m);
        CHECK(rref(once.reduced).reduced == once.reduced);

        const Matrix k = kernel_basis(m);
        CHECK(rank(m) + k.cols() == m.cols());
        if (!m.empty() && k.cols() > 0) {
            CHECK((m * k).is_zero());
            CHECK(rank(k) == k.cols());
        }

        Matrix b(m.rows(), 1);
        std::uniform_int_distribution<int> e(-2, 2);
        for (std::size_t r = 0; r < b.rows(); ++r) b(r, 0) = e(rng);
        const auto x = solve_linear(m, b);
        CHECK(x.has_value() == (rank(hstack(m, b)) == rank(m)));
        if (x) CHECK(m * *x == b);
    }
}

TEST_CASE("CoordinateSolver recovers coordinates and rejects vectors outside the span")
{
    const Matrix basis{{1, 0}, {1, 1}, {0, 2}};
    CoordinateSolver solver(basis);
    const Matrix v = basis * Matrix{{Rational(3, 2)}, {-1}};
    CHECK(*solver.coordinates(v) == Matrix{{Rational(3, 2)}, {-1}});
    CHECK_FALSE(solver.coordinates(Matrix{{1}, {0}, {0}}));
    CHECK(complement_basis(basis).cols() == 1);
}
