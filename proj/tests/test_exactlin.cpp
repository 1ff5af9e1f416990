#include <cstdlib>
#include <random>

#include "doctest.h"
#include "gen.hpp"
#include "stabfun/kernels.hpp"
#include "stabfun/matrix.hpp"

using sf::Matrix;

TEST_CASE("rref of identity and zero") {
    auto r = sf::rref(Matrix::identity(2, 101));
    CHECK(r.form == Matrix::identity(2, 101));
    CHECK(r.pivots == std::vector<int>{0, 1});
    auto z = sf::rref(Matrix(3, 4, 101));
    CHECK(z.form.is_zero());
    CHECK(z.pivots.empty());
}

TEST_CASE("rref of a rank one matrix over F_5") {
    auto r = sf::rref(Matrix::from_rows({{1, 2}, {2, 4}}, 2, 5));
    CHECK(r.form == Matrix::from_rows({{1, 2}, {0, 0}}, 2, 5));
    CHECK(r.pivots == std::vector<int>{0});
}

TEST_CASE("nullspace examples") {
    CHECK(sf::nullspace(Matrix::identity(3, 7)).cols() == 0);
    CHECK(sf::nullspace(Matrix(2, 3, 7)).cols() == 3);
    Matrix n = sf::nullspace(Matrix::from_rows({{1, 1}}, 2, 3));
    REQUIRE(n.cols() == 1);
    CHECK(n == Matrix::from_rows({{2}, {1}}, 1, 3));
    // (2,1) is the normalised representative of the line through (1,2)
    CHECK(sf::scaled(n, 2) == Matrix::from_rows({{1}, {2}}, 1, 3));
}

TEST_CASE("nullspace against enumeration over F_3") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int r = 1 + int(rng() % 3), c = 1 + int(rng() % 4);
        Matrix m = gen::random_matrix(rng, r, c, 3);
        int count = 0, total = 1;
        for (int i = 0; i < c; ++i) total *= 3;
        for (int code = 0; code < total; ++code) {
            std::vector<sf::elem> v(c);
            int x = code;
            for (int i = 0; i < c; ++i, x /= 3) v[i] = sf::elem(x % 3);
            bool zero = true;
            for (auto e : sf::mat_vec(m, v)) zero = zero && e == 0;
            count += zero;
        }
        int dim = sf::nullspace(m).cols();
        int expect = 1;
        for (int i = 0; i < dim; ++i) expect *= 3;
        CHECK(count == expect);
    }
}

TEST_CASE("solve examples") {
    Matrix b = Matrix::from_rows({{3, 1}, {4, 0}}, 2, 7);
    CHECK(*sf::solve(Matrix::identity(2, 7), b) == b);
    CHECK_FALSE(sf::solve(Matrix(2, 2, 7), b).has_value());
    CHECK(*sf::solve(Matrix::from_rows({{2}}, 1, 5), Matrix::from_rows({{1}}, 1, 5)) ==
          Matrix::from_rows({{3}}, 1, 5));
    CHECK_THROWS(sf::solve(Matrix(2, 2, 7), Matrix(3, 1, 7)));
}

TEST_CASE("empty shapes act as zero maps") {
    Matrix a(0, 3, 11), b(3, 0, 11);
    CHECK((b * a).is_zero());
    CHECK((b * a).rows() == 3);
    CHECK((a * b).rows() == 0);
    CHECK(sf::nullspace(a).cols() == 3);
    CHECK(sf::rank(b) == 0);
}

TEST_CASE("rref properties on random matrices") {
    std::mt19937_64 rng(2024);
    for (sf::elem p : {3u, 101u, 32003u, 2147483647u}) {
        for (int trial = 0; trial < 30; ++trial) {
            int r = int(rng() % 9), c = int(rng() % 9);
            int k = int(rng() % (std::min(r, c) + 1));
            Matrix m = trial % 2 ? gen::random_rank(rng, r, c, k, p) : gen::random_matrix(rng, r, c, p, 0.4);
            auto f = sf::rref(m);
            CHECK(sf::rref(f.form).form == f.form);
            Matrix n = sf::nullspace(m);
            CHECK(sf::rank(m) + n.cols() == c);
            CHECK((m * n).is_zero());
            if (trial % 2) CHECK(sf::rank(m) <= k);
            Matrix rhs = m * gen::random_matrix(rng, c, 2, p);
            auto x = sf::solve(m, rhs);
            REQUIRE(x.has_value());
            CHECK(m * *x == rhs);
            if (r == c) {
                auto inv = sf::inverse(m);
                CHECK(inv.has_value() == (sf::rank(m) == r));
                if (inv) CHECK(m * *inv == Matrix::identity(r, p));
            }
        }
    }
}

TEST_CASE("coordinates and span helpers") {
    std::mt19937_64 rng(5);
    Matrix basis = gen::random_rank(rng, 6, 3, 3, 101);
    REQUIRE(sf::rank(basis) == 3);
    sf::Coordinates co(basis);
    std::vector<sf::elem> c{4, 0, 99};
    CHECK(co.of(sf::mat_vec(basis, c)) == c);
    Matrix a = hcat(basis, gen::random_matrix(rng, 6, 1, 101));
    Matrix meet = sf::intersect_spans(a, basis);
    CHECK(meet.cols() == 3);
    CHECK(sf::extending_cols(basis, a).size() == 1);
}

TEST_CASE("avx2 and scalar kernels agree") {
    std::mt19937_64 rng(99);
    if (!sf::kernels::avx2_compiled() || !sf::kernels::avx2_supported()) return;
    for (sf::elem p : {3u, 5u, 101u, 7919u, 32003u, 46337u}) {
        for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 100u}) {
            std::uniform_int_distribution<sf::elem> d(0, p - 1);
            std::vector<sf::elem> src(n), a(n);
            for (std::size_t i = 0; i < n; ++i) {
                src[i] = d(rng);
                a[i] = d(rng);
            }
            for (sf::elem c : {sf::elem(0), sf::elem(1), p - 1, d(rng)}) {
                auto s = a, v = a;
                sf::kernels::axpy_scalar(s.data(), src.data(), c, p, n);
                sf::kernels::axpy_avx2(v.data(), src.data(), c, p, n);
                CHECK(s == v);
                s = a;
                v = a;
                sf::kernels::scale_scalar(s.data(), c, p, n);
                sf::kernels::scale_avx2(v.data(), c, p, n);
                CHECK(s == v);
            }
        }
    }
}

TEST_CASE("prime validation") {
    CHECK_NOTHROW(sf::check_prime(101));
    CHECK_THROWS(sf::check_prime(2));
    CHECK_THROWS(sf::check_prime(91));
}
