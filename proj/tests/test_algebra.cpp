#include <random>

#include "doctest.h"
#include "stabfun/corpus.hpp"
#include "stabfun/module.hpp"

using namespace sf;

namespace {

constexpr elem P = 101;

AlgPtr dual_numbers() { return dual_numbers_extension(one_vertex(P), "k[eps]"); }

// k[eps] tensor a B-module, built directly: two copies of the module with
// eps mapping the first copy onto the second.
Rep tensor_dual_numbers(const AlgPtr& gamma, const Rep& m) {
    const int na = m.alg->quiver().num_arrows();
    Rep t = zero_rep(gamma);
    for (std::size_t v = 0; v < m.dims.size(); ++v) t.dims[v] = 2 * m.dims[v];
    for (int a = 0; a < gamma->quiver().num_arrows(); ++a) {
        const auto& ar = gamma->quiver().arrows[a];
        Matrix mat(t.dims[ar.tgt], t.dims[ar.src], P);
        if (a < na) {
            put_block(mat, 0, 0, m.mats[a]);
            put_block(mat, m.dims[ar.tgt], m.dims[ar.src], m.mats[a]);
        } else {
            put_block(mat, m.dims[ar.src], 0, Matrix::identity(m.dims[ar.src], P));
        }
        t.mats[a] = mat;
    }
    t.validate();
    return t;
}

}  // namespace

TEST_CASE("path basis dimensions of the worked example algebras") {
    auto a = algebra_A(1, P);
    auto b = algebra_B(1, P);
    CHECK(a->dim() == 7);
    CHECK(b->dim() == 10);
    CHECK(dual_numbers_extension(a)->dim() == 14);
    CHECK(dual_numbers_extension(b)->dim() == 20);
    CHECK(dual_numbers()->dim() == 2);
    CHECK(algebra_A(2, P)->dim() == 12);
    CHECK(algebra_B(2, P)->dim() == 21);
    Quiver q;
    q.vertices = {"x", "y"};
    auto triv = Algebra::create(q, {}, P);
    CHECK(triv->dim() == 2);
}

TEST_CASE("path basis order is by length then arrow names") {
    auto a = algebra_A(1, P);
    std::vector<std::string> labels;
    for (int b = 0; b < a->dim(); ++b) labels.push_back(a->path_label(b));
    CHECK(labels == std::vector<std::string>{"e0", "e1", "e2", "e3", "alpha1", "alpha3", "beta1"});
}

TEST_CASE("non-admissible relations are rejected") {
    Quiver q;
    q.vertices = {"0"};
    q.arrows = {{"x", 0, 0}};
    CHECK_THROWS(Algebra::create(q, {}, P, "", 8));
    CHECK_NOTHROW(Algebra::create(q, {{{1, {0, 0, 0}}}}, P));
    CHECK_THROWS(Algebra::create(q, {{{1, {0}}}}, P));
    CHECK_THROWS(Algebra::create(q, {{{1, {0, 0}}, {1, {0, 0, 0}}}}, P));
}

TEST_CASE("multiplication is associative on basis triples") {
    for (auto alg : {algebra_A(1, P), dual_numbers_extension(algebra_A(1, P)), dual_numbers_extension(algebra_B(1, P))}) {
        int bad = 0;
        for (int i = 0; i < alg->dim(); ++i)
            for (int j = 0; j < alg->dim(); ++j)
                for (int k = 0; k < alg->dim(); ++k) {
                    Vec x = alg->unit(i), y = alg->unit(j), z = alg->unit(k);
                    bad += alg->mul(alg->mul(x, y), z) != alg->mul(x, alg->mul(y, z));
                }
        CHECK(bad == 0);
    }
}

TEST_CASE("dual numbers commute with arrows") {
    auto lam = dual_numbers_extension(algebra_A(1, P));
    const auto& q = lam->quiver();
    int a = q.arrow("alpha1"), e1 = q.arrow("eps1"), e0 = q.arrow("eps0");
    CHECK(lam->reduce_path(1, {a, e0}) == lam->reduce_path(1, {e1, a}));
    CHECK(lam->is_zero(lam->reduce_path(1, {e1, e1})));
}

TEST_CASE("representations validate relations") {
    auto a = algebra_A(1, P);
    Rep m = zero_rep(a);
    m.dims = {1, 1, 1, 1};
    for (int k = 0; k < 3; ++k) m.mats[k] = Matrix::from_rows({{1}}, 1, P);
    CHECK_THROWS(m.validate());
    m.mats[a->quiver().arrow("alpha3")] = Matrix(1, 1, P);
    CHECK_NOTHROW(m.validate());
    for (int v = 0; v < 4; ++v) CHECK_NOTHROW(projective(a, v).validate());
}

TEST_CASE("hom space examples") {
    auto a = algebra_A(1, P);
    Rep m = projective(a, 1);
    auto ends = hom_space(m, m);
    CHECK(ends.size() == 1);
    CHECK(hom_dim(simple(a, 1), simple(a, 0)) == 0);
    bool has_id = false;
    for (const auto& f : hom_space(projective(a, 3), projective(a, 3))) has_id = has_id || equal(f, identity_hom(projective(a, 3)));
    CHECK(has_id);
}

TEST_CASE("hom space from a presentation agrees with the commuting-square system") {
    std::mt19937_64 rng(17);
    for (auto alg : {algebra_A(1, P), dual_numbers_extension(algebra_A(1, P)), dual_numbers_extension(algebra_B(1, P))}) {
        for (int t = 0; t < 12; ++t) {
            Rep m = random_module(alg, rng), n = random_module(alg, rng);
            auto h = hom_space(m, n);
            CHECK(h.size() == hom_space_direct(m, n).size());
            for (const auto& f : h) CHECK(is_hom(m, n, f));
            for (int v = 0; v < alg->num_vertices(); ++v) CHECK(hom_dim(projective(alg, v), m) == m.dims[v]);
        }
    }
}

TEST_CASE("radical, top and projective cover") {
    auto a = algebra_A(1, P);
    CHECK(radical(simple(a, 2)).rep.is_zero());
    CHECK(radical(projective(a, 1)).rep.dims == std::vector<int>{1, 0, 0, 1});
    auto k = dual_numbers();
    Rep keps = projective(k, 0);
    CHECK(top(keps).rep.dims == std::vector<int>{1});
    Cover c = projective_cover(simple(k, 0));
    CHECK(is_isomorphic(c.proj, keps));
    CHECK(is_isomorphic(kernel(c.proj, simple(k, 0), c.epi).rep, simple(k, 0)));
    Cover cp = projective_cover(projective(a, 1));
    CHECK(cp.verts == std::vector<int>{1});
    CHECK(is_iso(cp.epi));
}

TEST_CASE("cover kernels lie in the radical") {
    std::mt19937_64 rng(3);
    auto lam = dual_numbers_extension(algebra_A(1, P));
    for (int t = 0; t < 10; ++t) {
        Rep m = random_module(lam, rng);
        Cover c = projective_cover(m);
        CHECK(is_hom(c.proj, m, c.epi));
        Sub k = kernel(c.proj, m, c.epi);
        auto rad = radical_spaces(c.proj);
        for (int v = 0; v < lam->num_vertices(); ++v) CHECK(in_span(rad[v], k.incl.at[v]));
    }
}

TEST_CASE("syzygies") {
    auto k = dual_numbers();
    CHECK(syzygy(projective(k, 0), 1).is_zero());
    for (int j = 0; j <= 4; ++j) CHECK(is_isomorphic(syzygy(simple(k, 0), j), simple(k, 0)));
    auto a = algebra_A(1, P);
    CHECK(is_isomorphic(syzygy(simple(a, 1), 1), simple(a, 0)) == false);
    // rad P_1 = S_0 + S_3 and S_0 = P_0 is projective
    CHECK(syzygy(simple(a, 1), 1).dims == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("ext groups") {
    auto a = algebra_A(1, P);
    CHECK(ext_dim(simple(a, 1), simple(a, 0), 1) == 1);
    CHECK(ext_dim(simple(a, 1), simple(a, 3), 1) == 1);
    CHECK(ext_dim(simple(a, 1), simple(a, 2), 2) == 1);
    for (int i = 1; i <= 3; ++i) CHECK(ext_dim(projective(a, 1), simple(a, 1), i) == 0);
    auto k = dual_numbers();
    for (int i = 0; i <= 5; ++i) CHECK(ext_dim(simple(k, 0), simple(k, 0), i) == 1);
    std::mt19937_64 rng(8);
    auto lam = dual_numbers_extension(a);
    for (int t = 0; t < 8; ++t) {
        Rep m = random_module(lam, rng), n = random_module(lam, rng);
        for (int i = 1; i <= 2; ++i) CHECK(ext_dim_with_length(m, n, i, i + 1) == ext_dim_with_length(m, n, i, i + 4));
    }
}

TEST_CASE("opposite algebra and duality") {
    auto a = algebra_A(1, P);
    auto op = a->opposite();
    CHECK(op->opposite().get() == a.get());
    CHECK(op->dim() == a->dim());
    for (int v = 0; v < 4; ++v) {
        Rep ds = dual(simple(a, v));
        CHECK(is_isomorphic(ds, simple(op, v)));
        Rep dp = dual(projective(a, v));
        CHECK_NOTHROW(dp.validate());
        for (int u = 0; u < 4; ++u) {
            CHECK(hom_dim(simple(op, u), dp) == (u == v ? 1 : 0));
            CHECK(ext_dim(simple(op, u), dp, 1) == 0);
        }
        CHECK(is_isomorphic(dual(dual(projective(a, v))), projective(a, v)));
    }
}

TEST_CASE("transpose") {
    auto a = algebra_A(1, P);
    for (int v = 0; v < 4; ++v) CHECK(transpose(projective(a, v)).is_zero());
    auto k = dual_numbers();
    Rep tk = transpose(simple(k, 0));
    CHECK(is_isomorphic(tk, simple(k->opposite(), 0)));
    Rep s1 = simple(a, 1);
    Rep tt = transpose(transpose(s1));
    CHECK(tt.alg.get() == a.get());
    CHECK(is_isomorphic(tt, s1));
}

TEST_CASE("decomposition") {
    auto a = algebra_A(1, P);
    auto d1 = decompose(projective(a, 1));
    CHECK(d1.parts.size() == 1);
    auto d2 = decompose(direct_sum_rep({projective(a, 1), projective(a, 1)}));
    REQUIRE(d2.parts.size() == 2);
    for (const auto& part : d2.parts) CHECK(is_isomorphic(part, projective(a, 1)));
    auto lam = dual_numbers_extension(a);
    auto d3 = decompose(projective(lam, 1));
    REQUIRE(d3.parts.size() == 1);
    CHECK(d3.parts[0].total_dim() == 6);
    std::mt19937_64 rng(44);
    for (int t = 0; t < 10; ++t) {
        Rep m = direct_sum_rep({random_module(lam, rng), random_module(lam, rng)});
        auto d = decompose(m, 5 + t);
        std::vector<int> dims(lam->num_vertices(), 0);
        for (const auto& part : d.parts) {
            CHECK(has_local_endomorphisms(part));
            for (int v = 0; v < lam->num_vertices(); ++v) dims[v] += part.dims[v];
        }
        CHECK(dims == m.dims);
        CHECK(is_isomorphic(direct_sum_rep(d.parts), m));
    }
}

TEST_CASE("isomorphism testing") {
    auto a = algebra_A(1, P);
    CHECK(is_isomorphic(simple(a, 0), simple(a, 0)));
    CHECK_FALSE(is_isomorphic(simple(a, 0), simple(a, 1)));
    auto b = algebra_B(1, P);
    auto gamma = dual_numbers_extension(b);
    for (int v = 0; v < 4; ++v) CHECK(is_isomorphic(tensor_dual_numbers(gamma, projective(b, v)), projective(gamma, v)));
}

TEST_CASE("projective summands are stripped deterministically") {
    auto lam = dual_numbers_extension(algebra_A(1, P));
    Rep x = simple(lam, 2);
    Rep m = direct_sum_rep({projective(lam, 1), x, projective(lam, 0)});
    auto s = strip_projectives(m);
    CHECK(s.removed == std::vector<int>{0, 1});
    CHECK(is_isomorphic(s.core, x));
    CHECK(equal(compose(s.proj, s.incl), identity_hom(s.core)));
    CHECK(is_projective(projective(lam, 3)));
    CHECK_FALSE(is_projective(x));
}
