#include <random>

#include "complex_gen.hpp"
#include "doctest.h"
#include "stabfun/corpus.hpp"
#include "stabfun/functor.hpp"

using namespace sf;

namespace {

constexpr elem P = 101;

const Example& ex1() {
    static const Example ex = worked_example(1, P);
    return ex;
}

bool same(const AlgPtr& alg, const ProjComplex& a, const ProjComplex& b) {
    ProjComplex x = proj_trim(a), y = proj_trim(b);
    if (x.lo != y.lo || x.verts != y.verts) return false;
    for (std::size_t k = 0; k < x.diffs.size(); ++k)
        if (!is_zero(alg, add(alg, x.diffs[k], scale(alg, y.diffs[k], P - 1)))) return false;
    return true;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("identity data acts as the identity") {
    std::mt19937_64 rng(1);
    auto lam = dual_numbers_extension(algebra_A(1, P));
    FunctorData id = identity_functor(lam);
    CHECK_NOTHROW(id.validate());
    CHECK(is_non_negative(id).ok);
    for (int t = 0; t < 5; ++t) {
        ProjComplex c = gen::random_proj_complex(lam, rng, -1, 3);
        CHECK(same(lam, apply(id, c), c));
    }
    Rep zero = zero_rep(lam);
    CHECK(apply_to_module(id, zero, -3).fx.empty());
}

TEST_CASE("non-negativity") {
    auto a = algebra_A(1, P);
    CHECK(is_non_negative(omega_functor(a, 2)).ok);
    FunctorData neg = shift_down(identity_functor(a), -1);
    NonNegReport r = is_non_negative(neg);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.degrees);
    CHECK(is_non_negative(ex1().F).ok);
    CHECK(is_non_negative(ex1().Fp).ok);
    CHECK(is_non_negative(ex1().G).ok);
    CHECK(is_non_negative(ex1().Gp).ok);
}

TEST_CASE("the worked functor on projectives") {
    const Example& ex = ex1();
    for (int v = 0; v < 4; ++v) {
        ProjComplex img = apply(ex.F, proj_stalk(ex.B, {v}, 0));
        if (v % 2) {
            CHECK(img.lo == 1);
            CHECK(img.verts == std::vector<std::vector<int>>{{v}});
        } else {
            CHECK(img.lo == 0);
            CHECK(img.verts == std::vector<std::vector<int>>{{v}, {v + 1}});
            Rep h = homology(materialize(img), 1);
            CHECK(h.dims == (v == 0 ? std::vector<int>{0, 1, 0, 1} : std::vector<int>{0, 0, 0, 1}));
        }
    }
    Rep q0 = projective(ex.Gamma, 0);
    ModuleImage mi = apply_to_module(ex.Fp, q0, -3);
    CHECK(mi.fx.lo == 0);
    CHECK(mi.fx.verts == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(materialize(mi.fx).term(0).total_dim() == 2);
}

TEST_CASE("relations hold strictly and composition with the identity") {
    const Example& ex = ex1();
    for (const FunctorData* f : {&ex.F, &ex.G, &ex.Fp, &ex.Gp}) CHECK_NOTHROW(f->validate());
    FunctorData left = compose(identity_functor(ex.B), ex.F), right = compose(ex.F, identity_functor(ex.A));
    CHECK_NOTHROW(left.validate());
    CHECK_NOTHROW(right.validate());
    for (int v = 0; v < 4; ++v) {
        CHECK(same(ex.A, left.images[v], ex.F.images[v]));
        CHECK(same(ex.A, right.images[v], ex.F.images[v]));
    }
    FunctorData fg = compose(ex.Fp, ex.Gp);
    CHECK_NOTHROW(fg.validate());
    CHECK(is_non_negative(fg).ok);
    CHECK(fg.width <= ex.Fp.width + ex.Gp.width);
}

TEST_CASE("quasi-inverse data undoes the worked functor up to a shift") {
    const Example& ex = ex1();
    CHECK(ex.g_shift == ex.F.width);
    CHECK(ex.G.width == 1);
    for (int v = 0; v < 4; ++v) {
        Complex c = materialize(apply(ex.G, ex.F.images[v]));
        for (int i = c.lo; i <= c.hi(); ++i) {
            auto h = homology_dims(c, i);
            if (i == ex.g_shift)
                CHECK(h == projective(ex.B, v).dims);
            else
                CHECK(h == std::vector<int>(4, 0));
        }
        Complex d = materialize(apply(ex.F, ex.G.images[v]));
        for (int i = d.lo; i <= d.hi(); ++i) {
            auto h = homology_dims(d, i);
            if (i == ex.g_shift)
                CHECK(h == projective(ex.A, v).dims);
            else
                CHECK(h == std::vector<int>(4, 0));
        }
    }
}

TEST_CASE("minimised quasi-inverse images sit in [-width, 0]") {
    const Example& ex = ex1();
    FunctorData h = hom_functor(ex.F);
    for (const auto& im : h.images) {
        ProjComplex m = proj_trim(minimize(im).p);
        CHECK(m.lo >= -ex.F.width);
        CHECK(m.hi() <= 0);
    }
}

TEST_CASE("images are uniformly bounded") {
    std::mt19937_64 rng(2);
    const Example& ex = ex1();
    for (int t = 0; t < 8; ++t) {
        ProjComplex c = gen::random_proj_complex(ex.Gamma, rng, 0, 3);
        Complex img = materialize(apply(ex.Fp, c));
        for (int i = img.lo; i <= img.hi(); ++i) {
            auto h = homology_dims(img, i);
            bool nz = std::any_of(h.begin(), h.end(), [](int d) { return d != 0; });
            if (nz) {
                CHECK(i >= c.lo);
                CHECK(i <= c.hi() + ex.Fp.width);
            }
        }
    }
}

TEST_CASE("cones go to cones") {
    std::mt19937_64 rng(3);
    const Example& ex = ex1();
    for (int t = 0; t < 6; ++t) {
        ProjComplex x = gen::random_proj_complex(ex.Gamma, rng, 0, 2);
        ProjComplex y = gen::random_proj_complex(ex.Gamma, rng, 0, 2);
        auto basis = hom_K_basis(x, y, 0);
        if (basis.empty()) continue;
        ProjChainMap g = basis[rng() % basis.size()];
        ProjComplex lhs = minimize(apply(ex.Fp, proj_cone(g, x, y).c)).p;
        ProjComplex fx = apply(ex.Fp, x), fy = apply(ex.Fp, y);
        ProjComplex rhs = minimize(proj_cone(apply(ex.Fp, g, x, y), fx, fy).c).p;
        lhs = proj_trim(lhs);
        rhs = proj_trim(rhs);
        CHECK(lhs.lo == rhs.lo);
        REQUIRE(lhs.verts.size() == rhs.verts.size());
        for (std::size_t k = 0; k < lhs.verts.size(); ++k) CHECK(sorted(lhs.verts[k]) == sorted(rhs.verts[k]));
        Complex ml = materialize(lhs), mr = materialize(rhs);
        for (int i = ml.lo; i <= ml.hi(); ++i) CHECK(homology_dims(ml, i) == homology_dims(mr, i));
    }
}

TEST_CASE("maps of modules") {
    std::mt19937_64 rng(4);
    const Example& ex = ex1();
    const int w = -4;
    for (int t = 0; t < 4; ++t) {
        Rep x = random_module(ex.Gamma, rng);
        MapImage id = apply_to_map(ex.Fp, identity_hom(x), x, x, w);
        ProjChainMap diff = proj_add(id.image, proj_scale(proj_identity(id.x.fx), P - 1, id.x.fx, id.x.fx), id.x.fx, id.x.fx);
        CHECK(is_null_homotopic(diff, id.x.fx, id.x.fx));
        Rep y = random_module(ex.Gamma, rng);
        MapImage z = apply_to_map(ex.Fp, zero_hom(x, y), x, y, w);
        CHECK(is_null_homotopic(z.image, z.x.fx, z.y.fx));
    }
    for (int v = 0; v < 4; ++v) {
        Rep pv = projective(ex.A, v);
        Sub rad = radical(pv);
        if (rad.rep.is_zero()) continue;
        MapImage mi = apply_to_map(ex.G, rad.incl, rad.rep, pv, w);
        Complex c = materialize(proj_cone(mi.image, mi.x.fx, mi.y.fx).c);
        Rep s = top(pv).rep;
        Complex fs = materialize(apply_to_module(ex.G, s, w).fx);
        for (int i = w + ex.G.width + 2; i <= 3; ++i) CHECK(homology_dims(c, i) == homology_dims(fs, i));
    }
}

TEST_CASE("tilting checks") {
    auto a = algebra_A(1, P);
    std::vector<ProjComplex> projs;
    for (int v = 0; v < 4; ++v) projs.push_back(proj_stalk(a, {v}, 0));
    TiltingReport r = check_tilting(projs, 0);
    CHECK(r.self_orthogonal);
    CHECK(r.generates == Generation::Yes);
    CHECK(r.rounds == 0);
    TiltingReport t = check_tilting(ex1().tilting, 2);
    CHECK(t.self_orthogonal);
    CHECK(t.generates == Generation::Yes);
    auto two = path_algebra_linear(2, P);
    TiltingReport one = check_tilting({proj_stalk(two, {0}, 0)}, 2);
    CHECK(one.self_orthogonal);
    CHECK(one.generates == Generation::Unknown);
    std::vector<ProjComplex> bad = projs;
    bad.push_back(proj_stalk(a, {0}, 1));
    CHECK_FALSE(check_tilting(bad, 0).self_orthogonal);
}

TEST_CASE("endomorphism presentations") {
    auto a = algebra_A(1, P);
    std::vector<ProjComplex> projs;
    for (int v = 0; v < 4; ++v) projs.push_back(proj_stalk(a, {v}, 0));
    EndoPresentation e = endomorphism_presentation(projs, P);
    CHECK(e.dim == a->dim());
    REQUIRE(e.algebra);
    CHECK((*e.algebra)->dim() == a->dim());
    for (const auto& ar : a->quiver().arrows) CHECK(e.arrows[ar.src][ar.tgt] == 1);
    CHECK(e.relations >= 1);
    EndoPresentation t = endomorphism_presentation(ex1().tilting, P);
    CHECK(t.dim == 10);
    REQUIRE(t.algebra);
    for (int j = 0; j < 3; ++j) CHECK(t.arrows[j][j + 1] == 1);
    int total = 0;
    for (auto& row : t.arrows)
        for (int c : row) total += c;
    CHECK(total == 3);
    CHECK(t.relations == 0);
    auto k = dual_numbers_extension(one_vertex(P));
    EndoPresentation l = endomorphism_presentation({proj_stalk(k, {0}, 0)}, P);
    CHECK(l.arrows.size() == 1);
    CHECK(l.dim == 2);
    EndoPresentation nb = endomorphism_presentation({proj_stalk(a, {1}, 0), proj_stalk(a, {1}, 2)}, P);
    CHECK(nb.basic);
    EndoPresentation dup = endomorphism_presentation({proj_stalk(a, {1}, 0), proj_stalk(a, {1}, 0)}, P);
    CHECK_FALSE(dup.basic);
}

TEST_CASE("faithfulness on the tilting summands") {
    const Example& ex = ex1();
    for (int v = 0; v < 4; ++v)
        for (int w = 0; w < 4; ++w)
            for (int n = -2; n <= 2; ++n) {
                int expect = n == 0 ? hom_dim(projective(ex.B, v), projective(ex.B, w)) : 0;
                CHECK(hom_K(ex.tilting[v], ex.tilting[w], n) == expect);
            }
}
