#include "doctest.h"

#include <random>

#include "potts/curve.hpp"
#include "potts/wild_norm.hpp"

using namespace potts;
using namespace potts::wild;

namespace {

NormContext small_ctx() {
    Field f7 = ff::make_field(7, 1);
    return NormContext(3, f7.from_int(2), f7.one(), f7.one(), f7.one(), f7.from_int(3));
}

NormContext random_ctx(unsigned p, const Field& F, std::mt19937_64& rng) {
    const auto ts = roots_of_order_p(p, F);
    auto pick = [&] { return F.from_code(rng() % F.order()); };
    Elem U = F.zero();
    while (U.is_zero()) U = pick();
    return NormContext(p, ts[rng() % ts.size()], pick(), U, pick(), pick());
}

ErrorCode code_of(void (*fn)()) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvariantViolation;
}

}  // namespace

TEST_CASE("context validation") {
    Field f7 = ff::make_field(7, 1);
    CHECK_THROWS_AS(NormContext(3, f7.from_int(3), f7.one(), f7.one(), f7.zero(), f7.zero()), Error);
    Field f3 = ff::make_field(3, 1);
    CHECK_THROWS_AS(NormContext(3, f3.one(), f3.zero(), f3.one(), f3.zero(), f3.zero()), Error);
    CHECK_THROWS_AS(NormContext(3, f7.from_int(2), f7.one(), f7.zero(), f7.zero(), f7.zero()), Error);
    CHECK_NOTHROW(NormContext(3, f3.one(), f3.one(), f3.one(), f3.zero(), f3.zero()));
}

TEST_CASE("partial sums and norms") {
    auto ctx = small_ctx();
    Field F = ctx.field();
    CHECK(partial_sum(ctx, 0).is_zero());
    CHECK(partial_sum(ctx, 2) == F.from_int(3));
    CHECK(code_of([] { partial_sum(small_ctx(), 4); }) == ErrorCode::IndexOutOfRange);
    CHECK(norm_poly(ctx) == Poly::from_ints(F, {0, 3, 3, 1}));

    Field f3 = ff::make_field(3, 1);
    NormContext c1(3, f3.one(), f3.one(), f3.one(), f3.zero(), f3.zero());
    CHECK(norm_poly(c1) == Poly::from_ints(f3, {0, -1, 0, 1}));
    for (unsigned i = 0; i <= 3; ++i) CHECK(partial_sum(c1, i) == f3.from_int(i));
    CHECK(omega(c1) == f3.from_int(2));
    CHECK(code_of([] {
              Field f = ff::make_field(3, 1);
              omega_checked(NormContext(3, f.one(), f.one(), f.one(), f.zero(), f.zero()));
          }) == ErrorCode::TEqualsOne);

    NormContext c0(3, F.from_int(2), F.zero(), F.one(), F.zero(), F.zero());
    CHECK(norm_poly(c0) == Poly::monomial(F.one(), 3));
}

TEST_CASE("omega identity, exhaustive over t") {
    CHECK(omega(small_ctx()) == small_ctx().field().from_int(3));
    for (auto [p, spec] : {std::pair{3u, "7"}, std::pair{3u, "13"}, std::pair{5u, "11"}, std::pair{5u, "31"},
                           std::pair{7u, "29"}, std::pair{7u, "43"}}) {
        Field F = ff::parse_field_spec(spec);
        for (const auto& t : roots_of_order_p(p, F)) {
            NormContext ctx(p, t, F.one(), F.one(), F.zero(), F.zero());
            // oracle: product of the partial sums, recomputed from scratch
            Elem w = F.one();
            for (unsigned i = 1; i < p; ++i) {
                Elem s = F.zero();
                for (unsigned k = 0; k < i; ++k) s = s + t.pow(static_cast<std::uint64_t>(k));
                w = w * s;
            }
            CHECK(omega_checked(ctx) == w);
            CHECK(w * (t - F.one()).pow(static_cast<std::uint64_t>(p - 1)) == F.from_int(p));
        }
    }
}

TEST_CASE("H, delta and j on the worked example") {
    auto ctx = small_ctx();
    Field F = ctx.field();
    auto hd = build_H_delta(ctx);
    CHECK(hd.delta == F.from_int(3));
    CHECK(hd.H.degree() == 6);
    CHECK(wild_j(ctx) == F.one());
    auto r = resultant_identity(ctx);
    CHECK(r.holds);
    CHECK(r.rhs == -(F.from_int(3).pow(6) * F.from_int(9) * F.from_int(-11).pow(3)));
    // delta is the homogeneous evaluation H(-psi, t - 1)
    Elem acc = F.zero();
    for (std::size_t i = 0; i < hd.H.coeffs().size(); ++i)
        acc = acc + hd.H.coeff(i) * (-ctx.psi()).pow(static_cast<std::uint64_t>(i)) *
                        (ctx.t() - F.one()).pow(static_cast<std::uint64_t>(6 - i));
    CHECK(acc == hd.delta);
    NormContext sing(3, F.from_int(2), F.one(), F.one(), F.from_int(2), F.one());
    CHECK_THROWS_AS(wild_j(sing), Error);
}

TEST_CASE("resultant identity on random contexts") {
    std::mt19937_64 rng(0x5eed);
    for (auto [p, spec] : {std::pair{3u, "7"}, std::pair{3u, "31"}, std::pair{5u, "11"}, std::pair{7u, "29"}}) {
        Field F = ff::parse_field_spec(spec);
        int failures = 0;
        for (int trial = 0; trial < 200; ++trial)
            if (!verify_resultant_identity(random_ctx(p, F, rng))) ++failures;
        CHECK(failures == 0);
    }
}

TEST_CASE("specialization to the p-Potts invariant") {
    for (auto spec : {"3", "5", "3^2"}) {
        Field F = ff::parse_field_spec(spec);
        const unsigned p = static_cast<unsigned>(F.characteristic());
        for (std::uint64_t a = 0; a < F.order(); ++a)
            for (std::uint64_t b = 0; b < F.order(); ++b) {
                Elem A = F.from_code(a), B = F.from_code(b);
                if ((A * A - 4 * B).is_zero()) continue;
                NormContext ctx(p, F.one(), F.one(), F.one(), A, B);
                CHECK(wild_j(ctx) == curve::j_invariant(curve::PottsModel::wild(A, B)));
                CHECK(norm_poly(ctx) == Poly::monomial(F.one(), p) - Poly::x(F));
            }
    }
}

TEST_CASE("tautological family") {
    Field F = ff::make_field(31, 1);
    for (const auto& z : roots_of_order_p(5, F))
        for (std::int64_t l = 0; l < 31; ++l) {
            Elem lam = F.from_int(l);
            if ((lam * lam - 4 * F.one()).is_zero()) continue;
            NormContext ctx(5, z, F.one(), F.one(), lam, F.one());
            const Elem zm1 = z - F.one();
            Elem num = F.one() - lam * zm1.pow(5) + zm1.pow(10);
            if (num.is_zero()) continue;
            CHECK(wild_j(ctx) == num / (lam * lam - 4 * F.one()));
        }
}

TEST_CASE("coordinate changes preserve j") {
    auto ctx = small_ctx();
    Field F = ctx.field();
    auto id = change_coordinates(ctx, Affine{F.one(), F.zero()});
    CHECK(id.context.psi() == ctx.psi());
    CHECK(id.context.A() == ctx.A());
    CHECK(id.context.B() == ctx.B());
    CHECK(id.j_invariant);
    CHECK_THROWS_AS(change_coordinates(ctx, Affine{F.zero(), F.one()}), Error);

    auto sw = change_coordinates(ctx, DeltaSwap{});
    CHECK(sw.context.t() == ctx.t().inv());
    CHECK(sw.delta_product_one);
    CHECK(sw.j_invariant);
    // second Bezout choice: v = psi^-1
    auto sw2 = change_coordinates(ctx, DeltaSwap{F.zero(), ctx.psi().inv()});
    CHECK(sw2.j_invariant);
    CHECK(wild_j(sw2.context) == wild_j(sw.context));
    CHECK_THROWS_AS(change_coordinates(ctx, DeltaSwap{F.one(), F.one()}), Error);

    std::mt19937_64 rng(11);
    for (auto [p, spec] : {std::pair{3u, "7"}, std::pair{5u, "11"}, std::pair{3u, "3"}, std::pair{5u, "5"}}) {
        Field G = ff::parse_field_spec(spec);
        int done = 0;
        for (int trial = 0; trial < 300 && done < 100; ++trial) {
            NormContext c = G.characteristic() == p
                                ? NormContext(p, G.one(), G.from_code(1 + rng() % (G.order() - 1)), G.one(),
                                              G.from_code(rng() % G.order()), G.from_code(rng() % G.order()))
                                : random_ctx(p, G, rng);
            auto hd = build_H_delta(c);
            const Elem disc = c.A() * c.A() - 4 * (c.U() * c.B());
            if (hd.delta.is_zero() || disc.is_zero()) continue;
            Elem al = G.from_code(1 + rng() % (G.order() - 1)), be = G.from_code(rng() % G.order());
            auto r = change_coordinates(c, Affine{al, be});
            CHECK(r.j_invariant);
            CHECK(r.xi.has_value());
            auto s = change_coordinates(c, DeltaSwap{});
            CHECK(s.j_invariant);
            CHECK(s.delta_product_one);
            ++done;
        }
        CHECK(done == 100);
    }
}

TEST_CASE("invariant subspace") {
    auto ctx = small_ctx();
    Field F = ctx.field();
    auto inv = invariant_subspace(ctx);
    CHECK(inv.matches_norm);
    REQUIRE(inv.basis.size() == 2);
    CHECK(inv.basis[0] == Poly::constant(F.one()));
    CHECK(inv.basis[1] == Poly::from_ints(F, {0, 3, 3, 1}));

    Field f5 = ff::make_field(5, 1);
    auto i5 = invariant_subspace(NormContext(5, f5.one(), f5.one(), f5.one(), f5.zero(), f5.zero()));
    CHECK(i5.matches_norm);
    CHECK(i5.basis[1] == Poly::from_ints(f5, {0, -1, 0, 0, 0, 1}));

    auto i0 = invariant_subspace(NormContext(3, F.from_int(2), F.zero(), F.one(), F.zero(), F.zero()));
    CHECK(i0.matches_norm);
    CHECK(i0.basis[1] == Poly::monomial(F.one(), 3));

    std::mt19937_64 rng(3);
    for (auto [p, spec] : {std::pair{3u, "13"}, std::pair{5u, "11"}, std::pair{7u, "29"}}) {
        Field G = ff::parse_field_spec(spec);
        for (int trial = 0; trial < 20; ++trial) CHECK(invariant_subspace_check(random_ctx(p, G, rng)));
    }
}
