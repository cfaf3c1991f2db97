#include "doctest.h"

#include <random>

#include "potts/poly.hpp"

using namespace potts;
using namespace potts::poly;

namespace {

// Product of g over the roots of f, for f split over F: Res(f, g) = lc(f)^deg g * prod g(r).
Elem resultant_by_roots(const Poly& f, const Poly& g) {
    auto split = roots_over_splitting_field(f, 12);
    Poly G = embed(g, split.field);
    Elem prod = embed(f.lead(), split.field).pow(static_cast<std::uint64_t>(g.degree()));
    for (const auto& r : split.roots) prod *= G(r);
    return prod;
}

Poly random_poly(Field f, int deg, std::mt19937_64& rng) {
    std::vector<Elem> c;
    for (int i = 0; i <= deg; ++i) c.push_back(f.from_code(rng() % f.order()));
    if (c.back().is_zero()) c.back() = f.one();
    return Poly(f, c);
}

IntPoly laurent_identity_lhs(const IntPoly& psi) {
    // t^h psi(t + 1/t) as an ordinary polynomial of degree 2h
    const std::size_t h = psi.size() - 1;
    IntPoly acc(2 * h + 1, 0);
    IntPoly u_pow{1};  // (t^2 + 1)^k t^(h-k) accumulates coefficient psi_k
    for (std::size_t k = 0; k <= h; ++k) {
        for (std::size_t i = 0; i < u_pow.size(); ++i) acc[i + (h - k)] += psi[k] * u_pow[i];
        u_pow = int_mul(u_pow, {1, 0, 1});
    }
    return acc;
}

}  // namespace

TEST_CASE("resultant examples") {
    Field f7 = ff::make_field(7, 1);
    Elem a = f7.from_int(2), b = f7.from_int(5);
    CHECK(resultant(Poly(f7, {-a, f7.one()}), Poly(f7, {-b, f7.one()})) == a - b);
    Poly x2m1 = Poly::from_ints(f7, {-1, 0, 1});
    Poly x2p1 = Poly::from_ints(f7, {1, 0, 1});
    CHECK(resultant(x2m1, x2p1) == f7.from_int(4));
    CHECK(resultant(x2m1, x2m1).is_zero());
    Field f9 = ff::make_field(3, 2);
    CHECK_THROWS_AS(resultant(x2m1, Poly::from_ints(f9, {1, 1})), Error);
}

TEST_CASE("resultant against the root-product oracle and multiplicativity") {
    std::mt19937_64 rng(7);
    for (auto spec : {"7", "11", "3^2"}) {
        Field f = ff::parse_field_spec(spec);
        for (int trial = 0; trial < 40; ++trial) {
            Poly F = random_poly(f, 1 + static_cast<int>(rng() % 4), rng);
            Poly G = random_poly(f, 1 + static_cast<int>(rng() % 4), rng);
            Poly H = random_poly(f, 1 + static_cast<int>(rng() % 3), rng);
            CHECK(embed(resultant(F, G), resultant_by_roots(F, G).field()) == resultant_by_roots(F, G));
            CHECK(resultant(F * G, H) == resultant(F, H) * resultant(G, H));
        }
    }
}

TEST_CASE("division and gcd") {
    std::mt19937_64 rng(3);
    Field f = ff::make_field(13, 1);
    for (int trial = 0; trial < 50; ++trial) {
        Poly a = random_poly(f, 6, rng), b = random_poly(f, 3, rng), c = random_poly(f, 2, rng);
        auto dm = divmod(a, b);
        CHECK(dm.quotient * b + dm.remainder == a);
        CHECK(dm.remainder.degree() < b.degree());
        Poly g = gcd(a * c, b * c);
        CHECK(divmod(g, monic(c)).remainder.is_zero());
    }
}

TEST_CASE("roots and splitting fields") {
    Field f3 = ff::make_field(3, 1);
    auto s = roots_over_splitting_field(Poly::from_ints(f3, {1, 0, 1}));
    CHECK(s.field.order() == 9);
    CHECK(s.roots.size() == 2);
    for (const auto& r : s.roots) CHECK((r * r + s.field.one()).is_zero());

    Field f7 = ff::make_field(7, 1);
    auto t = roots_over_splitting_field(Poly::from_ints(f7, {-1, 0, 1}));
    CHECK(t.field == f7);
    CHECK(t.roots == std::vector<Elem>{f7.from_int(1), f7.from_int(6)});

    auto u = roots_over_splitting_field(Poly::from_ints(f7, {-1, 0, 0, 0, 0, 0, 1}));
    CHECK(u.field == f7);
    CHECK(u.roots.size() == 6);

    // multiplicities
    Poly sq = Poly::from_ints(f7, {1, 2, 1});
    CHECK(roots(sq) == std::vector<Elem>{f7.from_int(6), f7.from_int(6)});

    CHECK(splitting_degree(Poly::from_ints(ff::make_field(5, 1), {-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1})) == 5);

    try {
        roots_over_splitting_field(Poly::from_ints(f3, {-1, -1, 0, 1}), 2);
        FAIL("expected SplittingCapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SplittingCapExceeded);
    }
}

TEST_CASE("splitting degree agrees with an incremental search") {
    std::mt19937_64 rng(11);
    Field f = ff::make_field(5, 1);
    for (int trial = 0; trial < 30; ++trial) {
        Poly a = random_poly(f, 1 + static_cast<int>(rng() % 5), rng);
        unsigned m = 1;
        while (static_cast<int>(roots(embed(a, extension_field(f, m))).size()) != a.degree()) ++m;
        CHECK(splitting_degree(a) == m);
    }
}

TEST_CASE("embedding is a ring homomorphism") {
    Field small = ff::make_field(3, 2);
    Field big = ff::make_field(3, 4);
    for (std::uint64_t i = 0; i < 9; ++i)
        for (std::uint64_t j = 0; j < 9; ++j) {
            Elem a = small.from_code(i), b = small.from_code(j);
            CHECK(embed(a * b, big) == embed(a, big) * embed(b, big));
            CHECK(embed(a + b, big) == embed(a, big) + embed(b, big));
        }
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_phi(1) == IntPoly{-1, 1});
    CHECK(cyclotomic_phi(3) == IntPoly{1, 1, 1});
    IntPoly p15 = cyclotomic_phi(15);
    CHECK(p15.size() == 9);
    std::int64_t at1 = 0;
    for (auto c : p15) at1 += c;
    CHECK(at1 == 1);
    for (unsigned n = 1; n <= 45; ++n) {
        IntPoly prod{1};
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) prod = int_mul(prod, cyclotomic_phi(d));
        IntPoly expect(n + 1, 0);
        expect[0] = -1;
        expect[n] = 1;
        CHECK(prod == expect);
        CHECK(cyclotomic_phi(n).size() == euler_phi(n) + 1);
    }
}

TEST_CASE("half-trace polynomials") {
    CHECK(half_trace_psi(3) == IntPoly{1, 1});
    CHECK(half_trace_psi(5) == IntPoly{-1, 1, 1});
    CHECK(half_trace_psi(7) == IntPoly{-1, -2, 1, 1});
    for (unsigned n = 3; n <= 45; n += 2) CHECK(laurent_identity_lhs(half_trace_psi(n)) == cyclotomic_phi(n));
    CHECK_THROWS_AS(half_trace_psi(4), Error);

    CHECK(half_trace_chi(3) == DyadicPoly{Dyadic(1, 1), Dyadic(1)});
    CHECK(half_trace_chi(5) == DyadicPoly{Dyadic(-1, 2), Dyadic(1, 1), Dyadic(1)});
    CHECK(Dyadic(2, 1) == Dyadic(1));
    CHECK(Dyadic(-1, 2).to_string() == "-1/2^2");
    CHECK(parse_dyadic("3/2^4") == Dyadic(3, 4));
}

TEST_CASE("reduction mod p") {
    Field f5 = ff::make_field(5, 1);
    CHECK(reduce_mod_p(half_trace_chi(5), 5) == Poly::from_ints(f5, {1, 3, 1}));
    Field f3 = ff::make_field(3, 1);
    CHECK(reduce_mod_p(half_trace_chi(3), 3) == Poly::from_ints(f3, {2, 1}));
    Poly c57 = reduce_mod_p(half_trace_chi(5), 7);
    CHECK(gcd(c57, derivative(c57)).degree() == 0);
    CHECK_THROWS_AS(reduce_mod_p(half_trace_chi(5), 2), Error);

    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
        Field f = ff::make_field(p, 1);
        Poly expect = pow(Poly::from_ints(f, {-1, 1}), static_cast<unsigned>((p - 1) / 2));
        CHECK(reduce_mod_p(half_trace_chi(static_cast<unsigned>(p)), p) == expect);
    }
}
