#include "doctest.h"

#include <random>

#include "potts/picard.hpp"

using namespace potts;
using namespace potts::picard;

TEST_CASE("Hodge characters") {
    Field f7 = ff::make_field(7, 1);
    auto h3 = hodge_characters(3, f7);
    CHECK(h3.characters == std::vector<CharacterPair>{{1, 1}, {1, 2}});
    CHECK(h3.sigma_wedge == -f7.one());
    CHECK(h3.tau_wedge == f7.one());
    CHECK(h3.phi == -ff::primitive_root_of_unity(f7, 3));
    CHECK(ff::element_order(h3.phi) == 6);

    Field f11 = ff::make_field(11, 1);
    auto h5 = hodge_characters(5, f11);
    CHECK(h5.sigma_wedge == f11.one());
    for (unsigned i = 1; i < 5; ++i) {
        CHECK(h5.characters[i - 1] == CharacterPair{1, i});
        CHECK(h5.tau_eigen[i - 1] == -f11.one());
        CHECK(h5.sigma_eigen[i - 1] == h5.phi.pow(static_cast<std::uint64_t>(i)));
    }
    for (auto [N, spec] : {std::pair{3u, "13"}, std::pair{5u, "31"}, std::pair{7u, "29"}, std::pair{9u, "19"}}) {
        auto h = hodge_characters(N, ff::parse_field_spec(spec));
        const Field F = h.phi.field();
        CHECK(h.sigma_wedge == (((N - 1) / 2) % 2 ? -F.one() : F.one()));
        CHECK(h.tau_wedge == F.one());
    }
    CHECK_THROWS_AS(hodge_characters(5, f7), Error);
    CHECK_THROWS_AS(hodge_characters(4, f7), Error);
}

TEST_CASE("generated subgroups of Z/2 x Z/2N") {
    CHECK(subgroup_generated({{1, 1}, {1, 2}}, 3).order() == 12);
    CHECK(subgroup_generated({}, 3).order() == 1);
    auto g = subgroup_generated({{0, 2}}, 3);
    CHECK(g.order() == 3);
    CHECK(g.contains({0, 4}));
    CHECK_FALSE(g.contains({1, 0}));
    for (unsigned N : {3u, 5u, 7u, 9u}) CHECK(subgroup_generated({{1, 1}, {1, 2}}, N).order() == 4 * N);
    // oracle: |<(e, k)>| = lcm(order of e, 2N / gcd(k, 2N))
    for (unsigned N : {3u, 5u})
        for (unsigned e = 0; e < 2; ++e)
            for (unsigned k = 0; k < 2 * N; ++k) {
                const std::size_t ok = 2 * N / std::gcd(k, 2 * N);
                const std::size_t oe = e ? 2 : 1;
                CHECK(subgroup_generated({{e, k}}, N).order() == std::lcm(ok, oe));
            }
}

TEST_CASE("truncated Laurent units") {
    Field f5 = ff::make_field(5, 1);
    const auto one = TruncLaurent::constant(f5, 2, -3, 3, f5.one());
    auto u = one + TruncLaurent::monomial(f5, 2, -3, 3, f5.one(), 1, 1);
    auto ui = inverse(u);
    CHECK(ui == one - TruncLaurent::monomial(f5, 2, -3, 3, f5.one(), 1, 1));
    CHECK(u * ui == one);
    CHECK(power(u, 5) == one);
    CHECK(u.in_one_plus_zA());

    auto x = TruncLaurent::monomial(f5, 2, -3, 3, f5.one(), 0, 1);
    CHECK(x.is_unit());
    CHECK_FALSE(x.in_one_plus_zA());
    CHECK(inverse(x) == TruncLaurent::monomial(f5, 2, -3, 3, f5.one(), 0, -1));

    auto nonunit = x + one;
    CHECK_FALSE(nonunit.is_unit());
    CHECK_THROWS_AS(inverse(nonunit), Error);
    auto big = TruncLaurent::monomial(f5, 2, -3, 3, f5.one(), 0, 2);
    CHECK_THROWS_AS(big * big, Error);
    CHECK_THROWS_AS(one * TruncLaurent::constant(f5, 3, -3, 3, f5.one()), Error);
}

TEST_CASE("truncated Laurent ring laws") {
    for (auto [p, m] : {std::pair{5u, 2u}, std::pair{7u, 3u}}) {
        Field k = ff::make_field(p, 1);
        std::mt19937_64 rng(p);
        const int W = 12;
        auto rnd_unit = [&] {
            TruncLaurent u = TruncLaurent::monomial(k, m, -W, W, k.from_code(1 + rng() % (p - 1)), 0,
                                                    static_cast<int>(rng() % 3) - 1);
            for (unsigned i = 1; i < m; ++i)
                for (int e = -1; e <= 1; ++e) u.set(i, e, k.from_code(rng() % p));
            return u;
        };
        const auto one = TruncLaurent::constant(k, m, -W, W, k.one());
        for (int trial = 0; trial < 500; ++trial) {
            auto a = rnd_unit(), b = rnd_unit(), c = rnd_unit();
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * inverse(a) == one);
            CHECK(inverse(a * b) == inverse(a) * inverse(b));
        }
    }
}

TEST_CASE("roots of unity in the wild Picard ring") {
    Field f5 = ff::make_field(5, 1);
    auto m2 = mu_n_structure(f5, 2);
    CHECK(m2.verified);
    CHECK(m2.constants.size() == 2);
    CHECK(m2.description == "{1, -1}");
    for (unsigned p : {5u, 7u}) {
        auto mp = mu_n_structure(ff::make_field(p, 1), p);
        CHECK(mp.verified);
        CHECK(mp.samples == 500);
        CHECK(mp.torsion_hits > 0);
        CHECK(mp.description == "1 + zA");
    }
    CHECK_THROWS_AS(mu_n_structure(f5, 3), Error);
}

TEST_CASE("Picard descriptors") {
    auto t5 = picard_descriptor(curve::Variant::Tame, 5, 7);
    CHECK(*t5.order == 20);
    CHECK(t5.name() == "Z/2 x Z/10");
    CHECK(*picard_descriptor(curve::Variant::Tame, 3, 0).order == 12);
    auto w5 = picard_descriptor(curve::Variant::Wild, 5, 5);
    CHECK_FALSE(w5.order.has_value());
    CHECK(w5.nilpotency == 2);
    CHECK(w5.name() == "Z/2 x (1 + zA)");
    CHECK_THROWS_AS(picard_descriptor(curve::Variant::Tame, 5, 5), Error);
    CHECK_THROWS_AS(picard_descriptor(curve::Variant::Wild, 5, 3), Error);
}
