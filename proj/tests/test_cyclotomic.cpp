#include "doctest.h"

#include "potts/cyclotomic.hpp"

using namespace potts;
using namespace potts::cyclo;

TEST_CASE("half-trace ring arithmetic") {
    auto v3 = HalfTraceElem::v(3);
    CHECK(v3 * HalfTraceElem::constant(3, Dyadic(1)) == v3);
    CHECK((v3 + HalfTraceElem::constant(3, Dyadic(1, 1))).is_zero());

    auto v5 = HalfTraceElem::v(5);
    CHECK(v5 * v5 == HalfTraceElem(5, {Dyadic(1, 2), Dyadic(-1, 1)}));
    auto zero = HalfTraceElem::constant(5, Dyadic(0));
    CHECK(zero + v5 == v5);
    CHECK_THROWS_AS(v3 + v5, Error);

    // chi_N(v) = 0 in R_N
    for (unsigned N : {3u, 5u, 7u, 9u, 15u}) {
        auto chi = poly::half_trace_chi(N);
        auto v = HalfTraceElem::v(N);
        auto acc = HalfTraceElem::constant(N, Dyadic(0));
        auto pw = HalfTraceElem::constant(N, Dyadic(1));
        for (const auto& c : chi) {
            acc = acc + pw * HalfTraceElem::constant(N, c);
            pw = pw * v;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("ring laws on random elements") {
    std::uint64_t seed = 42;
    auto rnd = [&] {
        seed = seed * 6364136223846793005ULL + 1;
        return static_cast<std::int64_t>((seed >> 40) % 21) - 10;
    };
    for (unsigned N : {5u, 7u, 9u}) {
        const std::size_t h = poly::euler_phi(N) / 2;
        for (int trial = 0; trial < 50; ++trial) {
            auto make = [&] {
                DyadicPoly c;
                for (std::size_t i = 0; i < h; ++i) c.emplace_back(rnd(), static_cast<unsigned>(rnd() & 3));
                return HalfTraceElem(N, c);
            };
            auto a = make(), b = make(), c = make();
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
        }
    }
}

TEST_CASE("fibres mod p") {
    auto f55 = fibre_mod_p(5, 5);
    CHECK_FALSE(f55.empty);
    CHECK(f55.components == 1);
    CHECK(f55.multiplicity == 2);
    CHECK_FALSE(f55.reduced);
    CHECK(fibre_mod_p(15, 3).empty);
    auto f57 = fibre_mod_p(5, 7);
    CHECK(f57.components == 2);
    CHECK(f57.multiplicity == 1);
    CHECK(f57.reduced);
    CHECK_THROWS_AS(fibre_mod_p(5, 2), Error);
    for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
        auto d = fibre_mod_p(p, p);
        CHECK(d.components * d.multiplicity == poly::euler_phi(p) / 2);
    }
}

TEST_CASE("field points of the half-trace ring") {
    ff::Field f11 = ff::make_field(11, 1);
    auto hs = embed_half_trace(5, f11);
    CHECK(hs.size() == 2);
    // oracle: pair mu_5^* by inversion and halve the sums
    std::vector<ff::Elem> expect;
    for (std::uint64_t c = 1; c < 11; ++c) {
        auto z = f11.from_code(c);
        if (ff::element_order(z) == 5) expect.push_back((z + z.inv()) / f11.from_int(2));
    }
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    CHECK(hs == expect);
    auto chi = poly::reduce_into(poly::half_trace_chi(5), f11);
    for (const auto& h : hs) CHECK(chi(h).is_zero());

    ff::Field f7 = ff::make_field(7, 1);
    CHECK(embed_half_trace(3, f7) == std::vector<ff::Elem>{-f7.from_int(2).inv()});
    CHECK_THROWS_AS(embed_half_trace(5, f7), Error);
    for (auto spec : {"31", "61", "5^4"}) {
        ff::Field f = ff::parse_field_spec(spec);
        for (unsigned N : {3u, 5u, 15u})
            if ((f.order() - 1) % N == 0) CHECK(embed_half_trace(N, f).size() == poly::euler_phi(N) / 2);
    }
}
