#include "doctest.h"

#include <set>

#include "potts/field.hpp"

using namespace potts;
using namespace potts::ff;

namespace {

// Irreducibility by brute force: no root and no monic factor of degree <= s/2.
bool brute_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    const unsigned s = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; d <= s / 2; ++d) {
        std::uint64_t count = ipow(p, d);
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint64_t> g(d + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < d; ++i, c /= p) g[i] = c % p;
            g[d] = 1;
            std::vector<std::uint64_t> r = f;
            for (int k = static_cast<int>(s) - static_cast<int>(d); k >= 0; --k) {
                std::uint64_t lead = r[k + d] % p;
                for (unsigned i = 0; i <= d; ++i) r[k + i] = (r[k + i] + p * p - lead * g[i] % p) % p;
            }
            bool zero = true;
            for (unsigned i = 0; i < d; ++i) zero &= r[i] == 0;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("make_field picks the least irreducible") {
    Field f7 = make_field(7, 1);
    CHECK(f7.order() == 7);
    CHECK(f7.spec() == "7");

    Field f9 = make_field(3, 2);
    CHECK(f9.order() == 9);
    CHECK(f9.spec() == "3^2");
    std::vector<std::uint64_t> mod(f9.modulus().begin(), f9.modulus().end());
    CHECK(brute_irreducible(mod, 3));
    // every monic quadratic with a smaller code is reducible
    std::uint64_t code = mod[0] + 3 * mod[1];
    for (std::uint64_t c = 0; c < code; ++c) CHECK_FALSE(brute_irreducible({c % 3, c / 3, 1}, 3));
    CHECK(mod == std::vector<std::uint64_t>{1, 0, 1});

    CHECK(make_field(3, 2) == f9);
}

TEST_CASE("make_field errors") {
    auto code_of = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvariantViolation;
    };
    CHECK(code_of([] { make_field(2, 1); }) == ErrorCode::EvenCharacteristic);
    CHECK(code_of([] { make_field(9, 1); }) == ErrorCode::NotPrime);
    CHECK(code_of([] { make_field(3, 20); }) == ErrorCode::SizeCapExceeded);
    CHECK(code_of([] { parse_field_spec("12"); }) == ErrorCode::NotPrime);
    CHECK(parse_field_spec("9") == make_field(3, 2));
    CHECK(parse_field_spec("5^2") == make_field(5, 2));
}

TEST_CASE("defining polynomials are irreducible") {
    for (auto [p, s] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {11, 2}}) {
        Field f = make_field(p, s);
        std::vector<std::uint64_t> mod(f.modulus().begin(), f.modulus().end());
        CHECK(brute_irreducible(mod, p));
        CHECK(is_irreducible_mod_p(mod, p));
    }
}

TEST_CASE("element orders") {
    Field f11 = make_field(11, 1);
    Field f7 = make_field(7, 1);
    CHECK(element_order(f11.from_int(3)) == 5);
    CHECK(element_order(f7.one()) == 1);
    CHECK(element_order(f7.from_int(3)) == 6);
    CHECK_THROWS_AS(element_order(f7.zero()), Error);
}

TEST_CASE("roots of unity") {
    Field f7 = make_field(7, 1);
    Field f11 = make_field(11, 1);
    Elem w = primitive_root_of_unity(f7, 3);
    CHECK(element_order(w) == 3);
    CHECK(w == f7.from_int(2));
    CHECK(element_order(primitive_root_of_unity(f11, 5)) == 5);
    try {
        primitive_root_of_unity(f7, 5);
        FAIL("expected NoSuchRoot");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSuchRoot);
    }
}

TEST_CASE("square roots") {
    Field f7 = make_field(7, 1);
    CHECK(square_root(f7.from_int(2)) == f7.from_int(3));
    CHECK(square_root(f7.zero()) == f7.zero());
    CHECK_FALSE(square_root(f7.from_int(3)).has_value());
}

TEST_CASE("field axioms and orders, exhaustive for q <= 81") {
    for (auto [p, s] : std::vector<std::pair<std::uint64_t, unsigned>>{
             {3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}, {7, 2}, {3, 4}}) {
        Field f = make_field(p, s);
        const std::uint64_t q = f.order();
        std::uint64_t squares = 0;
        for (std::uint64_t c = 1; c < q; ++c) {
            Elem x = f.from_code(c);
            CHECK(x.pow(q - 1).is_one());
            CHECK((x * x.inv()).is_one());
            std::uint64_t naive = 1;
            Elem y = x;
            while (!y.is_one()) {
                y *= x;
                ++naive;
            }
            CHECK(element_order(x) == naive);
            if (auto r = square_root(x)) {
                CHECK(*r * *r == x);
                CHECK(*r <= -*r);
                ++squares;
            }
        }
        CHECK(squares == (q - 1) / 2);
        Elem g = f.generator();
        CHECK(element_order(g) == q - 1);
        for (std::uint64_t c = 1; c < g.code(); ++c) CHECK(element_order(f.from_code(c)) < q - 1);
    }
}

TEST_CASE("distributivity on random triples") {
    Field f = make_field(5, 3);
    std::uint64_t seed = 12345;
    auto next = [&] {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return f.from_code((seed >> 33) % f.order());
    };
    for (int i = 0; i < 300; ++i) {
        Elem a = next(), b = next(), c = next();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
        if (!c.is_zero()) CHECK(a / c * c == a);
    }
}

TEST_CASE("large internal fields use slow arithmetic") {
    Field big = make_field(5, 10, kArithmeticCap);
    Elem g = big.from_code(5);
    CHECK(g.pow(big.order() - 1).is_one());
    CHECK((g * g.inv()).is_one());
}
