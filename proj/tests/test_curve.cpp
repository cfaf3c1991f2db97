#include "doctest.h"

#include <functional>
#include <map>
#include <random>
#include <tuple>

#include "potts/curve.hpp"

using namespace potts;
using namespace potts::curve;

namespace {

std::vector<PottsModel> all_models(Variant v, unsigned N, const Field& F) {
    std::vector<PottsModel> out;
    for (std::uint64_t a = 0; a < F.order(); ++a)
        for (std::uint64_t b = 0; b < F.order(); ++b) {
            Elem A = F.from_code(a), B = F.from_code(b);
            if ((A * A - 4 * B).is_zero()) continue;
            if (v == Variant::Tame) {
                if (B.is_zero()) continue;
                out.push_back(PottsModel::tame(N, A, B));
            } else {
                out.push_back(PottsModel::wild(A, B));
            }
        }
    return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvariantViolation;
}

}  // namespace

TEST_CASE("validation") {
    Field f7 = ff::make_field(7, 1);
    auto bd = validate(PottsModel::tame(3, f7.zero(), -f7.one()));
    CHECK(bd.sigma.size() == 6);
    CHECK(bd.genus == 2);
    CHECK(bd.orbit1.size() == 3);

    Field f3 = ff::make_field(3, 1);
    auto wd = validate(PottsModel::wild(f3.one(), f3.from_int(2)));
    CHECK(wd.sigma.size() == 6);
    CHECK(wd.genus == 2);
    CHECK(wd.alpha.has_value());

    CHECK(code_of([&] { validate(PottsModel::tame(3, f7.from_int(2), f7.one())); }) == ErrorCode::SingularModel);
    CHECK(code_of([&] { validate(PottsModel::tame(3, f7.one(), f7.zero())); }) == ErrorCode::SingularModel);
    CHECK(code_of([&] { validate(PottsModel::tame(3, f3.one(), f3.one())); }) == ErrorCode::WrongCharacteristic);
    CHECK(code_of([&] { validate(PottsModel::tame(4, f7.one(), f7.one())); }) == ErrorCode::EvenN);
}

TEST_CASE("j-invariants and canonical models") {
    Field f7 = ff::make_field(7, 1);
    CHECK(j_invariant(PottsModel::tame(3, f7.zero(), -f7.one())) == -f7.from_int(4).inv());
    Elem j0 = f7.from_int(3);
    auto m = PottsModel::tame(3, f7.one() + 4 * j0, j0 * (f7.one() + 4 * j0));
    CHECK(j_invariant(m) == j0);
    Field f3 = ff::make_field(3, 1);
    CHECK(j_invariant(PottsModel::wild(f3.one(), f3.from_int(2))) == f3.from_int(2));

    auto c = canonical_model_from_j(3, f7, f7.one(), Variant::Tame);
    CHECK(c.A == f7.from_int(5));
    CHECK(c.B == f7.from_int(5));
    auto q = canonical_model_from_j(3, f7, f7.from_int(5), Variant::Tame);
    CHECK(q.A == f7.zero());
    CHECK(q.B == -f7.one());
    Field f9 = ff::make_field(3, 2);
    Elem g = f9.generator();
    auto w = canonical_model_from_j(3, f9, g, Variant::Wild);
    CHECK(w.A.is_zero());
    CHECK(w.B == -(4 * g).inv());
    CHECK(j_invariant(w) == g);

    for (auto spec : {"7", "11", "13", "3^2"}) {
        Field f = ff::parse_field_spec(spec);
        for (std::uint64_t c = 1; c < f.order(); ++c) {
            Elem j = f.from_code(c);
            if (f.characteristic() != 3) CHECK(j_invariant(canonical_model_from_j(5, f, j, Variant::Tame)) == j);
            if (f.characteristic() == 3 || f.characteristic() == 7)
                CHECK(j_invariant(canonical_model_from_j(0, f, j, Variant::Wild)) == j);
        }
    }
}

TEST_CASE("automorphisms and relations") {
    Field f13 = ff::make_field(13, 1);
    auto a = automorphisms(PottsModel::tame(3, f13.zero(), -f13.one()));
    CHECK(a.report.all_pass());
    CHECK(a.report.sampled_points >= 20);

    Field f3 = ff::make_field(3, 1);
    auto w = automorphisms(PottsModel::wild(f3.zero(), f3.from_int(2)));
    CHECK(w.report.all_pass());
    CHECK(w.mu.a == -w.field.one());
    // mu sigma mu^-1 is x -> x - 1
    auto conj = compose(compose(w.mu, w.sigma, 3), inverse(w.mu, 3), 3);
    CHECK(conj.b / conj.a == -w.field.one());

    using Row = std::tuple<Variant, unsigned, const char*>;
    for (auto [v, N, spec] : {Row{Variant::Tame, 3u, "7"}, Row{Variant::Wild, 3u, "3"}, Row{Variant::Tame, 5u, "11"},
                              Row{Variant::Wild, 3u, "3^2"}}) {
        Field f = ff::parse_field_spec(spec);
        int count = 0;
        for (const auto& m : all_models(v, N, f)) {
            if (++count % 7) continue;
            CHECK(automorphisms(m).report.all_pass());
        }
    }
}

TEST_CASE("isomorphism witnesses") {
    Field f7 = ff::make_field(7, 1);
    auto m = PottsModel::tame(3, f7.zero(), -f7.one());
    auto r = is_isomorphic(m, m);
    CHECK(r.geometric);
    REQUIRE(r.witness);
    CHECK(r.witness->value.is_one());

    Elem l = f7.from_int(2);
    auto m1 = PottsModel::tame(3, f7.from_int(5), f7.from_int(5));
    auto m2 = PottsModel::tame(3, f7.from_int(5) * l.pow(3), f7.from_int(5) * l.pow(6));
    auto r2 = is_isomorphic(m1, m2);
    CHECK(r2.geometric);
    REQUIRE(r2.witness);
    CHECK(r2.witness->degree == 1);
    CHECK(r2.witness->value.pow(3) == l.pow(3));

    Field f3 = ff::make_field(3, 1);
    auto w1 = PottsModel::wild(f3.zero(), f3.from_int(2)), w2 = PottsModel::wild(f3.from_int(2), f3.zero());
    auto r3 = is_isomorphic(w1, w2);
    CHECK(r3.geometric);
    REQUIRE(r3.witness);
    CHECK(r3.witness->field.order() == 27);
    const Elem t = r3.witness->value;
    CHECK(t.pow(3) - t == t.field().one());

    auto m3 = PottsModel::tame(3, f7.from_int(5), f7.from_int(5), 2);
    CHECK(*is_isomorphic(m1, m3).chi_class_match);
    CHECK(code_of([&] { is_isomorphic(m1, w1); }) == ErrorCode::VariantMismatch);
    CHECK_FALSE(is_isomorphic(m1, PottsModel::tame(3, f7.one(), f7.one())).geometric);
}

TEST_CASE("j is invariant under twists and shifts") {
    std::mt19937_64 rng(5);
    for (auto spec : {"7", "13", "5^2"}) {
        Field f = ff::parse_field_spec(spec);
        for (int trial = 0; trial < 40; ++trial) {
            Elem A = f.from_code(rng() % f.order()), B = f.from_code(1 + rng() % (f.order() - 1));
            if ((A * A - 4 * B).is_zero()) continue;
            Elem l = f.from_code(1 + rng() % (f.order() - 1));
            auto m1 = PottsModel::tame(3, A, B);
            auto m2 = PottsModel::tame(3, l.pow(3) * A, l.pow(6) * B);
            CHECK(j_invariant(m1) == j_invariant(m2));
            auto m3 = PottsModel::tame(3, l.pow(3) * A / B, l.pow(6) / B);
            CHECK(j_invariant(m1) == j_invariant(m3));
        }
    }
    for (auto spec : {"3", "3^2", "5"}) {
        Field f = ff::parse_field_spec(spec);
        for (int trial = 0; trial < 40; ++trial) {
            Elem A = f.from_code(rng() % f.order()), B = f.from_code(rng() % f.order());
            if ((A * A - 4 * B).is_zero()) continue;
            Elem w = f.from_code(rng() % f.order());
            auto m2 = PottsModel::wild(A + 2 * w, B + w * A + w * w);
            CHECK(j_invariant(PottsModel::wild(A, B)) == j_invariant(m2));
        }
    }
}

TEST_CASE("classification examples") {
    Field f41 = ff::make_field(41, 1);
    auto c = classify_aut(canonical_model_from_j(5, f41, f41.one(), Variant::Tame));
    CHECK(c.tag == AutTag::TwoTimesDihedralN);
    CHECK(c.order == 20);
    CHECK(c.equivariant_order == 10);

    Field f5 = ff::make_field(5, 1);
    auto c5 = classify_aut(PottsModel::tame(3, f5.zero(), -f5.one()));
    CHECK(c5.tag == AutTag::PGL2FiberProduct);
    CHECK(c5.order == 240);

    Field f3 = ff::make_field(3, 1);
    auto c9 = classify_aut(PottsModel::tame(5, f3.zero(), -f3.one()));
    CHECK(c9.tag == AutTag::PGL2FiberProduct);
    CHECK(c9.q == 9);
    CHECK(c9.order == 1440);
}

TEST_CASE("classification agrees with the stabilizer oracle") {
    Field f7 = ff::make_field(7, 1);
    std::map<std::uint64_t, int> seen;
    for (const auto& m : all_models(Variant::Tame, 3, f7)) {
        auto c = classify_aut(m);
        auto o = aut_order_oracle(m);
        CHECK(c.order == o.aut_order);
        CHECK(c.equivariant_order == o.equivariant_order);
        CHECK(o.lifts_ok);
        CHECK(o.tau_central);
        ++seen[c.order];
    }
    CHECK(seen[12] > 0);
    CHECK(seen[24] > 0);
    CHECK(seen[48] > 0);

    auto s4 = aut_order_oracle(PottsModel::tame(3, f7.from_int(1) + 4 * f7.from_int(4), f7.from_int(4) * (f7.one() + 4 * f7.from_int(4))));
    CHECK(s4.G_class.name() == "Sym4");
    CHECK(s4.aut_order == 48);
    CHECK(s4.max_lift_order == 8);

    auto gen = aut_order_oracle(canonical_model_from_j(3, f7, f7.one(), Variant::Tame));
    CHECK(gen.G_class.name() == "Dihedral(3)");
    CHECK(gen.aut_order == 12);

    Field f5 = ff::make_field(5, 1);
    auto p5 = aut_order_oracle(PottsModel::tame(3, f5.zero(), -f5.one()));
    CHECK(p5.aut_order == 240);
    CHECK(p5.G_class.name() == "PGL2(5)");

    Field f3 = ff::make_field(3, 1);
    auto p9 = aut_order_oracle(PottsModel::tame(5, f3.zero(), -f3.one()));
    CHECK(p9.aut_order == 1440);
    CHECK(p9.G_class.name() == "PGL2(9)");
    CHECK(p9.equivariant_order == 20);

    for (auto spec : {"3", "3^2"}) {
        Field f = ff::parse_field_spec(spec);
        for (const auto& m : all_models(Variant::Wild, 3, f)) {
            auto o = aut_order_oracle(m);
            // j = -1 in characteristic 3: the branch locus is P^1(F_9) minus P^1(F_3), stabilized by PGL2(3)
            const bool special = j_invariant(m) == -f.one();
            CHECK(o.aut_order == (special ? 48u : 12u));
            CHECK(o.G_class.name() == (special ? "PGL2(3)" : "SemidirectPC(1,2)"));
            CHECK(o.equivariant_order == 6);
            CHECK(classify_aut(m).order == 12);
        }
    }
    auto w5 = aut_order_oracle(PottsModel::wild(f5.one(), f5.one()));
    CHECK(w5.aut_order == 20);
    CHECK(w5.equivariant_order == 10);
    CHECK(w5.G_class.aliases == std::vector<std::string>{"Dihedral(5)"});
}

TEST_CASE("square root of M_zeta") {
    Field f13 = ff::make_field(13, 1);
    auto r = quarter_j_square_root_check(3, f13);
    CHECK(r.square_ok);
    CHECK(r.order == 6);
    auto s = quarter_j_square_root_check(5, ff::make_field(11, 1));
    CHECK(s.order == 10);
    CHECK(code_of([] { quarter_j_square_root_check(5, ff::make_field(7, 1)); }) == ErrorCode::NoSuchRoot);
}
