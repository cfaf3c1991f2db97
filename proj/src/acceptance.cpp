#include "potts/acceptance.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "potts/cli.hpp"
#include "potts/cyclotomic.hpp"
#include "potts/error.hpp"
#include "potts/moduli.hpp"
#include "potts/pgl2.hpp"
#include "potts/picard.hpp"
#include "potts/wild_norm.hpp"

namespace potts::acceptance {

namespace {

using ff::Elem;
using ff::Field;
using poly::IntPoly;
using poly::Poly;

const std::vector<std::pair<unsigned, const char*>> kWildPairs = {{3, "7"}, {3, "31"}, {5, "11"}, {7, "29"}};

std::vector<curve::PottsModel> all_models(curve::Variant v, unsigned N, const Field& F) {
    std::vector<curve::PottsModel> out;
    for (std::uint64_t a = 0; a < F.order(); ++a)
        for (std::uint64_t b = 0; b < F.order(); ++b) {
            const Elem A = F.from_code(a), B = F.from_code(b);
            if ((A * A - 4 * B).is_zero()) continue;
            if (v == curve::Variant::Tame) {
                if (B.is_zero()) continue;
                out.push_back(curve::PottsModel::tame(N, A, B));
            } else {
                out.push_back(curve::PottsModel::wild(A, B));
            }
        }
    return out;
}

wild::NormContext random_ctx(unsigned p, const Field& F, std::mt19937_64& rng) {
    const auto ts = wild::roots_of_order_p(p, F);
    auto pick = [&] { return F.from_code(rng() % F.order()); };
    Elem U = F.zero();
    while (U.is_zero()) U = pick();
    const Elem t = ts[rng() % ts.size()];
    const Elem psi = pick(), A = pick(), B = pick();
    return wild::NormContext(p, t, psi, U, A, B);
}

struct Tally {
    std::size_t checked = 0, failed = 0;
    std::string first;

    void check(bool ok, const std::string& what) {
        ++checked;
        if (!ok && failed++ == 0) first = what;
    }
    std::string summary() const {
        std::string s = std::to_string(checked - failed) + "/" + std::to_string(checked) + " checks";
        if (failed) s += ", first failure: " + first;
        return s;
    }
};

// ---------------------------------------------------------------- criteria

std::string c1_order(Tally& t) {
    for (auto spec : {"3", "5", "7", "3^2"}) {
        const Field F = ff::parse_field_spec(spec);
        const std::uint64_t q = F.order(), p = F.characteristic();
        for (const auto& g : pgl2::enumerate_pgl2(F)) {
            if (g.is_identity()) continue;
            const auto o = pgl2::order_by_criterion(g);
            t.check(o == pgl2::order_by_powering(g), "criterion != powering over F_" + std::string(spec));
            t.check((q - 1) % o == 0 || (q + 1) % o == 0 || p % o == 0, "order " + std::to_string(o));
        }
    }
    return t.summary();
}

std::string c2_survey(Tally& t) {
    std::string d;
    for (auto spec : {"3", "5", "7", "3^2"}) {
        const Field F = ff::parse_field_spec(spec);
        const std::uint64_t q = F.order();
        const auto s = pgl2::survey_order_p(F);
        t.check(s.order_p_count == q * q - 1, "count over F_" + std::string(spec));
        t.check(s.all_unipotent, "tr^2 = 4 det over F_" + std::string(spec));
        t.check(s.fixed_point_union.size() == q + 1, "fixed points over F_" + std::string(spec));
        d += (d.empty() ? "" : ", ") + std::string("q=") + std::to_string(q) + ":" + std::to_string(s.order_p_count);
    }
    return d + "; " + t.summary();
}

IntPoly laurent_lhs(const IntPoly& psi) {
    // t^d psi(t + 1/t) = sum_k c_k t^(d-k) (t^2 + 1)^k
    const std::size_t d = psi.size() - 1;
    IntPoly out(2 * d + 1, 0), sq{1};
    for (std::size_t k = 0; k <= d; ++k) {
        for (std::size_t i = 0; i < sq.size(); ++i) out[d - k + i] += psi[k] * sq[i];
        sq = poly::int_mul(sq, IntPoly{1, 0, 1});
    }
    return out;
}

std::string c3_cyclotomic(Tally& t) {
    for (unsigned n = 1; n <= 45; n += 2) {
        IntPoly prod{1};
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) prod = poly::int_mul(prod, poly::cyclotomic_phi(d));
        IntPoly expect(n + 1, 0);
        expect[0] = -1;
        expect[n] = 1;
        t.check(prod == expect, "product over divisors of " + std::to_string(n));
        if (n >= 3) t.check(laurent_lhs(poly::half_trace_psi(n)) == poly::cyclotomic_phi(n), "psi identity at " + std::to_string(n));
    }
    // t^k + t^-k = C_k(t + 1/t) with C_0 = 2, C_1 = u, C_{k+1} = u C_k - C_{k-1}; Phi_n is palindromic of
    // degree 2m, so psi_n = a_m + sum_k a_{m+k} C_k.
    for (unsigned n : {3u, 5u, 7u}) {
        const IntPoly phi = poly::cyclotomic_phi(n);
        const std::size_t m = phi.size() / 2;
        std::vector<IntPoly> C{{2}, {0, 1}};
        while (C.size() <= m) C.push_back([&] {
            IntPoly a = poly::int_mul(C.back(), IntPoly{0, 1});
            const IntPoly& b = C[C.size() - 2];
            for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
            return a;
        }());
        IntPoly psi(m + 1, 0);
        psi[0] = phi[m];
        for (std::size_t k = 1; k <= m; ++k)
            for (std::size_t i = 0; i < C[k].size(); ++i) psi[i] += phi[m + k] * C[k][i];
        t.check(psi == poly::half_trace_psi(n), "Chebyshev oracle for psi_" + std::to_string(n));
    }
    t.check(poly::half_trace_psi(3) == IntPoly{1, 1}, "psi_3");
    t.check(poly::half_trace_psi(5) == IntPoly{-1, 1, 1}, "psi_5");
    t.check(poly::half_trace_psi(7) == IntPoly{-1, -2, 1, 1}, "psi_7");
    return t.summary();
}

std::string c4_reduction(Tally& t) {
    for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
        const Poly r = poly::reduce_mod_p(poly::half_trace_chi(p), p);
        const Field F = r.field();
        t.check(r == poly::pow(Poly(F, {-F.one(), F.one()}), (p - 1) / 2), "chi_" + std::to_string(p) + " mod p");
    }
    for (auto [N, p] : {std::pair{3u, 5u}, std::pair{3u, 7u}, std::pair{5u, 3u}, std::pair{5u, 11u}, std::pair{7u, 5u}}) {
        const Poly r = poly::reduce_mod_p(poly::half_trace_chi(N), p);
        t.check(poly::gcd(r, poly::derivative(r)).degree() == 0,
                "gcd(chi, chi') for (" + std::to_string(N) + "," + std::to_string(p) + ")");
    }
    return t.summary();
}

std::string c5_aut(Tally& t) {
    auto compare = [&](const curve::PottsModel& m, const std::string& where) {
        const auto c = curve::classify_aut(m);
        const auto o = curve::aut_order_oracle(m);
        t.check(c.order == o.aut_order, where + " j=" + std::to_string(curve::j_invariant(m).code()) + ": classify " +
                                            std::to_string(c.order) + " vs oracle " + std::to_string(o.aut_order));
        t.check(c.equivariant_order == o.equivariant_order, where + " equivariant order");
        return c;
    };
    std::string d;
    const Field f7 = ff::make_field(7, 1);
    std::map<std::uint64_t, std::size_t> seen;
    for (const auto& m : all_models(curve::Variant::Tame, 3, f7)) {
        const auto c = compare(m, "(a)");
        ++seen[c.order];
        const auto j = curve::j_invariant(m);
        const std::uint64_t expect_eq = j == -f7.from_int(4).inv() ? 12 : 6;
        if (c.tag != curve::AutTag::RepGroupSym4) t.check(c.equivariant_order == expect_eq, "(a) equivariant 2N/4N");
    }
    t.check(seen[12] > 0 && seen[24] > 0 && seen[48] > 0, "(a) all three orders occur");
    for (auto [o, n] : seen) d += std::to_string(o) + "x" + std::to_string(n) + " ";

    const Field f5 = ff::make_field(5, 1), f3 = ff::make_field(3, 1);
    const auto b = compare(curve::PottsModel::tame(3, f5.zero(), -f5.one()), "(b)");
    t.check(b.order == 240, "(b) order 240");
    const auto c = compare(curve::PottsModel::tame(5, f3.zero(), -f3.one()), "(c)");
    t.check(c.order == 1440, "(c) order 1440");
    for (auto [spec, p] : {std::pair{"3", 3u}, std::pair{"3^2", 3u}, std::pair{"5", 5u}}) {
        const Field F = ff::parse_field_spec(spec);
        for (const auto& m : all_models(curve::Variant::Wild, p, F)) {
            const auto w = compare(m, std::string("(d) F_") + spec);
            t.check(w.order == 4 * p, "(d) order 4p");
            t.check(w.equivariant_order == 2 * p, "(d) equivariant 2p");
        }
    }
    return d + "(b) 240 (c) 1440; " + t.summary();
}

std::string c6_resultant(Tally& t) {
    std::mt19937_64 rng(cli::kDefaultSeed);
    for (auto [p, spec] : kWildPairs) {
        const Field F = ff::parse_field_spec(spec);
        for (int i = 0; i < 200; ++i)
            t.check(wild::verify_resultant_identity(random_ctx(p, F, rng)), "p=" + std::to_string(p) + " F_" + spec);
    }
    const Field f7 = ff::make_field(7, 1);
    const wild::NormContext hand(3, f7.from_int(2), f7.one(), f7.one(), f7.one(), f7.from_int(3));
    const auto r = wild::resultant_identity(hand);
    t.check(r.holds, "hand instance");
    return "hand instance Res=" + std::to_string(r.lhs.code()) + "; " + t.summary();
}

std::string c7_invariance(Tally& t) {
    std::mt19937_64 rng(cli::kDefaultSeed + 7);
    for (auto [p, spec] : kWildPairs) {
        const Field F = ff::parse_field_spec(spec);
        int done = 0;
        for (int trial = 0; trial < 1000 && done < 100; ++trial) {
            const auto c = random_ctx(p, F, rng);
            const Elem disc = c.A() * c.A() - 4 * (c.U() * c.B());
            if (wild::build_H_delta(c).delta.is_zero() || disc.is_zero()) continue;
            const Elem al = F.from_code(1 + rng() % (F.order() - 1)), be = F.from_code(rng() % F.order());
            const Elem j = wild::wild_j(c);
            const auto r = wild::change_coordinates(c, wild::Affine{al, be});
            t.check(r.j_invariant && wild::wild_j(r.context) == j, "affine change over F_" + std::string(spec));
            const auto s = wild::change_coordinates(c, wild::DeltaSwap{});
            t.check(s.j_invariant && wild::wild_j(s.context) == j, "swap over F_" + std::string(spec));
            t.check(s.context.t() == c.t().inv(), "t -> 1/t");
            t.check(s.delta_product_one, "delta' delta = 1");
            ++done;
        }
        t.check(done == 100, "100 admissible contexts over F_" + std::string(spec));
    }
    return t.summary();
}

std::string c8_norm(Tally& t) {
    std::mt19937_64 rng(cli::kDefaultSeed + 8);
    for (auto [p, spec] : kWildPairs) {
        const Field F = ff::parse_field_spec(spec);
        for (const auto& tt : wild::roots_of_order_p(p, F)) {
            const Elem psi = F.from_code(rng() % F.order());
            const wild::NormContext c(p, tt, psi, F.one(), F.zero(), F.zero());
            const Poly n = wild::norm_poly(c);
            t.check(poly::compose(n, Poly(F, {psi, tt})) == n, "N(tX + psi) = N(X)");
            const auto inv = wild::invariant_subspace(c);
            t.check(inv.basis.size() == 2 && inv.matches_norm, "invariant subspace over F_" + std::string(spec));
            t.check(wild::omega(c) * (tt - F.one()).pow(static_cast<std::uint64_t>(p - 1)) == F.from_int(p), "omega identity");
        }
    }
    return t.summary();
}

std::string c9_specialization(Tally& t) {
    for (auto spec : {"3", "5"}) {
        const Field F = ff::parse_field_spec(spec);
        const unsigned p = static_cast<unsigned>(F.characteristic());
        for (const auto& m : all_models(curve::Variant::Wild, p, F)) {
            const wild::NormContext c(p, F.one(), F.one(), F.one(), m.A, m.B);
            t.check(wild::wild_j(c) == curve::j_invariant(m), "F_" + std::string(spec));
        }
    }
    return t.summary();
}

std::string c10_picard(Tally& t) {
    for (unsigned N : {3u, 5u, 7u, 9u}) {
        const auto h = picard::hodge_characters(N, picard::default_character_field(N));
        const Field F = h.phi.field();
        t.check(h.sigma_wedge == ((N - 1) / 2 % 2 ? -F.one() : F.one()), "top wedge at N=" + std::to_string(N));
    }
    for (unsigned N : {3u, 5u, 7u})
        t.check(picard::subgroup_generated({{1, 1}, {1, 2}}, N).order() == 4 * N, "order 4N at N=" + std::to_string(N));
    for (unsigned p : {5u, 7u}) {
        const Field k = ff::make_field(p, 1);
        const unsigned m = (p - 1) / 2;
        std::mt19937_64 rng(cli::kDefaultSeed + p);
        const int W = 12;
        auto rnd_unit = [&] {
            auto u = picard::TruncLaurent::monomial(k, m, -W, W, k.from_code(1 + rng() % (p - 1)), 0,
                                                    static_cast<int>(rng() % 3) - 1);
            for (unsigned i = 1; i < m; ++i)
                for (int e = -1; e <= 1; ++e) u.set(i, e, k.from_code(rng() % p));
            return u;
        };
        const auto one = picard::TruncLaurent::constant(k, m, -W, W, k.one());
        for (int i = 0; i < 500; ++i) {
            const auto a = rnd_unit(), b = rnd_unit(), c = rnd_unit();
            t.check((a * b) * c == a * (b * c), "associativity");
            t.check(a * b == b * a, "commutativity");
            t.check(a * picard::inverse(a) == one, "inverse");
        }
        const auto mu = picard::mu_n_structure(k, p, 2, 500, cli::kDefaultSeed);
        t.check(mu.verified && mu.samples == 500, "(1 + za)^p = 1 for p=" + std::to_string(p));
        const auto mu2 = picard::mu_n_structure(k, 2);
        t.check(mu2.verified && mu2.description == "{1, -1}", "mu_2 for p=" + std::to_string(p));
    }
    return t.summary();
}

std::string c11_census(Tally& t) {
    std::string d;
    unsigned worst = 0;
    auto record = [&](const moduli::CensusReport& r, const std::string& label) {
        t.check(r.classes == r.q - 1, label + " classes " + std::to_string(r.classes));
        t.check(r.cross_witnesses == 0, label + " cross witnesses");
        t.check(r.max_witness_degree <= 6, label + " witness degree " + std::to_string(r.max_witness_degree));
        worst = std::max(worst, r.max_witness_degree);
        d += label + ":" + std::to_string(r.classes) + "/" + std::to_string(r.q - 1) + " ";
    };
    for (auto [N, q] : {std::pair{3u, "7"}, std::pair{3u, "13"}, std::pair{5u, "11"}})
        record(moduli::census_tame(N, ff::parse_field_spec(q)), "tame(" + std::to_string(N) + "," + q + ")");
    for (auto q : {"3", "3^2", "5"}) record(moduli::census_wild(ff::parse_field_spec(q)), std::string("wild(") + q + ")");
    return d + "max witness degree " + std::to_string(worst) + "; " + t.summary();
}

std::string c12_cusps(Tally& t) {
    for (auto [N, spec] : {std::pair{3u, "7"}, std::pair{5u, "11"}}) {
        const auto d = moduli::degeneration_check(N, ff::parse_field_spec(spec));
        t.check(d.matches_cusp && d.intersection.size() == N, "degeneration at N=" + std::to_string(N));
    }
    for (unsigned N = 3; N <= 21; N += 2) {
        const auto [inf, zero] = moduli::cusp_combinatorics(N);
        t.check(inf.genus_accounting(N) && zero.genus_accounting(N), "genus accounting at N=" + std::to_string(N));
    }
    return t.summary();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string c13_golden(Tally& t, const Options& opts) {
    const auto reqs = read_requests(opts.golden_dir + "/requests.txt");
    for (const auto& r : reqs) {
        const auto res = cli::run(r.args);
        t.check(res.exit_code == r.exit_code, r.name + " exit code " + std::to_string(res.exit_code));
        t.check(res.out == read_file(opts.golden_dir + "/" + r.name + ".json"), r.name + " output differs");
    }
    t.check(reqs.size() == 12, "battery size " + std::to_string(reqs.size()));
    return std::to_string(reqs.size()) + " requests; " + t.summary();
}

}  // namespace

std::vector<GoldenRequest> read_requests(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<GoldenRequest> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        GoldenRequest r;
        ls >> r.name >> r.exit_code;
        for (std::string a; ls >> a;) r.args.push_back(a);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CriterionResult> run_acceptance(const Options& opts) {
    using Fn = std::function<std::string(Tally&)>;
    const std::vector<std::pair<std::string, Fn>> criteria = {
        {"PGL2 order criterion vs powering", c1_order},
        {"order-p survey", c2_survey},
        {"cyclotomic and half-trace identities", c3_cyclotomic},
        {"half-trace reduction mod p", c4_reduction},
        {"automorphism classification vs oracle", c5_aut},
        {"resultant identity", c6_resultant},
        {"wild j under coordinate changes", c7_invariance},
        {"norm invariance and omega", c8_norm},
        {"wild j specializes to the model j", c9_specialization},
        {"Picard characters and units", c10_picard},
        {"isomorphism census", c11_census},
        {"cusps", c12_cusps},
        {"CLI golden files", [&opts](Tally& t) { return c13_golden(t, opts); }},
    };
    std::vector<CriterionResult> out;
    int id = 0;
    for (const auto& [title, fn] : criteria) {
        CriterionResult r{++id, title, false, ""};
        Tally t;
        try {
            r.detail = fn(t);
            r.pass = t.failed == 0 && t.checked > 0;
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + ": " + r.detail;
}

}  // namespace potts::acceptance
