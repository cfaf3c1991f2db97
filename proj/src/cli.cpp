#include "potts/cli.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "potts/acceptance.hpp"
#include "potts/cyclotomic.hpp"
#include "potts/error.hpp"
#include "potts/moduli.hpp"
#include "potts/picard.hpp"
#include "potts/wild_norm.hpp"

#ifndef POTTS_GOLDEN_DIR
#define POTTS_GOLDEN_DIR "tests/golden"
#endif

namespace potts::cli {

namespace {

using json = nlohmann::ordered_json;
using ff::Elem;
using ff::Field;

struct Malformed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string field;
    std::uint64_t seed = kDefaultSeed;
    unsigned cap_splitting = poly::kDefaultSplittingCap;
    std::size_t cap_closure = pgl2::kDefaultClosureCap;
    bool csv = false;
    bool json_out = false;

    std::string variant = "tame";
    unsigned N = 3, n = 3, p = 3, k = 1, k2 = 1, trials = 200, samples = 500;
    int window = 2;
    bool oracle = false;
    std::string matrix, generators;
    std::string A = "0", B = "1", A2 = "0", B2 = "1", t = "1", psi = "1", U = "1";
    std::string golden_dir = POTTS_GOLDEN_DIR;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string error_doc(std::string_view code, const std::string& message) {
    json j;
    j["error"] = {{"code", std::string(code)}, {"message", message}};
    return dump(j);
}

json parse_json_arg(const std::string& name, const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Malformed("--" + name + " is not valid JSON: " + e.what());
    }
}

Elem elem_from_json(const Field& F, const std::string& name, const json& j) {
    if (j.is_number_integer()) return F.from_int(j.get<std::int64_t>());
    if (j.is_array()) {
        if (j.size() > F.degree()) throw Malformed("--" + name + " has more coefficients than the field degree");
        std::vector<std::uint64_t> cs;
        for (const auto& c : j) {
            if (!c.is_number_unsigned() || c.get<std::uint64_t>() >= F.characteristic())
                throw Malformed("--" + name + " coefficients must lie in [0, p)");
            cs.push_back(c.get<std::uint64_t>());
        }
        cs.resize(F.degree(), 0);
        return F.from_coeffs(cs);
    }
    throw Malformed("--" + name + " must be an integer or a coefficient array");
}

Elem parse_elem(const Field& F, const std::string& name, const std::string& text) {
    return elem_from_json(F, name, parse_json_arg(name, text));
}

pgl2::ProjMap map_from_json(const Field& F, const std::string& name, const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
        throw Malformed("--" + name + " must be a 2x2 matrix [[a,b],[c,d]]");
    return pgl2::ProjMap(elem_from_json(F, name, j[0][0]), elem_from_json(F, name, j[0][1]),
                         elem_from_json(F, name, j[1][0]), elem_from_json(F, name, j[1][1]));
}

json elem_json(const Elem& e) { return e.coeffs(); }

json point_json(const pgl2::ProjPoint& P) { return P.is_infinity() ? json("inf") : elem_json(P.x()); }

json strings(const std::vector<std::int64_t>& cs) {
    json out = json::array();
    for (auto c : cs) out.push_back(std::to_string(c));
    return out;
}

Field require_field(const Options& o) {
    if (o.field.empty()) throw Malformed("--field is required");
    return ff::parse_field_spec(o.field);
}

curve::PottsModel model_from(const Options& o, const Field& F, const std::string& a, const std::string& b, unsigned k,
                             const char* an, const char* bn) {
    const Elem A = parse_elem(F, an, a), B = parse_elem(F, bn, b);
    if (o.variant == "wild") return curve::PottsModel::wild(A, B);
    return curve::PottsModel::tame(o.N, A, B, k);
}

// ------------------------------------------------------------------ handlers

std::string pgl2_order(const Options& o) {
    const Field F = require_field(o);
    if (o.matrix.empty()) throw Malformed("--matrix is required");
    const auto M = map_from_json(F, "matrix", parse_json_arg("matrix", o.matrix));
    json j;
    j["order"] = pgl2::order_by_criterion(M);
    j["invariant"] = elem_json(pgl2::conjugacy_invariant(M));
    return dump(j);
}

std::string pgl2_classify(const Options& o) {
    const Field F = require_field(o);
    if (o.generators.empty()) throw Malformed("--generators is required");
    const json g = parse_json_arg("generators", o.generators);
    if (!g.is_array()) throw Malformed("--generators must be a list of matrices");
    std::vector<pgl2::ProjMap> gens;
    for (const auto& m : g) gens.push_back(map_from_json(F, "generators", m));
    const auto G = pgl2::subgroup_closure(gens, o.cap_closure);
    const auto c = pgl2::classify_subgroup(G);
    json j;
    j["size"] = G.size();
    j["class"] = c.name();
    j["aliases"] = c.aliases;
    j["params"] = c.params;
    return dump(j);
}

std::string pgl2_survey(const Options& o) {
    const Field F = require_field(o);
    const auto s = pgl2::survey_order_p(F);
    json j;
    j["q"] = F.order();
    j["order_p_count"] = s.order_p_count;
    j["all_unipotent"] = s.all_unipotent;
    j["fixed_point_union_size"] = s.fixed_point_union.size();
    return dump(j);
}

std::string poly_cmd(const Options& o, const std::string& which) {
    json j;
    j["n"] = o.n;
    if (which == "phi") {
        j["phi"] = strings(poly::cyclotomic_phi(o.n));
    } else if (which == "psi") {
        j["psi"] = strings(poly::half_trace_psi(o.n));
    } else if (which == "chi") {
        json cs = json::array();
        for (const auto& c : poly::half_trace_chi(o.n)) cs.push_back(c.to_string());
        j["chi"] = cs;
    } else {
        const auto r = poly::reduce_mod_p(poly::half_trace_chi(o.n), o.p);
        j["p"] = o.p;
        json cs = json::array();
        for (const auto& c : r.coeffs()) cs.push_back(std::to_string(c.code()));
        j["chi_mod_p"] = cs;
        if (o.n == o.p) {
            const Field F = r.field();
            const auto target = poly::pow(poly::Poly(F, {-F.one(), F.one()}), (o.p - 1) / 2);
            j["equals_v_minus_1_power"] = r == target;
        }
    }
    return dump(j);
}

json relations_json(const curve::RelationReport& r) {
    json j;
    j["sigma_order"] = r.sigma_order;
    j["tau_involution"] = r.tau_involution;
    j["tau_central"] = r.tau_central;
    j["mu_involution"] = r.mu_involution;
    j["mu_conjugation"] = r.mu_conjugation;
    j["maps_preserve_curve"] = r.maps_preserve_curve;
    j["sampled_points"] = r.sampled_points;
    j["sampled_relations"] = r.sampled_relations;
    j["tau_fixed_points"] = r.tau_fixed_points;
    j["all_pass"] = r.all_pass();
    return j;
}

std::string curve_info(const Options& o) {
    const Field F = require_field(o);
    const auto m = model_from(o, F, o.A, o.B, o.k, "A", "B");
    const auto bd = curve::validate(m, o.cap_splitting);
    const auto aut = curve::automorphisms(m, o.cap_splitting);
    json j;
    j["variant"] = curve::to_string(m.variant);
    j["N"] = m.N;
    j["field"] = F.spec();
    j["A"] = elem_json(m.A);
    j["B"] = elem_json(m.B);
    j["j"] = elem_json(curve::j_invariant(m));
    j["genus"] = bd.genus;
    j["branch_field"] = bd.field.spec();
    json pts = json::array();
    for (const auto& P : bd.sigma) pts.push_back(point_json(P));
    j["branch_points"] = pts;
    j["relations_field"] = aut.field.spec();
    j["relations"] = relations_json(aut.report);
    return dump(j);
}

std::string curve_iso(const Options& o) {
    const Field F = require_field(o);
    const auto m1 = model_from(o, F, o.A, o.B, o.k, "A1", "B1");
    const auto m2 = model_from(o, F, o.A2, o.B2, o.k2, "A2", "B2");
    const auto r = curve::is_isomorphic(m1, m2, o.cap_splitting);
    json j;
    j["geometric"] = r.geometric;
    j["j_match"] = r.j_match;
    j["chi_class_match"] = r.chi_class_match ? json(*r.chi_class_match) : json(nullptr);
    if (r.witness) {
        j["witness"] = {{"field", r.witness->field.spec()},
                        {"degree", r.witness->degree},
                        {"kind", r.witness->kind},
                        {"value", elem_json(r.witness->value)}};
    } else {
        j["witness"] = nullptr;
    }
    j["searched_up_to"] = r.searched_up_to;
    return dump(j);
}

std::string curve_aut(const Options& o) {
    const Field F = require_field(o);
    const auto m = model_from(o, F, o.A, o.B, o.k, "A", "B");
    const auto c = curve::classify_aut(m);
    json j;
    j["class"] = curve::to_string(c.tag);
    j["order"] = c.order;
    std::optional<curve::OracleResult> r;
    if (o.oracle) {
        r = curve::aut_order_oracle(m, o.cap_splitting);
        j["oracle_order"] = r->aut_order;
    }
    j["equivariant_order"] = c.equivariant_order;
    if (c.tag == curve::AutTag::PGL2FiberProduct) j["q"] = c.q;
    if (r) {
        j["oracle_equivariant_order"] = r->equivariant_order;
        j["oracle_G"] = r->G_class.name();
        j["oracle_G_aliases"] = r->G_class.aliases;
        j["lifts_ok"] = r->lifts_ok;
        j["tau_central"] = r->tau_central;
        j["max_lift_order"] = r->max_lift_order;
    }
    return dump(j);
}

json context_json(const wild::NormContext& c) {
    return {{"t", elem_json(c.t())}, {"psi", elem_json(c.psi())}, {"U", elem_json(c.U())},
            {"A", elem_json(c.A())}, {"B", elem_json(c.B())}};
}

std::string wildnorm_verify(const Options& o) {
    const Field F = require_field(o);
    const auto ts = wild::roots_of_order_p(o.p, F);
    std::mt19937_64 rng(o.seed);
    auto pick = [&] { return F.from_code(rng() % F.order()); };
    json j;
    j["p"] = o.p;
    j["field"] = F.spec();
    j["trials"] = o.trials;
    std::size_t failures = 0;
    json example = nullptr;
    for (unsigned i = 0; i < o.trials; ++i) {
        const Elem t = ts[rng() % ts.size()];
        const Elem psi = pick();
        Elem U = F.zero();
        while (U.is_zero()) U = pick();
        const Elem A = pick(), B = pick();
        const wild::NormContext ctx(o.p, t, psi, U, A, B);
        const auto r = wild::resultant_identity(ctx);
        if (!r.holds) ++failures;
        if (example.is_null()) {
            example = context_json(ctx);
            example["lhs"] = elem_json(r.lhs);
            example["rhs"] = elem_json(r.rhs);
        }
    }
    j["failures"] = failures;
    j["example_context"] = example;
    return dump(j);
}

std::string wildnorm_j(const Options& o) {
    const Field F = require_field(o);
    const wild::NormContext ctx(o.p, parse_elem(F, "t", o.t), parse_elem(F, "psi", o.psi), parse_elem(F, "U", o.U),
                                parse_elem(F, "A", o.A), parse_elem(F, "B", o.B));
    const auto hd = wild::build_H_delta(ctx);
    json j;
    j["context"] = context_json(ctx);
    json norm = json::array();
    const auto np = wild::norm_poly(ctx);
    for (const auto& c : np.coeffs()) norm.push_back(elem_json(c));
    j["norm"] = norm;
    j["omega"] = elem_json(wild::omega(ctx));
    j["delta"] = elem_json(hd.delta);
    j["j"] = elem_json(wild::wild_j(ctx));
    return dump(j);
}

std::string picard_characters(const Options& o) {
    const Field F = o.field.empty() ? picard::default_character_field(o.N) : ff::parse_field_spec(o.field);
    const auto h = picard::hodge_characters(o.N, F);
    json j;
    j["N"] = o.N;
    j["field"] = F.spec();
    j["phi"] = elem_json(h.phi);
    json cs = json::array();
    for (const auto& c : h.characters) cs.push_back({c.eps, c.k});
    j["characters"] = cs;
    j["sigma_wedge"] = elem_json(h.sigma_wedge);
    j["tau_wedge"] = elem_json(h.tau_wedge);
    j["generated_order"] = picard::subgroup_generated({h.characters[0], h.characters[1]}, o.N).order();
    j["group"] = picard::picard_descriptor(curve::Variant::Tame, o.N, F.characteristic()).name();
    return dump(j);
}

std::string picard_wild(const Options& o) {
    const Field F = o.field.empty() ? ff::make_field(o.p, 1) : ff::parse_field_spec(o.field);
    const auto d = picard::picard_descriptor(curve::Variant::Wild, static_cast<unsigned>(F.characteristic()),
                                             F.characteristic());
    const auto mu2 = picard::mu_n_structure(F, 2, o.window, o.samples, o.seed);
    const auto mup = picard::mu_n_structure(F, d.N, o.window, o.samples, o.seed);
    json j;
    j["p"] = d.N;
    j["field"] = F.spec();
    j["group"] = d.name();
    j["finite_factors"] = d.finite_factors;
    j["infinite_part"] = d.infinite_part;
    j["exponent"] = d.exponent;
    j["nilpotency"] = d.nilpotency;
    json c = json::array();
    for (const auto& e : mu2.constants) c.push_back(elem_json(e));
    j["mu_2"] = {{"description", mu2.description}, {"constants", c}, {"verified", mu2.verified}};
    j["mu_p"] = {{"description", mup.description},
                 {"samples", mup.samples},
                 {"torsion_hits", mup.torsion_hits},
                 {"verified", mup.verified}};
    return dump(j);
}

std::string moduli_census(const Options& o) {
    const Field F = require_field(o);
    const auto r = o.variant == "wild" ? moduli::census_wild(F, o.cap_splitting)
                                       : moduli::census_tame(o.N, F, o.cap_splitting);
    if (o.csv) return moduli::census_csv(r);
    json j;
    j["variant"] = curve::to_string(r.variant);
    j["N"] = r.N;
    j["q"] = r.q;
    j["models"] = r.models;
    j["distinct_j"] = r.distinct_j;
    j["classes"] = r.classes;
    j["expected"] = r.expected;
    j["match"] = r.match;
    j["max_witness_degree"] = r.max_witness_degree;
    j["within_pairs"] = r.within_pairs;
    j["cross_pairs"] = r.cross_pairs;
    j["cross_witnesses"] = r.cross_witnesses;
    return dump(j);
}

std::string moduli_cusps(const Options& o) {
    const auto [inf, zero] = moduli::cusp_combinatorics(o.N);
    auto cusp = [&](const moduli::CuspDescriptor& c) {
        return json{{"j_limit", c.j_limit},
                    {"components", c.components},
                    {"genera", {c.genus1, c.genus2}},
                    {"nodes", c.nodes},
                    {"genus_accounting", c.genus_accounting(o.N)}};
    };
    json j;
    j["N"] = o.N;
    j["cusps"] = {cusp(inf), cusp(zero)};
    if (!o.field.empty()) {
        const auto d = moduli::degeneration_check(o.N, ff::parse_field_spec(o.field), o.cap_splitting);
        json pts = json::array();
        for (const auto& x : d.intersection) pts.push_back(elem_json(x));
        j["degeneration"] = {{"square_ok", d.square_ok},
                             {"components_distinct", d.components_distinct},
                             {"splitting_field", d.splitting_field.spec()},
                             {"intersection", pts},
                             {"matches_cusp", d.matches_cusp}};
    }
    return dump(j);
}

std::string moduli_ring(const Options& o) {
    const auto d = cyclo::fibre_mod_p(o.N, o.p);
    json j;
    j["N"] = o.N;
    j["p"] = o.p;
    j["empty"] = d.empty;
    j["components"] = d.components;
    j["multiplicity"] = d.multiplicity;
    j["reduced"] = d.reduced;
    return dump(j);
}

Result selftest(const Options& o) {
    acceptance::Options opts;
    opts.golden_dir = o.golden_dir;
    const auto results = acceptance::run_acceptance(opts);
    std::ostringstream os;
    bool ok = true;
    for (const auto& r : results) {
        os << acceptance::format_line(r) << "\n";
        ok = ok && r.pass;
    }
    return {ok ? 0 : 1, os.str()};
}

}  // namespace

Result run(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"Exact arithmetic for N-state Potts curves over finite fields", "potts"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--field", o.field, "Field spec: p, q or p^s");
    app.add_option("--seed", o.seed, "Seed for randomized commands")->capture_default_str();
    app.add_option("--cap-splitting", o.cap_splitting, "Largest extension degree searched")->capture_default_str();
    app.add_option("--cap-closure", o.cap_closure, "Largest subgroup generated")->capture_default_str();
    auto* csv = app.add_flag("--csv", o.csv, "CSV output where supported");
    auto* js = app.add_flag("--json", o.json_out, "JSON output (default)");
    csv->excludes(js);

    auto* pgl2 = app.add_subcommand("pgl2", "PGL2 over a finite field")->require_subcommand(1);
    auto* p_order = pgl2->add_subcommand("order", "Order of a homography");
    p_order->add_option("--matrix", o.matrix, "JSON [[a,b],[c,d]]");
    auto* p_classify = pgl2->add_subcommand("classify", "Classify a generated subgroup");
    p_classify->add_option("--generators", o.generators, "JSON list of matrices");
    auto* p_survey = pgl2->add_subcommand("survey", "Elements of order p");

    auto* poly = app.add_subcommand("poly", "Cyclotomic and half-trace polynomials")->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> poly_subs;
    for (const char* name : {"phi", "psi", "chi", "reduce"}) {
        auto* s = poly->add_subcommand(name);
        s->add_option("--n", o.n)->required();
        if (std::string(name) == "reduce") s->add_option("--p", o.p)->required();
        poly_subs.emplace_back(name, s);
    }

    auto add_model = [&](CLI::App* s) {
        s->add_option("--variant", o.variant)->check(CLI::IsMember({"tame", "wild"}))->capture_default_str();
        s->add_option("--N", o.N)->capture_default_str();
    };
    auto* curve = app.add_subcommand("curve", "Potts curve models")->require_subcommand(1);
    auto* c_info = curve->add_subcommand("info", "Invariants, branch points and automorphism relations");
    add_model(c_info);
    c_info->add_option("--A", o.A);
    c_info->add_option("--B", o.B);
    c_info->add_option("--k", o.k, "sigma acts by x -> zeta^k x");
    auto* c_iso = curve->add_subcommand("iso", "Isomorphism test with explicit witness");
    add_model(c_iso);
    c_iso->add_option("--A1", o.A);
    c_iso->add_option("--B1", o.B);
    c_iso->add_option("--A2", o.A2);
    c_iso->add_option("--B2", o.B2);
    c_iso->add_option("--k1", o.k);
    c_iso->add_option("--k2", o.k2);
    auto* c_aut = curve->add_subcommand("aut", "Automorphism group");
    add_model(c_aut);
    c_aut->add_option("--A", o.A);
    c_aut->add_option("--B", o.B);
    c_aut->add_option("--k", o.k);
    c_aut->add_flag("--oracle", o.oracle, "Also run the branch-stabilizer oracle");

    auto* wn = app.add_subcommand("wildnorm", "Norms of order-p affine actions")->require_subcommand(1);
    auto* w_res = wn->add_subcommand("verify-resultant", "Resultant identity on random contexts");
    w_res->add_option("--p", o.p)->required();
    w_res->add_option("--trials", o.trials)->capture_default_str();
    auto* w_j = wn->add_subcommand("j", "Invariant of one context");
    w_j->add_option("--p", o.p)->required();
    for (auto [flag, target] : {std::pair{"--t", &o.t}, std::pair{"--psi", &o.psi}, std::pair{"--U", &o.U},
                                std::pair{"--A", &o.A}, std::pair{"--B", &o.B}})
        w_j->add_option(flag, *target);

    auto* pic = app.add_subcommand("picard", "Character data of Picard groups")->require_subcommand(1);
    auto* pc = pic->add_subcommand("characters", "Hodge characters for tame N");
    pc->add_option("--N", o.N)->required();
    auto* pw = pic->add_subcommand("wild", "Wild Picard group and its roots of unity");
    pw->add_option("--p", o.p);
    pw->add_option("--window", o.window)->capture_default_str();
    pw->add_option("--samples", o.samples)->capture_default_str();

    auto* mod = app.add_subcommand("moduli", "Census and boundary")->require_subcommand(1);
    auto* m_census = mod->add_subcommand("census", "Isomorphism classes over a finite field");
    add_model(m_census);
    auto* m_cusps = mod->add_subcommand("cusps", "Stable degenerations");
    m_cusps->add_option("--N", o.N)->required();
    auto* m_ring = mod->add_subcommand("ring", "Fibre of the half-trace ring at p");
    m_ring->add_option("--N", o.N)->required();
    m_ring->add_option("--p", o.p)->required();

    auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
    st->add_option("--golden-dir", o.golden_dir)->capture_default_str();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        if (code == 0) return {0, out.str()};
        return {2, error_doc("MalformedInput", e.what())};
    }

    try {
        if (*p_order) return {0, pgl2_order(o)};
        if (*p_classify) return {0, pgl2_classify(o)};
        if (*p_survey) return {0, pgl2_survey(o)};
        for (auto& [name, s] : poly_subs)
            if (*s) return {0, poly_cmd(o, name)};
        if (*c_info) return {0, curve_info(o)};
        if (*c_iso) return {0, curve_iso(o)};
        if (*c_aut) return {0, curve_aut(o)};
        if (*w_res) return {0, wildnorm_verify(o)};
        if (*w_j) return {0, wildnorm_j(o)};
        if (*pc) return {0, picard_characters(o)};
        if (*pw) return {0, picard_wild(o)};
        if (*m_census) return {0, moduli_census(o)};
        if (*m_cusps) return {0, moduli_cusps(o)};
        if (*m_ring) return {0, moduli_ring(o)};
        if (*st) return selftest(o);
    } catch (const Malformed& e) {
        return {2, error_doc("MalformedInput", e.what())};
    } catch (const Error& e) {
        return {1, error_doc(to_string(e.code()), e.what())};
    }
    return {2, error_doc("MalformedInput", "no command given")};
}

}  // namespace potts::cli
