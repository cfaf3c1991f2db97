#include "potts/moduli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "potts/error.hpp"

namespace potts::moduli {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

CensusReport run_census(curve::Variant variant, unsigned N, const Field& F, unsigned cap) {
    std::vector<curve::PottsModel> models;
    for (std::uint64_t a = 0; a < F.order(); ++a)
        for (std::uint64_t b = 0; b < F.order(); ++b) {
            const Elem A = F.from_code(a), B = F.from_code(b);
            if ((A * A - 4 * B).is_zero()) continue;
            if (variant == curve::Variant::Tame) {
                if (B.is_zero()) continue;
                models.push_back(curve::PottsModel::tame(N, A, B));
            } else {
                models.push_back(curve::PottsModel::wild(A, B));
            }
        }

    CensusReport r;
    r.variant = variant;
    r.N = N;
    r.q = F.order();
    r.models = models.size();
    r.expected = static_cast<std::size_t>(F.order() - 1);

    std::vector<Elem> js;
    std::map<std::uint64_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < models.size(); ++i) {
        js.push_back(curve::j_invariant(models[i]));
        buckets[js.back().code()].push_back(i);
    }
    r.distinct_j = buckets.size();

    UnionFind uf(models.size());
    for (std::size_t i = 0; i < models.size(); ++i)
        for (std::size_t k = i + 1; k < models.size(); ++k) {
            const bool same = js[i] == js[k];
            auto w = curve::find_witness(models[i], models[k], cap);
            if (same) {
                ++r.within_pairs;
                if (!w)
                    fail(ErrorCode::SplittingCapExceeded,
                         "no isomorphism witness up to degree " + std::to_string(cap) + " within a j bucket");
                r.max_witness_degree = std::max(r.max_witness_degree, w->degree);
            } else {
                ++r.cross_pairs;
                if (w) ++r.cross_witnesses;
            }
            if (w) uf.unite(i, k);
        }

    std::map<std::size_t, std::uint64_t> root_to_j;
    for (std::size_t i = 0; i < models.size(); ++i) {
        auto [it, fresh] = root_to_j.emplace(uf.find(i), js[i].code());
        if (!fresh) it->second = std::min(it->second, js[i].code());
    }
    r.classes = root_to_j.size();
    std::vector<std::pair<std::uint64_t, std::size_t>> order;
    for (auto [root, j] : root_to_j) order.emplace_back(j, root);
    std::sort(order.begin(), order.end());
    std::map<std::size_t, std::size_t> class_of;
    for (std::size_t c = 0; c < order.size(); ++c) class_of[order[c].second] = c;
    for (std::size_t i = 0; i < models.size(); ++i)
        r.rows.push_back({models[i].A, models[i].B, js[i], class_of[uf.find(i)]});

    r.match = r.classes == r.distinct_j && r.classes == r.expected && r.cross_witnesses == 0;
    return r;
}

}  // namespace

CensusReport census_tame(unsigned N, const Field& F, unsigned search_cap) {
    if (N % 2 == 0) fail(ErrorCode::EvenN, "N must be odd");
    if (N % F.characteristic() == 0) fail(ErrorCode::WrongCharacteristic, "tame census needs p prime to 2N");
    return run_census(curve::Variant::Tame, N, F, search_cap);
}

CensusReport census_wild(const Field& F, unsigned search_cap) {
    if (F.characteristic() == 2) fail(ErrorCode::WrongCharacteristic, "characteristic 2 is excluded");
    return run_census(curve::Variant::Wild, static_cast<unsigned>(F.characteristic()), F, search_cap);
}

std::string census_csv(const CensusReport& r) {
    std::ostringstream os;
    os << "A,B,j,class\n";
    for (const auto& row : r.rows)
        os << row.A.code() << ',' << row.B.code() << ',' << row.j.code() << ',' << row.class_id << '\n';
    return os.str();
}

std::pair<CuspDescriptor, CuspDescriptor> cusp_combinatorics(unsigned N) {
    if (N < 3) fail(ErrorCode::InvalidArgument, "N must be at least 3");
    if (N % 2 == 0) fail(ErrorCode::EvenN, "N must be odd");
    // two components of genus g exchanged by tau meeting in h points: h (N - h) = 2g = N - h
    std::vector<unsigned> hs;
    for (unsigned h = 1; h <= N; ++h)
        if (h * (N - h) == N - h) hs.push_back(h);
    ensure(hs == std::vector<unsigned>{1, N}, "h = 1 or h = N");
    const CuspDescriptor inf{2, 0, 0, N, "infinity"};
    const CuspDescriptor zero{2, (N - 1) / 2, (N - 1) / 2, 1, "0"};
    ensure(inf.genus_accounting(N) && zero.genus_accounting(N), "genus accounting");
    return {inf, zero};
}

DegenerationRecord degeneration_check(unsigned N, const Field& F, unsigned cap) {
    if (N % 2 == 0) fail(ErrorCode::EvenN, "N must be odd");
    if (N % F.characteristic() == 0) fail(ErrorCode::WrongCharacteristic, "needs p prime to 2N");
    DegenerationRecord d;
    const poly::Poly xn1 = poly::Poly::monomial(F.one(), N) + poly::Poly::constant(F.one());
    const poly::Poly limit = poly::Poly::monomial(F.one(), 2 * N) + poly::Poly::monomial(F.from_int(2), N) +
                             poly::Poly::constant(F.one());
    d.square_ok = xn1 * xn1 == limit;
    d.components_distinct = !(xn1 == -xn1);
    auto split = poly::roots_over_splitting_field(xn1, cap);
    d.splitting_field = split.field;
    d.splitting_degree = split.field.degree() / F.degree();
    d.intersection = split.roots;
    std::sort(d.intersection.begin(), d.intersection.end());
    d.intersection.erase(std::unique(d.intersection.begin(), d.intersection.end()), d.intersection.end());
    const CuspDescriptor inf = cusp_combinatorics(N).first;
    d.matches_cusp = d.square_ok && d.components_distinct && d.intersection.size() == inf.nodes &&
                     inf.components == 2 && inf.genus1 == 0 && inf.genus2 == 0;
    return d;
}

}  // namespace potts::moduli
