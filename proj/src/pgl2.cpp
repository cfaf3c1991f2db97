#include "potts/pgl2.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "potts/poly.hpp"

namespace potts::pgl2 {

namespace {

struct MapHash {
    std::size_t operator()(const ProjMap& m) const {
        std::size_t h = 0;
        for (const auto& e : m.entries()) h = h * 1000003u ^ std::hash<std::uint64_t>{}(e.code());
        return h;
    }
};

using MapSet = std::unordered_set<ProjMap, MapHash>;

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [pr, e] : ff::factorize(n)) {
        const std::size_t sz = out.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= pr;
            for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// u0 + u1 X in F[X]/(X^2 - cX + 1)
struct Quad {
    Elem u0, u1;
};

Quad quad_mul(const Quad& x, const Quad& y, const Elem& c) {
    Elem t = x.u1 * y.u1;
    return {x.u0 * y.u0 - t, x.u0 * y.u1 + x.u1 * y.u0 + t * c};
}

Quad quad_pow(Quad b, std::uint64_t e, const Elem& c) {
    const Field f = c.field();
    Quad r{f.one(), f.zero()};
    while (e) {
        if (e & 1) r = quad_mul(r, b, c);
        b = quad_mul(b, b, c);
        e >>= 1;
    }
    return r;
}

}  // namespace

ProjPoint ProjPoint::homogeneous(const Elem& x1, const Elem& x2) {
    if (x1.field() != x2.field()) fail(ErrorCode::MixedFields, "point coordinates over different fields");
    if (x2.is_zero()) {
        if (x1.is_zero()) fail(ErrorCode::DegeneratePoints, "(0 : 0) is not a point");
        return infinity(x1.field());
    }
    return finite(x1 / x2);
}

ProjMap::ProjMap(const Elem& a, const Elem& b, const Elem& c, const Elem& d) : m_{a, b, c, d} {
    const Field f = a.field();
    if (b.field() != f || c.field() != f || d.field() != f) fail(ErrorCode::MixedFields, "matrix entries over different fields");
    if (det().is_zero()) fail(ErrorCode::InvalidArgument, "matrix is singular");
    for (const auto& e : m_) {
        if (e.is_zero()) continue;
        if (!e.is_one()) {
            const Elem s = e.inv();
            for (auto& x : m_) x *= s;
        }
        break;
    }
}

ProjMap ProjMap::identity(const Field& f) { return ProjMap(f.one(), f.zero(), f.zero(), f.one()); }

ProjMap ProjMap::from_ints(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return ProjMap(f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d));
}

bool ProjMap::is_identity() const { return m_[0].is_one() && m_[1].is_zero() && m_[2].is_zero() && m_[3].is_one(); }

bool operator<(const ProjMap& x, const ProjMap& y) {
    for (int i = 0; i < 4; ++i) {
        if (x.m_[i].code() != y.m_[i].code()) return x.m_[i].code() < y.m_[i].code();
    }
    return false;
}

ProjMap compose(const ProjMap& f, const ProjMap& g) {
    if (f.field() != g.field()) fail(ErrorCode::MixedFields, "maps over different fields");
    return ProjMap(f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(), f.c() * g.a() + f.d() * g.c(),
                   f.c() * g.b() + f.d() * g.d());
}

ProjMap inverse(const ProjMap& f) { return ProjMap(f.d(), -f.b(), -f.c(), f.a()); }

ProjMap power(const ProjMap& f, std::uint64_t n) {
    ProjMap r = ProjMap::identity(f.field());
    ProjMap b = f;
    while (n) {
        if (n & 1) r = compose(r, b);
        b = compose(b, b);
        n >>= 1;
    }
    return r;
}

ProjPoint apply(const ProjMap& f, const ProjPoint& P) {
    if (f.field() != P.field()) fail(ErrorCode::MixedFields, "point and map over different fields");
    const Elem x1 = P.x1(), x2 = P.x2();
    return ProjPoint::homogeneous(f.a() * x1 + f.b() * x2, f.c() * x1 + f.d() * x2);
}

std::uint64_t order_by_criterion(const ProjMap& A) {
    if (A.is_identity()) fail(ErrorCode::IdentityElement, "the identity has no order criterion");
    const Field f = A.field();
    const Elem tr2 = A.trace() * A.trace();
    const Elem det = A.det();
    if (tr2 == 4 * det) return f.characteristic();
    if (tr2.is_zero()) return 2;
    // zeta + 1/zeta = c, so zeta is the class of X in F[X]/(X^2 - cX + 1)
    const Elem c = tr2 / det - f.from_int(2);
    const std::uint64_t q = f.order();
    std::vector<std::uint64_t> cand = divisors(q - 1);
    for (auto d : divisors(q + 1)) cand.push_back(d);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    const Quad X{f.zero(), f.one()};
    for (auto n : cand) {
        if (n < 2) continue;
        Quad r = quad_pow(X, n, c);
        if (r.u0.is_one() && r.u1.is_zero()) return n;
    }
    fail(ErrorCode::InvariantViolation, "no order divides q - 1 or q + 1");
}

std::uint64_t order_by_powering(const ProjMap& A) {
    if (A.is_identity()) fail(ErrorCode::IdentityElement, "the identity has no order criterion");
    const Field f = A.field();
    const std::uint64_t bound = std::max<std::uint64_t>(f.characteristic(), f.order() + 1);
    ProjMap r = A;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        if (r.is_identity()) return n;
        r = compose(r, A);
    }
    fail(ErrorCode::InvariantViolation, "order exceeds max(p, q + 1)");
}

Elem conjugacy_invariant(const ProjMap& A) {
    if (A.is_identity()) fail(ErrorCode::IdentityElement, "the identity has no conjugacy invariant");
    return A.trace() * A.trace() / A.det();
}

ProjMap m_zeta(const Elem& zeta) {
    const Field f = zeta.field();
    const Elem s = zeta + zeta.inv();
    return ProjMap(s, s - f.from_int(2), f.one(), f.from_int(2));
}

ProjMap standard_order_n(const Field& f, std::uint64_t n) {
    if (n == f.characteristic()) return ProjMap::from_ints(f, 1, 1, 0, 1);
    if (n < 2) fail(ErrorCode::InvalidArgument, "order must be at least 2");
    // M_zeta degenerates at zeta = -1
    if (n == 2) return ProjMap::from_ints(f, -1, 0, 0, 1);
    return m_zeta(ff::primitive_root_of_unity(f, n));
}

ProjMap four_point_involution(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d) {
    const ProjPoint pts[] = {a, b, c, d};
    for (int i = 0; i < 4; ++i) {
        if (pts[i].field() != a.field()) fail(ErrorCode::MixedFields, "points over different fields");
        for (int j = i + 1; j < 4; ++j)
            if (pts[i] == pts[j]) fail(ErrorCode::DegeneratePoints, "the four points must be pairwise distinct");
    }
    const Elem a1 = a.x1(), a2 = a.x2(), b1 = b.x1(), b2 = b.x2();
    const Elem c1 = c.x1(), c2 = c.x2(), d1 = d.x1(), d2 = d.x2();
    const Elem m11 = a1 * b1 * c2 * d2 - c1 * d1 * a2 * b2;
    const Elem m12 = a1 * c1 * d1 * b2 + b1 * c1 * d1 * a2 - a1 * b1 * c1 * d2 - a1 * b1 * d1 * c2;
    const Elem m21 = (a1 * b2 + a2 * b1) * c2 * d2 - (c1 * d2 + c2 * d1) * a2 * b2;
    return ProjMap(m11, m12, m21, -m11);
}

std::vector<ProjMap> subgroup_closure(const std::vector<ProjMap>& generators, std::size_t cap) {
    if (generators.empty()) fail(ErrorCode::InvalidArgument, "no generators");
    const Field f = generators.front().field();
    for (const auto& g : generators)
        if (g.field() != f) fail(ErrorCode::MixedFields, "generators over different fields");
    MapSet seen;
    std::deque<ProjMap> queue;
    const ProjMap id = ProjMap::identity(f);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        ProjMap h = queue.front();
        queue.pop_front();
        for (const auto& g : generators) {
            ProjMap x = compose(h, g);
            if (seen.insert(x).second) {
                if (seen.size() > cap)
                    fail(ErrorCode::ClosureCapExceeded, "subgroup exceeds " + std::to_string(cap) + " elements");
                queue.push_back(x);
            }
        }
    }
    std::vector<ProjMap> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::string SubgroupClass::name() const {
    if (params.empty()) return tag;
    std::string s = tag + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(params[i]);
    }
    return s + ")";
}

namespace {

bool is_power_of(std::uint64_t n, std::uint64_t p, unsigned& k) {
    k = 0;
    while (n > 1 && n % p == 0) {
        n /= p;
        ++k;
    }
    return n == 1;
}

std::uint64_t element_order(const ProjMap& g) { return g.is_identity() ? 1 : order_by_criterion(g); }

SubgroupClass make_class(std::string tag, std::vector<std::uint64_t> params, std::uint64_t order) {
    SubgroupClass c;
    c.tag = std::move(tag);
    c.params = std::move(params);
    c.order = order;
    return c;
}

}  // namespace

SubgroupClass classify_subgroup(const std::vector<ProjMap>& G) {
    if (G.empty()) fail(ErrorCode::NotAGroup, "empty set");
    const Field f = G.front().field();
    const std::uint64_t p = f.characteristic();
    MapSet set(G.begin(), G.end());
    if (set.size() != G.size()) fail(ErrorCode::NotAGroup, "repeated elements");
    if (!set.count(ProjMap::identity(f))) fail(ErrorCode::NotAGroup, "identity missing");
    for (const auto& g : G) {
        if (g.field() != f) fail(ErrorCode::MixedFields, "elements over different fields");
        if (!set.count(inverse(g))) fail(ErrorCode::NotAGroup, "not closed under inverses");
        for (const auto& h : G)
            if (!set.count(compose(g, h))) fail(ErrorCode::NotAGroup, "not closed under composition");
    }
    const std::uint64_t n = G.size();
    std::map<std::uint64_t, std::uint64_t> spectrum;
    for (const auto& g : G) ++spectrum[element_order(g)];
    auto has_order = [&](std::uint64_t k) { return spectrum.count(k) > 0; };

    if (n % p == 0) {
        std::vector<ProjMap> Q;
        for (const auto& g : G) {
            auto o = element_order(g);
            if (o == 1 || o == p) Q.push_back(g);
        }
        unsigned rank = 0;
        bool semidirect = is_power_of(Q.size(), p, rank) && n % Q.size() == 0;
        if (semidirect) {
            MapSet qs(Q.begin(), Q.end());
            for (std::size_t i = 0; semidirect && i < Q.size(); ++i)
                for (std::size_t j = 0; semidirect && j < Q.size(); ++j)
                    semidirect = qs.count(compose(Q[i], Q[j])) > 0 && compose(Q[i], Q[j]) == compose(Q[j], Q[i]);
            for (std::size_t i = 0; semidirect && i < G.size(); ++i)
                for (std::size_t j = 0; semidirect && j < Q.size(); ++j)
                    semidirect = qs.count(compose(compose(G[i], Q[j]), inverse(G[i]))) > 0;
        }
        const std::uint64_t c = n / std::max<std::size_t>(Q.size(), 1);
        if (semidirect && c % p != 0 && (c == 1 || has_order(c))) {
            auto cls = make_class("SemidirectPC", {rank, c}, n);
            if (rank == 1 && c == 1) cls.aliases.push_back("Cyclic(" + std::to_string(p) + ")");
            if (rank == 1 && c == 2) cls.aliases.push_back("Dihedral(" + std::to_string(p) + ")");
            return cls;
        }
        for (std::uint64_t q = p; q <= 1000000; q *= p) {
            const std::uint64_t full = q * (q * q - 1);
            if (n == full) {
                auto cls = make_class("PGL2", {q}, n);
                if (q == 3) cls.aliases.push_back("Sym4");
                return cls;
            }
            if (2 * n == full) {
                auto cls = make_class("PSL2", {q}, n);
                if (q == 3) cls.aliases.push_back("Alt4");
                if (q == 5) cls.aliases.push_back("Alt5");
                return cls;
            }
            if (full > 2 * n) break;
        }
        if (p == 3 && n == 60) return make_class("Alt5", {}, n);
        fail(ErrorCode::UnrecognizedSubgroup, "no Dickson type of order " + std::to_string(n) + " in characteristic " +
                                                  std::to_string(p));
    }

    if (has_order(n)) return make_class("Cyclic", {n}, n);
    if (n % 2 == 0 && has_order(n / 2)) {
        // a cyclic subgroup of index 2 whose complement consists of involutions
        std::uint64_t involutions = spectrum.count(2) ? spectrum[2] : 0;
        std::uint64_t expected = n / 2 + (n / 2 % 2 == 0 ? 1 : 0);
        if (involutions == expected) return make_class("Dihedral", {n / 2}, n);
    }
    if (n == 12) return make_class("Alt4", {}, n);
    if (n == 24) return make_class("Sym4", {}, n);
    if (n == 60) return make_class("Alt5", {}, n);
    fail(ErrorCode::UnrecognizedSubgroup, "no Dickson type of order " + std::to_string(n));
}

std::vector<ProjMap> enumerate_pgl2(const Field& f) {
    const std::uint64_t q = f.order();
    if (q > 49) fail(ErrorCode::SizeCapExceeded, "enumeration of PGL2 is limited to q <= 49");
    std::vector<ProjMap> out;
    out.reserve(q * (q * q - 1));
    const Elem one = f.one();
    for (std::uint64_t b = 0; b < q; ++b)
        for (std::uint64_t c = 0; c < q; ++c)
            for (std::uint64_t d = 0; d < q; ++d) {
                Elem B = f.from_code(b), C = f.from_code(c), D = f.from_code(d);
                if (D - B * C != f.zero()) out.emplace_back(one, B, C, D);
            }
    for (std::uint64_t c = 1; c < q; ++c)
        for (std::uint64_t d = 0; d < q; ++d) out.emplace_back(f.zero(), one, f.from_code(c), f.from_code(d));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProjPoint> fixed_points(const ProjMap& m) {
    // c x^2 + (d - a) x - b = 0, plus infinity when c = 0
    const Field f = m.field();
    std::vector<ProjPoint> out;
    if (m.is_identity()) fail(ErrorCode::IdentityElement, "every point is fixed by the identity");
    poly::Poly eq(f, {-m.b(), m.d() - m.a(), m.c()});
    if (m.c().is_zero()) out.push_back(ProjPoint::infinity(f));
    if (eq.degree() >= 1) {
        auto rs = poly::roots(eq);
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        for (const auto& r : rs) out.push_back(ProjPoint::finite(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

OrderPSurvey survey_order_p(const Field& f) {
    OrderPSurvey s;
    std::set<ProjPoint> fixed;
    for (const auto& g : enumerate_pgl2(f)) {
        if (g.is_identity() || order_by_criterion(g) != f.characteristic()) continue;
        ++s.order_p_count;
        if (g.trace() * g.trace() != 4 * g.det()) s.all_unipotent = false;
        for (const auto& P : fixed_points(g)) fixed.insert(P);
    }
    s.fixed_point_union.assign(fixed.begin(), fixed.end());
    return s;
}

ProjMap from_triple(const ProjPoint& P, const ProjPoint& Q, const ProjPoint& R) {
    if (P == Q || P == R || Q == R) fail(ErrorCode::DegeneratePoints, "triple must be pairwise distinct");
    // columns lambda*Q and mu*P with lambda*Q + mu*P = R
    const Elem q1 = Q.x1(), q2 = Q.x2(), p1 = P.x1(), p2 = P.x2(), r1 = R.x1(), r2 = R.x2();
    const Elem det = q1 * p2 - p1 * q2;
    const Elem lambda = (r1 * p2 - p1 * r2) / det;
    const Elem mu = (q1 * r2 - r1 * q2) / det;
    return ProjMap(lambda * q1, mu * p1, lambda * q2, mu * p2);
}

std::vector<ProjMap> stabilizer_of_set(const std::vector<ProjPoint>& sigma, const Field& ambient) {
    if (sigma.size() < 3) fail(ErrorCode::TooFewPoints, "need at least three points");
    for (const auto& P : sigma)
        if (P.field() != ambient) fail(ErrorCode::MixedFields, "points must be given over the ambient field");
    std::set<ProjPoint> members(sigma.begin(), sigma.end());
    if (members.size() != sigma.size()) fail(ErrorCode::DegeneratePoints, "points must be pairwise distinct");
    const ProjMap S_inv = inverse(from_triple(sigma[0], sigma[1], sigma[2]));
    std::set<ProjMap> out;
    const std::size_t n = sigma.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                ProjMap g = compose(from_triple(sigma[i], sigma[j], sigma[k]), S_inv);
                bool ok = true;
                for (const auto& P : sigma) {
                    if (!members.count(apply(g, P))) {
                        ok = false;
                        break;
                    }
                }
                if (ok) out.insert(g);
            }
        }
    return {out.begin(), out.end()};
}

ProjPoint embed(const ProjPoint& P, const Field& target) {
    if (P.is_infinity()) return ProjPoint::infinity(target);
    return ProjPoint::finite(poly::embed(P.x(), target));
}

ProjMap embed(const ProjMap& f, const Field& target) {
    return ProjMap(poly::embed(f.a(), target), poly::embed(f.b(), target), poly::embed(f.c(), target),
                   poly::embed(f.d(), target));
}

}  // namespace potts::pgl2
