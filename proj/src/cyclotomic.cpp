#include "potts/cyclotomic.hpp"

#include <algorithm>
#include <map>

namespace potts::cyclo {

namespace {

const DyadicPoly& chi(unsigned N) {
    static thread_local std::map<unsigned, DyadicPoly> memo;
    auto it = memo.find(N);
    if (it == memo.end()) it = memo.emplace(N, poly::half_trace_chi(N)).first;
    return it->second;
}

}  // namespace

HalfTraceElem::HalfTraceElem(unsigned N, DyadicPoly coeffs) : n_(N), c_(std::move(coeffs)) {
    const DyadicPoly& m = chi(N);
    const std::size_t h = m.size() - 1;
    // reduce by the monic modulus
    for (std::size_t k = c_.size(); k-- > h;) {
        const Dyadic lead = c_[k];
        if (lead.is_zero()) continue;
        for (std::size_t i = 0; i <= h; ++i) c_[k - h + i] = c_[k - h + i] - lead * m[i];
    }
    c_.resize(h);
}

HalfTraceElem HalfTraceElem::constant(unsigned N, const Dyadic& c) { return HalfTraceElem(N, {c}); }

HalfTraceElem HalfTraceElem::v(unsigned N) { return HalfTraceElem(N, {Dyadic(0), Dyadic(1)}); }

bool HalfTraceElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Dyadic& d) { return d.is_zero(); });
}

HalfTraceElem HalfTraceElem::operator+(const HalfTraceElem& o) const {
    if (o.n_ != n_) fail(ErrorCode::MixedModulus, "half-trace elements for different N");
    DyadicPoly r = c_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + o.c_[i];
    return HalfTraceElem(n_, std::move(r));
}

HalfTraceElem HalfTraceElem::operator-(const HalfTraceElem& o) const {
    if (o.n_ != n_) fail(ErrorCode::MixedModulus, "half-trace elements for different N");
    DyadicPoly r = c_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - o.c_[i];
    return HalfTraceElem(n_, std::move(r));
}

HalfTraceElem HalfTraceElem::operator*(const HalfTraceElem& o) const {
    if (o.n_ != n_) fail(ErrorCode::MixedModulus, "half-trace elements for different N");
    if (c_.empty()) return *this;
    DyadicPoly r(2 * c_.size() - 1, Dyadic(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    return HalfTraceElem(n_, std::move(r));
}

FibreDescriptor fibre_mod_p(unsigned N, std::uint64_t p) {
    if (p == 2) fail(ErrorCode::EvenPrime, "the coefficient ring inverts 2");
    if (!ff::is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (N % 2 == 0) fail(ErrorCode::EvenN, "N must be odd");
    FibreDescriptor d;
    const unsigned h = poly::euler_phi(N) / 2;
    if (N % p == 0 && N != p) {
        d.empty = true;
        return d;
    }
    const ff::Field f = ff::make_field(p, 1);
    const poly::Poly red = poly::reduce_mod_p(poly::half_trace_chi(N), p);
    if (N == p) {
        const unsigned m = static_cast<unsigned>((p - 1) / 2);
        ensure(red == poly::pow(poly::Poly::from_ints(f, {-1, 1}), m), "chi_p is not (v - 1)^((p-1)/2) mod p");
        d.components = 1;
        d.multiplicity = m;
        d.reduced = m == 1;
        return d;
    }
    ensure(poly::gcd(red, poly::derivative(red)).degree() == 0, "chi_N is not separable mod p");
    d.components = h;
    d.multiplicity = 1;
    d.reduced = true;
    return d;
}

std::vector<ff::Elem> embed_half_trace(unsigned N, const ff::Field& F) {
    if (N % 2 == 0) fail(ErrorCode::EvenN, "N must be odd");
    if ((F.order() - 1) % N != 0)
        fail(ErrorCode::NoSuchRoot, "F_" + F.spec() + " has no primitive " + std::to_string(N) + "-th root of unity");
    auto rs = poly::roots(poly::reduce_into(poly::half_trace_chi(N), F));
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    ensure(rs.size() == poly::euler_phi(N) / 2, "chi_N does not split into distinct roots");
    return rs;
}

}  // namespace potts::cyclo
