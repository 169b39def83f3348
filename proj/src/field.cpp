#include "lincount/field.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cassert>

namespace lincount {

using boost::multiprecision::cpp_int;

bool is_small_prime(Scalar p) {
    if (p < 2) return false;
    if (p >= (Scalar(1) << 20)) throw NotPrimeError("characteristic must be < 2^20");
    for (Scalar d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace {

// ---------------------------------------------------------------------------
// Generic dense polynomial helpers over an arbitrary coefficient field,
// used only for modulus construction.  F supplies the field operations.
// ---------------------------------------------------------------------------

template <class F>
struct Poly {
    using Elem = typename F::Elem;
    std::vector<Elem> c;
};

template <class F>
void pp_trim(const F& f, Poly<F>& a) {
    while (!a.c.empty() && f.is_zero(a.c.back())) a.c.pop_back();
}

template <class F>
int pp_deg(const Poly<F>& a) { return static_cast<int>(a.c.size()) - 1; }

template <class F>
Poly<F> pp_x(const F& f) {
    Poly<F> r;
    r.c = {f.zero(), f.one()};
    return r;
}

template <class F>
Poly<F> pp_sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), f.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = f.pp_sub(r.c[i], b.c[i]);
    pp_trim(f, r);
    return r;
}

template <class F>
Poly<F> pp_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, f.zero());
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = f.add(r.c[i + j], f.pp_mul(a.c[i], b.c[j]));
    pp_trim(f, r);
    return r;
}

// remainder of a by monic m
template <class F>
Poly<F> pp_rem(const F& f, Poly<F> a, const Poly<F>& m) {
    const int dm = pp_deg(m);
    assert(dm >= 0);
    while (pp_deg(a) >= dm) {
        auto lead = a.c.back();
        int shift = pp_deg(a) - dm;
        for (int i = 0; i <= dm; ++i)
            a.c[i + shift] = f.pp_sub(a.c[i + shift], f.pp_mul(lead, m.c[i]));
        pp_trim(f, a);
    }
    return a;
}

template <class F>
Poly<F> pp_monic(const F& f, Poly<F> a) {
    if (a.c.empty()) return a;
    auto li = f.inv(a.c.back());
    for (auto& x : a.c) x = f.pp_mul(x, li);
    return a;
}

template <class F>
Poly<F> pp_gcd(const F& f, Poly<F> a, Poly<F> b) {
    while (!b.c.empty()) {
        auto r = pp_rem(f, a, pp_monic(f, b));
        a = b;
        b = r;
    }
    return pp_monic(f, a);
}

template <class F>
Poly<F> pp_powmod_x(const F& f, const cpp_int& e, const Poly<F>& m) {
    Poly<F> result;
    result.c = {f.one()};
    Poly<F> base = pp_rem(f, pp_x(f), m);
    cpp_int k = e;
    // left-to-right would need bit length; right-to-left is fine here
    while (k > 0) {
        if ((k & 1) != 0) result = pp_rem(f, pp_mul(f, result, base), m);
        base = pp_rem(f, pp_mul(f, base, base), m);
        k >>= 1;
    }
    return result;
}

// Rabin irreducibility test for monic f of degree m over a field of size B:
// x^(B^m) = x mod f  and  pp_gcd(x^(B^(m/l)) - x, f) = 1 for every prime l | m.
template <class F>
bool is_irreducible(const F& f, const Poly<F>& poly) {
    const int m = pp_deg(poly);
    if (m <= 0) return false;
    if (m == 1) return true;
    const cpp_int B = f.card();

    cpp_int Bm = 1;
    for (int i = 0; i < m; ++i) Bm *= B;
    auto h = pp_sub(f, pp_powmod_x(f, Bm, poly), pp_x(f));
    if (!h.c.empty()) return false;

    std::vector<int> primes;
    int mm = m;
    for (int l = 2; l * l <= mm; ++l)
        if (mm % l == 0) {
            primes.push_back(l);
            while (mm % l == 0) mm /= l;
        }
    if (mm > 1) primes.push_back(mm);
    for (int l : primes) {
        cpp_int Bl = 1;
        for (int i = 0; i < m / l; ++i) Bl *= B;
        auto g = pp_gcd(f, pp_sub(f, pp_powmod_x(f, Bl, poly), pp_x(f)), poly);
        if (pp_deg(g) != 0) return false;
    }
    return true;
}

// Smallest monic irreducible of degree m, scanning the non-leading
// coefficient tuple (a_{m-1}, ..., a_0) in ascending lexicographic order.
template <class F>
std::vector<typename F::Elem> find_modulus(const F& f, int m) {
    const cpp_int B = f.card();
    cpp_int total = 1;
    for (int i = 0; i < m; ++i) total *= B;
    for (cpp_int k = 0; k < total; ++k) {
        Poly<F> cand;
        cand.c.assign(m + 1, f.zero());
        cand.c[m] = f.one();
        cpp_int rest = k;
        for (int j = 0; j < m; ++j) {
            cand.c[j] = f.elem_at(static_cast<std::uint64_t>(rest % B));
            rest /= B;
        }
        if (is_irreducible(f, cand)) return cand.c;
    }
    throw InternalError("no irreducible modulus found");  // unreachable
}

// Coefficient field adapters -------------------------------------------------

struct ScalarField {
    using Elem = Scalar;
    Scalar p;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { Scalar s = a + b; return s >= p ? s - p : s; }
    Elem pp_sub(Elem a, Elem b) const { Scalar s = a - b; return s < 0 ? s + p : s; }
    Elem pp_mul(Elem a, Elem b) const { return (a * b) % p; }
    Elem inv(Elem a) const {
        if (a == 0) throw DivisionByZeroError("inverse of zero");
        Scalar t = 0, newt = 1, r = p, newr = a;
        while (newr != 0) {
            Scalar q = r / newr;
            Scalar tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        return ((t % p) + p) % p;
    }
    cpp_int card() const { return p; }
    Elem elem_at(std::uint64_t i) const { return static_cast<Scalar>(i); }
};

struct BaseField {
    using Elem = BaseElem;
    const FieldCtx* ctx;
    Elem zero() const { return ctx->bzero(); }
    Elem one() const { return ctx->bone(); }
    bool is_zero(const Elem& a) const { return ctx->bis_zero(a); }
    Elem add(const Elem& a, const Elem& b) const { return ctx->badd(a, b); }
    Elem pp_sub(const Elem& a, const Elem& b) const { return ctx->bsub(a, b); }
    Elem pp_mul(const Elem& a, const Elem& b) const { return ctx->bmul(a, b); }
    Elem inv(const Elem& a) const { return ctx->binv(a); }
    cpp_int card() const {
        cpp_int c = 1;
        for (int i = 0; i < ctx->r(); ++i) c *= ctx->p();
        return c;
    }
    Elem elem_at(std::uint64_t i) const { return ctx->belem_at(i); }
};

} // namespace

// ---------------------------------------------------------------------------
// FieldCtx
// ---------------------------------------------------------------------------

std::shared_ptr<const FieldCtx> FieldCtx::create(Scalar p, int r, int N) {
    if (!is_small_prime(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
    if (r < 1 || N < 1) throw DegreeZeroError("extension degrees must be >= 1");

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->r_ = r;
    ctx->N_ = N;

    if (r == 1) {
        ctx->base_mod_ = {0, 1};  // sentinel t: F_q = F_p
    } else {
        ScalarField sf{p};
        ctx->base_mod_ = find_modulus(sf, r);
    }

    if (N == 1) {
        ctx->top_mod_ = {ctx->bzero(), ctx->bone()};  // sentinel
    } else {
        BaseField bf{ctx.get()};
        ctx->top_mod_ = find_modulus(bf, N);
    }
    return ctx;
}

std::uint64_t FieldCtx::base_card() const {
    std::uint64_t c = 1;
    for (int i = 0; i < r_; ++i) {
        if (c > (UINT64_MAX >> 21)) throw BudgetExceededError("field too large for 64-bit cardinality");
        c *= static_cast<std::uint64_t>(p_);
    }
    return c;
}

std::uint64_t FieldCtx::card() const {
    std::uint64_t c = 1;
    for (int i = 0; i < r_ * N_; ++i) {
        if (c > (UINT64_MAX >> 21)) throw BudgetExceededError("field too large for 64-bit cardinality");
        c *= static_cast<std::uint64_t>(p_);
    }
    return c;
}

Scalar FieldCtx::sinv(Scalar a) const {
    return ScalarField{p_}.inv(a);
}

BaseElem FieldCtx::bone() const {
    BaseElem e(r_, 0);
    e[0] = 1;
    return e;
}

BaseElem FieldCtx::bfrom_int(std::int64_t v) const {
    BaseElem e(r_, 0);
    Scalar m = static_cast<Scalar>(((v % p_) + p_) % p_);
    e[0] = m;
    return e;
}

bool FieldCtx::bis_zero(const BaseElem& a) const {
    for (Scalar x : a)
        if (x != 0) return false;
    return true;
}

BaseElem FieldCtx::badd(const BaseElem& a, const BaseElem& b) const {
    BaseElem r(r_);
    for (int i = 0; i < r_; ++i) r[i] = sadd(a[i], b[i]);
    return r;
}

BaseElem FieldCtx::bsub(const BaseElem& a, const BaseElem& b) const {
    BaseElem r(r_);
    for (int i = 0; i < r_; ++i) r[i] = ssub(a[i], b[i]);
    return r;
}

BaseElem FieldCtx::bneg(const BaseElem& a) const {
    BaseElem r(r_);
    for (int i = 0; i < r_; ++i) r[i] = a[i] == 0 ? 0 : p_ - a[i];
    return r;
}

BaseElem FieldCtx::bmul(const BaseElem& a, const BaseElem& b) const {
    if (r_ == 1) return {smul(a[0], b[0])};
    std::vector<Scalar> prod(2 * r_ - 1, 0);
    for (int i = 0; i < r_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < r_; ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    }
    // reduce by monic base_mod_
    for (int k = 2 * r_ - 2; k >= r_; --k) {
        Scalar lead = prod[k];
        if (lead == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < r_; ++i)
            prod[k - r_ + i] = ssub(prod[k - r_ + i], smul(lead, base_mod_[i]));
    }
    prod.resize(r_);
    return prod;
}

BaseElem FieldCtx::binv(const BaseElem& a) const {
    if (bis_zero(a)) throw DivisionByZeroError("inverse of zero in F_q");
    if (r_ == 1) return {sinv(a[0])};
    // extended Euclid in F_p[t] against base_mod_
    ScalarField sf{p_};
    using SP = Poly<ScalarField>;
    SP r0, r1, t0, t1;
    r0.c = base_mod_;
    r1.c = a;
    pp_trim(sf, r1);
    t1.c = {1};
    while (pp_deg(r1) > 0) {
        // r0 = q*r1 + rr
        SP q;
        SP rr = r0;
        Scalar li = sf.inv(r1.c.back());
        q.c.assign(pp_deg(rr) - pp_deg(r1) + 1, 0);
        while (pp_deg(rr) >= pp_deg(r1)) {
            Scalar coef = sf.pp_mul(rr.c.back(), li);
            int shift = pp_deg(rr) - pp_deg(r1);
            q.c[shift] = coef;
            for (size_t i = 0; i < r1.c.size(); ++i)
                rr.c[i + shift] = sf.pp_sub(rr.c[i + shift], sf.pp_mul(coef, r1.c[i]));
            pp_trim(sf, rr);
        }
        SP tnew = pp_sub(sf, t0, pp_mul(sf, q, t1));
        r0 = r1; r1 = rr;
        t0 = t1; t1 = tnew;
    }
    if (r1.c.empty()) throw InternalError("binv: modulus not irreducible?");
    Scalar li = sf.inv(r1.c[0]);
    BaseElem res(r_, 0);
    for (size_t i = 0; i < t1.c.size(); ++i) res[i] = sf.pp_mul(t1.c[i], li);
    return res;
}

std::uint64_t FieldCtx::bindex(const BaseElem& a) const {
    std::uint64_t idx = 0;
    for (int i = r_ - 1; i >= 0; --i) idx = idx * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(a[i]);
    return idx;
}

BaseElem FieldCtx::belem_at(std::uint64_t idx) const {
    BaseElem e(r_, 0);
    for (int i = 0; i < r_; ++i) {
        e[i] = static_cast<Scalar>(idx % static_cast<std::uint64_t>(p_));
        idx /= static_cast<std::uint64_t>(p_);
    }
    return e;
}

FieldElement FieldCtx::zero() const {
    FieldElement e;
    e.ctx = this;
    e.c.assign(N_, bzero());
    return e;
}

FieldElement FieldCtx::one() const {
    FieldElement e = zero();
    e.c[0] = bone();
    return e;
}

FieldElement FieldCtx::from_int(std::int64_t v) const {
    FieldElement e = zero();
    e.c[0] = bfrom_int(v);
    return e;
}

FieldElement FieldCtx::embed(const BaseElem& a) const {
    FieldElement e = zero();
    e.c[0] = a;
    return e;
}

bool FieldCtx::is_zero(const FieldElement& a) const {
    for (const auto& b : a.c)
        if (!bis_zero(b)) return false;
    return true;
}

bool FieldCtx::is_one(const FieldElement& a) const {
    return a == one();
}

FieldElement FieldCtx::add(const FieldElement& a, const FieldElement& b) const {
    check_same(a); check_same(b);
    FieldElement r = a;
    for (int i = 0; i < N_; ++i) r.c[i] = badd(a.c[i], b.c[i]);
    return r;
}

FieldElement FieldCtx::sub(const FieldElement& a, const FieldElement& b) const {
    check_same(a); check_same(b);
    FieldElement r = a;
    for (int i = 0; i < N_; ++i) r.c[i] = bsub(a.c[i], b.c[i]);
    return r;
}

FieldElement FieldCtx::neg(const FieldElement& a) const {
    check_same(a);
    FieldElement r = a;
    for (int i = 0; i < N_; ++i) r.c[i] = bneg(a.c[i]);
    return r;
}

FieldElement FieldCtx::mul(const FieldElement& a, const FieldElement& b) const {
    check_same(a); check_same(b);
    if (N_ == 1) {
        FieldElement r = a;
        r.c[0] = bmul(a.c[0], b.c[0]);
        return r;
    }
    std::vector<BaseElem> prod(2 * N_ - 1, bzero());
    for (int i = 0; i < N_; ++i) {
        if (bis_zero(a.c[i])) continue;
        for (int j = 0; j < N_; ++j)
            prod[i + j] = badd(prod[i + j], bmul(a.c[i], b.c[j]));
    }
    for (int k = 2 * N_ - 2; k >= N_; --k) {
        if (bis_zero(prod[k])) continue;
        BaseElem lead = prod[k];
        prod[k] = bzero();
        for (int i = 0; i < N_; ++i)
            prod[k - N_ + i] = bsub(prod[k - N_ + i], bmul(lead, top_mod_[i]));
    }
    prod.resize(N_);
    FieldElement r;
    r.ctx = this;
    r.c = std::move(prod);
    return r;
}

FieldElement FieldCtx::inv(const FieldElement& a) const {
    check_same(a);
    if (is_zero(a)) throw DivisionByZeroError("inverse of zero");
    if (N_ == 1) {
        FieldElement r = a;
        r.c[0] = binv(a.c[0]);
        return r;
    }
    // extended Euclid in F_q[u] against top_mod_
    BaseField bf{this};
    using BP = Poly<BaseField>;
    BP r0, r1, t0, t1;
    r0.c = top_mod_;
    r1.c = a.c;
    pp_trim(bf, r1);
    t1.c = {bone()};
    while (pp_deg(r1) > 0) {
        BP q;
        BP rr = r0;
        BaseElem li = binv(r1.c.back());
        q.c.assign(pp_deg(rr) - pp_deg(r1) + 1, bzero());
        while (pp_deg(rr) >= pp_deg(r1)) {
            BaseElem coef = bmul(rr.c.back(), li);
            int shift = pp_deg(rr) - pp_deg(r1);
            q.c[shift] = coef;
            for (size_t i = 0; i < r1.c.size(); ++i)
                rr.c[i + shift] = bsub(rr.c[i + shift], bmul(coef, r1.c[i]));
            pp_trim(bf, rr);
        }
        BP tnew = pp_sub(bf, t0, pp_mul(bf, q, t1));
        r0 = r1; r1 = rr;
        t0 = t1; t1 = tnew;
    }
    if (r1.c.empty()) throw InternalError("inv: modulus not irreducible?");
    BaseElem li = binv(r1.c[0]);
    FieldElement res = zero();
    for (size_t i = 0; i < t1.c.size(); ++i) res.c[i] = bmul(t1.c[i], li);
    return res;
}

FieldElement FieldCtx::div(const FieldElement& a, const FieldElement& b) const {
    return mul(a, inv(b));
}

FieldElement FieldCtx::pow_u64(const FieldElement& a, std::uint64_t e) const {
    check_same(a);
    FieldElement result = one();
    FieldElement base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElement FieldCtx::frobenius(const FieldElement& a, int steps) const {
    check_same(a);
    if (steps < 0) throw OutOfRangeError("frobenius steps must be >= 0");
    FieldElement r = a;
    for (int i = 0; i < r_ * steps; ++i) r = pow_u64(r, static_cast<std::uint64_t>(p_));
    return r;
}

FieldElement FieldCtx::pth_root(const FieldElement& a) const {
    check_same(a);
    FieldElement r = a;
    for (int i = 0; i < r_ * N_ - 1; ++i) r = pow_u64(r, static_cast<std::uint64_t>(p_));
    return r;
}

FieldElement FieldCtx::element_at(std::uint64_t idx) const {
    FieldElement e = zero();
    for (int i = 0; i < N_; ++i)
        for (int j = 0; j < r_; ++j) {
            e.c[i][j] = static_cast<Scalar>(idx % static_cast<std::uint64_t>(p_));
            idx /= static_cast<std::uint64_t>(p_);
        }
    return e;
}

std::uint64_t FieldCtx::element_index(const FieldElement& a) const {
    std::uint64_t idx = 0;
    for (int i = N_ - 1; i >= 0; --i)
        for (int j = r_ - 1; j >= 0; --j)
            idx = idx * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(a.c[i][j]);
    return idx;
}

FieldElement FieldCtx::random_element(TrialRng& rng) const {
    FieldElement e = zero();
    for (int i = 0; i < N_; ++i)
        for (int j = 0; j < r_; ++j)
            e.c[i][j] = static_cast<Scalar>(rng.below(static_cast<std::uint64_t>(p_)));
    return e;
}

} // namespace lincount
