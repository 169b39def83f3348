#include "lincount/upoly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>

namespace lincount {

using boost::multiprecision::cpp_int;

namespace {

cpp_int card_cpp(const FieldCtx& ctx) {
    cpp_int q = 1;
    for (int i = 0; i < ctx.r() * ctx.N(); ++i) q *= ctx.p();
    return q;
}

void trim(UPoly& a) {
    while (!a.c.empty() && a.ctx->is_zero(a.c.back())) a.c.pop_back();
}

void check_ctx(const UPoly& a, const UPoly& b) {
    if (a.ctx.get() != b.ctx.get())
        throw ContextMismatchError("polynomials over different contexts");
}

UPoly powmod_cpp(const UPoly& base, const cpp_int& e, const UPoly& m) {
    UPoly result = upoly_one(base.ctx);
    result = upoly_rem(result, m);
    UPoly b = upoly_rem(base, m);
    cpp_int k = e;
    while (k > 0) {
        if ((k & 1) != 0) result = upoly_rem(upoly_mul(result, b), m);
        b = upoly_rem(upoly_mul(b, b), m);
        k >>= 1;
    }
    return result;
}

UPoly pth_root_poly(const UPoly& f) {
    const auto& ctx = *f.ctx;
    const Scalar p = ctx.p();
    UPoly r;
    r.ctx = f.ctx;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) {
        r.c.push_back(ctx.pth_root(f.c[i]));
    }
    trim(r);
    return r;
}

void sfd_rec(const UPoly& f, int e, std::vector<std::pair<UPoly, int>>& out) {
    const auto& ctx = *f.ctx;
    if (f.degree() <= 0) return;
    UPoly fp = upoly_derivative(f);
    UPoly g = upoly_gcd(f, fp);
    UPoly w = upoly_div_exact(f, g);
    int i = 1;
    while (w.degree() > 0) {
        UPoly y = upoly_gcd(w, g);
        UPoly z = upoly_div_exact(w, y);
        if (z.degree() > 0) out.emplace_back(upoly_monic(z), i * e);
        w = y;
        g = upoly_div_exact(g, y);
        ++i;
    }
    if (g.degree() > 0) sfd_rec(pth_root_poly(g), e * static_cast<int>(ctx.p()), out);
}

// distinct-degree factorization of a squarefree monic g:
// returns (product of irreducible factors of degree i, i) pairs
std::vector<std::pair<UPoly, int>> ddf(UPoly g) {
    std::vector<std::pair<UPoly, int>> out;
    if (g.degree() <= 0) return out;
    UPoly h = upoly_rem(upoly_x(g.ctx), g);
    int i = 0;
    while (g.degree() >= 2 * (i + 1)) {
        ++i;
        h = upoly_pow_card(h, g);
        UPoly gd = upoly_gcd(upoly_sub(h, upoly_x(g.ctx)), g);
        if (gd.degree() > 0) {
            out.emplace_back(gd, i);
            g = upoly_div_exact(g, gd);
            h = upoly_rem(h, g);
        }
    }
    if (g.degree() > 0) out.emplace_back(g, g.degree());
    return out;
}

UPoly random_poly_below(FieldCtxPtr ctx, int deg_bound, TrialRng& rng) {
    UPoly a;
    a.ctx = ctx;
    a.c.resize(deg_bound);
    for (auto& e : a.c) e = ctx->random_element(rng);
    trim(a);
    return a;
}

// equal-degree splitting: f squarefree monic, all irreducible factors of degree e
void edf(const UPoly& f, int e, TrialRng& rng, std::vector<UPoly>& out) {
    const auto& ctx = *f.ctx;
    if (f.degree() == e) {
        out.push_back(f);
        return;
    }
    const cpp_int Q = card_cpp(ctx);
    const bool odd = (ctx.p() != 2);
    cpp_int Qe = 1;
    for (int i = 0; i < e; ++i) Qe *= Q;
    const int max_attempts = 64 * f.degree();
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        UPoly a = random_poly_below(f.ctx, f.degree(), rng);
        if (a.degree() < 1) continue;
        UPoly g = upoly_gcd(a, f);
        if (g.degree() == 0 || g.degree() == f.degree()) {
            if (odd) {
                UPoly b = powmod_cpp(a, (Qe - 1) / 2, f);
                g = upoly_gcd(upoly_sub(b, upoly_one(f.ctx)), f);
            } else {
                // trace splitter for characteristic 2
                int k = ctx.r() * ctx.N() * e;
                UPoly t = upoly_rem(a, f);
                UPoly c = t;
                for (int j = 1; j < k; ++j) {
                    c = upoly_rem(upoly_mul(c, c), f);
                    t = upoly_add(t, c);
                }
                g = upoly_gcd(t, f);
            }
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, e, rng, out);
            edf(upoly_div_exact(f, g), e, rng, out);
            return;
        }
    }
    throw InternalError("equal-degree splitting failed after retry budget");
}

} // namespace

UPoly upoly_zero(FieldCtxPtr ctx) {
    UPoly a;
    a.ctx = std::move(ctx);
    return a;
}

UPoly upoly_one(FieldCtxPtr ctx) {
    UPoly a;
    a.c = {ctx->one()};
    a.ctx = std::move(ctx);
    return a;
}

UPoly upoly_x(FieldCtxPtr ctx) {
    UPoly a;
    a.c = {ctx->zero(), ctx->one()};
    a.ctx = std::move(ctx);
    return a;
}

UPoly upoly_from_ints(FieldCtxPtr ctx, const std::vector<std::int64_t>& coeffs) {
    UPoly a;
    a.ctx = ctx;
    for (auto v : coeffs) a.c.push_back(ctx->from_int(v));
    trim(a);
    return a;
}

UPoly upoly_from_elems(FieldCtxPtr ctx, std::vector<FieldElement> coeffs) {
    UPoly a;
    a.ctx = std::move(ctx);
    a.c = std::move(coeffs);
    trim(a);
    return a;
}

UPoly upoly_add(const UPoly& a, const UPoly& b) {
    check_ctx(a, b);
    const auto& ctx = *a.ctx;
    UPoly r;
    r.ctx = a.ctx;
    r.c.resize(std::max(a.c.size(), b.c.size()), ctx.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = ctx.add(r.c[i], b.c[i]);
    trim(r);
    return r;
}

UPoly upoly_sub(const UPoly& a, const UPoly& b) {
    check_ctx(a, b);
    const auto& ctx = *a.ctx;
    UPoly r;
    r.ctx = a.ctx;
    r.c.resize(std::max(a.c.size(), b.c.size()), ctx.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = ctx.sub(r.c[i], b.c[i]);
    trim(r);
    return r;
}

UPoly upoly_neg(const UPoly& a) {
    UPoly r = a;
    for (auto& e : r.c) e = a.ctx->neg(e);
    return r;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
    check_ctx(a, b);
    const auto& ctx = *a.ctx;
    UPoly r;
    r.ctx = a.ctx;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, ctx.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (ctx.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = ctx.add(r.c[i + j], ctx.mul(a.c[i], b.c[j]));
    }
    trim(r);
    return r;
}

UPoly upoly_scale(const UPoly& a, const FieldElement& k) {
    const auto& ctx = *a.ctx;
    if (ctx.is_zero(k)) return upoly_zero(a.ctx);
    UPoly r = a;
    for (auto& e : r.c) e = ctx.mul(e, k);
    return r;
}

std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b) {
    check_ctx(a, b);
    const auto& ctx = *a.ctx;
    if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    UPoly q = upoly_zero(a.ctx);
    UPoly r = a;
    const int db = b.degree();
    if (a.degree() >= db) q.c.assign(a.degree() - db + 1, ctx.zero());
    FieldElement li = ctx.inv(b.leading());
    while (r.degree() >= db) {
        FieldElement coef = ctx.mul(r.leading(), li);
        int shift = r.degree() - db;
        q.c[shift] = coef;
        for (int i = 0; i <= db; ++i)
            r.c[i + shift] = ctx.sub(r.c[i + shift], ctx.mul(coef, b.c[i]));
        trim(r);
    }
    trim(q);
    return {q, r};
}

UPoly upoly_rem(const UPoly& a, const UPoly& b) { return upoly_divmod(a, b).second; }

UPoly upoly_div_exact(const UPoly& a, const UPoly& b) {
    auto [q, r] = upoly_divmod(a, b);
    if (!r.is_zero()) throw InternalError("inexact polynomial division");
    return q;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    check_ctx(a, b);
    while (!b.is_zero()) {
        UPoly r = upoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return upoly_monic(a);
}

UPoly upoly_derivative(const UPoly& a) {
    const auto& ctx = *a.ctx;
    UPoly r;
    r.ctx = a.ctx;
    for (int i = 1; i <= a.degree(); ++i)
        r.c.push_back(ctx.mul(a.c[i], ctx.from_int(i)));
    trim(r);
    return r;
}

UPoly upoly_monic(const UPoly& a) {
    if (a.is_zero()) return a;
    return upoly_scale(a, a.ctx->inv(a.leading()));
}

FieldElement upoly_eval(const UPoly& a, const FieldElement& x) {
    const auto& ctx = *a.ctx;
    FieldElement acc = ctx.zero();
    for (int i = a.degree(); i >= 0; --i) acc = ctx.add(ctx.mul(acc, x), a.c[i]);
    return acc;
}

UPoly upoly_powmod_u64(const UPoly& base, std::uint64_t e, const UPoly& m) {
    return powmod_cpp(base, cpp_int(e), m);
}

UPoly upoly_pow_card(const UPoly& h, const UPoly& m) {
    return powmod_cpp(h, card_cpp(*m.ctx), m);
}

UPoly upoly_x_pow_card(const UPoly& m, int reps) {
    UPoly h = upoly_rem(upoly_x(m.ctx), m);
    for (int i = 0; i < reps; ++i) h = upoly_pow_card(h, m);
    return h;
}

FieldElement upoly_resultant(const UPoly& f, const UPoly& g) {
    check_ctx(f, g);
    const auto& ctx = *f.ctx;
    if (f.is_zero() || g.is_zero()) return ctx.zero();
    UPoly a = f, b = g;
    FieldElement acc = ctx.one();
    bool negate = false;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
        std::swap(a, b);
    }
    while (b.degree() > 0) {
        UPoly r = upoly_rem(a, b);
        int da = a.degree(), db = b.degree(), dr = r.degree();
        if ((da & 1) && (db & 1)) negate = !negate;
        // Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
        acc = ctx.mul(acc, ctx.pow_u64(b.leading(), static_cast<std::uint64_t>(da - (dr < 0 ? 0 : dr))));
        if (dr < 0) {
            // r = 0 with deg b > 0: resultant vanishes
            return ctx.zero();
        }
        a = std::move(b);
        b = std::move(r);
    }
    // deg b == 0: Res(a, b) = b^deg(a)
    acc = ctx.mul(acc, ctx.pow_u64(b.c[0], static_cast<std::uint64_t>(a.degree())));
    return negate ? ctx.neg(acc) : acc;
}

FieldElement upoly_discriminant(const UPoly& f) {
    const auto& ctx = *f.ctx;
    const int d = f.degree();
    if (d < 1) throw DegreeZeroError("discriminant requires degree >= 1");
    UPoly fp = upoly_derivative(f);
    if (fp.is_zero()) return ctx.zero();
    FieldElement res = upoly_resultant(f, fp);
    FieldElement disc = ctx.div(res, f.leading());
    if ((static_cast<std::int64_t>(d) * (d - 1) / 2) % 2 == 1) disc = ctx.neg(disc);
    return disc;
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f) {
    if (f.degree() < 1) throw DegreeZeroError("squarefree decomposition requires degree >= 1");
    std::vector<std::pair<UPoly, int>> out;
    sfd_rec(upoly_monic(f), 1, out);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

int count_roots(const UPoly& f) {
    if (f.is_zero()) throw ZeroPolynomialError("root count of the zero polynomial");
    if (f.degree() == 0) return 0;
    // deg gcd(f, x^|F| - x), never materializing x^|F|
    UPoly h = upoly_x_pow_card(f);
    UPoly g = upoly_gcd(upoly_sub(h, upoly_x(f.ctx)), f);
    return std::max(g.degree(), 0);
}

std::vector<FieldElement> upoly_roots(const UPoly& f, TrialRng& rng) {
    const auto& ctx = *f.ctx;
    if (f.is_zero()) throw ZeroPolynomialError("roots of the zero polynomial");
    std::vector<FieldElement> roots;
    if (f.degree() == 0) return roots;
    UPoly h = upoly_x_pow_card(f);
    UPoly g = upoly_gcd(upoly_sub(h, upoly_x(f.ctx)), f);
    if (g.degree() <= 0) return roots;
    std::vector<UPoly> linear;
    edf(g, 1, rng, linear);
    for (const auto& l : linear) roots.push_back(ctx.neg(l.c[0]));
    std::sort(roots.begin(), roots.end(), [&](const FieldElement& a, const FieldElement& b) {
        return ctx.element_index(a) < ctx.element_index(b);
    });
    return roots;
}

std::vector<std::pair<UPoly, int>> factor(const UPoly& f, TrialRng& rng) {
    if (f.degree() < 1) throw DegreeZeroError("factor requires degree >= 1");
    std::vector<std::pair<UPoly, int>> out;
    for (const auto& [g, mult] : squarefree_decomposition(f)) {
        for (const auto& [prod, e] : ddf(g)) {
            std::vector<UPoly> irr;
            edf(prod, e, rng, irr);
            for (auto& h : irr) out.emplace_back(std::move(h), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.second < b.second;
    });
    return out;
}

Partition factorization_type(const UPoly& f) {
    if (f.degree() < 1) throw DegreeZeroError("factorization type requires degree >= 1");
    if (f.ctx->is_zero(upoly_discriminant(f)))
        throw NotSquarefreeError("factorization type of a non-squarefree polynomial");
    std::vector<int> parts;
    for (const auto& [prod, e] : ddf(upoly_monic(f)))
        for (int i = 0; i < prod.degree() / e; ++i) parts.push_back(e);
    return Partition(std::move(parts));
}

// ---------------------------------------------------------------------------
// Binary forms
// ---------------------------------------------------------------------------

bool BinaryForm::is_zero() const {
    for (const auto& e : c)
        if (!ctx->is_zero(e)) return false;
    return true;
}

BinaryForm binary_form(FieldCtxPtr ctx, int d, std::vector<FieldElement> coeffs) {
    if (static_cast<int>(coeffs.size()) != d + 1)
        throw OutOfRangeError("binary form of degree d needs d+1 coefficients");
    BinaryForm B;
    B.ctx = std::move(ctx);
    B.d = d;
    B.c = std::move(coeffs);
    return B;
}

BinaryForm binary_form_from_ints(FieldCtxPtr ctx, int d, const std::vector<std::int64_t>& coeffs) {
    std::vector<FieldElement> es;
    for (auto v : coeffs) es.push_back(ctx->from_int(v));
    return binary_form(std::move(ctx), d, std::move(es));
}

UPoly dehomogenize(const BinaryForm& B) {
    return upoly_from_elems(B.ctx, B.c);
}

int infinity_multiplicity(const BinaryForm& B) {
    UPoly f = dehomogenize(B);
    if (f.is_zero()) throw ZeroPolynomialError("infinity multiplicity of the zero form");
    return B.d - f.degree();
}

int projective_root_count(const BinaryForm& B) {
    if (B.is_zero()) throw ZeroPolynomialError("projective roots of the zero form");
    UPoly f = dehomogenize(B);
    return count_roots(f) + (infinity_multiplicity(B) > 0 ? 1 : 0);
}

bool form_squarefree(const BinaryForm& B) {
    if (B.is_zero()) return false;
    UPoly f = dehomogenize(B);
    if (B.d - f.degree() > 1) return false;
    if (f.degree() < 1) return true;
    UPoly fp = upoly_derivative(f);
    if (fp.is_zero()) return false;
    return upoly_gcd(f, fp).degree() == 0;
}

Partition form_factorization_type(const BinaryForm& B) {
    if (!form_squarefree(B)) throw NotSquarefreeError("factorization type of a non-squarefree form");
    UPoly f = dehomogenize(B);
    std::vector<int> parts;
    if (f.degree() >= 1)
        for (const auto& [prod, e] : ddf(upoly_monic(f)))
            for (int i = 0; i < prod.degree() / e; ++i) parts.push_back(e);
    if (B.d - f.degree() == 1) parts.push_back(1);
    return Partition(std::move(parts));
}

std::vector<std::pair<int, int>> form_multiplicity_pattern(const BinaryForm& B) {
    if (B.is_zero()) throw ZeroPolynomialError("multiplicity pattern of the zero form");
    std::map<int, int> pat;
    UPoly f = dehomogenize(B);
    if (f.degree() >= 1)
        for (const auto& [g, mult] : squarefree_decomposition(f)) pat[mult] += g.degree();
    int minf = B.d - f.degree();
    if (minf > 0) pat[minf] += 1;
    return {pat.begin(), pat.end()};
}

BinaryForm form_compose(const BinaryForm& B, const FieldElement& a, const FieldElement& b,
                        const FieldElement& c, const FieldElement& e) {
    const auto& ctx = *B.ctx;
    const int d = B.d;
    // powers of the two substituted linear forms as coefficient vectors in (s,t)
    std::vector<std::vector<FieldElement>> powu(d + 1), powv(d + 1);
    powu[0] = {ctx.one()};
    powv[0] = {ctx.one()};
    for (int i = 1; i <= d; ++i) {
        powu[i].assign(i + 1, ctx.zero());
        powv[i].assign(i + 1, ctx.zero());
        for (int j = 0; j < i; ++j) {
            // multiply by (a s + b t) resp. (c s + e t); index = s-degree
            powu[i][j + 1] = ctx.add(powu[i][j + 1], ctx.mul(powu[i - 1][j], a));
            powu[i][j] = ctx.add(powu[i][j], ctx.mul(powu[i - 1][j], b));
            powv[i][j + 1] = ctx.add(powv[i][j + 1], ctx.mul(powv[i - 1][j], c));
            powv[i][j] = ctx.add(powv[i][j], ctx.mul(powv[i - 1][j], e));
        }
    }
    std::vector<FieldElement> out(d + 1, ctx.zero());
    for (int i = 0; i <= d; ++i) {
        if (ctx.is_zero(B.c[i])) continue;
        // B.c[i] * (a s + b t)^i * (c s + e t)^(d-i)
        const auto& pu = powu[i];
        const auto& pv = powv[d - i];
        for (size_t j = 0; j < pu.size(); ++j)
            for (size_t k = 0; k < pv.size(); ++k)
                out[j + k] = ctx.add(out[j + k], ctx.mul(B.c[i], ctx.mul(pu[j], pv[k])));
    }
    return binary_form(B.ctx, d, std::move(out));
}

BinaryForm form_gcd(const BinaryForm& A, const BinaryForm& B) {
    const auto& ctx = *A.ctx;
    UPoly fa = dehomogenize(A), fb = dehomogenize(B);
    UPoly g = upoly_gcd(fa, fb);
    int minf = std::min(A.d - fa.degree(), B.d - fb.degree());
    if (fa.is_zero()) { g = upoly_monic(fb); minf = B.d - fb.degree(); }
    if (fb.is_zero()) { g = upoly_monic(fa); minf = A.d - fa.degree(); }
    int d = std::max(g.degree(), 0) + minf;
    std::vector<FieldElement> coeffs(d + 1, ctx.zero());
    for (int i = 0; i <= g.degree(); ++i) coeffs[i] = g.c[i];
    if (g.is_zero()) coeffs[0] = ctx.one();  // both zero handled as constant
    return binary_form(A.ctx, d, std::move(coeffs));
}

} // namespace lincount
