#include "lincount/kernel.hpp"

#include "lincount/errors.hpp"

namespace lincount::kernel {

FPoly mul(const FieldTable& T, const FPoly& a, const FPoly& b) {
    FPoly r;
    if (a.empty() || b.empty()) return r;
    r.assign(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] = T.add(r[i + j], T.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

FPoly rem(const FieldTable& T, FPoly a, const FPoly& b) {
    if (b.empty()) throw DivisionByZeroError("polynomial division by zero");
    const int db = deg(b);
    const FIdx li = T.inv(b.back());
    while (deg(a) >= db) {
        FIdx coef = T.mul(a.back(), li);
        int shift = deg(a) - db;
        for (int i = 0; i <= db; ++i)
            a[i + shift] = T.sub(a[i + shift], T.mul(coef, b[i]));
        trim(a);
    }
    return a;
}

FPoly monic(const FieldTable& T, FPoly a) {
    if (a.empty()) return a;
    FIdx li = T.inv(a.back());
    for (auto& x : a) x = T.mul(x, li);
    return a;
}

FPoly gcd(const FieldTable& T, FPoly a, FPoly b) {
    while (!b.empty()) {
        FPoly r = rem(T, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(T, std::move(a));
}

FPoly deriv(const FieldTable& T, const FPoly& a) {
    FPoly r;
    const std::int64_t p = T.ctx().p();
    for (int i = 1; i <= deg(a); ++i) {
        FIdx k = static_cast<FIdx>(i % p);  // scalar i embeds at index i mod p
        r.push_back(T.mul(a[i], k));
    }
    trim(r);
    return r;
}

FIdx eval(const FieldTable& T, const FPoly& f, FIdx x) {
    FIdx acc = 0;
    for (int i = deg(f); i >= 0; --i) acc = T.add(T.mul(acc, x), f[i]);
    return acc;
}

FPoly powmod_u64(const FieldTable& T, const FPoly& base, std::uint64_t e, const FPoly& m) {
    FPoly result{T.one()};
    result = rem(T, std::move(result), m);
    FPoly b = rem(T, base, m);
    while (e > 0) {
        if (e & 1) result = rem(T, mul(T, result, b), m);
        b = rem(T, mul(T, b, b), m);
        e >>= 1;
    }
    return result;
}

FPoly x_pow_card(const FieldTable& T, const FPoly& m) {
    FPoly x{0, T.one()};
    return powmod_u64(T, x, T.card(), m);
}

int count_roots(const FieldTable& T, const FPoly& f) {
    if (f.empty()) throw ZeroPolynomialError("root count of the zero polynomial");
    if (deg(f) == 0) return 0;
    if (deg(f) == 1) return 1;
    FPoly h = x_pow_card(T, f);
    // gcd(h - x, f)
    FPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = T.sub(hx[1], T.one());
    trim(hx);
    FPoly g = gcd(T, std::move(hx), f);
    return deg(g) < 0 ? 0 : deg(g);
}

bool squarefree(const FieldTable& T, const FPoly& f) {
    if (deg(f) < 1) return !f.empty();
    FPoly fp = deriv(T, f);
    if (fp.empty()) return false;
    return deg(gcd(T, f, fp)) == 0;
}

void ddf_degrees(const FieldTable& T, FPoly g, std::vector<int>& parts) {
    if (deg(g) < 1) return;
    FPoly x{0, T.one()};
    FPoly h = rem(T, x, g);
    int i = 0;
    while (deg(g) >= 2 * (i + 1)) {
        ++i;
        h = powmod_u64(T, h, T.card(), g);
        FPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = T.sub(hx[1], T.one());
        trim(hx);
        FPoly gd = gcd(T, std::move(hx), g);
        if (deg(gd) > 0) {
            for (int j = 0; j < deg(gd) / i; ++j) parts.push_back(i);
            // g /= gd
            FPoly q;
            {
                // exact division via repeated leading elimination
                FPoly a = g;
                const int db = deg(gd);
                q.assign(deg(a) - db + 1, 0);
                FIdx li = T.inv(gd.back());
                while (deg(a) >= db) {
                    FIdx coef = T.mul(a.back(), li);
                    int shift = deg(a) - db;
                    q[shift] = coef;
                    for (int k = 0; k <= db; ++k)
                        a[k + shift] = T.sub(a[k + shift], T.mul(coef, gd[k]));
                    trim(a);
                }
            }
            g = std::move(q);
            h = rem(T, std::move(h), g);
        }
    }
    if (deg(g) > 0) parts.push_back(deg(g));
}

bool bform_is_zero(const BForm& B) {
    for (FIdx x : B)
        if (x != 0) return false;
    return true;
}

int bform_proj_root_count(const FieldTable& T, const BForm& B) {
    FPoly f = B;
    trim(f);
    if (f.empty()) throw ZeroPolynomialError("projective roots of the zero form");
    int at_inf = (deg(f) < static_cast<int>(B.size()) - 1) ? 1 : 0;
    return count_roots(T, f) + at_inf;
}

bool bform_squarefree(const FieldTable& T, const BForm& B) {
    FPoly f = B;
    trim(f);
    if (f.empty()) return false;
    const int d = static_cast<int>(B.size()) - 1;
    if (d - deg(f) > 1) return false;
    return squarefree(T, f);
}

void bform_partition(const FieldTable& T, const BForm& B, std::vector<int>& parts) {
    FPoly f = B;
    trim(f);
    const int d = static_cast<int>(B.size()) - 1;
    if (f.empty()) throw ZeroPolynomialError("partition of the zero form");
    const int df = deg(f);
    if (df >= 1) ddf_degrees(T, monic(T, std::move(f)), parts);
    if (d > 0 && d - df == 1) parts.push_back(1);
}

} // namespace lincount::kernel
