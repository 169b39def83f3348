#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lincount/errors.hpp"
#include "lincount/rng.hpp"

namespace lincount {

using Scalar = std::int64_t;

/// Element of the intermediate field F_q = F_p[t]/(base_modulus),
/// r coefficients over F_p, least-degree first.
using BaseElem = std::vector<Scalar>;

class FieldCtx;

/// Element of the top field F_{q^N}: N base-field coefficients,
/// least-degree first.  Plain data; always stored fully reduced, so
/// equality of coefficient vectors is equality of elements.
struct FieldElement {
    const FieldCtx* ctx = nullptr;
    std::vector<BaseElem> c;

    bool operator==(const FieldElement& o) const { return c == o.c; }
    bool operator!=(const FieldElement& o) const { return c != o.c; }
    bool operator<(const FieldElement& o) const { return c < o.c; }
};

/// A tower F_p ⊂ F_q = F_{p^r} ⊂ F_{q^N}.  Immutable after construction;
/// safe to share across threads.  Moduli are the lexicographically smallest
/// monic irreducibles of their degree, so contexts (and everything derived
/// from them) are reproducible across runs and machines.
class FieldCtx {
public:
    static std::shared_ptr<const FieldCtx> create(Scalar p, int r, int N);

    Scalar p() const { return p_; }
    int r() const { return r_; }
    int N() const { return N_; }
    const std::vector<Scalar>& base_modulus() const { return base_mod_; }
    const std::vector<BaseElem>& top_modulus() const { return top_mod_; }

    /// |F_q| as u64; throws if it does not fit.
    std::uint64_t base_card() const;
    /// |F_{q^N}| as u64; throws if it does not fit.
    std::uint64_t card() const;

    // ---- base field F_q ----
    BaseElem bzero() const { return BaseElem(r_, 0); }
    BaseElem bone() const;
    BaseElem bfrom_int(std::int64_t v) const;
    bool bis_zero(const BaseElem& a) const;
    BaseElem badd(const BaseElem& a, const BaseElem& b) const;
    BaseElem bsub(const BaseElem& a, const BaseElem& b) const;
    BaseElem bneg(const BaseElem& a) const;
    BaseElem bmul(const BaseElem& a, const BaseElem& b) const;
    BaseElem binv(const BaseElem& a) const;
    std::uint64_t bindex(const BaseElem& a) const;
    BaseElem belem_at(std::uint64_t idx) const;

    // ---- top field F_{q^N} ----
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(std::int64_t v) const;
    /// Constant embedding F_q ↪ F_{q^N}.
    FieldElement embed(const BaseElem& a) const;
    bool is_zero(const FieldElement& a) const;
    bool is_one(const FieldElement& a) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;
    FieldElement pow_u64(const FieldElement& a, std::uint64_t e) const;
    /// a ↦ a^(q^steps); an automorphism fixing the embedded F_q.
    FieldElement frobenius(const FieldElement& a, int steps) const;
    /// p-th root (inverse of a ↦ a^p; exists and is unique, the field is perfect).
    FieldElement pth_root(const FieldElement& a) const;

    /// Deterministic enumeration: index i has the base-p digits of i as
    /// scalar coefficients, least significant digit = lowest coefficient.
    FieldElement element_at(std::uint64_t idx) const;
    std::uint64_t element_index(const FieldElement& a) const;
    FieldElement random_element(TrialRng& rng) const;

    void check_same(const FieldElement& a) const {
        if (a.ctx != this) throw ContextMismatchError("field element belongs to a different context");
    }

private:
    FieldCtx() = default;

    Scalar p_;
    int r_;
    int N_;
    std::vector<Scalar> base_mod_;    // degree r, monic, over F_p
    std::vector<BaseElem> top_mod_;   // degree N, monic, over F_q

    Scalar sadd(Scalar a, Scalar b) const { Scalar s = a + b; return s >= p_ ? s - p_ : s; }
    Scalar ssub(Scalar a, Scalar b) const { Scalar s = a - b; return s < 0 ? s + p_ : s; }
    Scalar smul(Scalar a, Scalar b) const { return (a * b) % p_; }
    Scalar sinv(Scalar a) const;
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

bool is_small_prime(Scalar p);

} // namespace lincount
