#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lincount/field.hpp"

namespace lincount {

/// Element index into a FieldTable: the element's position in the
/// context's canonical enumeration order.
using FIdx = std::uint32_t;

/// Discrete-log tables for a small field F_{q^N} (cardinality up to a few
/// million).  Multiplication and inversion go through log/exp over a fixed
/// generator; addition works digit-wise on the mixed-radix element index
/// through chunked lookup tables.  This is the arithmetic used by the hot
/// experiment kernels; the generic FieldCtx path stays as the reference.
class FieldTable {
public:
    static constexpr std::uint64_t kDefaultLimit = 1u << 21;

    static std::shared_ptr<const FieldTable> build(FieldCtxPtr ctx,
                                                   std::uint64_t limit = kDefaultLimit);

    const FieldCtx& ctx() const { return *ctx_; }
    FieldCtxPtr ctx_ptr() const { return ctx_; }
    std::uint64_t card() const { return q_; }
    FIdx generator() const { return gen_; }

    FIdx zero() const { return 0; }
    FIdx one() const { return 1; }

    FIdx add(FIdx a, FIdx b) const {
        std::uint64_t res = 0, mul = 1;
        for (int c = 0; c < nchunks_; ++c) {
            res += static_cast<std::uint64_t>(
                       add_tab_[(a % chunk_) * chunk_ + (b % chunk_)]) * mul;
            a /= chunk_;
            b /= chunk_;
            mul *= chunk_;
        }
        return static_cast<FIdx>(res);
    }

    FIdx neg(FIdx a) const { return neg_tab_[a]; }
    FIdx sub(FIdx a, FIdx b) const { return add(a, neg_tab_[b]); }

    FIdx mul(FIdx a, FIdx b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    FIdx inv(FIdx a) const {
        if (a == 0) throw DivisionByZeroError("inverse of zero");
        std::uint32_t l = log_[a];
        return exp_[l == 0 ? 0 : order_ - l];
    }

    FIdx div(FIdx a, FIdx b) const { return mul(a, inv(b)); }

    FIdx pow_u64(FIdx a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? one() : 0;
        std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * (e % order_)) % order_;
        return exp_[l];
    }

    FieldElement to_element(FIdx a) const { return ctx_->element_at(a); }
    FIdx from_element(const FieldElement& a) const {
        return static_cast<FIdx>(ctx_->element_index(a));
    }
    FIdx from_int(std::int64_t v) const { return from_element(ctx_->from_int(v)); }

private:
    FieldTable() = default;

    FieldCtxPtr ctx_;
    std::uint64_t q_ = 0;      // |F_{q^N}|
    std::uint64_t order_ = 0;  // q - 1
    FIdx gen_ = 0;
    std::uint32_t chunk_ = 1;  // p^h, digits handled per add-table lookup
    int nchunks_ = 1;
    std::vector<FIdx> exp_;    // length 2*order - 1: exp_[k] = g^k
    std::vector<std::uint32_t> log_;
    std::vector<FIdx> neg_tab_;
    std::vector<FIdx> add_tab_;  // chunk_ x chunk_ digitwise sums
};

using FieldTablePtr = std::shared_ptr<const FieldTable>;

/// Uniform element index; consumes the rng exactly like
/// FieldCtx::random_element (one digit draw per tower coefficient), so the
/// table and generic experiment paths stay in lockstep.
inline FIdx random_fidx(const FieldTable& T, TrialRng& rng) {
    const auto& ctx = T.ctx();
    const std::uint64_t p = static_cast<std::uint64_t>(ctx.p());
    std::uint64_t idx = 0, mult = 1;
    for (int i = 0; i < ctx.r() * ctx.N(); ++i) {
        idx += rng.below(p) * mult;
        mult *= p;
    }
    return static_cast<FIdx>(idx);
}

} // namespace lincount
