#include "lincount/field_table.hpp"

namespace lincount {

std::shared_ptr<const FieldTable> FieldTable::build(FieldCtxPtr ctx, std::uint64_t limit) {
    auto tab = std::shared_ptr<FieldTable>(new FieldTable());
    tab->ctx_ = ctx;
    std::uint64_t q = ctx->card();
    if (q > limit)
        throw BudgetExceededError("field cardinality " + std::to_string(q) +
                                  " exceeds table limit " + std::to_string(limit));
    tab->q_ = q;
    tab->order_ = q - 1;

    const std::uint64_t p = static_cast<std::uint64_t>(ctx->p());
    const int digits = ctx->r() * ctx->N();

    // chunked add table: h digits per lookup, p^h <= 2048 (or one digit)
    int h = 1;
    std::uint64_t chunk = p;
    while (h < digits && chunk * p <= 2048) {
        chunk *= p;
        ++h;
    }
    tab->chunk_ = static_cast<std::uint32_t>(chunk);
    tab->nchunks_ = (digits + h - 1) / h;
    tab->add_tab_.assign(chunk * chunk, 0);
    for (std::uint64_t a = 0; a < chunk; ++a)
        for (std::uint64_t b = 0; b < chunk; ++b) {
            std::uint64_t res = 0, mul = 1, x = a, y = b;
            for (int i = 0; i < h; ++i) {
                std::uint64_t s = x % p + y % p;
                if (s >= p) s -= p;
                res += s * mul;
                mul *= p;
                x /= p;
                y /= p;
            }
            tab->add_tab_[a * chunk + b] = static_cast<FIdx>(res);
        }

    tab->neg_tab_.assign(q, 0);
    for (std::uint64_t a = 0; a < q; ++a) {
        std::uint64_t res = 0, mul = 1, x = a;
        for (int i = 0; i < digits; ++i) {
            std::uint64_t d = x % p;
            res += (d == 0 ? 0 : p - d) * mul;
            mul *= p;
            x /= p;
        }
        tab->neg_tab_[a] = static_cast<FIdx>(res);
    }

    // prime factors of q-1 for the generator order test
    std::vector<std::uint64_t> primes;
    std::uint64_t m = q - 1;
    for (std::uint64_t l = 2; l * l <= m; ++l)
        if (m % l == 0) {
            primes.push_back(l);
            while (m % l == 0) m /= l;
        }
    if (m > 1) primes.push_back(m);

    FieldElement g;
    bool found = false;
    for (std::uint64_t cand = 1; cand < q && !found; ++cand) {
        g = ctx->element_at(cand);
        found = true;
        for (std::uint64_t l : primes)
            if (ctx->is_one(ctx->pow_u64(g, (q - 1) / l))) {
                found = false;
                break;
            }
    }
    if (!found) throw InternalError("no generator found");
    tab->gen_ = static_cast<FIdx>(ctx->element_index(g));

    tab->exp_.assign(2 * (q - 1) - 1, 0);
    tab->log_.assign(q, 0);
    FieldElement x = ctx->one();
    for (std::uint64_t k = 0; k < q - 1; ++k) {
        FIdx xi = static_cast<FIdx>(ctx->element_index(x));
        tab->exp_[k] = xi;
        tab->log_[xi] = static_cast<std::uint32_t>(k);
        x = ctx->mul(x, g);
    }
    if (!ctx->is_one(x)) throw InternalError("generator order mismatch");
    for (std::uint64_t k = q - 1; k < 2 * (q - 1) - 1; ++k)
        tab->exp_[k] = tab->exp_[k - (q - 1)];
    return tab;
}

} // namespace lincount
