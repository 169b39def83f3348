#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lincount/field.hpp"
#include "lincount/partition.hpp"

namespace lincount {

/// Dense univariate polynomial over the top field of a context,
/// coefficients least-degree first.  The zero polynomial has an empty
/// coefficient vector; otherwise the leading coefficient is nonzero.
struct UPoly {
    FieldCtxPtr ctx;
    std::vector<FieldElement> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const FieldElement& leading() const { return c.back(); }

    bool operator==(const UPoly& o) const { return c == o.c; }
};

UPoly upoly_zero(FieldCtxPtr ctx);
UPoly upoly_one(FieldCtxPtr ctx);
UPoly upoly_x(FieldCtxPtr ctx);
/// Build from small-integer coefficients (reduced mod p), least-degree first.
UPoly upoly_from_ints(FieldCtxPtr ctx, const std::vector<std::int64_t>& coeffs);
UPoly upoly_from_elems(FieldCtxPtr ctx, std::vector<FieldElement> coeffs);

UPoly upoly_add(const UPoly& a, const UPoly& b);
UPoly upoly_sub(const UPoly& a, const UPoly& b);
UPoly upoly_neg(const UPoly& a);
UPoly upoly_mul(const UPoly& a, const UPoly& b);
UPoly upoly_scale(const UPoly& a, const FieldElement& k);
/// (quotient, remainder) with a = q*b + r, deg r < deg b.
std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b);
UPoly upoly_rem(const UPoly& a, const UPoly& b);
UPoly upoly_div_exact(const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UPoly upoly_gcd(UPoly a, UPoly b);
UPoly upoly_derivative(const UPoly& a);
UPoly upoly_monic(const UPoly& a);
FieldElement upoly_eval(const UPoly& a, const FieldElement& x);
/// base^e mod m, with a big-integer exponent given by its base-p digit
/// count: e = card^reps would overflow, so the exponent is passed as a
/// (mantissa, field-cardinality-power) pair via upoly_pow_card below.
UPoly upoly_powmod_u64(const UPoly& base, std::uint64_t e, const UPoly& m);
/// x^(|F|^reps) mod m (repeated Frobenius powering).
UPoly upoly_x_pow_card(const UPoly& m, int reps = 1);
/// h^(|F|) mod m.
UPoly upoly_pow_card(const UPoly& h, const UPoly& m);

FieldElement upoly_resultant(const UPoly& f, const UPoly& g);
FieldElement upoly_discriminant(const UPoly& f);

/// f = prod g_i^i with each g_i squarefree and pairwise coprime; valid over
/// the algebraic closure (the coefficient field is perfect).  Requires f monic.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f);

/// Number of distinct roots of f in the context's top field.
int count_roots(const UPoly& f);
/// The distinct roots themselves, sorted by element index.
std::vector<FieldElement> upoly_roots(const UPoly& f, TrialRng& rng);

/// Full factorization into monic irreducibles with multiplicities
/// (squarefree decomposition + distinct-degree + Cantor-Zassenhaus).
std::vector<std::pair<UPoly, int>> factor(const UPoly& f, TrialRng& rng);

/// Degrees of the irreducible factors of a squarefree f; throws
/// NotSquarefreeError when disc(f) = 0.  Deterministic (distinct-degree only).
Partition factorization_type(const UPoly& f);

// ---------------------------------------------------------------------------

/// Homogeneous binary form B(s,t) of degree d; c[i] is the coefficient of
/// s^i t^(d-i).
struct BinaryForm {
    FieldCtxPtr ctx;
    int d = 0;
    std::vector<FieldElement> c;

    bool is_zero() const;
};

BinaryForm binary_form(FieldCtxPtr ctx, int d, std::vector<FieldElement> coeffs);
BinaryForm binary_form_from_ints(FieldCtxPtr ctx, int d, const std::vector<std::int64_t>& coeffs);

/// B(x, 1) as a univariate polynomial.
UPoly dehomogenize(const BinaryForm& B);
/// Multiplicity of the point (1:0), i.e. d - deg B(x,1).
int infinity_multiplicity(const BinaryForm& B);
/// Distinct projective roots of B in P^1 over the context field.
int projective_root_count(const BinaryForm& B);
/// Squarefree as a binary form (GL2-invariant): B(x,1) squarefree and the
/// root at infinity, if present, simple.
bool form_squarefree(const BinaryForm& B);
/// Factorization type of a squarefree binary form: degrees of irreducible
/// factors of B(x,1) plus a 1 for a root at infinity.
Partition form_factorization_type(const BinaryForm& B);
/// Closure multiplicity pattern: map multiplicity -> number of closure
/// points of B with that intersection multiplicity.
std::vector<std::pair<int, int>> form_multiplicity_pattern(const BinaryForm& B);
/// B(a s + b t, c s + e t); invertibility of the matrix is the caller's business.
BinaryForm form_compose(const BinaryForm& B, const FieldElement& a, const FieldElement& b,
                        const FieldElement& c, const FieldElement& e);
BinaryForm form_gcd(const BinaryForm& A, const BinaryForm& B);

} // namespace lincount
