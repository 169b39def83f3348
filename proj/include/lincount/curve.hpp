#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "lincount/field_table.hpp"
#include "lincount/upoly.hpp"

namespace lincount {

/// Exponent triple (a, b, c) of a monomial x^a y^b z^c.
using ExpTriple = std::array<int, 3>;

/// Homogeneous ternary form of degree d over the base field F_q
/// (context with N = 1).  Partial derivatives may be identically zero;
/// parse_curve enforces at least one term for user input.
struct PlaneCurve {
    FieldCtxPtr base;
    int d = 0;
    std::map<ExpTriple, BaseElem> terms;  // nonzero coefficients only

    bool is_zero() const { return terms.empty(); }
};

/// Point of P^2 over the top field of some context, normalized so the
/// first nonzero coordinate (x, y, z order) is 1.
struct ProjPoint {
    std::array<FieldElement, 3> x;

    bool operator==(const ProjPoint& o) const { return x == o.x; }
    bool operator<(const ProjPoint& o) const { return x < o.x; }
};

/// Line of P^2 as a point (a:b:c) of the dual plane: {ax + by + cz = 0}.
struct ProjLine {
    ProjPoint dual;
};

ProjPoint make_point(const FieldCtx& ctx, FieldElement a, FieldElement b, FieldElement c);
ProjLine make_line(const FieldCtx& ctx, FieldElement a, FieldElement b, FieldElement c);

PlaneCurve curve_from_terms(FieldCtxPtr base, const std::map<ExpTriple, BaseElem>& terms);
/// Text grammar: terms `k*x^a*y^b*z^c` joined by `+`/`-`; exponent 1 and
/// coefficient 1 omissible; whitespace ignored; base field must be prime.
PlaneCurve parse_curve(const std::string& text, FieldCtxPtr base);
std::string curve_to_string(const PlaneCurve& C);

/// Evaluate at a point with coordinates in an extension of the base
/// (same p, r; curve coefficients embed as constants).
FieldElement evaluate(const PlaneCurve& C, const ProjPoint& P, const FieldCtx& ext);
std::array<PlaneCurve, 3> partials(const PlaneCurve& C);

/// Deterministic basis (P0, P1) of the line's kernel; every point of the
/// line is s*P0 + t*P1 for (s:t) in P^1.
std::pair<ProjPoint, ProjPoint> line_basis(const ProjLine& l, const FieldCtx& ext);

/// Restriction of C to the line via the canonical basis: B(s,t) = F(s P0 + t P1).
/// B is identically zero iff the line is contained in the curve.
BinaryForm restrict_to_line(const PlaneCurve& C, const ProjLine& l, FieldCtxPtr ext);

/// Exact |C(F_{q^N})| by fiberwise root counting (O(q^N) univariate root
/// counts).  OpenMP-parallel over fibers.
std::uint64_t point_count(const PlaneCurve& C, int N,
                          std::uint64_t budget = FieldTable::kDefaultLimit);
/// Naive full-plane scan; reference for point_count.
std::uint64_t point_count_reference(const PlaneCurve& C, int N,
                                    std::uint64_t budget = FieldTable::kDefaultLimit);
/// All rational points over F_{q^N}, as element-index triples (normalized).
std::vector<std::array<FIdx, 3>> enumerate_points(const PlaneCurve& C, const FieldTable& T);

struct SingularPoint {
    FieldCtxPtr ext;   // field of definition F_{q^m}
    int ext_degree;    // m
    ProjPoint P;
};

/// All singular points of C over the algebraic closure, via projection
/// resultants after a random coordinate change (retried on degeneracy).
/// Throws DegenerateError for non-reduced curves (singular along a curve).
std::vector<SingularPoint> singular_points(const PlaneCurve& C);

enum class IrredKind { ProvenYes, LikelyYes, LikelyNo, Unknown };

struct IrredVerdict {
    IrredKind kind = IrredKind::Unknown;
    int components = 0;  // estimated c (0 when unknown)
    /// per-level (N, |C(F_{q^N})|) evidence actually computed
    std::vector<std::pair<int, std::uint64_t>> counts;
};

/// Smooth implies absolutely irreducible (ProvenYes); otherwise estimate
/// the component count c = round(|C(F_{q^N})| / q^N) at the largest
/// affordable level.
IrredVerdict is_absolutely_irreducible(const PlaneCurve& C, const std::vector<int>& evidence_levels,
                                       std::uint64_t budget = FieldTable::kDefaultLimit);

struct TangencyWitness {
    FieldCtxPtr ext;
    int N;
    ProjLine line;
};

/// First line (N ascending, canonical line order) meeting C in one double
/// point and d-2 simple points, all smooth on C; exhaustive search when the
/// line count fits line_budget, seeded sampling above it.
std::optional<TangencyWitness> simple_tangency_witness(const PlaneCurve& C, int max_N,
                                                       std::uint64_t line_budget = 300000,
                                                       std::uint64_t seed = 0xB1A5ED);

/// Field homomorphism F_{q^Ns} -> F_{q^Nd} (Ns | Nd), sending the source
/// generator to the smallest root of the source modulus in the target.
struct FieldHom {
    FieldCtxPtr src;
    FieldCtxPtr dst;
    FieldElement rho;  // image of the source generator

    FieldElement apply(const FieldElement& a) const;
};

FieldHom make_hom(FieldCtxPtr src, FieldCtxPtr dst);

} // namespace lincount
