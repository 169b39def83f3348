#pragma once

#include <vector>

#include "lincount/field_table.hpp"
#include "lincount/partition.hpp"

namespace lincount::kernel {

/// Dense univariate polynomial in table-index coefficients, least-degree
/// first, trimmed.  These routines back the hot experiment loops; the
/// generic UPoly path over FieldCtx is the reference implementation.
using FPoly = std::vector<FIdx>;

inline void trim(FPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const FPoly& f) { return static_cast<int>(f.size()) - 1; }

FPoly mul(const FieldTable& T, const FPoly& a, const FPoly& b);
FPoly rem(const FieldTable& T, FPoly a, const FPoly& b);
FPoly gcd(const FieldTable& T, FPoly a, FPoly b);
FPoly monic(const FieldTable& T, FPoly a);
FPoly deriv(const FieldTable& T, const FPoly& a);
FIdx eval(const FieldTable& T, const FPoly& f, FIdx x);
FPoly powmod_u64(const FieldTable& T, const FPoly& base, std::uint64_t e, const FPoly& m);
/// x^|F| mod m.
FPoly x_pow_card(const FieldTable& T, const FPoly& m);

/// Distinct roots of f in the table field.
int count_roots(const FieldTable& T, const FPoly& f);
bool squarefree(const FieldTable& T, const FPoly& f);
/// Degrees of the irreducible factors of a squarefree monic g, via
/// distinct-degree factorization (deterministic).
void ddf_degrees(const FieldTable& T, FPoly g, std::vector<int>& parts);

/// Binary form of degree d: coefficient of s^i t^(d-i) at index i
/// (vector length d+1, not trimmed).
using BForm = std::vector<FIdx>;

bool bform_is_zero(const BForm& B);
int bform_proj_root_count(const FieldTable& T, const BForm& B);
bool bform_squarefree(const FieldTable& T, const BForm& B);
/// Factorization type of a squarefree form (degrees + a 1 for a simple
/// root at infinity), appended to parts unsorted.
void bform_partition(const FieldTable& T, const BForm& B, std::vector<int>& parts);

} // namespace lincount::kernel
