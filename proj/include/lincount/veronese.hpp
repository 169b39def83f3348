#pragma once

#include "lincount/incidence.hpp"

namespace lincount {

/// Homogeneous ternary form of degree e with dense coefficients in the
/// graded-lexicographic order of monomials(e) (descending on (a,b,c)).
struct DenseForm {
    FieldCtxPtr ext;
    int e = 0;
    std::vector<FieldElement> coeffs;  // length C(e+2, 2)
};

/// Exponent triples (a,b,c), a+b+c = e, lexicographically descending;
/// e = 1 yields x, y, z so that a DenseForm line matches a ProjLine dual.
std::vector<ExpTriple> monomials(int e);

/// All degree-e monomials of P, projectively normalized.
std::vector<FieldElement> veronese_point(const ProjPoint& P, int e, const FieldCtx& ext);

/// Uniform over projective classes: rejection-sample a nonzero coefficient
/// vector, normalize by the first nonzero coordinate.  For e = 1 the digit
/// draws coincide with random_line's, so equal seeds give equal lines.
DenseForm random_degree_e_curve(int e, FieldCtxPtr ext, TrialRng& rng);

/// Number of points of C_points where E vanishes; throws
/// ContainsComponentError when the count exceeds the Bezout bound e*d
/// (E then shares a component with the degree-d curve).
int pair_intersection_count(const std::vector<ProjPoint>& C_points, const DenseForm& E, int d);

/// Curve-vs-random-degree-e-curve experiment; k ranges 0..d*e.  Trials
/// flagged ContainsComponent are tallied in excluded_line_on_curve and
/// excluded from the histogram.  Exhaustive mode enumerates all
/// (Q^M - 1)/(Q - 1) coefficient classes and must fit the budget.
IncidenceReport run_pair_experiment(const PlaneCurve& C, int e, const ExperimentConfig& cfg);

} // namespace lincount
