#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "dqm/dual_decompositions.hpp"
#include "dqm/matrix_core.hpp"

namespace dqm {

/// Tolerances for the floating-point realization of the dual total order.
struct Tolerance {
    double eta_st = 1e-10;
    double eta_in = 1e-8;
};

/**
 * Dual order with tolerant ties. Standard parts count as equal when they
 * differ by at most eta_st * max(1, |p.st|, |q.st|); only then are the
 * infinitesimal parts compared, with eta_in * max(1, |p.in|, |q.in|).
 */
std::weak_ordering compare_tolerant(const DualNumber& p, const DualNumber& q, double eta_st = 1e-10,
                                    double eta_in = 1e-8);

inline std::weak_ordering compare_tolerant(const DualNumber& p, const DualNumber& q, const Tolerance& tol) {
    return compare_tolerant(p, q, tol.eta_st, tol.eta_in);
}

/**
 * Outcome of one inequality lhs <= rhs.
 *
 * `holds` is compare_tolerant(rhs, lhs) != less, so the tie tolerance scales
 * with the size of the two sides. `condition_met` is false when the
 * inequality's hypothesis fails; both sides are still recorded.
 */
struct InequalityReport {
    DualNumber lhs;
    DualNumber rhs;
    DualNumber slack;
    bool holds = false;
    bool condition_met = true;
};

InequalityReport make_report(const DualNumber& lhs, const DualNumber& rhs, const Tolerance& tol = {});

/// Sorts a copy nonascending in the exact dual order.
std::vector<DualNumber> sorted_nonascending(std::span<const DualNumber> v);

/// z weakly majorized by y: sorted prefix sums of z are <= those of y, with equal totals.
bool weak_majorization_check(std::span<const DualNumber> z, std::span<const DualNumber> y, const Tolerance& tol = {});

/// sum x_i z_i <= sum x_i y_i for nonascending x, y and z weakly majorized by y.
/// Throws PreconditionViolated when the hypotheses fail.
InequalityReport ordered_product_dominance(std::span<const DualNumber> x, std::span<const DualNumber> y,
                                           std::span<const DualNumber> z, const Tolerance& tol = {});

/// Diagonal entry of a Hermitian matrix as a dual number; throws NotHermitian
/// if its imaginary residue exceeds 1e-10 * max(1, |a_ii|).
DualNumber hermitian_diagonal(const DQMatrix& a, std::size_t i);

/// sum_{i<k} a_ii <= sum_{i<k} lambda_i(A), 1 <= k <= m.
InequalityReport ky_fan_partial_trace_check(const DQMatrix& a, std::size_t k, const Tolerance& tol = {});

/// The partial-trace check for every k = 1..m from a single decomposition.
std::vector<InequalityReport> ky_fan_partial_trace_all(const DQMatrix& a, const Tolerance& tol = {});

/// lambda_i((A^* + A)/2) <= sigma_i(A), one report per index.
std::vector<InequalityReport> hermitian_part_vs_singular(const DQMatrix& a, const Tolerance& tol = {});

/// trace(A^*B + B^*A) <= 2 sum sigma_i(A) sigma_i(B).
InequalityReport von_neumann_check(const DQMatrix& a, const DQMatrix& b, const Tolerance& tol = {});

/// trace(AB + BA) <= 2 sum lambda_i(A) lambda_i(B) for Hermitian A, B.
InequalityReport hermitian_trace_check(const DQMatrix& a, const DQMatrix& b, const Tolerance& tol = {});

/// |sigma(A) - sigma(B)|_2 <= |A - B|_F; condition_met iff A - B is appreciable.
InequalityReport hoffman_wielandt_singular(const DQMatrix& a, const DQMatrix& b, const Tolerance& tol = {});

/// |lambda(A) - lambda(B)|_2 <= |A - B|_F for Hermitian A, B, unconditionally.
InequalityReport hoffman_wielandt_hermitian(const DQMatrix& a, const DQMatrix& b, const Tolerance& tol = {});

/// |<u, v>| <= |u|_2 |v|_2.
InequalityReport cauchy_schwarz_check(std::span<const DualQuaternion> u, std::span<const DualQuaternion> v,
                                      const Tolerance& tol = {});

}  // namespace dqm
