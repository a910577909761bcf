#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dqm/matrix_core.hpp"

namespace dqm {

/**
 * Intermediate data of a dual decomposition, exposed for inspection and tests.
 *
 * `sizes` are the multiplicity blocks of the standard-part spectrum in
 * nonascending order. `transformed` is the infinitesimal part after the
 * standard-part rotation and the per-block rotations (C' for eigenproblems,
 * B' for the SVD). `left` / `right` are the skew-Hermitian first-order
 * corrections X and Y (`right` is empty for eigenproblems). `block_values`
 * holds the infinitesimal eigen/singular values of each block.
 */
struct BlockStructure {
    std::vector<std::size_t> sizes;
    QMatrix transformed;
    QMatrix left;
    QMatrix right;
    std::vector<std::vector<double>> block_values;
};

/// A = U diag(lambdas) U^*, U unitary, lambdas nonascending in the dual order.
struct HermEig {
    DQMatrix u;
    std::vector<DualNumber> lambdas;
    BlockStructure blocks;
};

/**
 * A = U [Sigma_t 0; 0 0] V^*. `sigmas` has s = min(m, n) entries: r positive
 * appreciable values, then t - r positive infinitesimal values, then zeros.
 */
struct DualSVD {
    DQMatrix u;
    std::vector<DualNumber> sigmas;
    DQMatrix v;
    std::size_t appreciable_rank = 0;
    std::size_t rank = 0;
    BlockStructure blocks;
};

/// Default clustering tolerance: 1e-8 * max(1, |A_st|_2).
double default_cluster_tolerance(double standard_spectral_norm);

/**
 * Eigendecomposition of a dual quaternion Hermitian matrix.
 *
 * The standard part is diagonalized first and its eigenvalues are grouped into
 * blocks whose consecutive gaps are at most `cluster_tol`. Each diagonal block
 * of the rotated infinitesimal part is diagonalized separately; those
 * eigenvalues become the infinitesimal parts. Off-block coupling is removed
 * by U = U0 R (I + X eps) with X_pq = C'_pq / (d_q - d_p).
 *
 * Throws EmptyMatrix, NotSquare, NotHermitian, IllConditionedGap (a gap
 * between distinct blocks below 1e3 * machine epsilon * scale) or
 * ConvergenceFailure.
 */
HermEig dq_hermitian_eig(const DQMatrix& a, std::optional<double> cluster_tol = {});

/**
 * Singular value decomposition of a dual quaternion matrix.
 *
 * Positive standard singular values sharing a block get infinitesimal parts
 * from the eigenvalues of the Hermitian part of the matching block of
 * B = U0^* A_in V0; the zero block is resolved by a quaternion SVD of its part
 * of B. Remaining coupling is absorbed by skew-Hermitian X (left) and Y (right).
 */
DualSVD dq_svd(const DQMatrix& a, std::optional<double> cluster_tol = {});

/// Operator 2-norm; equals the largest dual singular value.
DualNumber spectral_norm(const DQMatrix& a);

std::vector<DualNumber> eigenvalues(const DQMatrix& a, std::optional<double> cluster_tol = {});
std::vector<DualNumber> singular_values(const DQMatrix& a, std::optional<double> cluster_tol = {});

DQMatrix reconstruct(const HermEig& e);
DQMatrix reconstruct(const DualSVD& d);

}  // namespace dqm
