#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dqm/dense_matrix.hpp"
#include "dqm/dual_number.hpp"
#include "dqm/dual_quaternion.hpp"
#include "dqm/quaternion.hpp"

namespace dqm {

using QMatrix = DenseMatrix<Quaternion>;
using DQMatrix = DenseMatrix<DualQuaternion>;
using QVector = std::vector<Quaternion>;
using DQVector = std::vector<DualQuaternion>;

// --- parts -----------------------------------------------------------------

QMatrix standard_part(const DQMatrix& a);
QMatrix infinitesimal_part(const DQMatrix& a);
DQMatrix compose(const QMatrix& st, const QMatrix& in);
DQMatrix embed(const QMatrix& st);

bool is_appreciable(const DQMatrix& a);

// --- vectors ---------------------------------------------------------------

/// <u, v> = sum conj(v_i) u_i. Right-linear in u, conjugate-linear in v.
DualQuaternion inner_product(std::span<const DualQuaternion> u, std::span<const DualQuaternion> v);
Quaternion inner_product(std::span<const Quaternion> u, std::span<const Quaternion> v);

/// Dual 2-norm. Appreciable u: (|u_st|, Re<u_st, u_in> / |u_st|); otherwise (0, |u_in|).
DualNumber vec_norm2(std::span<const DualQuaternion> u);
/// Same norm for a vector of dual numbers (e.g. a difference of spectra).
DualNumber vec_norm2(std::span<const DualNumber> u);
double vec_norm2(std::span<const Quaternion> u);

DQVector matvec(const DQMatrix& a, std::span<const DualQuaternion> x);

// --- matrices --------------------------------------------------------------

DQMatrix matmul(const DQMatrix& a, const DQMatrix& b);

DualQuaternion trace(const DQMatrix& a);
Quaternion trace(const QMatrix& a);

DualNumber frobenius_norm(const DQMatrix& a);
double frobenius_norm(const QMatrix& a);

/// Default predicate tolerance: 1e-10 * max(1, |A_st|_F).
double default_tolerance(const DQMatrix& a);
double default_tolerance(const QMatrix& a);

bool is_hermitian(const DQMatrix& a, std::optional<double> tol = {});
bool is_hermitian(const QMatrix& a, std::optional<double> tol = {});

/// A^* A = I_s for an m x s matrix with s <= m.
bool is_partially_unitary(const DQMatrix& a, std::optional<double> tol = {});
bool is_partially_unitary(const QMatrix& a, std::optional<double> tol = {});

/// Pairwise inner products equal the Kronecker delta within tol.
bool orthonormal_check(std::span<const DQVector> vectors, double tol = 1e-10);

/// Sufficient test for right linear independence of the columns: the
/// standard part has full quaternion column rank.
bool has_full_column_rank_st(const DQMatrix& a, std::optional<double> tol = {});

/// Dual Gram-Schmidt on the columns of an m x s matrix (s <= m). The result
/// is partially unitary. Throws PreconditionViolated if a column's residual
/// becomes infinitesimal.
DQMatrix orthonormalize_columns(const DQMatrix& a);

/// Frobenius norms of the standard and infinitesimal parts of A - B.
struct PartResidual {
    double st = 0.0;
    double in = 0.0;
};
PartResidual part_residual(const DQMatrix& a, const DQMatrix& b);

/// Largest absolute component of any entry, over both parts.
double max_abs(const DQMatrix& a);
double max_abs(const QMatrix& a);

}  // namespace dqm
