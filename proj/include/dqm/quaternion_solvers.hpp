#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "dqm/matrix_core.hpp"

namespace dqm {

using Complex = std::complex<double>;
using CMatrix = DenseMatrix<Complex>;

/**
 * Complex adjoint of a quaternion matrix.
 *
 * Writing A = A1 + A2 j with complex A1 = W + X i and A2 = Y + Z i, the image is
 * the 2m x 2n block matrix [[A1, A2], [-conj(A2), conj(A1)]]. The map is an
 * injective ring homomorphism, so products and Hermitian structure carry over.
 */
class ComplexAdjoint {
public:
    explicit ComplexAdjoint(const QMatrix& a);

    /// Wraps a complex matrix; throws PreconditionViolated unless it has the block symmetry.
    static ComplexAdjoint from_complex(CMatrix m, double tol = 0.0);

    const CMatrix& matrix() const noexcept { return m_; }
    std::size_t quaternion_rows() const noexcept { return m_.rows() / 2; }
    std::size_t quaternion_cols() const noexcept { return m_.cols() / 2; }

    QMatrix to_quaternion() const;

private:
    ComplexAdjoint() = default;
    CMatrix m_;
};

inline ComplexAdjoint complex_adjoint(const QMatrix& a) { return ComplexAdjoint(a); }

struct ComplexEig {
    CMatrix vectors;             // columns are eigenvectors
    std::vector<double> values;  // nonascending
};

/// Cyclic Jacobi for a complex Hermitian matrix. Stops once the off-diagonal
/// Frobenius norm is at most 1e-13 |M|_F; more than 64 sweeps is a
/// ConvergenceFailure.
ComplexEig complex_hermitian_eig(const CMatrix& m);

struct QuatEig {
    QMatrix vectors;             // unitary, gauge-fixed columns
    std::vector<double> values;  // nonascending
};

/// H = U diag(lambda) U^* for a quaternion Hermitian H, computed through the
/// complex adjoint. Throws NotHermitian when |H - H^*| exceeds tol
/// (default 1e-10 max(1, |H|_F)).
QuatEig quat_hermitian_eig(const QMatrix& h, std::optional<double> tol = {});

struct QuatSvd {
    QMatrix u;                   // m x m unitary
    std::vector<double> sigmas;  // min(m, n) values, nonascending, >= 0
    QMatrix v;                   // n x n unitary
};

/// A = U Sigma V^* by one-sided (Hestenes) Jacobi on quaternion columns.
QuatSvd quat_svd(const QMatrix& a);

/// Unit quaternion g such that column * g has its largest-magnitude entry
/// real and nonnegative (lowest index wins ties). Zero columns give g = 1.
Quaternion gauge_factor(std::span<const Quaternion> column);

/// Right-multiplies column j by g.
void scale_column(QMatrix& a, std::size_t j, const Quaternion& g);

/// Extends k orthonormal leading columns of an m x m matrix to a full
/// unitary basis; columns k..m-1 are overwritten.
void complete_unitary(QMatrix& u, std::size_t k);

}  // namespace dqm
