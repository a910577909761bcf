#include "dqm/quaternion_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dqm {

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double frobenius(const CMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double off_diagonal(const CMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// Real symmetric 2x2 rotation parameters annihilating b in [[a, b], [b, d]]
// (b > 0); afterwards the diagonal is (a - t b, d + t b).
struct Rotation {
    double c;
    double s;
    double t;
};

Rotation symmetric_rotation(double a, double d, double b) {
    const double theta = (d - a) / (2.0 * b);
    double t;
    if (std::fabs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return {c, t * c, t};
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return idx;
}

QVector column_of(const QMatrix& a, std::size_t j) { return a.column(j); }

// c <- c - sum_p q_p <c, q_p> over the first k columns of q.
void project_out(QVector& c, const QMatrix& q, std::size_t k) {
    for (std::size_t p = 0; p < k; ++p) {
        Quaternion coeff;
        for (std::size_t i = 0; i < c.size(); ++i) coeff += conj(q(i, p)) * c[i];
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= q(i, p) * coeff;
    }
}

void normalize(QVector& c) {
    const double n = vec_norm2(c);
    for (auto& v : c) v *= 1.0 / n;
}

// Re-orthonormalizes the first k columns in place (modified Gram-Schmidt, two passes).
void reorthonormalize(QMatrix& q, std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
        QVector c = column_of(q, j);
        project_out(c, q, j);
        project_out(c, q, j);
        normalize(c);
        q.set_column(j, c);
    }
}

}  // namespace

// --- complex adjoint ---------------------------------------------------------

ComplexAdjoint::ComplexAdjoint(const QMatrix& a) : m_(2 * a.rows(), 2 * a.cols()) {
    const std::size_t r = a.rows();
    const std::size_t c = a.cols();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const Quaternion& q = a(i, j);
            const Complex a1(q.w, q.x);
            const Complex a2(q.y, q.z);
            m_(i, j) = a1;
            m_(i, j + c) = a2;
            m_(i + r, j) = -std::conj(a2);
            m_(i + r, j + c) = std::conj(a1);
        }
}

ComplexAdjoint ComplexAdjoint::from_complex(CMatrix m, double tol) {
    if (m.rows() % 2 != 0 || m.cols() % 2 != 0) {
        throw Error(ErrorCode::PreconditionViolated, "complex adjoint must have even dimensions");
    }
    const std::size_t r = m.rows() / 2;
    const std::size_t c = m.cols() / 2;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const bool ok = std::abs(m(i + r, j) + std::conj(m(i, j + c))) <= tol &&
                            std::abs(m(i + r, j + c) - std::conj(m(i, j))) <= tol;
            if (!ok) throw Error(ErrorCode::PreconditionViolated, "matrix lacks complex adjoint block symmetry");
        }
    ComplexAdjoint out;
    out.m_ = std::move(m);
    return out;
}

QMatrix ComplexAdjoint::to_quaternion() const {
    const std::size_t r = quaternion_rows();
    const std::size_t c = quaternion_cols();
    QMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const Complex a1 = m_(i, j);
            const Complex a2 = m_(i, j + c);
            a(i, j) = {a1.real(), a1.imag(), a2.real(), a2.imag()};
        }
    return a;
}

// --- complex Hermitian Jacobi ------------------------------------------------

ComplexEig complex_hermitian_eig(const CMatrix& input) {
    if (!input.is_square()) throw Error(ErrorCode::NotSquare, "eigenproblem needs a square matrix");
    const std::size_t n = input.rows();
    const double scale = frobenius(input);
    const double herm_tol = 1e-10 * std::max(1.0, scale);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(input(i, j) - std::conj(input(j, i))) > herm_tol) {
                throw Error(ErrorCode::NotHermitian, "complex matrix is not Hermitian");
            }

    CMatrix m = input;
    // Symmetrize so the rotations act on an exactly Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
    CMatrix vecs = CMatrix::identity(n);

    const double threshold = 1e-13 * scale;
    int sweep = 0;
    while (off_diagonal(m) > threshold) {
        if (++sweep > kMaxSweeps) throw Error(ErrorCode::ConvergenceFailure, "complex Jacobi exceeded sweep cap");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = m(p, q);
                const double babs = std::abs(b);
                if (babs == 0.0) continue;
                const Complex e = b / babs;
                const double a = m(p, p).real();
                const double d = m(q, q).real();
                const Rotation r = symmetric_rotation(a, d, babs);
                // J = diag(1, conj(e)) * [[c, s], [-s, c]]
                const Complex jqp = -r.s * std::conj(e);
                const Complex jqq = r.c * std::conj(e);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex mkp = m(k, p);
                    const Complex mkq = m(k, q);
                    m(k, p) = r.c * mkp + mkq * jqp;
                    m(k, q) = r.s * mkp + mkq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex mpk = m(p, k);
                    const Complex mqk = m(q, k);
                    m(p, k) = r.c * mpk + std::conj(jqp) * mqk;
                    m(q, k) = r.s * mpk + std::conj(jqq) * mqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                m(p, p) = a - r.t * babs;
                m(q, q) = d + r.t * babs;
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = vecs(k, p);
                    const Complex vkq = vecs(k, q);
                    vecs(k, p) = r.c * vkp + vkq * jqp;
                    vecs(k, q) = r.s * vkp + vkq * jqq;
                }
            }
    }

    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = m(i, i).real();
    const auto order = descending_order(diag);
    ComplexEig out{CMatrix(n, n), std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vecs(i, order[k]);
    }
    return out;
}

// --- gauge -------------------------------------------------------------------

Quaternion gauge_factor(std::span<const Quaternion> column) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < column.size(); ++i) {
        const double n = norm2(column[i]);
        if (n > best_norm) {
            best_norm = n;
            best = i;
        }
    }
    if (best_norm <= 0.0) return Quaternion(1.0);
    return conj(column[best]) * (1.0 / std::sqrt(best_norm));
}

void scale_column(QMatrix& a, std::size_t j, const Quaternion& g) {
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = a(i, j) * g;
}

void complete_unitary(QMatrix& u, std::size_t k) {
    const std::size_t m = u.rows();
    for (std::size_t j = k; j < m; ++j) {
        QVector best;
        double best_norm = -1.0;
        for (std::size_t e = 0; e < m; ++e) {
            QVector c(m);
            c[e] = Quaternion(1.0);
            project_out(c, u, j);
            project_out(c, u, j);
            const double n = vec_norm2(c);
            if (n > best_norm) {
                best_norm = n;
                best = std::move(c);
            }
        }
        normalize(best);
        u.set_column(j, best);
    }
}

// --- quaternion Hermitian eigendecomposition ----------------------------------

QuatEig quat_hermitian_eig(const QMatrix& h, std::optional<double> tol) {
    if (!h.is_square()) throw Error(ErrorCode::NotSquare, "eigenproblem needs a square matrix");
    if (!is_hermitian(h, tol)) throw Error(ErrorCode::NotHermitian, "quaternion matrix is not Hermitian");
    const std::size_t m = h.rows();
    if (m == 0) return {};

    const ComplexEig ce = complex_hermitian_eig(ComplexAdjoint(h).matrix());
    const double pair_tol = 1e-9 * (1.0 + frobenius_norm(h));
    for (std::size_t k = 0; k < m; ++k) {
        if (std::fabs(ce.values[2 * k] - ce.values[2 * k + 1]) > pair_tol) {
            throw Error(ErrorCode::ConvergenceFailure, "complex adjoint spectrum is not paired");
        }
    }

    // Each complex eigenvector [u; v] maps to the quaternion eigenvector u - conj(v) j.
    auto to_quaternion_vector = [&](std::size_t col) {
        QVector x(m);
        for (std::size_t i = 0; i < m; ++i) {
            const Complex u = ce.vectors(i, col);
            const Complex v = ce.vectors(i + m, col);
            x[i] = {u.real(), u.imag(), -v.real(), v.imag()};
        }
        return x;
    };

    // Groups of (numerically) equal eigenvalues span subspaces closed under
    // right multiplication by j; pick half of each group's vectors by pivoted
    // quaternion Gram-Schmidt.
    QMatrix vecs(m, m);
    std::size_t accepted = 0;
    std::size_t start = 0;
    while (start < 2 * m) {
        std::size_t end = start + 1;
        while (end < 2 * m && ce.values[end - 1] - ce.values[end] <= pair_tol) ++end;
        if ((end - start) % 2 != 0) throw Error(ErrorCode::ConvergenceFailure, "odd eigenvalue group");
        std::vector<QVector> candidates;
        for (std::size_t c = start; c < end; ++c) candidates.push_back(to_quaternion_vector(c));
        for (std::size_t picked = 0; picked < (end - start) / 2; ++picked) {
            std::size_t best = 0;
            double best_norm = -1.0;
            QVector best_vec;
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                QVector r = candidates[c];
                project_out(r, vecs, accepted);
                const double n = vec_norm2(r);
                if (n > best_norm) {
                    best_norm = n;
                    best = c;
                    best_vec = std::move(r);
                }
            }
            project_out(best_vec, vecs, accepted);
            normalize(best_vec);
            vecs.set_column(accepted++, best_vec);
            candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
        }
        start = end;
    }
    reorthonormalize(vecs, m);

    std::vector<double> rayleigh(m);
    for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            Quaternion hx;
            for (std::size_t l = 0; l < m; ++l) hx += h(i, l) * vecs(l, j);
            s += real_dot(vecs(i, j), hx);
        }
        rayleigh[j] = s;
    }

    const auto order = descending_order(rayleigh);
    QuatEig out{QMatrix(m, m), std::vector<double>(m)};
    for (std::size_t k = 0; k < m; ++k) {
        out.values[k] = rayleigh[order[k]];
        QVector c = column_of(vecs, order[k]);
        const Quaternion g = gauge_factor(c);
        for (auto& v : c) v = v * g;
        out.vectors.set_column(k, c);
    }
    return out;
}

// --- quaternion SVD ------------------------------------------------------------

namespace {

// One-sided Jacobi for m >= n.
QuatSvd tall_svd(const QMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    QMatrix w = a;
    QMatrix v = QMatrix::identity(n);
    const double tol = std::max(1e-15, static_cast<double>(m) * kEps);

    for (int sweep = 0;; ++sweep) {
        if (sweep >= kMaxSweeps) throw Error(ErrorCode::ConvergenceFailure, "one-sided Jacobi exceeded sweep cap");
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                Quaternion gamma;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += norm2(w(i, p));
                    beta += norm2(w(i, q));
                    gamma += conj(w(i, p)) * w(i, q);
                }
                const double gabs = norm(gamma);
                if (gabs == 0.0 || gabs <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Quaternion ubar = conj(gamma) * (1.0 / gabs);
                const Rotation r = symmetric_rotation(alpha, beta, gabs);
                // J = diag(1, ubar) * [[c, s], [-s, c]]
                const Quaternion jqp = ubar * (-r.s);
                const Quaternion jqq = ubar * r.c;
                for (std::size_t i = 0; i < m; ++i) {
                    const Quaternion wp = w(i, p);
                    const Quaternion wq = w(i, q);
                    w(i, p) = wp * r.c + wq * jqp;
                    w(i, q) = wp * r.s + wq * jqq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Quaternion vp = v(i, p);
                    const Quaternion vq = v(i, q);
                    v(i, p) = vp * r.c + vq * jqp;
                    v(i, q) = vp * r.s + vq * jqq;
                }
            }
        if (!rotated) break;
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) norms[j] = vec_norm2(column_of(w, j));
    const auto order = descending_order(norms);

    QuatSvd out{QMatrix(m, m), std::vector<double>(n), QMatrix(n, n)};
    std::size_t nonzero = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigmas[k] = norms[j];
        out.v.set_column(k, column_of(v, j));
        if (norms[j] > std::numeric_limits<double>::min()) {
            QVector c = column_of(w, j);
            for (auto& q : c) q *= 1.0 / norms[j];
            out.u.set_column(k, c);
            nonzero = k + 1;
        }
    }
    reorthonormalize(out.u, nonzero);
    complete_unitary(out.u, nonzero);
    reorthonormalize(out.v, n);
    return out;
}

}  // namespace

QuatSvd quat_svd(const QMatrix& a) {
    QuatSvd out;
    if (a.rows() >= a.cols()) {
        out = tall_svd(a);
    } else {
        QuatSvd t = tall_svd(conj_transpose(a));
        out = {std::move(t.v), std::move(t.sigmas), std::move(t.u)};
    }
    const std::size_t s = out.sigmas.size();
    for (std::size_t j = 0; j < out.v.cols(); ++j) {
        const Quaternion g = gauge_factor(column_of(out.v, j));
        scale_column(out.v, j, g);
        if (j < s) scale_column(out.u, j, g);
    }
    for (std::size_t j = s; j < out.u.cols(); ++j) scale_column(out.u, j, gauge_factor(column_of(out.u, j)));
    return out;
}

}  // namespace dqm
