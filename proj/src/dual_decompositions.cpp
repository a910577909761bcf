#include "dqm/dual_decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqm/quaternion_solvers.hpp"

namespace dqm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Cluster {
    std::size_t offset;
    std::size_t size;
    double value;  // mean of the member values
};

// Groups a nonascending sequence into runs whose consecutive gaps are <= tol.
std::vector<Cluster> cluster_values(const std::vector<double>& v, std::size_t count, double tol) {
    std::vector<Cluster> out;
    std::size_t start = 0;
    while (start < count) {
        std::size_t end = start + 1;
        while (end < count && v[end - 1] - v[end] <= tol) ++end;
        double sum = 0.0;
        for (std::size_t i = start; i < end; ++i) sum += v[i];
        out.push_back({start, end - start, sum / static_cast<double>(end - start)});
        start = end;
    }
    return out;
}

void require_resolvable_gaps(const std::vector<Cluster>& clusters, double scale) {
    const double floor = 1e3 * kEps * scale;
    for (std::size_t c = 1; c < clusters.size(); ++c) {
        if (clusters[c - 1].value - clusters[c].value < floor) {
            throw Error(ErrorCode::IllConditionedGap, "spectral gap too small to resolve; raise cluster_tol");
        }
    }
}

QMatrix hermitian_part(const QMatrix& a) { return (a + conj_transpose(a)) * 0.5; }

QMatrix skew_part(const QMatrix& a) { return (a - conj_transpose(a)) * 0.5; }

std::vector<std::size_t> cluster_index(const std::vector<Cluster>& clusters, std::size_t n) {
    std::vector<std::size_t> idx(n, clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (std::size_t i = 0; i < clusters[c].size; ++i) idx[clusters[c].offset + i] = c;
    return idx;
}

void gauge_pair(QMatrix& st, QMatrix& in, std::size_t j, const Quaternion& g) {
    scale_column(st, j, g);
    scale_column(in, j, g);
}

}  // namespace

double default_cluster_tolerance(double standard_spectral_norm) {
    return 1e-8 * std::max(1.0, standard_spectral_norm);
}

HermEig dq_hermitian_eig(const DQMatrix& a, std::optional<double> cluster_tol) {
    if (a.empty()) throw Error(ErrorCode::EmptyMatrix, "decomposition of an empty matrix");
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "eigendecomposition needs a square matrix");
    if (!is_hermitian(a)) throw Error(ErrorCode::NotHermitian, "dual quaternion matrix is not Hermitian");
    const std::size_t m = a.rows();

    const QMatrix a_st = standard_part(a);
    const QuatEig base = quat_hermitian_eig(hermitian_part(a_st), std::numeric_limits<double>::infinity());
    double scale = 1.0;
    for (double d : base.values) scale = std::max(scale, std::fabs(d));
    const double tol = cluster_tol.value_or(default_cluster_tolerance(scale));
    const auto clusters = cluster_values(base.values, m, tol);
    require_resolvable_gaps(clusters, scale);

    const QMatrix& u0 = base.vectors;
    const QMatrix c = hermitian_part(conj_transpose(u0) * infinitesimal_part(a) * u0);

    BlockStructure blocks;
    QMatrix rot = QMatrix::identity(m);
    std::vector<double> in_values(m);
    for (const auto& cl : clusters) {
        const QuatEig be = quat_hermitian_eig(c.block(cl.offset, cl.offset, cl.size, cl.size),
                                              std::numeric_limits<double>::infinity());
        rot.set_block(cl.offset, cl.offset, be.vectors);
        std::copy(be.values.begin(), be.values.end(), in_values.begin() + static_cast<std::ptrdiff_t>(cl.offset));
        blocks.sizes.push_back(cl.size);
        blocks.block_values.push_back(be.values);
    }

    const QMatrix ct = conj_transpose(rot) * c * rot;
    const auto which = cluster_index(clusters, m);
    QMatrix x(m, m);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
            if (which[p] == which[q]) continue;
            x(p, q) = ct(p, q) * (1.0 / (clusters[which[q]].value - clusters[which[p]].value));
        }

    QMatrix u_st = u0 * rot;
    QMatrix u_in = u_st * x;
    for (std::size_t j = 0; j < m; ++j) gauge_pair(u_st, u_in, j, gauge_factor(u_st.column(j)));

    HermEig out;
    out.u = compose(u_st, u_in);
    out.lambdas.resize(m);
    for (std::size_t p = 0; p < m; ++p) out.lambdas[p] = {clusters[which[p]].value, in_values[p]};
    blocks.transformed = ct;
    blocks.left = std::move(x);
    out.blocks = std::move(blocks);
    return out;
}

DualSVD dq_svd(const DQMatrix& a, std::optional<double> cluster_tol) {
    if (a.empty()) throw Error(ErrorCode::EmptyMatrix, "decomposition of an empty matrix");
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t s = std::min(m, n);

    const QuatSvd base = quat_svd(standard_part(a));
    const double scale = std::max(1.0, base.sigmas[0]);
    const double tol = cluster_tol.value_or(default_cluster_tolerance(base.sigmas[0]));

    std::size_t k = 0;
    while (k < s && base.sigmas[k] > tol) ++k;
    const auto clusters = cluster_values(base.sigmas, k, tol);
    require_resolvable_gaps(clusters, scale);
    if (!clusters.empty() && clusters.back().value < 1e3 * kEps * scale) {
        throw Error(ErrorCode::IllConditionedGap, "singular value too close to zero; raise cluster_tol");
    }

    const QMatrix b = conj_transpose(base.u) * infinitesimal_part(a) * base.v;

    BlockStructure blocks;
    QMatrix rot_u = QMatrix::identity(m);
    QMatrix rot_v = QMatrix::identity(n);
    std::vector<double> in_values(s, 0.0);
    for (const auto& cl : clusters) {
        const QMatrix herm = hermitian_part(b.block(cl.offset, cl.offset, cl.size, cl.size));
        const QuatEig be = quat_hermitian_eig(herm, std::numeric_limits<double>::infinity());
        rot_u.set_block(cl.offset, cl.offset, be.vectors);
        rot_v.set_block(cl.offset, cl.offset, be.vectors);
        std::copy(be.values.begin(), be.values.end(), in_values.begin() + static_cast<std::ptrdiff_t>(cl.offset));
        blocks.sizes.push_back(cl.size);
        blocks.block_values.push_back(be.values);
    }

    std::size_t rank = k;
    if (k < s) {
        const QuatSvd zero = quat_svd(b.block(k, k, m - k, n - k));
        rot_u.set_block(k, k, zero.u);
        rot_v.set_block(k, k, zero.v);
        const double cut = static_cast<double>(std::max(m, n)) * kEps * std::max(1.0, zero.sigmas[0]);
        std::vector<double> values(zero.sigmas);
        for (auto& c : values) {
            if (c <= cut) c = 0.0;
            else ++rank;
        }
        std::copy(values.begin(), values.end(), in_values.begin() + static_cast<std::ptrdiff_t>(k));
        blocks.sizes.push_back(s - k);
        blocks.block_values.push_back(std::move(values));
    }

    const QMatrix bt = conj_transpose(rot_u) * b * rot_v;
    const auto which = cluster_index(clusters, std::max(m, n));
    auto sigma_of = [&](std::size_t i) { return clusters[which[i]].value; };

    QMatrix x(m, m);
    QMatrix y(n, n);
    for (const auto& cl : clusters) {
        const QMatrix skew = skew_part(bt.block(cl.offset, cl.offset, cl.size, cl.size));
        x.set_block(cl.offset, cl.offset, skew * (0.5 / cl.value));
        y.set_block(cl.offset, cl.offset, skew * (-0.5 / cl.value));
    }
    for (std::size_t p = 0; p < k; ++p) {
        const double sp = sigma_of(p);
        for (std::size_t q = 0; q < k; ++q) {
            if (which[p] == which[q]) continue;
            // sigma_q X - sigma_p Y = B'_pq and -sigma_p X + sigma_q Y = conj(B'_qp)
            const double sq = sigma_of(q);
            const double det = 1.0 / (sq * sq - sp * sp);
            const Quaternion bpq = bt(p, q);
            const Quaternion bqp = conj(bt(q, p));
            x(p, q) = (bpq * sq + bqp * sp) * det;
            y(p, q) = (bpq * sp + bqp * sq) * det;
        }
        for (std::size_t q = k; q < n; ++q) {
            y(p, q) = bt(p, q) * (-1.0 / sp);
            y(q, p) = -conj(y(p, q));
        }
        for (std::size_t q = k; q < m; ++q) {
            x(q, p) = bt(q, p) * (1.0 / sp);
            x(p, q) = -conj(x(q, p));
        }
    }

    QMatrix u_st = base.u * rot_u;
    QMatrix v_st = base.v * rot_v;
    QMatrix u_in = u_st * x;
    QMatrix v_in = v_st * y;
    for (std::size_t j = 0; j < n; ++j) {
        const Quaternion g = gauge_factor(v_st.column(j));
        gauge_pair(v_st, v_in, j, g);
        if (j < s) gauge_pair(u_st, u_in, j, g);
    }
    for (std::size_t j = s; j < m; ++j) gauge_pair(u_st, u_in, j, gauge_factor(u_st.column(j)));

    DualSVD out;
    out.u = compose(u_st, u_in);
    out.v = compose(v_st, v_in);
    out.sigmas.resize(s);
    for (std::size_t p = 0; p < s; ++p) out.sigmas[p] = {p < k ? sigma_of(p) : 0.0, in_values[p]};
    out.appreciable_rank = k;
    out.rank = rank;
    blocks.transformed = bt;
    blocks.left = std::move(x);
    blocks.right = std::move(y);
    out.blocks = std::move(blocks);
    return out;
}

DualNumber spectral_norm(const DQMatrix& a) { return dq_svd(a).sigmas.front(); }

std::vector<DualNumber> eigenvalues(const DQMatrix& a, std::optional<double> cluster_tol) {
    return dq_hermitian_eig(a, cluster_tol).lambdas;
}

std::vector<DualNumber> singular_values(const DQMatrix& a, std::optional<double> cluster_tol) {
    return dq_svd(a, cluster_tol).sigmas;
}

DQMatrix reconstruct(const HermEig& e) {
    const std::size_t m = e.u.rows();
    DQMatrix sigma(m, m);
    for (std::size_t i = 0; i < m; ++i) sigma(i, i) = DualQuaternion(e.lambdas[i]);
    return e.u * sigma * conj_transpose(e.u);
}

DQMatrix reconstruct(const DualSVD& d) {
    DQMatrix sigma(d.u.cols(), d.v.cols());
    for (std::size_t i = 0; i < d.sigmas.size(); ++i) sigma(i, i) = DualQuaternion(d.sigmas[i]);
    return d.u * sigma * conj_transpose(d.v);
}

}  // namespace dqm
