#include "dqm/random.hpp"

#include <algorithm>

namespace dqm {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

Quaternion random_quaternion(Rng& rng) {
    const double w = rng.symmetric();
    const double x = rng.symmetric();
    const double y = rng.symmetric();
    const double z = rng.symmetric();
    return {w, x, y, z};
}

DualQuaternion random_dual_quaternion(Rng& rng) {
    const Quaternion st = random_quaternion(rng);
    const Quaternion in = random_quaternion(rng);
    return {st, in};
}

DualNumber random_dual_mixed(Rng& rng) {
    const std::uint64_t mode = rng.next() % 8;
    double st = rng.symmetric();
    double in = rng.symmetric();
    if (mode < 2) st = 0.0;
    else if (mode < 4) in = 0.0;
    else if (mode == 4) st = std::round(st * 2.0) / 2.0;
    return {st, in};
}

QMatrix random_qmatrix(Rng& rng, std::size_t m, std::size_t n) {
    QMatrix a(m, n);
    for (auto& q : a.entries()) q = random_quaternion(rng);
    return a;
}

QMatrix random_qhermitian(Rng& rng, std::size_t m) {
    QMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        a(i, i) = Quaternion(rng.symmetric());
        for (std::size_t j = i + 1; j < m; ++j) {
            a(i, j) = random_quaternion(rng);
            a(j, i) = conj(a(i, j));
        }
    }
    return a;
}

QMatrix random_unitary(Rng& rng, std::size_t m) {
    return standard_part(orthonormalize_columns(embed(random_qmatrix(rng, m, m))));
}

DQMatrix random_general(Rng& rng, std::size_t m, std::size_t n) {
    DQMatrix a(m, n);
    for (auto& q : a.entries()) q = random_dual_quaternion(rng);
    return a;
}

DQMatrix random_hermitian(Rng& rng, std::size_t m) {
    const QMatrix st = random_qhermitian(rng, m);
    const QMatrix in = random_qhermitian(rng, m);
    return compose(st, in);
}

DQMatrix random_infinitesimal(Rng& rng, std::size_t m, std::size_t n) {
    return compose(QMatrix(m, n), random_qmatrix(rng, m, n));
}

DQMatrix random_infinitesimal_hermitian(Rng& rng, std::size_t m) {
    return compose(QMatrix(m, m), random_qhermitian(rng, m));
}

namespace {

void make_exactly_hermitian(QMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        a(i, i) = Quaternion(a(i, i).w);
        for (std::size_t j = i + 1; j < a.cols(); ++j) a(j, i) = conj(a(i, j));
    }
}

}  // namespace

QMatrix clustered_hermitian_standard(Rng& rng, std::size_t m, std::size_t max_block) {
    std::vector<std::size_t> sizes;
    std::size_t used = 0;
    while (used < m) {
        const std::size_t k = std::min(rng.between(1, max_block), m - used);
        sizes.push_back(k);
        used += k;
    }
    // One value per slot of width 4/r in [-2, 2]; gaps are at least half a slot.
    const double width = 4.0 / static_cast<double>(sizes.size());
    QMatrix d(m, m);
    std::size_t row = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        const double value = 2.0 - width * (static_cast<double>(b) + 0.25 + 0.5 * rng.unit());
        for (std::size_t i = 0; i < sizes[b]; ++i, ++row) d(row, row) = Quaternion(value);
    }
    const QMatrix w = random_unitary(rng, m);
    QMatrix a = w * d * conj_transpose(w);
    make_exactly_hermitian(a);
    return a;
}

DQMatrix random_clustered_hermitian(Rng& rng, std::size_t m, std::size_t max_block) {
    const QMatrix st = clustered_hermitian_standard(rng, m, max_block);
    return compose(st, random_qhermitian(rng, m));
}

std::pair<DQMatrix, DQMatrix> eps_perturb_pair(Rng& rng, std::size_t m) {
    DQMatrix a = random_hermitian(rng, m);
    DQMatrix b = a;
    const QMatrix e = random_qhermitian(rng, m);
    for (std::size_t k = 0; k < b.size(); ++k) b.entries()[k].in += e.entries()[k];
    return {std::move(a), std::move(b)};
}

std::pair<DQMatrix, DQMatrix> clustered_hermitian_pair(Rng& rng, std::size_t m, std::size_t max_block) {
    const QMatrix st = clustered_hermitian_standard(rng, m, max_block);
    DQMatrix a = compose(st, random_qhermitian(rng, m));
    DQMatrix b = compose(st, random_qhermitian(rng, m));
    return {std::move(a), std::move(b)};
}

DQVector random_unit_vector(Rng& rng, std::size_t n) {
    DQVector x(n);
    for (auto& q : x) q = random_dual_quaternion(rng);
    const DualQuaternion scale(inverse(vec_norm2(x)));
    for (auto& q : x) q = q * scale;
    return x;
}

GeneratorKind parse_generator_kind(std::string_view name) {
    if (name == "general") return GeneratorKind::General;
    if (name == "hermitian") return GeneratorKind::Hermitian;
    if (name == "infinitesimal") return GeneratorKind::Infinitesimal;
    if (name == "eps-perturb-pair") return GeneratorKind::EpsPerturbPair;
    if (name == "clustered-herm-pair") return GeneratorKind::ClusteredHermPair;
    throw Error(ErrorCode::ParseError, "unknown generator kind '" + std::string(name) + "'");
}

std::string_view to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::General: return "general";
        case GeneratorKind::Hermitian: return "hermitian";
        case GeneratorKind::Infinitesimal: return "infinitesimal";
        case GeneratorKind::EpsPerturbPair: return "eps-perturb-pair";
        case GeneratorKind::ClusteredHermPair: return "clustered-herm-pair";
    }
    return "general";
}

bool produces_pair(GeneratorKind kind) {
    return kind == GeneratorKind::EpsPerturbPair || kind == GeneratorKind::ClusteredHermPair;
}

std::vector<DQMatrix> generate(GeneratorKind kind, std::size_t m, std::size_t n, std::uint64_t seed) {
    if (m == 0 || n == 0) throw Error(ErrorCode::EmptyMatrix, "generator dimensions must be positive");
    Rng rng(seed);
    switch (kind) {
        case GeneratorKind::General: return {random_general(rng, m, n)};
        case GeneratorKind::Hermitian: return {random_hermitian(rng, m)};
        case GeneratorKind::Infinitesimal: return {random_infinitesimal(rng, m, n)};
        case GeneratorKind::EpsPerturbPair: {
            auto [a, b] = eps_perturb_pair(rng, m);
            return {std::move(a), std::move(b)};
        }
        case GeneratorKind::ClusteredHermPair: {
            auto [a, b] = clustered_hermitian_pair(rng, m);
            return {std::move(a), std::move(b)};
        }
    }
    return {};
}

}  // namespace dqm
