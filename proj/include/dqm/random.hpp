#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "dqm/matrix_core.hpp"

namespace dqm {

/**
 * Seeded generator used by every command and test.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Reals are formed from the top 53 bits of each draw,
 * u = (x >> 11) * 2^-53, and mapped to [-1, 1) as 2u - 1, so generated files
 * are byte-identical across platforms. Independent streams are derived by
 * seeding with splitmix64(seed ^ splitmix64(stream)).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// Uniform on [-1, 1).
    double symmetric() { return 2.0 * unit() - 1.0; }
    /// Uniform integer in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(next() % (hi - lo + 1)); }

    Rng split(std::uint64_t stream) { return Rng(next(), stream); }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

Quaternion random_quaternion(Rng& rng);
DualQuaternion random_dual_quaternion(Rng& rng);

/// Components on [-1, 1); a quarter are infinitesimal, a quarter have zero
/// infinitesimal part, and some standard parts are coarse so ties occur.
DualNumber random_dual_mixed(Rng& rng);

QMatrix random_qmatrix(Rng& rng, std::size_t m, std::size_t n);
QMatrix random_qhermitian(Rng& rng, std::size_t m);
QMatrix random_unitary(Rng& rng, std::size_t m);

DQMatrix random_general(Rng& rng, std::size_t m, std::size_t n);
DQMatrix random_hermitian(Rng& rng, std::size_t m);
DQMatrix random_infinitesimal(Rng& rng, std::size_t m, std::size_t n);
DQMatrix random_infinitesimal_hermitian(Rng& rng, std::size_t m);

/// Exactly Hermitian W diag(lambda_i I_{k_i}) W^* with distinct lambda_i and
/// block sizes k_i in [1, max_block].
QMatrix clustered_hermitian_standard(Rng& rng, std::size_t m, std::size_t max_block = 4);
DQMatrix random_clustered_hermitian(Rng& rng, std::size_t m, std::size_t max_block = 4);

/// A Hermitian, B = A + eps E with E quaternion Hermitian.
std::pair<DQMatrix, DQMatrix> eps_perturb_pair(Rng& rng, std::size_t m);
/// A_st = B_st clustered, independent Hermitian infinitesimal parts.
std::pair<DQMatrix, DQMatrix> clustered_hermitian_pair(Rng& rng, std::size_t m, std::size_t max_block = 4);

/// Unit-norm dual quaternion vector (norm exactly (1, 0) up to rounding).
DQVector random_unit_vector(Rng& rng, std::size_t n);

enum class GeneratorKind { General, Hermitian, Infinitesimal, EpsPerturbPair, ClusteredHermPair };

GeneratorKind parse_generator_kind(std::string_view name);
std::string_view to_string(GeneratorKind kind);
bool produces_pair(GeneratorKind kind);

/// Files for `kind`: one matrix, or two for the pair kinds. Square kinds use m.
std::vector<DQMatrix> generate(GeneratorKind kind, std::size_t m, std::size_t n, std::uint64_t seed);

}  // namespace dqm
