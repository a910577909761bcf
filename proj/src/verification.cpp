#include "dqm/verification.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dqm/dqm_file.hpp"
#include "dqm/dual_decompositions.hpp"
#include "dqm/error.hpp"
#include "dqm/inequalities.hpp"
#include "dqm/quaternion_solvers.hpp"
#include "dqm/random.hpp"

namespace dqm {

namespace {

constexpr std::size_t max_failure_notes = 5;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string fmt(const DualNumber& d) { return "(" + fmt(d.st) + ", " + fmt(d.in) + ")"; }

double rel_gap(double a, double b) { return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)}); }

struct Site {
    const char* what;
    std::size_t trial;
};

std::string describe(const Site& s) { return std::string(s.what) + " (trial " + std::to_string(s.trial) + ")"; }

class Tally {
public:
    explicit Tally(CheckResult& r) : r_(r) {}

    void instance() { ++r_.instances; }

    void inequality(const InequalityReport& rep, const Site& site) {
        if (!r_.worst_slack || rep.slack < *r_.worst_slack) r_.worst_slack = rep.slack;
        if (!rep.holds) fail(site, "lhs " + fmt(rep.lhs) + " exceeds rhs " + fmt(rep.rhs));
    }

    void bound(double err, double limit, const Site& site) {
        const double ratio = err / limit;
        if (std::isnan(ratio) || ratio > r_.worst_ratio) r_.worst_ratio = std::isnan(ratio) ? INFINITY : ratio;
        if (!(err <= limit)) fail(site, fmt(err) + " exceeds " + fmt(limit));
    }

    void expect(bool ok, const Site& site) {
        if (!ok) fail(site, "expectation failed");
    }

    template <class F>
    void guard(const Site& site, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            fail(site, e.what());
        }
    }

    void fail(const Site& site, const std::string& why) {
        ++r_.failures;
        if (failure_notes_ < max_failure_notes) {
            ++failure_notes_;
            r_.notes.push_back(describe(site) + ": " + why);
        }
    }

    void note(std::string line) { info_.push_back(std::move(line)); }

    void finish() {
        for (auto& s : info_) r_.notes.push_back(std::move(s));
        info_.clear();
    }

private:
    CheckResult& r_;
    std::size_t failure_notes_ = 0;
    std::vector<std::string> info_;
};

Rng trial_rng(const SuiteConfig& c, int criterion, std::size_t trial) {
    return Rng(c.seed ^ splitmix64(0x5eedULL + static_cast<std::uint64_t>(criterion)), trial);
}

std::size_t draw_size(Rng& rng, const SuiteConfig& c) { return rng.between(1, c.max_size); }

std::size_t scaled(std::size_t trials, std::size_t num, std::size_t den) { return std::max<std::size_t>(1, trials * num / den); }

template <class T>
void shuffle(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.between(0, i - 1)]);
}

void maybe_inject(const SuiteConfig& c, int criterion, Tally& t) {
    if (c.inject_failure == criterion) t.inequality(make_report(DualNumber(1.0), DualNumber(0.0)), {"injected failure", 0});
}

DQMatrix infinitesimal_of(const QMatrix& q) { return compose(QMatrix(q.rows(), q.cols()), q); }

// Criterion 1

CheckResult scalar_laws(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    const DualNumber zero;
    const std::size_t pairs = 100 * c.trials;
    Rng rng = trial_rng(c, 1, 0);
    std::size_t infinitesimal_roots = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const DualNumber p = random_dual_mixed(rng);
        const DualNumber q = random_dual_mixed(rng);
        const DualNumber s = random_dual_mixed(rng);
        t.instance();

        if (p >= zero && q >= zero) t.expect(p * q >= zero, {"product of nonnegatives", i});
        if (p > zero && q > zero && (is_appreciable(p) || is_appreciable(q))) t.expect(p * q > zero, {"product of positives", i});
        if (p >= zero) {
            t.expect(abs(p) == p, {"abs of nonnegative", i});
        } else {
            t.expect(abs(p) > p, {"abs of negative", i});
        }
        if (is_appreciable(p)) {
            const DualNumber a = abs(p);
            const DualNumber b = sqrt(p * p);
            t.bound(std::max(rel_gap(a.st, b.st), rel_gap(a.in, b.in)), 1e-12, {"abs equals sqrt of square", i});
        }
        if (p > zero && q > zero && is_appreciable(p) && is_appreciable(q)) {
            const DualNumber a = sqrt(p * q);
            const DualNumber b = sqrt(p) * sqrt(q);
            t.bound(std::max(rel_gap(a.st, b.st), rel_gap(a.in, b.in)), 1e-12, {"sqrt is multiplicative", i});
        }
        if (q > zero && is_appreciable(q) && p - q >= zero) {
            t.expect(compare_tolerant(sqrt(p) - sqrt(q), zero) != std::weak_ordering::less, {"sqrt is monotone", i});
        }

        // closed forms checked against the defining identities
        const DualNumber a = abs(p);
        t.expect(a >= zero, {"abs nonnegative", i});
        t.bound(std::max(rel_gap((a * a).st, (p * p).st), rel_gap((a * a).in, (p * p).in)), 1e-12, {"abs squared", i});
        if (is_appreciable(p)) {
            const DualNumber inv = inverse(p);
            const DualNumber one = p * inv;
            const double in_scale = std::max(1.0, std::fabs(p.in / p.st));
            t.bound(std::max(std::fabs(one.st - 1.0), std::fabs(one.in) / in_scale), 1e-12, {"inverse", i});
            if (p > zero) {
                const DualNumber root = sqrt(p);
                const DualNumber sq = root * root;
                t.expect(root.st > 0.0, {"sqrt standard part", i});
                t.bound(std::max(rel_gap(sq.st, p.st), rel_gap(sq.in, p.in)), 1e-12, {"sqrt squared", i});
            } else {
                bool thrown = false;
                try {
                    (void)sqrt(p);
                } catch (const Error& e) {
                    thrown = e.code() == ErrorCode::NegativeArgument;
                }
                t.expect(thrown, {"sqrt of negative", i});
            }
        } else {
            bool thrown = false;
            try {
                (void)inverse(p);
            } catch (const Error& e) {
                thrown = e.code() == ErrorCode::Singular;
            }
            t.expect(thrown, {"inverse of infinitesimal", i});
        }

        // every nonzero infinitesimal, drawn directly as well as from the mix
        for (const DualNumber& inf : {DualNumber(0.0, rng.symmetric()), p}) {
            if (inf.st != 0.0 || inf.in == 0.0) continue;
            ++infinitesimal_roots;
            bool thrown = false;
            try {
                (void)sqrt(inf);
            } catch (const Error& e) {
                thrown = e.code() == ErrorCode::NotRepresentable;
            }
            t.expect(thrown, {"sqrt of nonzero infinitesimal", i});
        }

        // total order: trichotomy and transitivity
        const int relations = (p < q) + (p == q) + (p > q);
        t.expect(relations == 1, {"trichotomy", i});
        if (p <= q && q <= s) t.expect(p <= s, {"transitivity", i});
    }
    t.note("nonzero infinitesimal square roots attempted: " + std::to_string(infinitesimal_roots));
    maybe_inject(c, 1, t);
    t.finish();
    return r;
}

// Criterion 2

CheckResult quaternion_identity(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    const Quaternion basis[4] = {Quaternion(1.0), Quaternion::i(), Quaternion::j(), Quaternion::k()};
    // products e_a e_b = sign * e_index
    const int index[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const double sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            t.instance();
            t.expect(basis[a] * basis[b] == sign[a][b] * basis[index[a][b]],
                     {"multiplication table", static_cast<std::size_t>(4 * a + b)});
        }
    }

    Rng rng = trial_rng(c, 2, 0);
    const std::size_t pairs = 100 * c.trials;
    for (std::size_t i = 0; i < pairs; ++i) {
        const Quaternion p = random_quaternion(rng);
        const Quaternion q = random_quaternion(rng);
        const Quaternion s = random_quaternion(rng);
        t.instance();
        const double dot = 2.0 * (p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z);
        for (const Quaternion& e : {p * conj(q) + q * conj(p), conj(p) * q + conj(q) * p}) {
            t.bound(max_abs(e.imag()), 1e-13, {"identity imaginary residue", i});
            t.bound(std::fabs(e.w - dot), 1e-13, {"identity real part", i});
        }
        t.bound(rel_gap(norm(p * q), norm(p) * norm(q)), 1e-12, {"multiplicative norm", i});
        t.bound(max_abs((p * q) * s - p * (q * s)), 1e-12, {"associativity", i});
        t.expect(conj(p * q) == conj(q) * conj(p) || max_abs(conj(p * q) - conj(q) * conj(p)) <= 1e-15,
                 {"conjugate of product", i});
    }
    maybe_inject(c, 2, t);
    t.finish();
    return r;
}

// Criterion 3

enum class Kind { General, Hermitian, Infinitesimal, Clustered };
constexpr Kind all_kinds[] = {Kind::General, Kind::Hermitian, Kind::Infinitesimal, Kind::Clustered};
constexpr const char* kind_names[] = {"general", "hermitian", "infinitesimal", "clustered"};

bool is_hermitian_kind(Kind k) { return k == Kind::Hermitian || k == Kind::Clustered; }

DQMatrix draw_instance(Kind kind, Rng& rng, const SuiteConfig& c) {
    const std::size_t m = draw_size(rng, c);
    switch (kind) {
        case Kind::General: return random_general(rng, m, draw_size(rng, c));
        case Kind::Hermitian: return random_hermitian(rng, m);
        case Kind::Infinitesimal: return random_infinitesimal(rng, m, draw_size(rng, c));
        case Kind::Clustered: return random_clustered_hermitian(rng, m);
    }
    return {};
}

struct Scales {
    double st;
    double in;
};

Scales residual_scales(const DQMatrix& a) {
    const double fs = frobenius_norm(standard_part(a));
    const double fi = frobenius_norm(infinitesimal_part(a));
    return {1.0 + fs, 1.0 + fs + fi};
}

void check_residual(Tally& t, const PartResidual& res, const Scales& s, const Site& site) {
    t.bound(res.st, 1e-8 * s.st, site);
    t.bound(res.in, 1e-8 * s.in, site);
}

void check_order(Tally& t, const std::vector<DualNumber>& v, const Site& site) {
    for (std::size_t i = 1; i < v.size(); ++i) t.expect(compare_tolerant(v[i - 1], v[i]) != std::weak_ordering::less, site);
}

void check_svd(Tally& t, const DQMatrix& a, std::size_t trial) {
    const Scales s = residual_scales(a);
    const DualSVD d = dq_svd(a);
    check_residual(t, part_residual(reconstruct(d), a), s, {"svd reconstruction", trial});
    const Scales unit{1.0, 1.0};
    check_residual(t, part_residual(conj_transpose(d.u) * d.u, DQMatrix::identity(d.u.cols())), unit, {"svd U unitarity", trial});
    check_residual(t, part_residual(conj_transpose(d.v) * d.v, DQMatrix::identity(d.v.cols())), unit, {"svd V unitarity", trial});
    check_order(t, d.sigmas, {"svd ordering", trial});

    const auto oracle = quat_svd(standard_part(a)).sigmas;
    const double scale = std::max(1.0, oracle.empty() ? 0.0 : oracle.front());
    for (std::size_t i = 0; i < d.sigmas.size(); ++i) {
        t.bound(std::fabs(d.sigmas[i].st - oracle[i]), 1e-9 * scale, {"svd standard part vs quaternion oracle", trial});
    }
    t.expect(d.appreciable_rank <= d.rank && d.rank <= d.sigmas.size(), {"svd rank bookkeeping", trial});
    for (std::size_t i = 0; i < d.sigmas.size(); ++i) {
        const DualNumber& sg = d.sigmas[i];
        const bool ok = i < d.appreciable_rank ? sg.st > 0.0
                        : i < d.rank          ? sg.st == 0.0 && sg.in > 0.0
                                              : sg.st == 0.0 && sg.in == 0.0;
        t.expect(ok, {"svd sigma classes", trial});
    }
}

void check_eig(Tally& t, const DQMatrix& a, std::size_t trial) {
    const Scales s = residual_scales(a);
    const HermEig e = dq_hermitian_eig(a);
    check_residual(t, part_residual(reconstruct(e), a), s, {"eig reconstruction", trial});
    check_residual(t, part_residual(conj_transpose(e.u) * e.u, DQMatrix::identity(e.u.cols())), {1.0, 1.0}, {"eig unitarity", trial});
    check_order(t, e.lambdas, {"eig ordering", trial});

    // the complex adjoint carries every eigenvalue twice
    const auto oracle = complex_hermitian_eig(complex_adjoint(standard_part(a)).matrix()).values;
    double scale = 1.0;
    for (double v : oracle) scale = std::max(scale, std::fabs(v));
    for (std::size_t i = 0; i < e.lambdas.size(); ++i) {
        t.bound(std::fabs(e.lambdas[i].st - oracle[2 * i]), 1e-9 * scale, {"eig standard part vs complex oracle", trial});
    }
}

CheckResult decomposition_residuals(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    const std::size_t per_kind = scaled(c.trials, 1, 2);
    for (Kind kind : all_kinds) {
        const auto k = static_cast<std::size_t>(kind);
        for (std::size_t i = 0; i < per_kind; ++i) {
            Rng rng = trial_rng(c, 3, k * 1000000 + i);
            const DQMatrix a = draw_instance(kind, rng, c);
            t.instance();
            const Site site{kind_names[k], i};
            t.guard(site, [&] {
                check_svd(t, a, i);
                if (is_hermitian_kind(kind)) check_eig(t, a, i);
            });
        }
    }
    t.note(std::to_string(per_kind) + " instances per kind: general, hermitian, infinitesimal, clustered");
    maybe_inject(c, 3, t);
    t.finish();
    return r;
}

// Criterion 4

void check_parts(Tally& t, const DualNumber& a, const DualNumber& b, const Site& site) {
    t.bound(rel_gap(a.st, b.st), 1e-8, site);
    t.bound(rel_gap(a.in, b.in), 1e-8, site);
}

CheckResult trace_identities(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    const std::size_t per_kind = scaled(c.trials, 1, 2);
    for (Kind kind : all_kinds) {
        const auto k = static_cast<std::size_t>(kind);
        for (std::size_t i = 0; i < per_kind; ++i) {
            Rng rng = trial_rng(c, 4, k * 1000000 + i);
            DQMatrix a = draw_instance(kind, rng, c);
            // infinitesimal Hermitian matrices exercise the all-zero standard spectrum
            if (kind == Kind::Infinitesimal && i % 2 == 1) a = random_infinitesimal_hermitian(rng, a.rows());
            t.instance();
            t.guard({kind_names[k], i}, [&] {
                DualNumber sum_sq;
                for (const auto& sg : singular_values(a)) sum_sq += sg * sg;
                const DualNumber f = frobenius_norm(a);
                check_parts(t, f * f, sum_sq, {"Frobenius identity", i});
                if (a.is_square() && is_hermitian(a)) {
                    DualNumber sum;
                    for (const auto& l : eigenvalues(a)) sum += l;
                    check_parts(t, real_part(trace(a)), sum, {"trace identity", i});
                }
            });
        }
    }
    maybe_inject(c, 4, t);
    t.finish();
    return r;
}

// Criterion 5

std::vector<DualNumber> random_duals(Rng& rng, std::size_t m) {
    std::vector<DualNumber> v(m);
    for (auto& d : v) d = random_dual_mixed(rng);
    return v;
}

DQMatrix draw_hermitian(Rng& rng, std::size_t m, std::size_t variant) {
    switch (variant % 4) {
        case 0: return random_hermitian(rng, m);
        case 1: return random_clustered_hermitian(rng, m);
        case 2: return random_infinitesimal_hermitian(rng, m);
        default: return embed(random_qhermitian(rng, m));
    }
}

CheckResult majorization_suite(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    for (std::size_t i = 0; i < c.trials; ++i) {
        Rng rng = trial_rng(c, 5, i);
        const std::size_t m = draw_size(rng, c);
        const auto x = sorted_nonascending(random_duals(rng, m));
        const auto y = sorted_nonascending(random_duals(rng, m));
        // pairwise averaging is doubly stochastic, so z stays majorized by y
        auto z = y;
        const std::size_t steps = rng.between(0, 2 * m);
        for (std::size_t s = 0; s < steps; ++s) {
            const std::size_t p = rng.between(0, m - 1);
            const std::size_t q = rng.between(0, m - 1);
            const DualNumber avg = (z[p] + z[q]) * DualNumber(0.5);
            z[p] = avg;
            z[q] = avg;
        }
        shuffle(rng, z);
        t.instance();
        t.guard({"ordered product dominance", i}, [&] { t.inequality(ordered_product_dominance(x, y, z), {"ordered product dominance", i}); });
    }
    for (std::size_t i = 0; i < c.trials; ++i) {
        Rng rng = trial_rng(c, 5, 1000000 + i);
        const DQMatrix a = draw_hermitian(rng, draw_size(rng, c), i);
        t.instance();
        t.guard({"Ky Fan partial trace", i}, [&] {
            const auto reps = ky_fan_partial_trace_all(a);
            for (const auto& rep : reps) t.inequality(rep, {"Ky Fan partial trace", i});
            check_parts(t, reps.back().lhs, reps.back().rhs, {"Ky Fan full trace equality", i});
        });
    }
    for (std::size_t i = 0; i < c.trials; ++i) {
        Rng rng = trial_rng(c, 5, 2000000 + i);
        const std::size_t m = draw_size(rng, c);
        DQMatrix a;
        switch (i % 4) {
            case 0: a = random_general(rng, m, m); break;
            case 1: a = random_infinitesimal(rng, m, m); break;
            case 2: a = random_clustered_hermitian(rng, m); break;
            default: {
                // non-normal matrix whose Hermitian part has a clustered spectrum
                const QMatrix h = clustered_hermitian_standard(rng, m);
                const QMatrix w = random_unitary(rng, m);
                a = compose(h * w, random_qmatrix(rng, m, m));
            }
        }
        t.instance();
        t.guard({"Hermitian part vs singular values", i}, [&] {
            for (const auto& rep : hermitian_part_vs_singular(a)) t.inequality(rep, {"Hermitian part vs singular values", i});
        });
    }
    maybe_inject(c, 5, t);
    t.finish();
    return r;
}

// Criterion 6

void check_equality(Tally& t, const InequalityReport& rep, const Site& site) {
    t.bound(std::fabs(rep.slack.st), 1e-8, site);
    t.bound(std::fabs(rep.slack.in), 1e-8, site);
}

CheckResult trace_inequalities(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    for (std::size_t i = 0; i < c.trials; ++i) {
        Rng rng = trial_rng(c, 6, i);
        const std::size_t m = draw_size(rng, c);
        const std::size_t n = draw_size(rng, c);
        DQMatrix a = random_general(rng, m, n);
        DQMatrix b;
        switch (i % 5) {
            case 0: b = random_general(rng, m, n); break;
            case 1: b = random_infinitesimal(rng, m, n); break;
            case 2:
                a = random_infinitesimal(rng, m, n);
                b = random_infinitesimal(rng, m, n);
                break;
            case 3: b = a + infinitesimal_of(random_qmatrix(rng, m, n)); break;
            default: b = compose(standard_part(a), random_qmatrix(rng, m, n));
        }
        t.instance();
        t.guard({"von Neumann", i}, [&] {
            t.inequality(von_neumann_check(a, b), {"von Neumann", i});
            check_equality(t, von_neumann_check(a, a), {"von Neumann equality B = A", i});
        });
    }
    for (std::size_t i = 0; i < c.trials; ++i) {
        Rng rng = trial_rng(c, 6, 1000000 + i);
        const std::size_t m = draw_size(rng, c);
        DQMatrix a;
        DQMatrix b;
        switch (i % 5) {
            case 0: std::tie(a, b) = clustered_hermitian_pair(rng, m); break;
            case 1: std::tie(a, b) = eps_perturb_pair(rng, m); break;
            case 2:
                a = draw_hermitian(rng, m, i / 5);
                b = draw_hermitian(rng, m, i / 5 + 1);
                break;
            case 3:
                a = random_hermitian(rng, m);
                b = random_infinitesimal_hermitian(rng, m);
                break;
            default:
                a = embed(random_qhermitian(rng, m));
                b = embed(random_qhermitian(rng, m));
        }
        t.instance();
        t.guard({"Hermitian trace", i}, [&] {
            t.inequality(hermitian_trace_check(a, b), {"Hermitian trace", i});
            check_equality(t, hermitian_trace_check(a, a), {"Hermitian trace equality B = A", i});
        });
    }
    maybe_inject(c, 6, t);
    t.finish();
    return r;
}

// Criterion 7

CheckResult hoffman_wielandt_singular_suite(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    for (std::size_t i = 0; i < c.trials; ++i) {
        Rng rng = trial_rng(c, 7, i);
        const std::size_t m = draw_size(rng, c);
        const std::size_t n = draw_size(rng, c);
        DQMatrix a = random_general(rng, m, n);
        DQMatrix b;
        switch (i % 4) {
            case 0: b = random_general(rng, m, n); break;
            case 1: b = a + random_general(rng, m, n) * 1e-3; break;
            case 2:
                a = random_infinitesimal(rng, m, n);
                b = random_general(rng, m, n);
                break;
            default: b = a + embed(random_qmatrix(rng, m, n) * 0.1);
        }
        t.instance();
        t.guard({"HW singular", i}, [&] {
            const auto rep = hoffman_wielandt_singular(a, b);
            t.expect(rep.condition_met, {"HW appreciable difference", i});
            t.inequality(rep, {"HW singular", i});
        });
    }

    // both infinitesimal: the check must reduce to the quaternion inequality on the eps factors
    const std::size_t reductions = scaled(c.trials, 1, 5);
    for (std::size_t i = 0; i < reductions; ++i) {
        Rng rng = trial_rng(c, 7, 1000000 + i);
        const std::size_t m = draw_size(rng, c);
        const std::size_t n = draw_size(rng, c);
        const QMatrix ap = random_qmatrix(rng, m, n);
        const QMatrix bp = random_qmatrix(rng, m, n);
        t.instance();
        t.guard({"HW infinitesimal difference", i}, [&] {
            const auto rep = hoffman_wielandt_singular(infinitesimal_of(ap), infinitesimal_of(bp));
            const auto sa = quat_svd(ap).sigmas;
            const auto sb = quat_svd(bp).sigmas;
            double d2 = 0.0;
            for (std::size_t k = 0; k < sa.size(); ++k) d2 += (sa[k] - sb[k]) * (sa[k] - sb[k]);
            const double lhs = std::sqrt(d2);
            const double rhs = frobenius_norm(ap - bp);
            t.expect(!rep.condition_met && rep.lhs.st == 0.0 && rep.rhs.st == 0.0, {"HW infinitesimal difference sides", i});
            t.bound(std::fabs(rep.lhs.in - lhs), 1e-9 * std::max(1.0, lhs), {"HW infinitesimal lhs vs quaternion oracle", i});
            t.bound(std::fabs(rep.rhs.in - rhs), 1e-12 * std::max(1.0, rhs), {"HW infinitesimal rhs vs quaternion oracle", i});
            t.inequality(make_report(DualNumber(lhs), DualNumber(rhs)), {"HW infinitesimal quaternion inequality", i});
            t.inequality(rep, {"HW infinitesimal difference", i});
        });
    }

    // infinitesimal difference of appreciable matrices: data only, never asserted
    const std::size_t samples = scaled(c.trials, 1, 5);
    std::size_t exceed = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng = trial_rng(c, 7, 2000000 + i);
        const std::size_t m = draw_size(rng, c);
        const std::size_t n = draw_size(rng, c);
        const DQMatrix a = random_general(rng, m, n);
        const DQMatrix b = a + infinitesimal_of(random_qmatrix(rng, m, n));
        try {
            if (!hoffman_wielandt_singular(a, b).holds) ++exceed;
        } catch (const Error&) {
        }
    }
    t.note("infinitesimal A - B with appreciable A (not asserted): " + std::to_string(samples) + " samples, " +
           std::to_string(exceed) + " violations");
    maybe_inject(c, 7, t);
    t.finish();
    return r;
}

// Criterion 8

DQMatrix worked_example_a() {
    DQMatrix a = DQMatrix::identity(2);
    a(0, 1).in = Quaternion::i();
    a(1, 0).in = -Quaternion::i();
    return a;
}

CheckResult hoffman_wielandt_hermitian_suite(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    std::size_t adversarial = 0;
    for (std::size_t i = 0; i < c.trials; ++i) {
        Rng rng = trial_rng(c, 8, i);
        const std::size_t m = draw_size(rng, c);
        DQMatrix a;
        DQMatrix b;
        const std::size_t v = i % 10;
        if (v < 4) {
            std::tie(a, b) = clustered_hermitian_pair(rng, m);
            ++adversarial;
        } else if (v < 6) {
            std::tie(a, b) = eps_perturb_pair(rng, m);
        } else if (v < 8) {
            a = random_hermitian(rng, m);
            b = random_hermitian(rng, m);
        } else if (v == 8) {
            a = embed(random_qhermitian(rng, m));
            b = embed(random_qhermitian(rng, m));
        } else {
            a = random_infinitesimal_hermitian(rng, m);
            b = random_infinitesimal_hermitian(rng, m);
        }
        t.instance();
        t.guard({"HW Hermitian", i}, [&] {
            t.inequality(hoffman_wielandt_hermitian(a, b), {"HW Hermitian", i});
            if (v == 0) check_equality(t, hoffman_wielandt_hermitian(a, a), {"HW Hermitian equality B = A", i});
        });
    }
    t.expect(10 * adversarial >= 3 * c.trials, {"adversarial share", adversarial});
    t.note("adversarial pairs with equal clustered standard parts: " + std::to_string(adversarial));

    t.instance();
    t.guard({"worked 2x2 example", 0}, [&] {
        const auto rep = hoffman_wielandt_hermitian(worked_example_a(), DQMatrix::identity(2));
        t.inequality(rep, {"worked 2x2 example", 0});
        t.bound(std::fabs(rep.slack.st), 1e-10, {"worked 2x2 slack", 0});
        t.bound(std::fabs(rep.slack.in), 1e-10, {"worked 2x2 slack", 0});
        t.bound(std::fabs(rep.lhs.in - std::sqrt(2.0)) + std::fabs(rep.lhs.st), 1e-10, {"worked 2x2 lhs", 0});
    });
    maybe_inject(c, 8, t);
    t.finish();
    return r;
}

// Criterion 9

CheckResult spectral_norm_suite(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    const std::size_t matrices = scaled(c.trials, 1, 10);
    const DualNumber margin(1e-8, 1e-8);
    for (std::size_t i = 0; i < matrices; ++i) {
        Rng rng = trial_rng(c, 9, i);
        const std::size_t m = draw_size(rng, c);
        const std::size_t n = draw_size(rng, c);
        DQMatrix a;
        switch (i % 4) {
            case 0: a = random_general(rng, m, n); break;
            case 1: a = random_infinitesimal(rng, m, n); break;
            case 2: a = embed(random_qmatrix(rng, m, n)); break;
            default: a = random_clustered_hermitian(rng, m);
        }
        t.instance();
        t.guard({"spectral norm", i}, [&] {
            const DualSVD d = dq_svd(a);
            const DualNumber sigma1 = d.sigmas.front();
            t.expect(spectral_norm(a) == sigma1, {"spectral_norm equals sigma_1", i});
            const DualNumber bound = sigma1 + margin;
            for (std::size_t k = 0; k < 1000; ++k) {
                const DQVector x = random_unit_vector(rng, a.cols());
                t.inequality(make_report(vec_norm2(matvec(a, x)), bound), {"random unit vector", i});
            }
            const DQVector v1 = d.v.column(0);
            const DualNumber attained = vec_norm2(matvec(a, v1));
            t.bound(rel_gap(attained.st, sigma1.st), 1e-8, {"attained at leading right singular vector", i});
            t.bound(rel_gap(attained.in, sigma1.in), 1e-8, {"attained at leading right singular vector", i});
        });

        t.guard({"unitary invariance", i}, [&] {
            const std::size_t k = rng.between(1, m);
            const DQMatrix u = orthonormalize_columns(random_general(rng, m, k));
            for (std::size_t j = 0; j < 10; ++j) {
                DQVector x = random_general(rng, k, 1).column(0);
                if (j % 3 == 1) {
                    for (auto& q : x) q.st = Quaternion();
                } else if (j % 3 == 2) {
                    for (auto& q : x) q.in = Quaternion();
                }
                const DualNumber ux = vec_norm2(matvec(u, x));
                const DualNumber nx = vec_norm2(x);
                t.bound(rel_gap(ux.st, nx.st), 1e-10, {"norm preservation", i});
                t.bound(rel_gap(ux.in, nx.in), 1e-10, {"norm preservation", i});
            }
        });
    }
    t.note(std::to_string(matrices) + " matrices x 1000 unit vectors");
    maybe_inject(c, 9, t);
    t.finish();
    return r;
}

// Criterion 10

std::string serialize(const DQMatrix& a) {
    std::ostringstream os;
    write_dqm(os, a);
    return os.str();
}

bool bit_identical(const DQMatrix& a, const DQMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const auto bits = [](double v) { return std::bit_cast<std::uint64_t>(v); };
    for (std::size_t k = 0; k < a.size(); ++k) {
        const DualQuaternion& p = a.entries()[k];
        const DualQuaternion& q = b.entries()[k];
        const double pv[8] = {p.st.w, p.st.x, p.st.y, p.st.z, p.in.w, p.in.x, p.in.y, p.in.z};
        const double qv[8] = {q.st.w, q.st.x, q.st.y, q.st.z, q.in.w, q.in.x, q.in.y, q.in.z};
        for (int c = 0; c < 8; ++c)
            if (bits(pv[c]) != bits(qv[c])) return false;
    }
    return true;
}

struct CliCase {
    std::vector<std::string> args;
    int expected;
};

void run_cli_fixtures(Tally& t, const SuiteConfig& c) {
    namespace fs = std::filesystem;
    fs::path dir = c.work_dir;
    const bool temporary = dir.empty();
    if (temporary) dir = fs::temp_directory_path() / ("dqm-verify-" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const auto path = [&](const char* name) { return (dir / name).string(); };

    DQMatrix herm(2, 2);
    herm(0, 0) = DualQuaternion(2.0);
    herm(1, 1) = DualQuaternion(-1.0);
    herm(0, 1) = DualQuaternion(Quaternion(0.5, 0.25, 0.0, 0.0));
    herm(1, 0) = conj(herm(0, 1));
    DQMatrix nonherm = DQMatrix::identity(2);
    nonherm(0, 1) = DualQuaternion(3.0);
    DQMatrix diag(2, 2);
    diag(0, 0) = DualQuaternion(2.0);
    diag(1, 1) = DualQuaternion(Quaternion(), Quaternion(1.0));

    save_dqm(path("identity.dqm"), DQMatrix::identity(2));
    save_dqm(path("worked.dqm"), worked_example_a());
    save_dqm(path("herm.dqm"), herm);
    save_dqm(path("nonherm.dqm"), nonherm);
    save_dqm(path("diag.dqm"), diag);
    {
        std::ofstream bad(path("garbage.dqm"));
        bad << "DQM 2 2\n1 2 3\n";
    }

    const std::vector<CliCase> cases = {
        {{"eig", path("identity.dqm")}, 0},
        {{"eig", path("worked.dqm")}, 0},
        {{"eig", path("nonherm.dqm")}, 2},
        {{"eig", path("garbage.dqm")}, 2},
        {{"eig", path("missing.dqm")}, 2},
        {{"svd", path("diag.dqm")}, 0},
        {{"norm", path("identity.dqm"), "--kind", "fro"}, 0},
        {{"norm", path("diag.dqm"), "--kind", "spec"}, 0},
        {{"check", "vn", path("herm.dqm"), path("herm.dqm")}, 0},
        {{"check", "vn-herm", path("herm.dqm"), path("nonherm.dqm")}, 2},
        {{"check", "hw", path("herm.dqm"), path("herm.dqm")}, 2},
        {{"check", "hw", path("herm.dqm"), path("identity.dqm")}, 0},
        {{"check", "hw-herm", path("worked.dqm"), path("identity.dqm")}, 0},
        {{"check", "kyfan", path("herm.dqm"), "--k", "1"}, 0},
        {{"check", "kyfan", path("herm.dqm"), "--k", "3"}, 2},
        {{"check", "lem43", path("nonherm.dqm")}, 0},
        {{"check", "vn", path("herm.dqm"), path("garbage.dqm")}, 2},
        {{"gen", "--kind", "general", "--m", "2", "--n", "3", "--seed", "7", "--out", path("gen.dqm")}, 0},
        {{"gen", "--kind", "general", "--m", "0", "--n", "3", "--seed", "7", "--out", path("gen0.dqm")}, 2},
        {{"verify", "--trials", "0"}, 2},
        {{"verify", "--trials", "4", "--max-size", "3", "--criteria", "2"}, 0},
        {{"verify", "--trials", "4", "--max-size", "3", "--criteria", "2", "--inject-failure", "2"}, 1},
        {{"no-such-command"}, 2},
    };
    for (std::size_t i = 0; i < cases.size(); ++i) {
        t.instance();
        const int code = c.cli(cases[i].args);
        if (code != cases[i].expected) {
            std::string cmd;
            for (const auto& a : cases[i].args) cmd += (cmd.empty() ? "" : " ") + fs::path(a).filename().string();
            t.fail({"cli exit code", i},
                   "'" + cmd + "' exited " + std::to_string(code) + ", expected " + std::to_string(cases[i].expected));
        }
    }
    t.guard({"cli gen output", 0}, [&] {
        const DQMatrix g = load_dqm(path("gen.dqm"));
        t.expect(g.rows() == 2 && g.cols() == 3, {"cli gen output shape", 0});
        t.expect(bit_identical(g, generate(GeneratorKind::General, 2, 3, 7).front()), {"cli gen output matches generator", 0});
    });
    if (temporary) {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    t.note("cli exit-code fixtures: " + std::to_string(cases.size()));
}

CheckResult cli_contract(const SuiteConfig& c) {
    CheckResult r;
    Tally t(r);
    const std::size_t files = scaled(c.trials, 1, 10);
    const double specials[] = {-0.0, 0.1, 1.0 / 3.0, 5e-324, 2.2250738585072014e-308, 1.7976931348623157e308, -1e-300, 123456789.125};
    for (std::size_t i = 0; i < files; ++i) {
        Rng rng = trial_rng(c, 10, i);
        DQMatrix a = random_general(rng, draw_size(rng, c), draw_size(rng, c));
        for (const double s : specials) {
            auto& q = a.entries()[rng.between(0, a.size() - 1)];
            (rng.next() % 2 ? q.st : q.in).y = s;
        }
        t.instance();
        t.guard({"file round trip", i}, [&] {
            const std::string text = serialize(a);
            std::istringstream is(text);
            const DQMatrix back = read_dqm(is);
            t.expect(bit_identical(a, back), {"file round trip bit-exact", i});
            t.expect(serialize(back) == text, {"file rewrite identical", i});
        });
    }

    for (const auto kind : {GeneratorKind::General, GeneratorKind::Hermitian, GeneratorKind::Infinitesimal,
                            GeneratorKind::EpsPerturbPair, GeneratorKind::ClusteredHermPair}) {
        const auto k = static_cast<std::size_t>(kind);
        t.instance();
        t.guard({"generator determinism", k}, [&] {
            const auto first = generate(kind, 4, 3, c.seed);
            const auto second = generate(kind, 4, 3, c.seed);
            const auto other = generate(kind, 4, 3, c.seed + 1);
            bool same = first.size() == second.size();
            for (std::size_t j = 0; same && j < first.size(); ++j) same = serialize(first[j]) == serialize(second[j]);
            t.expect(same, {"generator determinism", k});
            t.expect(serialize(first.front()) != serialize(other.front()), {"generator seed sensitivity", k});
        });
    }

    t.instance();
    t.guard({"verify determinism", 0}, [&] {
        SuiteConfig small;
        small.seed = c.seed;
        small.trials = std::max<std::size_t>(1, c.trials / 100);
        small.max_size = std::min<std::size_t>(c.max_size, 6);
        small.criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9};
        t.expect(to_json(run_suite(small), false) == to_json(run_suite(small), false), {"verify determinism", 0});
    });

    if (c.cli) {
        run_cli_fixtures(t, c);
    } else {
        t.note("cli exit-code fixtures skipped: no runner supplied");
    }
    maybe_inject(c, 10, t);
    t.finish();
    return r;
}

}  // namespace

bool RunReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

std::string criterion_name(int criterion) {
    switch (criterion) {
        case 1: return "dual scalar laws";
        case 2: return "quaternion identity and multiplication table";
        case 3: return "decomposition residuals";
        case 4: return "trace identities";
        case 5: return "majorization and trace bounds";
        case 6: return "von Neumann trace inequalities";
        case 7: return "Hoffman-Wielandt singular";
        case 8: return "Hoffman-Wielandt Hermitian";
        case 9: return "spectral norm";
        case 10: return "file format, determinism and exit codes";
        default: throw Error(ErrorCode::PreconditionViolated, "unknown criterion " + std::to_string(criterion));
    }
}

CheckResult run_criterion(int criterion, const SuiteConfig& config) {
    if (config.trials == 0) throw Error(ErrorCode::PreconditionViolated, "trials must be positive");
    if (config.max_size == 0) throw Error(ErrorCode::PreconditionViolated, "max size must be positive");
    CheckResult r;
    switch (criterion) {
        case 1: r = scalar_laws(config); break;
        case 2: r = quaternion_identity(config); break;
        case 3: r = decomposition_residuals(config); break;
        case 4: r = trace_identities(config); break;
        case 5: r = majorization_suite(config); break;
        case 6: r = trace_inequalities(config); break;
        case 7: r = hoffman_wielandt_singular_suite(config); break;
        case 8: r = hoffman_wielandt_hermitian_suite(config); break;
        case 9: r = spectral_norm_suite(config); break;
        case 10: r = cli_contract(config); break;
        default: throw Error(ErrorCode::PreconditionViolated, "unknown criterion " + std::to_string(criterion));
    }
    r.criterion = criterion;
    r.name = criterion_name(criterion);
    return r;
}

RunReport run_suite(const SuiteConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<int> criteria = config.criteria;
    if (criteria.empty())
        for (int k = 1; k <= criterion_count; ++k) criteria.push_back(k);
    for (int k : criteria) (void)criterion_name(k);
    if (config.trials == 0) throw Error(ErrorCode::PreconditionViolated, "trials must be positive");

    RunReport report;
    report.command = "verify --seed " + std::to_string(config.seed) + " --trials " + std::to_string(config.trials) +
                     " --max-size " + std::to_string(config.max_size);
    report.seed = config.seed;
    report.trials = config.trials;
    report.max_size = config.max_size;
    for (int k : criteria) {
        report.checks.push_back(run_criterion(k, config));
        report.instances += report.checks.back().instances;
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string summary_line(const CheckResult& check) {
    std::ostringstream os;
    os << (check.passed() ? "[PASS] " : "[FAIL] ") << check.criterion << " " << check.name << ": " << check.instances
       << " instances, " << check.failures << " failures";
    if (check.worst_slack) os << ", worst slack " << fmt(*check.worst_slack);
    if (check.worst_ratio > 0.0) os << ", worst error/limit " << fmt(check.worst_ratio);
    return os.str();
}

std::string to_json(const RunReport& report, bool include_timing) {
    nlohmann::ordered_json j;
    j["command"] = report.command;
    j["seed"] = report.seed;
    j["trials"] = report.trials;
    j["max_size"] = report.max_size;
    j["instances"] = report.instances;
    j["passed"] = report.passed();
    auto& checks = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json e;
        e["criterion"] = c.criterion;
        e["name"] = c.name;
        e["passed"] = c.passed();
        e["instances"] = c.instances;
        e["failures"] = c.failures;
        e["worst_slack"] = c.worst_slack ? nlohmann::ordered_json::array({c.worst_slack->st, c.worst_slack->in})
                                         : nlohmann::ordered_json(nullptr);
        e["worst_error_ratio"] = c.worst_ratio;
        e["notes"] = c.notes;
        checks.push_back(std::move(e));
    }
    if (include_timing) j["wall_seconds"] = report.wall_seconds;
    return j.dump(2);
}

}  // namespace dqm
