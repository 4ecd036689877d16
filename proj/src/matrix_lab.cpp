#include "commbound/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "commbound/parallel.hpp"

namespace commbound {

namespace {

void require_square(const DenseMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) throw DomainError(std::string(what) + ": matrix must be square");
}

void require_dim(int n) {
    if (n < 1 || n > kMaxInstanceDim) throw DomainError("matrix dimension must lie in [1, 64]");
}

DenseMatrix diagonal(const Eigen::VectorXcd& d) { return d.asDiagonal(); }

}  // namespace

double op_norm(const DenseMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<DenseMatrix> svd(m);
    return svd.singularValues()(0);
}

DenseMatrix commutator(const DenseMatrix& m1, const DenseMatrix& m2) {
    require_square(m1, "commutator");
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) throw DomainError("commutator: dimension mismatch");
    return m1 * m2 - m2 * m1;
}

// --- eigendecomposition -----------------------------------------------------

HermitianEigen jacobi_eigen(const DenseMatrix& h) {
    require_square(h, "jacobi_eigen");
    const Eigen::Index n = h.rows();
    DenseMatrix a = (h + h.adjoint()) / 2.0;
    DenseMatrix q = DenseMatrix::Identity(n, n);
    const double scale = a.norm();
    HermitianEigen out;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index r = p + 1; r < n; ++r) off += std::norm(a(p, r));
        if (std::sqrt(off) <= 1e-17 * scale || off == 0.0) break;
        out.sweeps = sweep + 1;

        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index r = p + 1; r < n; ++r) {
                const Complex apr = a(p, r);
                const double mag = std::abs(apr);
                if (mag == 0.0) continue;
                const Complex phase = apr / mag;
                const double tau = (a(r, r).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex cp = std::conj(phase);

                // A <- A G, Q <- Q G with G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on (p, r).
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akr = a(k, r);
                    a(k, p) = c * akp - s * cp * akr;
                    a(k, r) = s * akp + c * cp * akr;
                    const Complex qkp = q(k, p), qkr = q(k, r);
                    q(k, p) = c * qkp - s * cp * qkr;
                    q(k, r) = s * qkp + c * cp * qkr;
                }
                // A <- G* A.
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), ark = a(r, k);
                    a(p, k) = c * apk - s * phase * ark;
                    a(r, k) = s * apk + c * phase * ark;
                }
                a(p, r) = 0.0;
                a(r, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(r, r) = a(r, r).real();
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index src = order[static_cast<std::size_t>(i)];
        out.values(i) = a(src, src).real();
        out.vectors.col(i) = q.col(src);
    }
    return out;
}

namespace {

UnitaryEigen unitary_eigen_once(const DenseMatrix& v, double cluster_tolerance) {
    const Eigen::Index n = v.rows();
    const DenseMatrix re_part = (v + v.adjoint()) / 2.0;
    const DenseMatrix im_part = (v - v.adjoint()) / Complex(0.0, 2.0);
    const auto first = jacobi_eigen(re_part);
    DenseMatrix q = first.vectors;

    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && first.values(end) - first.values(end - 1) < cluster_tolerance) ++end;
        if (end - start > 1) {
            const DenseMatrix block = q.middleCols(start, end - start);
            const DenseMatrix compressed = block.adjoint() * im_part * block;
            const auto second = jacobi_eigen(compressed);
            q.middleCols(start, end - start) = block * second.vectors;
        }
        start = end;
    }

    UnitaryEigen out;
    const DenseMatrix d = q.adjoint() * v * q;
    out.phases.resize(n);
    Eigen::VectorXcd unit(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double theta = std::arg(d(k, k));
        if (theta <= -kPi) theta = kPi;
        out.phases(k) = theta;
        unit(k) = std::polar(1.0, theta);
    }
    out.vectors = std::move(q);
    out.residual = op_norm(v - out.vectors * diagonal(unit) * out.vectors.adjoint());
    return out;
}

}  // namespace

UnitaryEigen unitary_eigen(const DenseMatrix& v, double cluster_tolerance) {
    require_square(v, "unitary_eigen");
    // Nearly-degenerate real parts can leave a residual when they fall just
    // outside the cluster tolerance; widen it and retry.
    UnitaryEigen best = unitary_eigen_once(v, cluster_tolerance);
    for (double tol = cluster_tolerance * 100.0; best.residual >= 1e-9 && tol <= 1e-2; tol *= 100.0) {
        auto retry = unitary_eigen_once(v, tol);
        if (retry.residual < best.residual) best = std::move(retry);
    }
    return best;
}

// --- role checks ------------------------------------------------------------

double unitarity_defect(const DenseMatrix& v) {
    require_square(v, "unitarity_defect");
    return op_norm(v.adjoint() * v - DenseMatrix::Identity(v.rows(), v.cols()));
}

bool is_unitary(const DenseMatrix& v, double tol) { return unitarity_defect(v) <= tol; }

bool is_positive_contraction(const DenseMatrix& h, double tol) {
    require_square(h, "is_positive_contraction");
    if (op_norm(h - h.adjoint()) > tol) return false;
    const auto eig = jacobi_eigen(h);
    return eig.values.minCoeff() >= -tol && eig.values.maxCoeff() <= 1.0 + tol;
}

// --- random instances -------------------------------------------------------

std::string to_string(SpectrumMode mode) { return mode == SpectrumMode::uniform ? "uniform" : "atoms"; }

SpectrumMode parse_spectrum_mode(const std::string& text) {
    if (text == "uniform") return SpectrumMode::uniform;
    if (text == "atoms") return SpectrumMode::atoms;
    throw DomainError("unknown spectrum mode '" + text + "' (expected uniform or atoms)");
}

DenseMatrix gaussian_matrix(int n, CounterRng& rng) {
    require_dim(n);
    DenseMatrix z(n, n);
    const double scale = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = Complex(re, im) * scale;
        }
    return z;
}

DenseMatrix haar_unitary(int n, CounterRng& rng) {
    const DenseMatrix z = gaussian_matrix(n, rng);
    Eigen::HouseholderQR<DenseMatrix> qr(z);
    DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(n, n);
    const DenseMatrix& r = qr.matrixQR();
    for (int k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

DenseMatrix haar_unitary(int n, std::uint64_t seed) {
    CounterRng rng(seed);
    return haar_unitary(n, rng);
}

DenseMatrix random_contraction(int n, CounterRng& rng) {
    DenseMatrix a = gaussian_matrix(n, rng);
    const double norm = op_norm(a);
    if (norm > 1.0) a /= norm;
    return a;
}

DenseMatrix random_contraction(int n, std::uint64_t seed) {
    CounterRng rng(seed);
    return random_contraction(n, rng);
}

namespace {

Eigen::VectorXd random_spectrum(int n, CounterRng& rng, SpectrumMode mode) {
    Eigen::VectorXd lambda(n);
    for (int k = 0; k < n; ++k) {
        if (mode == SpectrumMode::uniform) {
            lambda(k) = rng.uniform();
        } else {
            switch (rng.uniform_int(0, 2)) {
                case 0: lambda(k) = 0.0; break;
                case 1: lambda(k) = 1.0; break;
                default: lambda(k) = rng.uniform(); break;
            }
        }
    }
    return lambda;
}

DenseMatrix conjugate(const DenseMatrix& u, const Eigen::VectorXcd& d) {
    return u * diagonal(d) * u.adjoint();
}

DenseMatrix hermitize(const DenseMatrix& h) { return (h + h.adjoint()) / 2.0; }

}  // namespace

DenseMatrix random_positive_contraction(int n, CounterRng& rng, SpectrumMode mode) {
    const DenseMatrix u = haar_unitary(n, rng);
    const Eigen::VectorXd lambda = random_spectrum(n, rng, mode);
    return hermitize(conjugate(u, lambda.cast<Complex>()));
}

DenseMatrix random_positive_contraction(int n, std::uint64_t seed, SpectrumMode mode) {
    CounterRng rng(seed);
    return random_positive_contraction(n, rng, mode);
}

// --- functional calculus ----------------------------------------------------

DenseMatrix unitary_calculus(const PeriodicFunction& f, const DenseMatrix& v) {
    require_square(v, "unitary_calculus");
    const double defect = unitarity_defect(v);
    if (defect > 1e-10) {
        std::ostringstream msg;
        msg << "unitary_calculus: input is not unitary (defect " << defect << ")";
        throw DecompositionError(msg.str());
    }
    const auto eig = unitary_eigen(v);
    if (eig.residual >= 1e-9) {
        std::ostringstream msg;
        msg << "unitary_calculus: decomposition residual " << eig.residual << " exceeds 1e-9";
        throw DecompositionError(msg.str());
    }
    Eigen::VectorXcd values(v.rows());
    for (Eigen::Index k = 0; k < v.rows(); ++k) values(k) = f(eig.phases(k));
    return conjugate(eig.vectors, values);
}

DenseMatrix hermitian_calculus(const UnitIntervalFunction& f, const DenseMatrix& h) {
    require_square(h, "hermitian_calculus");
    if (op_norm(h - h.adjoint()) > 1e-10) throw DecompositionError("hermitian_calculus: input is not Hermitian");
    const auto eig = jacobi_eigen(h);
    if (eig.values.minCoeff() < -1e-10 || eig.values.maxCoeff() > 1.0 + 1e-10)
        throw DomainError("hermitian_calculus: spectrum outside [0, 1]");
    Eigen::VectorXcd values(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) values(k) = f(std::clamp(eig.values(k), 0.0, 1.0));
    return conjugate(eig.vectors, values);
}

DenseMatrix reflect_instance(const DenseMatrix& h) {
    require_square(h, "reflect_instance");
    if (!is_positive_contraction(h, 1e-10)) throw DomainError("reflect_instance: spectrum outside [0, 1]");
    return DenseMatrix::Identity(h.rows(), h.cols()) - h;
}

// --- constructions ----------------------------------------------------------

DenseMatrix offdiagonal(const DenseMatrix& m, const DenseMatrix& m1) {
    require_square(m, "offdiagonal");
    if (m.rows() != m1.rows() || m.cols() != m1.cols()) throw DomainError("offdiagonal: dimension mismatch");
    const Eigen::Index n = m.rows();
    DenseMatrix out = DenseMatrix::Zero(2 * n, 2 * n);
    out.topRightCorner(n, n) = m;
    out.bottomLeftCorner(n, n) = m1;
    return out;
}

DenseMatrix swap_matrix(int n) {
    const DenseMatrix id = DenseMatrix::Identity(n, n);
    return offdiagonal(id, id);
}

std::pair<DenseMatrix, DenseMatrix> block_pair(const DenseMatrix& v, const DenseMatrix& v1) {
    auto t = offdiagonal(v, v1);
    return {swap_matrix(static_cast<int>(v.rows())), std::move(t)};
}

SampleRecord lower_bound_instance(const PeriodicFunction& f, double x1, double x2) {
    Eigen::VectorXcd d(2);
    d << std::polar(1.0, x1), std::polar(1.0, x2);
    const DenseMatrix v = diagonal(d);
    const DenseMatrix a = swap_matrix(1);
    SampleRecord r;
    r.dim = 2;
    r.delta = op_norm(commutator(v, a));
    r.measured = op_norm(commutator(unitary_calculus(f, v), a));
    r.bound = std::numeric_limits<double>::quiet_NaN();
    r.margin = std::numeric_limits<double>::quiet_NaN();
    return r;
}

// --- sweeps -----------------------------------------------------------------

namespace {

// A in one of three families: a generic contraction, a blend of something
// commuting with X and a generic contraction (small δ), or a swap of two
// eigen-directions of X (the two-point instances that make the bounds tight).
enum class PartnerKind { generic = 0, near_commuting = 1, eigen_swap = 2 };

DenseMatrix normalize_contraction(DenseMatrix a) {
    const double norm = op_norm(a);
    if (norm > 1.0) a /= norm;
    return a;
}

DenseMatrix eigen_swap(const DenseMatrix& u, int n, CounterRng& rng) {
    const int i = rng.uniform_int(0, n - 1);
    int j = rng.uniform_int(0, n - 2);
    if (j >= i) ++j;
    DenseMatrix p = DenseMatrix::Zero(n, n);
    p(i, j) = 1.0;
    p(j, i) = 1.0;
    return u * p * u.adjoint();
}

}  // namespace

InstancePair positive_instance(std::uint64_t sample_seed, int dim_min, int dim_max, SpectrumMode mode) {
    CounterRng rng(sample_seed);
    const int n = rng.uniform_int(dim_min, dim_max);
    require_dim(n);
    const DenseMatrix u = haar_unitary(n, rng);
    const Eigen::VectorXd lambda = random_spectrum(n, rng, mode);

    InstancePair pair;
    pair.role = Role::positive_contraction;
    pair.seed = sample_seed;
    pair.dim = n;
    pair.x = hermitize(conjugate(u, lambda.cast<Complex>()));

    switch (static_cast<PartnerKind>(rng.uniform_int(0, 2))) {
        case PartnerKind::generic: pair.a = random_contraction(n, rng); break;
        case PartnerKind::near_commuting: {
            Eigen::VectorXcd d(n);
            for (int k = 0; k < n; ++k) d(k) = std::polar(std::sqrt(rng.uniform()), rng.uniform(-kPi, kPi));
            const double t = std::pow(rng.uniform(), 3.0);
            pair.a = normalize_contraction((1.0 - t) * conjugate(u, d) + t * random_contraction(n, rng));
            break;
        }
        case PartnerKind::eigen_swap: pair.a = eigen_swap(u, n, rng); break;
    }
    return pair;
}

InstancePair unitary_instance(std::uint64_t sample_seed, int dim_min, int dim_max) {
    CounterRng rng(sample_seed);
    const int n = rng.uniform_int(dim_min, dim_max);
    require_dim(n);

    InstancePair pair;
    pair.role = Role::unitary;
    pair.seed = sample_seed;
    pair.dim = n;

    switch (static_cast<PartnerKind>(rng.uniform_int(0, 2))) {
        case PartnerKind::generic:
            pair.x = haar_unitary(n, rng);
            pair.a = random_contraction(n, rng);
            break;
        case PartnerKind::near_commuting: {
            pair.x = haar_unitary(n, rng);
            const DenseMatrix id = DenseMatrix::Identity(n, n);
            const DenseMatrix poly = Complex(rng.normal(), rng.normal()) * id + Complex(rng.normal(), rng.normal()) * pair.x +
                                     Complex(rng.normal(), rng.normal()) * pair.x.adjoint();
            const double t = std::pow(rng.uniform(), 3.0);
            DenseMatrix blend = (1.0 - t) * poly / std::max(op_norm(poly), 1e-300) + t * random_contraction(n, rng);
            pair.a = normalize_contraction(std::move(blend));
            break;
        }
        case PartnerKind::eigen_swap: {
            const DenseMatrix u = haar_unitary(n, rng);
            Eigen::VectorXcd d(n);
            for (int k = 0; k < n; ++k) d(k) = std::polar(1.0, rng.uniform(-kPi, kPi));
            pair.x = conjugate(u, d);
            pair.a = eigen_swap(u, n, rng);
            break;
        }
    }
    return pair;
}

SampleRecord measure_positive(const UnitIntervalFunction& f, const InstancePair& pair, const BoundCurve& curve) {
    SampleRecord r;
    r.seed = pair.seed;
    r.dim = pair.dim;
    r.delta = op_norm(commutator(pair.x, pair.a));
    r.measured = op_norm(commutator(hermitian_calculus(f, pair.x), pair.a));
    r.bound = curve(r.delta);
    r.margin = r.bound - r.measured;
    return r;
}

SampleRecord measure_unitary(const PeriodicFunction& f, const InstancePair& pair, const BoundCurve& curve) {
    SampleRecord r;
    r.seed = pair.seed;
    r.dim = pair.dim;
    r.delta = op_norm(commutator(pair.x, pair.a));
    r.measured = op_norm(commutator(unitary_calculus(f, pair.x), pair.a));
    r.bound = curve(r.delta);
    r.margin = r.bound - r.measured;
    return r;
}

BoundViolation::BoundViolation(SampleRecord record, InstancePair instance)
    : Error([&] {
          std::ostringstream msg;
          msg << "bound violated by sample seed " << record.seed << " (dim " << record.dim << ", delta "
              << record.delta << ", measured " << record.measured << ", bound " << record.bound << ")";
          return msg.str();
      }()),
      record_(record),
      instance_(std::move(instance)) {}

namespace {

template <typename MakeInstance, typename Measure>
SweepResult run_sweep(const SweepConfig& config, MakeInstance make_instance, Measure measure) {
    if (config.count < 1) throw DomainError("sweep needs at least one sample");
    if (config.dim_min < 2 || config.dim_max < config.dim_min || config.dim_max > kMaxInstanceDim)
        throw DomainError("sweep dims must satisfy 2 <= min <= max <= 64");
    SweepResult result;
    result.records.resize(config.count);
    parallel_for(config.count, [&](std::size_t i) {
        result.records[i] = measure(make_instance(i, derive_seed(config.seed, i)));
    });
    result.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < config.count; ++i) {
        const auto& r = result.records[i];
        if (r.margin < -config.tolerance) throw BoundViolation(r, make_instance(i, r.seed));
        if (r.margin < result.min_margin) {
            result.min_margin = r.margin;
            result.min_margin_seed = r.seed;
        }
    }
    return result;
}

}  // namespace

SweepResult sweep_positive(const UnitIntervalFunction& f, const BoundCurve& curve, const SweepConfig& config) {
    auto make = [&](std::size_t i, std::uint64_t seed) {
        const SpectrumMode mode = config.spectrum_mode.value_or(i % 2 == 0 ? SpectrumMode::uniform : SpectrumMode::atoms);
        return positive_instance(seed, config.dim_min, config.dim_max, mode);
    };
    return run_sweep(config, make, [&](const InstancePair& p) { return measure_positive(f, p, curve); });
}

SweepResult sweep_unitary(const PeriodicFunction& f, const BoundCurve& curve, const SweepConfig& config) {
    auto make = [&](std::size_t, std::uint64_t seed) { return unitary_instance(seed, config.dim_min, config.dim_max); };
    return run_sweep(config, make, [&](const InstancePair& p) { return measure_unitary(f, p, curve); });
}

// --- extremal search --------------------------------------------------------

namespace {

struct ProbeState {
    DenseMatrix h;
    DenseMatrix a;
    double delta = 0.0;
    double measured = -1.0;
};

// Clamp H's spectrum into [0, 1], make A a contraction, then scale A so that
// ‖[H, A]‖ = δ_target when that keeps ‖A‖ <= 1.
void make_feasible(ProbeState& s, double delta_target, const UnitIntervalFunction& root) {
    const auto eig = jacobi_eigen(s.h);
    Eigen::VectorXcd clamped(s.h.rows());
    for (Eigen::Index k = 0; k < s.h.rows(); ++k) clamped(k) = std::clamp(eig.values(k), 0.0, 1.0);
    s.h = hermitize(conjugate(eig.vectors, clamped));

    double a_norm = op_norm(s.a);
    if (a_norm > 1.0) {
        s.a /= a_norm;
        a_norm = 1.0;
    }
    const double c = op_norm(commutator(s.h, s.a));
    if (c > 0.0) {
        double scale = delta_target / c;
        if (scale * a_norm > 1.0) scale = 1.0 / a_norm;
        if (scale != 1.0) s.a *= scale;
    }
    s.delta = op_norm(commutator(s.h, s.a));
    // Rounding can leave δ a hair above the target; shrink A onto the constraint.
    if (s.delta > delta_target) {
        s.a *= delta_target / s.delta;
        s.delta = op_norm(commutator(s.h, s.a));
    }
    s.measured = op_norm(commutator(hermitian_calculus(root, s.h), s.a));
}

DenseMatrix hermitian_noise(int n, CounterRng& rng) {
    const DenseMatrix z = gaussian_matrix(n, rng);
    return (z + z.adjoint()) / 2.0;
}

}  // namespace

ProbeResult probe_max_commutator(const ProbeConfig& config) {
    if (!(config.delta_target > 0.0) || config.delta_target > 1.0)
        throw DomainError("probe requires 0 < delta_target <= 1");
    if (config.dim < 2) throw DomainError("probe requires dim >= 2");
    require_dim(config.dim);
    if (config.restarts < 1 || config.iterations < config.restarts)
        throw DomainError("probe requires iterations >= restarts >= 1");

    const auto root = sqrt_function();
    const int n = config.dim;
    const int steps = config.iterations / config.restarts;

    struct RestartOutcome {
        ProbeState best;
        int stagnations = 0;
    };
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));

    parallel_for(outcomes.size(), [&](std::size_t r) {
        CounterRng rng(config.seed, r);
        ProbeState s;
        if (r == 0) {
            s.h = DenseMatrix::Zero(n, n);
            s.h(1, 1) = config.delta_target;
            s.a = DenseMatrix::Zero(n, n);
            s.a(0, 1) = 1.0;
            s.a(1, 0) = 1.0;
        } else {
            s.h = random_positive_contraction(n, rng, r % 2 == 0 ? SpectrumMode::uniform : SpectrumMode::atoms);
            s.a = random_contraction(n, rng);
        }
        make_feasible(s, config.delta_target, root);

        double step = config.initial_step;
        int stagnant = 0;
        RestartOutcome& out = outcomes[r];
        for (int it = 0; it < steps; ++it) {
            ProbeState candidate{s.h + step * hermitian_noise(n, rng), s.a + step * gaussian_matrix(n, rng)};
            make_feasible(candidate, config.delta_target, root);
            if (candidate.measured > s.measured) {
                s = std::move(candidate);
                stagnant = 0;
            } else if (++stagnant >= config.stagnation_limit) {
                step /= 2.0;
                stagnant = 0;
                ++out.stagnations;
            }
        }
        out.best = std::move(s);
    });

    ProbeResult result;
    result.iterations = steps * config.restarts;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        result.stagnations += outcomes[r].stagnations;
        if (result.best_restart < 0 || outcomes[r].best.measured > result.best.measured) {
            const auto& s = outcomes[r].best;
            result.best_restart = static_cast<int>(r);
            result.best.seed = derive_seed(config.seed, r);
            result.best.dim = n;
            result.best.delta = s.delta;
            result.best.measured = s.measured;
            result.h = s.h;
            result.a = s.a;
        }
    }
    result.best.bound = std::sqrt(config.delta_target);
    result.best.margin = result.best.bound - result.best.measured;
    result.sqrt_gap = result.best.margin;
    return result;
}

}  // namespace commbound
