#pragma once

// Dense-matrix oracle: random instances, functional calculus of normal
// matrices, commutator norms, and empirical checks of the bound curves.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "commbound/bound_curve.hpp"
#include "commbound/errors.hpp"
#include "commbound/periodic_fn.hpp"
#include "commbound/positive_bounds.hpp"
#include "commbound/rng.hpp"

namespace commbound {

using DenseMatrix = Eigen::MatrixXcd;

/// Instances are capped at 64; block constructions double that.
inline constexpr int kMaxInstanceDim = 64;

/// Largest singular value.
double op_norm(const DenseMatrix& m);

/// M₁M₂ - M₂M₁. Throws DomainError on dimension mismatch.
DenseMatrix commutator(const DenseMatrix& m1, const DenseMatrix& m2);

// --- eigendecomposition -----------------------------------------------------

struct HermitianEigen {
    Eigen::VectorXd values;  // ascending
    DenseMatrix vectors;     // unitary, columns are eigenvectors
    int sweeps = 0;
};

/// Cyclic Jacobi for a Hermitian matrix (the input is Hermitized first).
HermitianEigen jacobi_eigen(const DenseMatrix& h);

struct UnitaryEigen {
    Eigen::VectorXd phases;  // in (-π, π]
    DenseMatrix vectors;
    double residual = 0.0;   // ‖V - Q e^{iΘ} Q*‖
};

/// Simultaneous diagonalization of (V + V*)/2 and, inside its eigenvalue
/// clusters, of (V - V*)/2i.
UnitaryEigen unitary_eigen(const DenseMatrix& v, double cluster_tolerance = 1e-8);

// --- role checks ------------------------------------------------------------

double unitarity_defect(const DenseMatrix& v);  // ‖V*V - I‖
bool is_unitary(const DenseMatrix& v, double tol = 1e-10);
bool is_positive_contraction(const DenseMatrix& h, double tol = 1e-10);

// --- random instances -------------------------------------------------------

enum class SpectrumMode { uniform, atoms };

std::string to_string(SpectrumMode mode);
SpectrumMode parse_spectrum_mode(const std::string& text);

DenseMatrix gaussian_matrix(int n, CounterRng& rng);
DenseMatrix haar_unitary(int n, CounterRng& rng);
DenseMatrix haar_unitary(int n, std::uint64_t seed);
DenseMatrix random_contraction(int n, CounterRng& rng);
DenseMatrix random_contraction(int n, std::uint64_t seed);
DenseMatrix random_positive_contraction(int n, CounterRng& rng, SpectrumMode mode);
DenseMatrix random_positive_contraction(int n, std::uint64_t seed, SpectrumMode mode);

// --- functional calculus ----------------------------------------------------

/// f[V] = Q diag(f(θ_k)) Q* with phases θ_k ∈ (-π, π].
DenseMatrix unitary_calculus(const PeriodicFunction& f, const DenseMatrix& v);

/// f(H) = Q diag(f(λ_k)) Q*, eigenvalues clamped into [0, 1].
DenseMatrix hermitian_calculus(const UnitIntervalFunction& f, const DenseMatrix& h);

/// I - H, after checking 0 <= H <= 1.
DenseMatrix reflect_instance(const DenseMatrix& h);

// --- constructions ----------------------------------------------------------

/// [[0, M], [M₁, 0]].
DenseMatrix offdiagonal(const DenseMatrix& m, const DenseMatrix& m1);

/// [[0, I], [I, 0]] of size 2n.
DenseMatrix swap_matrix(int n);

/// S = swap, T = offdiagonal(V, V₁); ‖[S, T]‖ = ‖V - V₁‖.
std::pair<DenseMatrix, DenseMatrix> block_pair(const DenseMatrix& v, const DenseMatrix& v1);

enum class Role { unitary, positive_contraction };

struct InstancePair {
    DenseMatrix x;
    DenseMatrix a;
    Role role = Role::unitary;
    std::uint64_t seed = 0;
    int dim = 0;
};

struct SampleRecord {
    std::uint64_t seed = 0;
    int dim = 0;
    double delta = 0.0;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

/// V = diag(e^{ix₁}, e^{ix₂}), A = [[0,1],[1,0]]. bound and margin are NaN.
SampleRecord lower_bound_instance(const PeriodicFunction& f, double x1, double x2);

// --- sweeps -----------------------------------------------------------------

struct SweepConfig {
    std::size_t count = 1000;
    int dim_min = 2;
    int dim_max = 8;
    std::uint64_t seed = 42;
    // Positive sweeps: empty means alternate uniform / atoms by sample index.
    std::optional<SpectrumMode> spectrum_mode;
    double tolerance = 1e-8;
};

/// Instance for sample `index` of a sweep; depends only on (sample seed, dims, mode).
InstancePair positive_instance(std::uint64_t sample_seed, int dim_min, int dim_max, SpectrumMode mode);
InstancePair unitary_instance(std::uint64_t sample_seed, int dim_min, int dim_max);

SampleRecord measure_positive(const UnitIntervalFunction& f, const InstancePair& pair, const BoundCurve& curve);
SampleRecord measure_unitary(const PeriodicFunction& f, const InstancePair& pair, const BoundCurve& curve);

struct SweepResult {
    std::vector<SampleRecord> records;
    double min_margin = 0.0;
    std::uint64_t min_margin_seed = 0;
};

/// A record with margin below -tolerance; carries the instance for replay.
class BoundViolation : public Error {
  public:
    BoundViolation(SampleRecord record, InstancePair instance);
    const SampleRecord& record() const { return record_; }
    const InstancePair& instance() const { return instance_; }

  private:
    SampleRecord record_;
    InstancePair instance_;
};

/// Random (H, A) pairs checked against `curve`. Throws BoundViolation on the
/// first (lowest-index) violating sample.
SweepResult sweep_positive(const UnitIntervalFunction& f, const BoundCurve& curve, const SweepConfig& config);

/// Random (V, A) pairs checked against `curve`.
SweepResult sweep_unitary(const PeriodicFunction& f, const BoundCurve& curve, const SweepConfig& config);

// --- extremal search --------------------------------------------------------

struct ProbeConfig {
    double delta_target = 0.25;
    int dim = 2;
    int iterations = 10000;
    int restarts = 64;
    std::uint64_t seed = 42;
    double initial_step = 0.1;
    int stagnation_limit = 10;
};

struct ProbeResult {
    SampleRecord best;
    double sqrt_gap = 0.0;  // √δ_target - best.measured
    int iterations = 0;
    int stagnations = 0;
    int best_restart = -1;
    DenseMatrix h;
    DenseMatrix a;
};

/// Random-restart hill climb maximizing ‖[√H, A]‖ subject to 0 <= H <= 1,
/// ‖A‖ <= 1, ‖[H, A]‖ <= δ_target. Restart 0 starts from
/// H = diag(0, δ), A = swap of the first two basis vectors.
ProbeResult probe_max_commutator(const ProbeConfig& config);

}  // namespace commbound
