#pragma once

// Upper bounds on ‖[f[V], A]‖ for a unitary V and a contraction A with
// ‖[V, A]‖ <= δ, and the two-point lower bound.

#include <cstddef>

#include "commbound/bound_curve.hpp"
#include "commbound/periodic_fn.hpp"

namespace commbound {

/// ‖[V, A]‖ <= 2 whenever V is unitary and ‖A‖ <= 1.
inline constexpr double kUnitaryDeltaMax = 2.0;

/// δ ↦ ‖g′‖_F δ.
BoundLine folk_line(const TrigPolynomial& g);

/// f = g + h: slope ‖g′‖_F, intercept 2·chebyshev_radius(f - g).
BoundLine split_line(const PeriodicFunction& f, const TrigPolynomial& g,
                     std::size_t grid_size = kDefaultExtentGrid);

/// m = 0, b = min(2Σ|a_n|, 2·chebyshev_radius(f)). Ties go to the oscillation branch.
BoundLine constant_cap(const PeriodicFunction& f, std::size_t grid_size = kDefaultExtentGrid);

struct TailOptions {
    int cutoff_factor = 10;  // sum explicit coefficients up to cutoff_factor * N_max
    // The extrapolated remainder past the cutoff may be at most this fraction
    // of the tail at N_max.
    double max_remainder_fraction = 0.5;
};

/// Σ_{|n|>N} |a_n| for N = 0..n_max, with the extrapolated remainder past the
/// summation cutoff (zero when the sum is closed-form or finite).
struct CoefficientTails {
    std::vector<double> tail;  // tail[N]
    double remainder = 0.0;
    bool closed_form = false;
};

CoefficientTails coefficient_tails(const PeriodicFunction& f, int n_max, const TailOptions& options = {});

struct EnvelopeOptions {
    std::size_t grid_size = kDefaultExtentGrid;
    TailOptions tails;
    QuadratureOptions quadrature;
};

/// One line per truncation degree N = 0..n_max, plus the constant cap.
///
/// Each line has slope Σ_{|n|<=N}|n a_n| and takes the smaller of the
/// coefficient-tail intercept 2Σ_{|n|>N}|a_n| and the oscillation intercept
/// 2·chebyshev_radius(f - S_N f); the branch used is kept in the provenance.
/// Tails that are only estimated (no closed form) never replace the
/// oscillation intercept.
BoundCurve truncation_envelope(const PeriodicFunction& f, int n_max, const EnvelopeOptions& options = {});

inline constexpr std::size_t kDefaultLowerGrid = 4096;

struct LowerBoundPoint {
    double value = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
};

/// max |f(x₂) - f(x₁)| over pairs at circular distance <= 2 arcsin(δ/2).
/// Grid search with one local refinement around the best pair. Requires 0 <= δ < 2.
LowerBoundPoint eta_lower(const PeriodicFunction& f, double delta, std::size_t grid_size = kDefaultLowerGrid);

/// Lower bounds for many δ at once, sharing the grid samples. Each δ also
/// keeps the best pair found at any smaller δ, which is still admissible.
std::vector<LowerBoundPoint> eta_lower_curve(const PeriodicFunction& f, const std::vector<double>& deltas,
                                             std::size_t grid_size = kDefaultLowerGrid);

/// Bound on ‖f[V] - f[V₁]‖ given ‖V - V₁‖ <= d.
double continuity_bound(const BoundCurve& curve, double d);

/// Circular distance between two angles, in [0, π].
double circular_distance(double x1, double x2);

}  // namespace commbound
