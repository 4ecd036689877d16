#pragma once

// Bounds on ‖[f(H), A]‖ for 0 <= H <= 1 and ‖A‖ <= 1, in particular the
// envelope γ₀ for f(x) = √x.

#include <functional>
#include <string>
#include <vector>

#include "commbound/bound_curve.hpp"

namespace commbound {

/// ‖[H, A]‖ <= 1 is not implied by the normalization, but every f with range
/// in [0, 1] is capped at 1; curves for positive contractions live on [0, 1].
inline constexpr double kPositiveDeltaMax = 1.0;

/// A function on [0, 1], applied to positive contractions.
struct UnitIntervalFunction {
    std::string name;
    std::function<double(double)> rule;

    double operator()(double x) const { return rule(x); }
};

UnitIntervalFunction sqrt_function();

/// x ↦ 1 - f(1 - x).
UnitIntervalFunction reflect_function(const UnitIntervalFunction& f);

/// Power series Σ c_n x^n truncated at N, with compensated running sums.
class PowerSeries {
  public:
    PowerSeries(std::vector<double> coefficients, std::string description);

    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
    double coefficient(int n) const { return coefficients_.at(static_cast<std::size_t>(n)); }
    const std::vector<double>& coefficients() const { return coefficients_; }
    const std::string& description() const { return description_; }

    /// Σ_{n<=N} c_n.
    double partial_sum(int N) const { return partial_.at(static_cast<std::size_t>(N)); }
    /// Σ_{n<=N} |n c_n|.
    double weighted_sum(int N) const { return weighted_.at(static_cast<std::size_t>(N)); }

  private:
    std::vector<double> coefficients_;
    std::string description_;
    std::vector<double> partial_;
    std::vector<double> weighted_;
};

/// Taylor coefficients of 1 - √(1 - x) at 0, c_0 .. c_N.
PowerSeries sqrt_series(int N);

/// Slope Σ_{n<=N}|n c_n|, intercept `remainder_oscillation` (2·chebyshev radius
/// of f minus the truncated series, supplied by the caller).
BoundLine power_series_line(const PowerSeries& g, int N, double remainder_oscillation);

/// Pedersen line N: m = Σ_{n<=N} n c_n, b = 1 - Σ_{n<=N} c_n.
BoundLine pedersen_line(const PowerSeries& series, int N);
BoundLine pedersen_line(int N);

/// Validated a ∈ [1/4, 1].
class TangentParam {
  public:
    explicit TangentParam(double a);
    double value() const { return a_; }

  private:
    double a_;
};

/// δ/(2√a) + √a/2.
BoundLine tangent_line(TangentParam a);

inline constexpr int kDefaultPedersenMax = 100000;
inline constexpr int kDefaultTangentGrid = 1024;

/// γ₀: Pedersen lines N = 1..n_max, tangent lines on a uniform a-grid of
/// [1/4, 1] (a_grid points, both endpoints), the tangent at a = δ for each
/// query δ ∈ [1/4, 1], and the cap 1. Queries above 1 are clamped.
BoundCurve gamma0(int n_max = kDefaultPedersenMax, int a_grid = kDefaultTangentGrid);

/// Pedersen lines and the cap only.
BoundCurve pedersen_envelope(int n_max = kDefaultPedersenMax);

}  // namespace commbound
