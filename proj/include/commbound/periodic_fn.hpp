#pragma once

// 2π-periodic functions, their Fourier coefficients under the convention
// f(x) = Σ a_n e^{inx}, and the norms the commutator bounds are built from.

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace commbound {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Reduce an angle into [-π, π].
double reduce_angle(double x);

/// A continuous 2π-periodic function on the circle.
///
/// The evaluation rule is only ever called on reduced angles in [-π, π].
/// Functions with a known Fourier expansion carry `coefficient_rule`, and
/// when Σ|a_n| is known in closed form it is stored in `coefficient_l1`.
struct PeriodicFunction {
    std::string name;
    std::function<Complex(double)> rule;
    bool real_valued = true;
    std::function<Complex(int)> coefficient_rule;  // empty when unknown
    std::optional<double> coefficient_l1;
    // Largest |n| with a_n != 0, for functions with finitely many terms.
    std::optional<int> band_limit;

    Complex operator()(double x) const { return rule(reduce_angle(x)); }
    bool has_exact_coefficients() const { return static_cast<bool>(coefficient_rule); }
};

/// Finite Fourier sum Σ_{|n|<=N} a_n e^{inx}.
class TrigPolynomial {
  public:
    TrigPolynomial() : coefficients_(1, Complex{}) {}
    explicit TrigPolynomial(int degree);
    /// `coefficients` holds a_{-N}..a_N, so its size must be odd.
    explicit TrigPolynomial(std::vector<Complex> coefficients);

    int degree() const { return degree_; }
    Complex coefficient(int n) const;
    void set_coefficient(int n, Complex value);
    const std::vector<Complex>& coefficients() const { return coefficients_; }

    /// Direct summation of the coefficient series.
    Complex operator()(double x) const;

    /// True when a_{-n} = conj(a_n) for every n, to `tol`.
    bool is_real(double tol = 1e-14) const;

    TrigPolynomial scaled(Complex c) const;
    PeriodicFunction as_function(std::string name = "trig-polynomial") const;

  private:
    int degree_ = 0;
    std::vector<Complex> coefficients_;
};

Complex evaluate(const PeriodicFunction& f, double x);
Complex evaluate(const TrigPolynomial& p, double x);

struct QuadratureOptions {
    std::size_t initial_samples = std::size_t{1} << 14;
    std::size_t max_samples = std::size_t{1} << 22;
    double tolerance = 1e-10;
};

struct QuadratureResult {
    std::vector<Complex> coefficients;  // one per requested index
    double error_estimate = 0.0;        // max |T_K - T_2K| over the indices
    std::size_t samples = 0;            // K of the accepted rule
};

/// Trapezoid-rule Fourier coefficients for each n in `indices`.
///
/// The sample count starts at `initial_samples` and doubles until the
/// difference between the K and 2K rules is below `tolerance`; the 2K
/// value is returned. Throws QuadratureError past `max_samples`.
QuadratureResult quadrature_coefficients(const PeriodicFunction& f, const std::vector<int>& indices,
                                         const QuadratureOptions& options = {});

/// a_n, from the exact rule when present, otherwise by quadrature.
Complex fourier_coefficient(const PeriodicFunction& f, int n, const QuadratureOptions& options = {});

/// Degree-N Fourier partial sum of f.
TrigPolynomial truncate(const PeriodicFunction& f, int degree, const QuadratureOptions& options = {});

/// ‖p′‖_F = Σ |n a_n|.
double derivative_fourier_norm(const TrigPolynomial& p);

/// Σ |a_n|.
double fourier_norm(const TrigPolynomial& p);

struct Extent {
    double min = 0.0;
    double max = 0.0;
    double arg_min = 0.0;
    double arg_max = 0.0;
};

inline constexpr std::size_t kDefaultExtentGrid = std::size_t{1} << 16;

/// Min and max of a real-valued f over a uniform grid of [-π, π], followed by
/// a golden-section pass inside the cells next to each grid extremum.
/// Throws DomainError for non-real f or grid_size < 1024.
Extent range_extent(const PeriodicFunction& f, std::size_t grid_size = kDefaultExtentGrid);

/// Same, for samples already taken at x_j = -π + 2πj/G, j = 0..G-1.
/// `refine` evaluates the function off-grid for the golden-section pass.
Extent extent_from_samples(const std::vector<double>& samples,
                           const std::function<double(double)>& refine);

/// min_λ ‖f - λ‖∞ on the grid: half the oscillation for real f, otherwise the
/// radius of the smallest disk containing the sampled values.
double chebyshev_radius(const PeriodicFunction& f, std::size_t grid_size = kDefaultExtentGrid);

struct Disk {
    Complex center;
    double radius = 0.0;
};

/// Smallest enclosing disk (randomized incremental algorithm, fixed shuffle seed).
Disk smallest_enclosing_disk(std::vector<Complex> points);

/// Grid point x_j = -π + 2πj/G.
inline double grid_angle(std::size_t j, std::size_t grid_size) {
    return -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_size);
}

// Builtin functions.

/// Triangle wave: 1 - (2/π)|x| on [-π, π]. a_n = 4/(π² n²) for odd n.
PeriodicFunction builtin_triangle();

/// Bump √(1 - 4x²/π²) on [-π/2, π/2], zero elsewhere. a_n = J₁(nπ/2)/(2n), a_0 = π/8.
PeriodicFunction builtin_bump();

/// e^{inx}.
PeriodicFunction builtin_exponential(int n);

PeriodicFunction builtin_cos();

PeriodicFunction builtin_constant(Complex c);

/// Finite Fourier series from a map n -> a_n.
PeriodicFunction from_coefficients(const std::map<int, Complex>& coefficients,
                                   std::string name = "coefficients");

/// Pointwise f - g.
PeriodicFunction difference(const PeriodicFunction& f, const TrigPolynomial& g);

/// Pointwise f + c.
PeriodicFunction shifted(const PeriodicFunction& f, Complex c);

// Coefficient files: JSON object {"n": [re, im], ...}.
std::map<int, Complex> parse_coefficient_json(const std::string& text);
std::string coefficient_json(const std::map<int, Complex>& coefficients);
std::map<int, Complex> load_coefficient_file(const std::string& path);

}  // namespace commbound
