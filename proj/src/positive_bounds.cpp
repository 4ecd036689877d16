#include "commbound/positive_bounds.hpp"

#include <cmath>

#include "commbound/errors.hpp"

namespace commbound {

namespace {

// Neumaier summation; returns every running total.
std::vector<double> running_sums(const std::vector<double>& terms) {
    std::vector<double> out(terms.size());
    double sum = 0.0, carry = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double t = sum + terms[i];
        if (std::abs(sum) >= std::abs(terms[i]))
            carry += (sum - t) + terms[i];
        else
            carry += (terms[i] - t) + sum;
        sum = t;
        out[i] = sum + carry;
    }
    return out;
}

}  // namespace

UnitIntervalFunction sqrt_function() {
    return {"sqrt", [](double x) { return std::sqrt(std::max(0.0, x)); }};
}

UnitIntervalFunction reflect_function(const UnitIntervalFunction& f) {
    return {"reflect(" + f.name + ")", [f](double x) { return 1.0 - f(1.0 - x); }};
}

PowerSeries::PowerSeries(std::vector<double> coefficients, std::string description)
    : coefficients_(std::move(coefficients)), description_(std::move(description)) {
    if (coefficients_.empty()) throw DomainError("power series needs at least c_0");
    std::vector<double> weighted_terms(coefficients_.size());
    for (std::size_t n = 0; n < coefficients_.size(); ++n)
        weighted_terms[n] = std::abs(static_cast<double>(n) * coefficients_[n]);
    partial_ = running_sums(coefficients_);
    weighted_ = running_sums(weighted_terms);
}

PowerSeries sqrt_series(int N) {
    if (N < 1) throw DomainError("sqrt_series requires N >= 1");
    std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
    c[1] = 0.5;
    for (int n = 1; n < N; ++n)
        c[static_cast<std::size_t>(n) + 1] =
            c[static_cast<std::size_t>(n)] * (2.0 * n - 1.0) / (2.0 * n + 2.0);
    return PowerSeries(std::move(c), "1 - sqrt(1 - x)");
}

BoundLine power_series_line(const PowerSeries& g, int N, double remainder_oscillation) {
    if (N < 0 || N > g.degree()) throw DomainError("power series truncation outside stored degree");
    if (remainder_oscillation < 0.0) throw DomainError("remainder oscillation must be nonnegative");
    return {g.weighted_sum(N), remainder_oscillation, kPositiveDeltaMax,
            {LineKind::power_series, static_cast<double>(N), {}}};
}

BoundLine pedersen_line(const PowerSeries& series, int N) {
    if (N < 1 || N > series.degree()) throw DomainError("pedersen_line requires 1 <= N <= stored degree");
    // The remainder Σ_{n>N} c_n x^n is nonnegative and increasing on [0, 1],
    // so its oscillation is its value at 1.
    return {series.weighted_sum(N), 1.0 - series.partial_sum(N), kPositiveDeltaMax,
            {LineKind::pedersen, static_cast<double>(N), {}}};
}

BoundLine pedersen_line(int N) { return pedersen_line(sqrt_series(N), N); }

TangentParam::TangentParam(double a) : a_(a) {
    if (!(a >= 0.25 && a <= 1.0)) throw DomainError("tangent parameter a must lie in [1/4, 1]");
}

BoundLine tangent_line(TangentParam a) {
    const double root = std::sqrt(a.value());
    return {1.0 / (2.0 * root), root / 2.0, kPositiveDeltaMax, {LineKind::tangent, a.value(), {}}};
}

namespace {

BoundLine unit_cap() { return {0.0, 1.0, kPositiveDeltaMax, {LineKind::constant_cap, 0.0, "range"}}; }

}  // namespace

BoundCurve gamma0(int n_max, int a_grid) {
    if (n_max < 1) throw DomainError("gamma0 requires n_max >= 1");
    if (a_grid < 2) throw DomainError("gamma0 requires a_grid >= 2");
    const auto series = sqrt_series(n_max);
    std::vector<BoundLine> lines;
    lines.reserve(static_cast<std::size_t>(n_max + a_grid) + 1);
    for (int N = 1; N <= n_max; ++N) lines.push_back(pedersen_line(series, N));
    for (int k = 0; k < a_grid; ++k) {
        const double a = k + 1 == a_grid ? 1.0 : 0.25 + 0.75 * static_cast<double>(k) / (a_grid - 1);
        lines.push_back(tangent_line(TangentParam(a)));
    }
    lines.push_back(unit_cap());

    // On [1/4, 1] the tangent family is minimized at a = δ, where it equals √δ.
    auto exact_tangent = [](double delta) -> std::optional<BoundLine> {
        if (delta < 0.25 || delta > 1.0) return std::nullopt;
        auto line = tangent_line(TangentParam(delta));
        line.provenance.detail = "exact";
        return line;
    };
    return BoundCurve(std::move(lines), kPositiveDeltaMax, exact_tangent);
}

BoundCurve pedersen_envelope(int n_max) {
    const auto series = sqrt_series(n_max);
    std::vector<BoundLine> lines;
    lines.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int N = 1; N <= n_max; ++N) lines.push_back(pedersen_line(series, N));
    lines.push_back(unit_cap());
    return BoundCurve(std::move(lines), kPositiveDeltaMax);
}

}  // namespace commbound
