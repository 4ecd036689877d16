#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "commbound/errors.hpp"
#include "commbound/positive_bounds.hpp"

using namespace commbound;

namespace {

struct Rational {
    std::uint64_t num, den;
};

// c_n = C(2n, n) / ((2n - 1) 4^n), reduced exactly in integers.
Rational binomial_coefficient(int n) {
    std::uint64_t central = 1;
    for (int k = 1; k <= n; ++k) central = central * static_cast<std::uint64_t>(n + k) / static_cast<std::uint64_t>(k);
    std::uint64_t num = central, den = static_cast<std::uint64_t>(2 * n - 1) << (2 * n);
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

// Taylor coefficients of 1 - √(1 - x) from the generalized binomial series,
// c_n = -(1/2 choose n)(-1)^n, evaluated by its product form.
double generalized_binomial(int n) {
    double choose = 1.0;
    for (int k = 0; k < n; ++k) choose *= (0.5 - k) / (k + 1.0);
    return -choose * (n % 2 == 0 ? 1.0 : -1.0);
}

}  // namespace

TEST_CASE("sqrt series coefficients") {
    const auto s = sqrt_series(40);
    CHECK(s.coefficient(0) == 0.0);
    CHECK(s.coefficient(1) == 0.5);
    const Rational expected[] = {{1, 8}, {1, 16}, {5, 128}};
    for (int n = 2; n <= 4; ++n) {
        const auto r = binomial_coefficient(n);
        CHECK(r.num == expected[n - 2].num);
        CHECK(r.den == expected[n - 2].den);
        CHECK(std::abs(s.coefficient(n) - static_cast<double>(r.num) / static_cast<double>(r.den)) < 1e-13);
    }
    for (int n = 1; n <= 25; ++n) {
        const auto r = binomial_coefficient(n);
        CHECK(s.coefficient(n) == doctest::Approx(static_cast<double>(r.num) / static_cast<double>(r.den)).epsilon(1e-14));
        CHECK(s.coefficient(n) == doctest::Approx(generalized_binomial(n)).epsilon(1e-14));
    }
    for (int n = 1; n < 40; ++n) {
        CHECK(s.coefficient(n) > 0.0);
        CHECK(s.coefficient(n + 1) / s.coefficient(n) ==
              doctest::Approx((2.0 * n - 1.0) / (2.0 * n + 2.0)).epsilon(1e-15));
        CHECK(s.partial_sum(n + 1) > s.partial_sum(n));
    }
    CHECK_THROWS_AS(sqrt_series(0), DomainError);
}

TEST_CASE("partial sums against the central binomial tail") {
    const int N_max = 100000;
    const auto s = sqrt_series(N_max);
    // Σ_{n>N} c_n = C(2N, N) / 4^N, generated by p_{N+1} = p_N (2N + 1) / (2N + 2).
    double p = 0.5;
    double worst = 0.0;
    for (int N = 1; N <= N_max; ++N) {
        const auto line = pedersen_line(s, N);
        worst = std::max(worst, std::abs(line.intercept - p));
        CHECK(std::abs(s.partial_sum(N) + line.intercept - 1.0) <= 1e-14);
        p *= (2.0 * N + 1.0) / (2.0 * N + 2.0);
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("pedersen lines") {
    const auto l1 = pedersen_line(1);
    CHECK(l1.slope == 0.5);
    CHECK(l1.intercept == 0.5);
    const auto l2 = pedersen_line(2);
    CHECK(l2.slope == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(l2.intercept == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(l2.domain_max == 1.0);
    CHECK_THROWS_AS(pedersen_line(0), DomainError);

    const auto s = sqrt_series(5000);
    for (int N = 1; N < 5000; ++N) {
        const auto a = pedersen_line(s, N), b = pedersen_line(s, N + 1);
        CHECK(b.slope > a.slope);
        CHECK(b.intercept < a.intercept);
        // Consecutive lines cross at δ = 1/(N + 1).
        CHECK((a.intercept - b.intercept) / (b.slope - a.slope) == doctest::Approx(1.0 / (N + 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("power series lines") {
    const PowerSeries identity({0.0, 1.0}, "x");
    const auto l = power_series_line(identity, 1, 0.0);
    CHECK(l.slope == 1.0);
    CHECK(l.intercept == 0.0);
    const PowerSeries zero({0.0}, "0");
    CHECK(power_series_line(zero, 0, 1.0)(0.3) == 1.0);
    const auto first = power_series_line(sqrt_series(1), 1, 0.5);
    CHECK(first.slope == 0.5);
    CHECK(first.intercept == 0.5);
    CHECK_THROWS_AS(power_series_line(identity, 2, 0.0), DomainError);
}

TEST_CASE("tangent lines") {
    const auto one = tangent_line(TangentParam(1.0));
    CHECK(one.slope == 0.5);
    CHECK(one.intercept == 0.5);
    const auto quarter = tangent_line(TangentParam(0.25));
    CHECK(quarter.slope == 1.0);
    CHECK(quarter.intercept == 0.25);
    for (double a : {0.25, 0.3, 0.5, 0.77, 1.0}) CHECK(tangent_line(TangentParam(a))(a) == doctest::Approx(std::sqrt(a)).epsilon(1e-15));
    CHECK_THROWS_AS(TangentParam(0.2), DomainError);
    CHECK_THROWS_AS(TangentParam(1.01), DomainError);
    CHECK_THROWS_AS(TangentParam(std::nan("")), DomainError);
}

TEST_CASE("gamma0") {
    const auto g = gamma0(1000, 256);
    CHECK(std::abs(g(0.25) - 0.5) <= 1e-12);
    CHECK(std::abs(g(1.0) - 1.0) <= 1e-12);
    CHECK(g.evaluate(0.5123).provenance.detail == "exact");
    CHECK(g(0.01) <= 1.05 * (2.0 / std::sqrt(std::numbers::pi)) * 0.1);
    CHECK(g(0.0) == doctest::Approx(1.0 - sqrt_series(1000).partial_sum(1000)));
    const auto clamped = g.evaluate(1.5);
    CHECK(clamped.clamped);
    CHECK(clamped.value == doctest::Approx(1.0));
    CHECK_THROWS_AS(gamma0(0, 4), DomainError);
    CHECK_THROWS_AS(gamma0(4, 1), DomainError);
}

TEST_CASE("property: gamma0 against √δ and its own lines") {
    const auto g = gamma0(2000, 128);
    for (int k = 1; k <= 10000; ++k) {
        const double d = k / 10000.0;
        const double v = g(d);
        if (d >= 0.25) CHECK(v <= std::sqrt(d) + 1e-12);
        CHECK(v >= std::sqrt(d) - 1e-12);
        if (k % 97 == 0)
            for (const auto& line : g.lines()) CHECK(v <= line(d));
    }
}

TEST_CASE("pedersen envelope tends to (2/√π)√δ") {
    const auto env = pedersen_envelope(100000);
    for (double d : {1e-4, 1e-3}) {
        const double ratio = env(d) / std::sqrt(d);
        CHECK(ratio <= 2.0 / std::sqrt(std::numbers::pi) * 1.05);
        CHECK(ratio >= 1.0);
    }
}

TEST_CASE("reflection of functions") {
    const auto f = sqrt_function();
    const auto r = reflect_function(f);
    const auto rr = reflect_function(r);
    for (int k = 0; k <= 100; ++k) {
        const double x = k / 100.0;
        CHECK(r(x) == doctest::Approx(1.0 - std::sqrt(1.0 - x)));
        CHECK(std::abs(rr(x) - f(x)) <= 1e-15);
    }
    // The reflected function is the one the series expands.
    const auto s = sqrt_series(60);
    double p = 0.0;
    for (int n = 60; n >= 0; --n) p = p * 0.3 + s.coefficient(n);
    CHECK(p == doctest::Approx(r(0.3)).epsilon(1e-14));
}
