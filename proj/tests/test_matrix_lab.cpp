#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "commbound/circle_bounds.hpp"
#include "commbound/matrix_lab.hpp"

using namespace commbound;

namespace {

// Largest singular value by power iteration on M*M.
double power_norm(const DenseMatrix& m) {
    const DenseMatrix g = m.adjoint() * m;
    Eigen::VectorXcd x = Eigen::VectorXcd::Ones(m.cols());
    for (Eigen::Index k = 0; k < m.cols(); ++k) x(k) += Complex(0.01 * k, -0.003 * k * k);
    double lambda = 0.0;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXcd y = g * x;
        const double next = y.norm();
        x = y / next;
        if (std::abs(next - lambda) <= 1e-16 * next) break;
        lambda = next;
    }
    return std::sqrt(lambda);
}

TrigPolynomial random_trig(CounterRng& rng, int degree) {
    TrigPolynomial p(degree);
    for (int n = -degree; n <= degree; ++n) p.set_coefficient(n, Complex(rng.normal(), rng.normal()) / (1.0 + n * n));
    return p;
}

// Σ a_n V^n with V^{-n} = (V*)^n.
DenseMatrix polynomial_of(const TrigPolynomial& p, const DenseMatrix& v) {
    const Eigen::Index n = v.rows();
    DenseMatrix out = p.coefficient(0) * DenseMatrix::Identity(n, n);
    DenseMatrix up = DenseMatrix::Identity(n, n), down = up;
    for (int k = 1; k <= p.degree(); ++k) {
        up = up * v;
        down = down * v.adjoint();
        out += p.coefficient(k) * up + p.coefficient(-k) * down;
    }
    return out;
}

}  // namespace

TEST_CASE("operator norm") {
    DenseMatrix nil = DenseMatrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    CHECK(op_norm(nil) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(op_norm(DenseMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-15));
    CounterRng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix m = gaussian_matrix(8, rng);
        CHECK(op_norm(m) == doctest::Approx(power_norm(m)).epsilon(1e-10));
    }
}

TEST_CASE("commutators") {
    CounterRng rng(22);
    const DenseMatrix m1 = gaussian_matrix(4, rng), m2 = gaussian_matrix(4, rng);
    CHECK(op_norm(commutator(m1, DenseMatrix::Identity(4, 4))) == 0.0);
    CHECK(op_norm(commutator(m1, m2) + commutator(m2, m1)) == 0.0);
    Eigen::VectorXcd d(3);
    d << 1.0, 2.0, Complex(0.0, 1.0);
    const DenseMatrix diag = d.asDiagonal();
    const DenseMatrix flip = gaussian_matrix(3, rng);
    const DenseMatrix c = commutator(diag, flip);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(c(i, j) - (d(i) - d(j)) * flip(i, j)) < 1e-14);
    CHECK_THROWS_AS(commutator(m1, DenseMatrix::Identity(3, 3)), DomainError);
}

TEST_CASE("jacobi eigensolver") {
    CounterRng rng(23);
    for (int n : {1, 2, 3, 5, 8, 16, 33}) {
        const DenseMatrix z = gaussian_matrix(n, rng);
        const DenseMatrix h = (z + z.adjoint()) / 2.0;
        const auto e = jacobi_eigen(h);
        const DenseMatrix rebuilt = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        CHECK(op_norm(h - rebuilt) <= 1e-12 * std::max(1.0, op_norm(h)));
        CHECK(unitarity_defect(e.vectors) <= 1e-12);
        Eigen::SelfAdjointEigenSolver<DenseMatrix> oracle(h);
        for (int k = 0; k < n; ++k) CHECK(std::abs(e.values(k) - oracle.eigenvalues()(k)) <= 1e-12 * std::max(1.0, op_norm(h)));
    }
}

TEST_CASE("unitary eigendecomposition with repeated eigenvalues") {
    CounterRng rng(24);
    const DenseMatrix u = haar_unitary(6, rng);
    Eigen::VectorXcd d(6);
    // Conjugate pairs share a real part; repeats share everything.
    d << std::polar(1.0, 0.7), std::polar(1.0, 0.7), std::polar(1.0, -0.7), 1.0, -1.0, std::polar(1.0, kPi - 1e-3);
    const DenseMatrix v = u * d.asDiagonal() * u.adjoint();
    const auto e = unitary_eigen(v);
    CHECK(e.residual < 1e-9);
    for (int k = 0; k < 6; ++k) {
        CHECK(e.phases(k) > -kPi);
        CHECK(e.phases(k) <= kPi);
    }
    // -1 maps to +π.
    bool has_pi = false;
    for (int k = 0; k < 6; ++k) has_pi = has_pi || std::abs(e.phases(k) - kPi) < 1e-8;
    CHECK(has_pi);
}

TEST_CASE("random instances") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 2 + static_cast<int>(seed % 15);
        CHECK(unitarity_defect(haar_unitary(n, seed)) < 1e-12);
        CHECK(op_norm(random_contraction(n, seed)) <= 1.0 + 1e-12);
        for (auto mode : {SpectrumMode::uniform, SpectrumMode::atoms}) {
            const auto h = random_positive_contraction(n, seed, mode);
            CHECK(is_positive_contraction(h, 1e-12));
        }
    }
    CHECK(op_norm(haar_unitary(4, 9) - haar_unitary(4, 9)) == 0.0);
    CHECK(parse_spectrum_mode("atoms") == SpectrumMode::atoms);
    CHECK(to_string(SpectrumMode::uniform) == "uniform");
    CHECK_THROWS_AS(parse_spectrum_mode("flat"), DomainError);
}

TEST_CASE("Haar determinant phase is uniform") {
    const int samples = 4000, bins = 10;
    std::vector<int> counts(bins, 0);
    for (int s = 0; s < samples; ++s) {
        const double phase = std::arg(haar_unitary(2, static_cast<std::uint64_t>(s) + 1000).determinant());
        const int b = std::min(bins - 1, static_cast<int>((phase + kPi) / (2.0 * kPi) * bins));
        ++counts[b];
    }
    double chi2 = 0.0;
    const double expected = static_cast<double>(samples) / bins;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 27.877);  // 9 degrees of freedom, p = 0.001
}

TEST_CASE("functional calculus") {
    CounterRng rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        const DenseMatrix v = haar_unitary(2 + trial % 7, rng);
        CHECK(op_norm(unitary_calculus(builtin_cos(), v) - (v + v.adjoint()) / 2.0) < 1e-10);
        const DenseMatrix c = unitary_calculus(builtin_constant(Complex(2.0, -1.0)), v);
        CHECK(op_norm(c - Complex(2.0, -1.0) * DenseMatrix::Identity(v.rows(), v.cols())) < 1e-12);
        const auto p = random_trig(rng, 1 + trial % 4);
        CHECK(op_norm(unitary_calculus(p.as_function(), v) - polynomial_of(p, v)) < 1e-10);
    }
    Eigen::VectorXcd d(2);
    d << 0.25, 1.0;
    const DenseMatrix h = d.asDiagonal();
    const DenseMatrix r = hermitian_calculus(sqrt_function(), h);
    CHECK(std::abs(r(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(r(1, 1) - 1.0) < 1e-15);

    DenseMatrix not_unitary = DenseMatrix::Identity(2, 2) * 1.1;
    CHECK_THROWS_AS(unitary_calculus(builtin_cos(), not_unitary), DecompositionError);
    DenseMatrix not_hermitian = DenseMatrix::Zero(2, 2);
    not_hermitian(0, 1) = 0.5;
    CHECK_THROWS_AS(hermitian_calculus(sqrt_function(), not_hermitian), DecompositionError);
    CHECK_THROWS_AS(hermitian_calculus(sqrt_function(), DenseMatrix::Identity(2, 2) * 2.0), DomainError);
}

TEST_CASE("block constructions") {
    CounterRng rng(26);
    const DenseMatrix id = DenseMatrix::Identity(3, 3);
    auto [s, t] = block_pair(id, -id);
    CHECK(op_norm(commutator(s, t)) == doctest::Approx(2.0));
    auto same = block_pair(id, id);
    CHECK(op_norm(commutator(same.first, same.second)) == 0.0);
    CHECK_THROWS_AS(block_pair(id, DenseMatrix::Identity(2, 2)), DomainError);

    const auto tri = builtin_triangle();
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 7;
        const DenseMatrix v = haar_unitary(n, rng), v1 = haar_unitary(n, rng);
        const auto [S, T] = block_pair(v, v1);
        CHECK(std::abs(op_norm(commutator(S, T)) - op_norm(v - v1)) < 1e-10);
        const DenseMatrix fv = unitary_calculus(tri, v), fv1 = unitary_calculus(tri, v1);
        CHECK(std::abs(op_norm(commutator(S, offdiagonal(fv, fv1))) - op_norm(fv - fv1)) < 1e-10);
    }
}

TEST_CASE("exact commutation transfers to functions") {
    CounterRng rng(27);
    const std::vector<PeriodicFunction> fs = {builtin_triangle(), builtin_bump(), builtin_cos(), builtin_exponential(3)};
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 7;
        const DenseMatrix v = haar_unitary(n, rng);
        DenseMatrix a = Complex(rng.normal(), rng.normal()) * DenseMatrix::Identity(n, n) +
                        Complex(rng.normal(), rng.normal()) * v + Complex(rng.normal(), rng.normal()) * v * v;
        a /= op_norm(a);
        REQUIRE(op_norm(commutator(v, a)) < 1e-13);
        for (const auto& f : fs) CHECK(op_norm(commutator(unitary_calculus(f, v), a)) < 1e-9);

        const DenseMatrix h = random_positive_contraction(n, rng, SpectrumMode::uniform);
        DenseMatrix b = 0.3 * DenseMatrix::Identity(n, n) + 0.5 * h * h;
        b /= op_norm(b);
        CHECK(op_norm(commutator(hermitian_calculus(sqrt_function(), h), b)) < 1e-9);
    }
}

TEST_CASE("spectral bound and submultiplicativity") {
    CounterRng rng(28);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 7;
        const DenseMatrix v = haar_unitary(n, rng);
        const DenseMatrix a = random_contraction(n, rng);
        CHECK(op_norm(unitary_calculus(builtin_triangle(), v)) <= 1.0 + 1e-9);
        CHECK(op_norm(unitary_calculus(builtin_bump(), v)) <= 1.0 + 1e-9);
        CHECK(op_norm(commutator(v, a)) <= 2.0 + 1e-12);
        const DenseMatrix h = random_positive_contraction(n, rng, SpectrumMode::atoms);
        CHECK(op_norm(commutator(h, a)) <= 2.0 + 1e-12);
    }
}

TEST_CASE("folk bound on trig polynomials") {
    CounterRng rng(29);
    double worst = 1e300;
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = random_trig(rng, 1 + trial % 6);
        const auto pair = unitary_instance(derive_seed(29, trial), 2, 8);
        const double lhs = op_norm(commutator(polynomial_of(g, pair.x), pair.a));
        const double rhs = derivative_fourier_norm(g) * op_norm(commutator(pair.x, pair.a));
        CHECK(lhs <= rhs + 1e-9);
        worst = std::min(worst, rhs - lhs);
    }
    CHECK(worst > -1e-9);
}

TEST_CASE("reflection identity") {
    const auto f1 = sqrt_function();
    const auto f2 = reflect_function(f1);
    CounterRng rng(30);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + trial % 7;
        const DenseMatrix h = random_positive_contraction(n, rng, SpectrumMode::uniform);
        const DenseMatrix a = random_contraction(n, rng);
        const DenseMatrix r = reflect_instance(h);
        CHECK(std::abs(op_norm(commutator(h, a)) - op_norm(commutator(r, a))) < 1e-12);
        CHECK(std::abs(op_norm(commutator(hermitian_calculus(f1, h), a)) -
                       op_norm(commutator(hermitian_calculus(f2, r), a))) < 1e-12);
    }
    Eigen::VectorXcd d(2);
    d << 0.0, 1.0;
    const DenseMatrix flipped = reflect_instance(DenseMatrix(d.asDiagonal()));
    CHECK(std::abs(flipped(0, 0) - 1.0) == 0.0);
    CHECK(std::abs(flipped(1, 1)) == 0.0);
    CHECK_THROWS_AS(reflect_instance(DenseMatrix::Identity(2, 2) * 1.5), DomainError);
}

TEST_CASE("lower bound instances") {
    const auto tri = builtin_triangle();
    const auto same = lower_bound_instance(tri, 0.4, 0.4);
    CHECK(same.delta == 0.0);
    CHECK(same.measured == 0.0);
    CHECK(std::isnan(same.bound));
    CHECK(lower_bound_instance(tri, 0.0, kPi).delta == doctest::Approx(2.0).epsilon(1e-15));
    const auto r = lower_bound_instance(tri, 0.0, kPi / 2.0);
    CHECK(r.measured == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.delta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    // δ = 2|sin((x₁ - x₂)/2)|.
    const auto s = lower_bound_instance(builtin_bump(), -0.3, 1.1);
    CHECK(s.delta == doctest::Approx(2.0 * std::abs(std::sin(0.7))).epsilon(1e-14));
    CHECK(s.measured == doctest::Approx(std::abs(builtin_bump()(-0.3) - builtin_bump()(1.1))).epsilon(1e-14));
}

TEST_CASE("sample records for constructed pairs") {
    const auto curve = gamma0(1000, 64);
    InstancePair commuting;
    commuting.role = Role::positive_contraction;
    commuting.x = random_positive_contraction(4, 5, SpectrumMode::uniform);
    commuting.a = DenseMatrix::Identity(4, 4);
    commuting.dim = 4;
    const auto zero = measure_positive(sqrt_function(), commuting, curve);
    CHECK(zero.delta < 1e-15);
    CHECK(zero.measured < 1e-15);

    for (double delta : {0.04, 0.25, 0.6}) {
        InstancePair two;
        two.role = Role::positive_contraction;
        two.x = DenseMatrix::Zero(2, 2);
        two.x(1, 1) = delta;
        two.a = swap_matrix(1);
        two.dim = 2;
        const auto r = measure_positive(sqrt_function(), two, curve);
        CHECK(r.delta == doctest::Approx(delta).epsilon(1e-14));
        CHECK(r.measured == doctest::Approx(std::sqrt(delta)).epsilon(1e-14));
        CHECK(r.margin >= -1e-12);
    }
}

TEST_CASE("sweeps") {
    SweepConfig config;
    config.count = 150;
    const auto g = gamma0(2000, 128);
    const auto a = sweep_positive(sqrt_function(), g, config);
    const auto b = sweep_positive(sqrt_function(), g, config);
    REQUIRE(a.records.size() == 150);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].seed == derive_seed(42, i));
        CHECK(a.records[i].measured == b.records[i].measured);
        CHECK(a.records[i].dim >= 2);
        CHECK(a.records[i].dim <= 8);
    }
    CHECK(a.min_margin >= -1e-8);

    const auto tri = builtin_triangle();
    const auto env = truncation_envelope(tri, 32);
    const auto u = sweep_unitary(tri, env, config);
    CHECK(u.min_margin >= -1e-8);

    SUBCASE("a violation names the lowest failing seed") {
        const BoundCurve zero({BoundLine{0.0, 0.0, 1.0, {LineKind::constant_cap, 0.0, "zero"}}}, 1.0);
        try {
            sweep_positive(sqrt_function(), zero, config);
            FAIL("expected a violation");
        } catch (const BoundViolation& e) {
            CHECK(e.record().margin < -1e-8);
            const auto replay = measure_positive(sqrt_function(), e.instance(), zero);
            CHECK(replay.measured == e.record().measured);
            std::size_t first = 0;
            while (a.records[first].measured <= 1e-8) ++first;
            CHECK(e.record().seed == a.records[first].seed);
        }
    }
    SUBCASE("bad configs") {
        SweepConfig bad = config;
        bad.count = 0;
        CHECK_THROWS_AS(sweep_positive(sqrt_function(), g, bad), DomainError);
        bad = config;
        bad.dim_max = 65;
        CHECK_THROWS_AS(sweep_unitary(tri, env, bad), DomainError);
    }
}

TEST_CASE("probe") {
    ProbeConfig config;
    config.iterations = 10000;
    const auto quarter = probe_max_commutator(config);
    CHECK(quarter.best.measured >= 0.5 - 1e-6);
    CHECK(quarter.best.measured <= 0.5 + 1e-8);
    CHECK(quarter.best.delta <= 0.25 + 1e-12);
    CHECK(quarter.iterations == 10000 / 64 * 64);
    CHECK(std::abs(quarter.sqrt_gap - (0.5 - quarter.best.measured)) < 1e-15);
    CHECK(is_positive_contraction(quarter.h, 1e-10));
    CHECK(op_norm(quarter.a) <= 1.0 + 1e-12);

    config.delta_target = 1.0;
    config.iterations = 640;
    CHECK(probe_max_commutator(config).best.measured >= 1.0 - 1e-6);

    config.delta_target = 0.04;
    const auto small = probe_max_commutator(config);
    const auto again = probe_max_commutator(config);
    CHECK(small.best.measured >= 0.2 - 1e-6);
    CHECK(small.best.measured == again.best.measured);
    CHECK(small.best_restart == again.best_restart);

    config.delta_target = 0.0;
    CHECK_THROWS_AS(probe_max_commutator(config), DomainError);
    config.delta_target = 1.5;
    CHECK_THROWS_AS(probe_max_commutator(config), DomainError);
}
