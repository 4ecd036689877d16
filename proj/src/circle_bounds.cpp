#include "commbound/circle_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "commbound/errors.hpp"

namespace commbound {

BoundLine folk_line(const TrigPolynomial& g) {
    return {derivative_fourier_norm(g), 0.0, kUnitaryDeltaMax, {LineKind::folk, 0.0, {}}};
}

BoundLine split_line(const PeriodicFunction& f, const TrigPolynomial& g, std::size_t grid_size) {
    const double b = 2.0 * chebyshev_radius(difference(f, g), grid_size);
    return {derivative_fourier_norm(g), b, kUnitaryDeltaMax, {LineKind::split, static_cast<double>(g.degree()), {}}};
}

namespace {

double total_l1(const PeriodicFunction& f, const CoefficientTails& tails) {
    return std::abs(fourier_coefficient(f, 0)) + tails.tail.front();
}

// An estimated (not closed-form) coefficient sum never wins.
BoundLine cap_line(double l1, bool l1_exact, double radius) {
    const double oscillation = 2.0 * radius;
    const double coefficient = 2.0 * l1;
    if (oscillation <= coefficient || !l1_exact)
        return {0.0, oscillation, kUnitaryDeltaMax, {LineKind::constant_cap, 0.0, "oscillation"}};
    return {0.0, coefficient, kUnitaryDeltaMax, {LineKind::constant_cap, 0.0, "coefficient-sum"}};
}

}  // namespace

CoefficientTails coefficient_tails(const PeriodicFunction& f, int n_max, const TailOptions& options) {
    if (n_max < 0) throw DomainError("n_max must be nonnegative");
    CoefficientTails out;
    out.tail.assign(static_cast<std::size_t>(n_max) + 1, 0.0);

    if (f.band_limit) {
        const int band = *f.band_limit;
        const auto t = truncate(f, band);
        for (int N = 0; N <= n_max; ++N) {
            double s = 0.0;
            for (int n = N + 1; n <= band; ++n) s += std::abs(t.coefficient(n)) + std::abs(t.coefficient(-n));
            out.tail[static_cast<std::size_t>(N)] = s;
        }
        out.closed_form = true;
        return out;
    }

    if (f.coefficient_l1 && f.coefficient_rule) {
        double partial = std::abs(f.coefficient_rule(0));
        for (int N = 0; N <= n_max; ++N) {
            if (N > 0) partial += std::abs(f.coefficient_rule(N)) + std::abs(f.coefficient_rule(-N));
            out.tail[static_cast<std::size_t>(N)] = std::max(0.0, *f.coefficient_l1 - partial);
        }
        out.closed_form = true;
        return out;
    }

    // Explicit summation to the cutoff, then a dyadic-block extrapolation.
    const int cutoff = std::max(options.cutoff_factor * std::max(n_max, 1), 64);
    std::vector<double> pair_abs(static_cast<std::size_t>(cutoff) + 1, 0.0);  // |a_n| + |a_-n|
    const auto t = truncate(f, cutoff);
    for (int n = 1; n <= cutoff; ++n)
        pair_abs[static_cast<std::size_t>(n)] = std::abs(t.coefficient(n)) + std::abs(t.coefficient(-n));

    auto block = [&](int lo, int hi) {  // Σ over lo < n <= hi
        double s = 0.0;
        for (int n = lo + 1; n <= hi; ++n) s += pair_abs[static_cast<std::size_t>(n)];
        return s;
    };
    const double last = block(cutoff / 2, cutoff);
    const double previous = block(cutoff / 4, cutoff / 2);
    double remainder = 0.0;
    if (last > 0.0) {
        const double ratio = previous > 0.0 ? last / previous : 1.0;
        if (ratio >= 1.0)
            throw TailError("coefficients of '" + f.name + "' do not decay fast enough to sum the tail");
        remainder = last * ratio / (1.0 - ratio);
    }
    double running = remainder;
    std::vector<double> suffix(static_cast<std::size_t>(cutoff) + 2, 0.0);
    for (int n = cutoff; n >= 1; --n) {
        running += pair_abs[static_cast<std::size_t>(n)];
        suffix[static_cast<std::size_t>(n)] = running;
    }
    for (int N = 0; N <= n_max; ++N) out.tail[static_cast<std::size_t>(N)] = suffix[static_cast<std::size_t>(N) + 1];
    if (remainder > options.max_remainder_fraction * out.tail.back())
        throw TailError("coefficient tail of '" + f.name + "' not summable to the requested accuracy");
    out.remainder = remainder;
    return out;
}

BoundLine constant_cap(const PeriodicFunction& f, std::size_t grid_size) {
    const auto tails = coefficient_tails(f, 0);
    return cap_line(total_l1(f, tails), tails.closed_form, chebyshev_radius(f, grid_size));
}

BoundCurve truncation_envelope(const PeriodicFunction& f, int n_max, const EnvelopeOptions& options) {
    if (n_max < 0) throw DomainError("n_max must be nonnegative");
    const auto partial = truncate(f, n_max, options.quadrature);
    const auto tails = coefficient_tails(f, n_max, options.tails);
    const std::size_t G = options.grid_size;
    if (G < 1024) throw DomainError("envelope grid must have at least 1024 points");

    const bool real = f.real_valued && partial.is_real(1e-13);

    // e^{i k 2π/G}; e^{iN x_j} = (-1)^N ω^{N j mod G}.
    std::vector<Complex> omega(G);
    for (std::size_t k = 0; k < G; ++k)
        omega[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(G));

    std::vector<Complex> remainder(G);
    for (std::size_t j = 0; j < G; ++j) remainder[j] = f.rule(grid_angle(j, G));

    auto oscillation_radius = [&](int N) {
        if (!real) return smallest_enclosing_disk(remainder).radius;
        std::vector<double> samples(G);
        for (std::size_t j = 0; j < G; ++j) samples[j] = remainder[j].real();
        TrigPolynomial head(N);
        for (int n = -N; n <= N; ++n) head.set_coefficient(n, partial.coefficient(n));
        const auto e = extent_from_samples(samples, [&](double x) { return (f(x) - head(reduce_angle(x))).real(); });
        return 0.5 * (e.max - e.min);
    };

    std::vector<BoundLine> lines;
    double slope = 0.0;
    for (int N = 0; N <= n_max; ++N) {
        if (N == 0) {
            const Complex a0 = partial.coefficient(0);
            for (auto& r : remainder) r -= a0;
        } else {
            const Complex ap = partial.coefficient(N), am = partial.coefficient(-N);
            const double sign = (N % 2 == 0) ? 1.0 : -1.0;
            std::size_t k = 0;
            const std::size_t step = static_cast<std::size_t>(N) % G;
            for (std::size_t j = 0; j < G; ++j) {
                const Complex z = sign * omega[k];
                remainder[j] -= ap * z + am * std::conj(z);
                k += step;
                if (k >= G) k -= G;
            }
            slope += static_cast<double>(N) * (std::abs(ap) + std::abs(am));
        }
        const double tail_intercept = 2.0 * tails.tail[static_cast<std::size_t>(N)];
        const double oscillation = 2.0 * oscillation_radius(N);
        BoundLine line{slope, 0.0, kUnitaryDeltaMax, {LineKind::truncation, static_cast<double>(N), {}}};
        if (oscillation <= tail_intercept || !tails.closed_form) {
            line.intercept = oscillation;
            line.provenance.detail = "oscillation";
        } else {
            line.intercept = tail_intercept;
            line.provenance.detail = "coefficient-tail";
        }
        lines.push_back(line);
    }
    lines.push_back(cap_line(total_l1(f, tails), tails.closed_form, chebyshev_radius(f, G)));
    return BoundCurve(std::move(lines), kUnitaryDeltaMax);
}

// --- lower bound ------------------------------------------------------------

double circular_distance(double x1, double x2) { return std::abs(reduce_angle(x2 - x1)); }

namespace {

class PairSearch {
  public:
    PairSearch(const PeriodicFunction& f, std::size_t grid_size) : f_(f), grid_(grid_size), samples_(grid_size) {
        if (grid_size < 16) throw DomainError("lower-bound grid too small");
        for (std::size_t j = 0; j < grid_; ++j) samples_[j] = f.rule(grid_angle(j, grid_));
    }

    LowerBoundPoint at(double delta) const {
        if (!(delta >= 0.0) || delta >= 2.0) throw DomainError("eta_lower requires 0 <= delta < 2");
        const double width = 2.0 * std::asin(delta / 2.0);
        const double h = 2.0 * kPi / static_cast<double>(grid_);
        auto span = static_cast<std::size_t>(std::floor(width / h));
        while (span > 0 && static_cast<double>(span) * h > width) --span;
        span = std::min(span, grid_ / 2);

        LowerBoundPoint best = f_.real_valued ? sliding_window(span) : brute_force(span);
        refine(best, width);
        return best;
    }

  private:
    double value(std::size_t i, std::size_t j) const { return std::abs(samples_[j % grid_] - samples_[i % grid_]); }

    LowerBoundPoint make_point(std::size_t i, std::size_t j) const {
        return {value(i, j), grid_angle(i % grid_, grid_), grid_angle(j % grid_, grid_)};
    }

    // Largest max - min over every circular window of span+1 consecutive points.
    LowerBoundPoint sliding_window(std::size_t span) const {
        LowerBoundPoint best{0.0, grid_angle(0, grid_), grid_angle(0, grid_)};
        if (span == 0) return best;
        std::deque<std::size_t> hi, lo;
        const std::size_t total = grid_ + span;
        auto re = [&](std::size_t i) { return samples_[i % grid_].real(); };
        for (std::size_t i = 0; i < total; ++i) {
            while (!hi.empty() && re(hi.back()) <= re(i)) hi.pop_back();
            while (!lo.empty() && re(lo.back()) >= re(i)) lo.pop_back();
            hi.push_back(i);
            lo.push_back(i);
            if (i < span) continue;
            const std::size_t start = i - span;
            while (hi.front() < start) hi.pop_front();
            while (lo.front() < start) lo.pop_front();
            const double v = re(hi.front()) - re(lo.front());
            if (v > best.value) {
                const std::size_t a = std::min(hi.front(), lo.front()), b = std::max(hi.front(), lo.front());
                best = make_point(a, b);
            }
        }
        return best;
    }

    LowerBoundPoint brute_force(std::size_t span) const {
        LowerBoundPoint best{0.0, grid_angle(0, grid_), grid_angle(0, grid_)};
        for (std::size_t i = 0; i < grid_; ++i)
            for (std::size_t d = 1; d <= span; ++d)
                if (value(i, i + d) > best.value) best = make_point(i, i + d);
        return best;
    }

    // Slide a pair at exactly the admissible width around each endpoint of the
    // best grid pair and keep any improvement.
    void refine(LowerBoundPoint& best, double width) const {
        if (width <= 0.0) return;
        const double w = width * (1.0 - 1e-15);
        const double h = 2.0 * kPi / static_cast<double>(grid_);
        for (double anchor : {best.x1, best.x2}) {
            for (double dir : {-1.0, 1.0}) {
                auto g = [&](double x) { return std::abs(f_(x + dir * w) - f_(x)); };
                double a = anchor - 2.0 * h, b = anchor + 2.0 * h;
                constexpr double inv_phi = 0.6180339887498949;
                double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
                double gc = g(c), gd = g(d);
                for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
                    if (gc > gd) {
                        b = d, d = c, gd = gc, c = b - inv_phi * (b - a), gc = g(c);
                    } else {
                        a = c, c = d, gc = gd, d = a + inv_phi * (b - a), gd = g(d);
                    }
                }
                for (double x : {anchor, c, d}) {
                    const double x1 = reduce_angle(x), x2 = reduce_angle(x + dir * w);
                    if (circular_distance(x1, x2) > width) continue;
                    const double v = std::abs(f_(x2) - f_(x1));
                    if (v > best.value) best = {v, x1, x2};
                }
            }
        }
        refine_distance(best, w, h);
    }

    // Keep x₁ fixed and move x₂ along the circle, for optima strictly inside the window.
    void refine_distance(LowerBoundPoint& best, double w, double h) const {
        const double x1 = best.x1;
        const double t0 = reduce_angle(best.x2 - x1);
        const double dir = t0 < 0.0 ? -1.0 : 1.0;
        auto g = [&](double t) { return std::abs(f_(x1 + dir * t) - f_(x1)); };
        double a = std::max(0.0, std::abs(t0) - 2.0 * h), b = std::min(w, std::abs(t0) + 2.0 * h);
        if (!(b > a)) return;
        constexpr double inv_phi = 0.6180339887498949;
        double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
        double gc = g(c), gd = g(d);
        for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
            if (gc > gd) {
                b = d, d = c, gd = gc, c = b - inv_phi * (b - a), gc = g(c);
            } else {
                a = c, c = d, gc = gd, d = a + inv_phi * (b - a), gd = g(d);
            }
        }
        for (double t : {c, d}) {
            const double x2 = reduce_angle(x1 + dir * t);
            const double v = std::abs(f_(x2) - f_(x1));
            if (v > best.value) best = {v, x1, x2};
        }
    }

    const PeriodicFunction& f_;
    std::size_t grid_;
    std::vector<Complex> samples_;
};

}  // namespace

LowerBoundPoint eta_lower(const PeriodicFunction& f, double delta, std::size_t grid_size) {
    return PairSearch(f, grid_size).at(delta);
}

std::vector<LowerBoundPoint> eta_lower_curve(const PeriodicFunction& f, const std::vector<double>& deltas,
                                             std::size_t grid_size) {
    PairSearch search(f, grid_size);
    std::vector<LowerBoundPoint> out;
    // A pair admissible at δ stays admissible at every larger δ.
    std::vector<std::size_t> order(deltas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return deltas[i] < deltas[j]; });
    out.resize(deltas.size());
    LowerBoundPoint running{-1.0, 0.0, 0.0};
    for (std::size_t i : order) {
        auto p = search.at(deltas[i]);
        if (running.value > p.value) p = running;
        running = p;
        out[i] = p;
    }
    return out;
}

double continuity_bound(const BoundCurve& curve, double d) {
    if (!(d >= 0.0) || d > kUnitaryDeltaMax) throw DomainError("continuity_bound requires 0 <= d <= 2");
    return curve(d);
}

}  // namespace commbound
