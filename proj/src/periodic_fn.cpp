#include "commbound/periodic_fn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "commbound/errors.hpp"

namespace commbound {

namespace {

// Kahan-compensated complex accumulator.
struct CompensatedSum {
    double re = 0.0, im = 0.0, c_re = 0.0, c_im = 0.0;

    void add(Complex z) {
        const double y_re = z.real() - c_re;
        const double t_re = re + y_re;
        c_re = (t_re - re) - y_re;
        re = t_re;
        const double y_im = z.imag() - c_im;
        const double t_im = im + y_im;
        c_im = (t_im - im) - y_im;
        im = t_im;
    }
    Complex value() const { return {re, im}; }
};

std::vector<Complex> trapezoid_coefficients(const PeriodicFunction& f, const std::vector<int>& indices,
                                            std::size_t samples) {
    std::vector<Complex> values(samples);
    for (std::size_t j = 0; j < samples; ++j) values[j] = f.rule(grid_angle(j, samples));

    std::vector<Complex> twiddle(samples);
    for (std::size_t k = 0; k < samples; ++k)
        twiddle[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(samples));

    const auto K = static_cast<long long>(samples);
    std::vector<Complex> out;
    out.reserve(indices.size());
    for (int n : indices) {
        // e^{-in x_j} = (-1)^n e^{-2πi n j / K}
        const long long step = ((static_cast<long long>(n) % K) + K) % K;
        CompensatedSum sum;
        long long k = 0;
        for (std::size_t j = 0; j < samples; ++j) {
            sum.add(values[j] * twiddle[static_cast<std::size_t>(k)]);
            k += step;
            if (k >= K) k -= K;
        }
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        out.push_back(sign * sum.value() / static_cast<double>(samples));
    }
    return out;
}

double golden_section_max(const std::function<double(double)>& g, double lo, double hi, double best_x,
                          double best_value, double* arg) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    for (auto [x, v] : {std::pair{c, gc}, std::pair{d, gd}}) {
        if (v > best_value) {
            best_value = v;
            best_x = x;
        }
    }
    *arg = best_x;
    return best_value;
}

}  // namespace

double reduce_angle(double x) {
    if (x >= -kPi && x <= kPi) return x;
    return std::remainder(x, 2.0 * kPi);
}

// --- TrigPolynomial -------------------------------------------------------

TrigPolynomial::TrigPolynomial(int degree) {
    if (degree < 0) throw DomainError("trig polynomial degree must be nonnegative");
    degree_ = degree;
    coefficients_.assign(static_cast<std::size_t>(2 * degree + 1), Complex{});
}

TrigPolynomial::TrigPolynomial(std::vector<Complex> coefficients) : coefficients_(std::move(coefficients)) {
    if (coefficients_.size() % 2 == 0) throw DomainError("trig polynomial needs 2N+1 coefficients");
    degree_ = static_cast<int>(coefficients_.size() / 2);
}

Complex TrigPolynomial::coefficient(int n) const {
    if (n < -degree_ || n > degree_) return {};
    return coefficients_[static_cast<std::size_t>(n + degree_)];
}

void TrigPolynomial::set_coefficient(int n, Complex value) {
    if (n < -degree_ || n > degree_) throw DomainError("coefficient index outside polynomial degree");
    coefficients_[static_cast<std::size_t>(n + degree_)] = value;
}

Complex TrigPolynomial::operator()(double x) const {
    Complex sum{};
    for (int n = -degree_; n <= degree_; ++n) {
        const Complex a = coefficient(n);
        if (a != Complex{}) sum += a * std::polar(1.0, static_cast<double>(n) * x);
    }
    return sum;
}

bool TrigPolynomial::is_real(double tol) const {
    for (int n = 0; n <= degree_; ++n)
        if (std::abs(coefficient(-n) - std::conj(coefficient(n))) > tol) return false;
    return true;
}

TrigPolynomial TrigPolynomial::scaled(Complex c) const {
    auto coefficients = coefficients_;
    for (auto& a : coefficients) a *= c;
    return TrigPolynomial(std::move(coefficients));
}

PeriodicFunction TrigPolynomial::as_function(std::string name) const {
    PeriodicFunction f;
    f.name = std::move(name);
    auto self = *this;
    f.rule = [self](double x) { return self(x); };
    f.real_valued = is_real();
    f.coefficient_rule = [self](int n) { return self.coefficient(n); };
    f.coefficient_l1 = fourier_norm(self);
    f.band_limit = degree_;
    return f;
}

Complex evaluate(const PeriodicFunction& f, double x) { return f(x); }

Complex evaluate(const TrigPolynomial& p, double x) { return p(reduce_angle(x)); }

// --- coefficients ---------------------------------------------------------

QuadratureResult quadrature_coefficients(const PeriodicFunction& f, const std::vector<int>& indices,
                                         const QuadratureOptions& options) {
    std::size_t samples = options.initial_samples;
    auto coarse = trapezoid_coefficients(f, indices, samples);
    double error = 0.0;
    while (true) {
        const std::size_t fine_samples = 2 * samples;
        if (fine_samples > options.max_samples) {
            std::ostringstream msg;
            msg << "Fourier quadrature for '" << f.name << "' did not reach " << options.tolerance
                << " (last estimate " << error << " at K=" << samples << ")";
            throw QuadratureError(msg.str());
        }
        auto fine = trapezoid_coefficients(f, indices, fine_samples);
        error = 0.0;
        for (std::size_t i = 0; i < indices.size(); ++i) error = std::max(error, std::abs(fine[i] - coarse[i]));
        if (error <= options.tolerance) return {std::move(fine), error, fine_samples};
        coarse = std::move(fine);
        samples = fine_samples;
    }
}

Complex fourier_coefficient(const PeriodicFunction& f, int n, const QuadratureOptions& options) {
    if (f.coefficient_rule) return f.coefficient_rule(n);
    return quadrature_coefficients(f, {n}, options).coefficients.front();
}

TrigPolynomial truncate(const PeriodicFunction& f, int degree, const QuadratureOptions& options) {
    TrigPolynomial p(degree);
    if (f.coefficient_rule) {
        for (int n = -degree; n <= degree; ++n) p.set_coefficient(n, f.coefficient_rule(n));
        return p;
    }
    std::vector<int> indices;
    for (int n = -degree; n <= degree; ++n) indices.push_back(n);
    const auto result = quadrature_coefficients(f, indices, options);
    for (std::size_t i = 0; i < indices.size(); ++i) p.set_coefficient(indices[i], result.coefficients[i]);
    return p;
}

double derivative_fourier_norm(const TrigPolynomial& p) {
    double sum = 0.0;
    for (int n = -p.degree(); n <= p.degree(); ++n) sum += std::abs(static_cast<double>(n) * p.coefficient(n));
    return sum;
}

double fourier_norm(const TrigPolynomial& p) {
    double sum = 0.0;
    for (const auto& a : p.coefficients()) sum += std::abs(a);
    return sum;
}

// --- extents --------------------------------------------------------------

Extent extent_from_samples(const std::vector<double>& samples, const std::function<double(double)>& refine) {
    const std::size_t grid = samples.size();
    const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
    const auto i_min = static_cast<std::size_t>(min_it - samples.begin());
    const auto i_max = static_cast<std::size_t>(max_it - samples.begin());
    const double h = 2.0 * kPi / static_cast<double>(grid);

    Extent e;
    const double x_max = grid_angle(i_max, grid);
    e.max = golden_section_max(refine, x_max - h, x_max + h, x_max, *max_it, &e.arg_max);
    const double x_min = grid_angle(i_min, grid);
    e.min = -golden_section_max([&](double x) { return -refine(x); }, x_min - h, x_min + h, x_min, -*min_it,
                                &e.arg_min);
    e.arg_max = reduce_angle(e.arg_max);
    e.arg_min = reduce_angle(e.arg_min);
    return e;
}

Extent range_extent(const PeriodicFunction& f, std::size_t grid_size) {
    if (!f.real_valued) throw DomainError("range_extent requires a real-valued function ('" + f.name + "')");
    if (grid_size < 1024) throw DomainError("range_extent grid must have at least 1024 points");
    std::vector<double> samples(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) samples[j] = f.rule(grid_angle(j, grid_size)).real();
    return extent_from_samples(samples, [&f](double x) { return f(x).real(); });
}

double chebyshev_radius(const PeriodicFunction& f, std::size_t grid_size) {
    if (f.real_valued) {
        const auto e = range_extent(f, grid_size);
        return 0.5 * (e.max - e.min);
    }
    if (grid_size < 1024) throw DomainError("chebyshev_radius grid must have at least 1024 points");
    std::vector<Complex> points(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) points[j] = f.rule(grid_angle(j, grid_size));
    return smallest_enclosing_disk(std::move(points)).radius;
}

namespace {

Disk disk_from(Complex a, Complex b) { return {(a + b) / 2.0, std::abs(a - b) / 2.0}; }

Disk disk_from(Complex a, Complex b, Complex c) {
    const Complex ab = b - a, ac = c - a;
    const double d = 2.0 * (ab.real() * ac.imag() - ab.imag() * ac.real());
    if (std::abs(d) < 1e-300) {
        // Collinear: the widest pair spans the others.
        Disk best = disk_from(a, b);
        for (const auto& cand : {disk_from(a, c), disk_from(b, c)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    const double ab2 = std::norm(ab), ac2 = std::norm(ac);
    const Complex center_offset{(ac.imag() * ab2 - ab.imag() * ac2) / d, (ab.real() * ac2 - ac.real() * ab2) / d};
    return {a + center_offset, std::abs(center_offset)};
}

bool contains(const Disk& disk, Complex p) {
    return std::abs(p - disk.center) <= disk.radius * (1.0 + 1e-12) + 1e-15;
}

}  // namespace

Disk smallest_enclosing_disk(std::vector<Complex> points) {
    if (points.empty()) return {};
    std::mt19937_64 shuffle_rng(0x5eed5eedULL);
    for (std::size_t i = points.size() - 1; i > 0; --i) {
        const std::size_t j = shuffle_rng() % (i + 1);
        std::swap(points[i], points[j]);
    }
    Disk disk{points[0], 0.0};
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (contains(disk, points[i])) continue;
        disk = {points[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (contains(disk, points[j])) continue;
            disk = disk_from(points[i], points[j]);
            for (std::size_t k = 0; k < j; ++k)
                if (!contains(disk, points[k])) disk = disk_from(points[i], points[j], points[k]);
        }
    }
    return disk;
}

// --- builtins -------------------------------------------------------------

PeriodicFunction builtin_triangle() {
    PeriodicFunction f;
    f.name = "triangle";
    f.rule = [](double x) { return Complex{1.0 - (2.0 / kPi) * std::abs(x), 0.0}; };
    f.real_valued = true;
    f.coefficient_rule = [](int n) {
        if (n % 2 == 0) return Complex{};
        const double nn = static_cast<double>(n);
        return Complex{4.0 / (kPi * kPi * nn * nn), 0.0};
    };
    // All coefficients are positive, so Σ|a_n| = f(0) = 1.
    f.coefficient_l1 = 1.0;
    return f;
}

PeriodicFunction builtin_bump() {
    PeriodicFunction f;
    f.name = "bump";
    f.rule = [](double x) {
        if (std::abs(x) > kPi / 2.0) return Complex{};
        const double t = 2.0 * x / kPi;
        return Complex{std::sqrt(std::max(0.0, 1.0 - t * t)), 0.0};
    };
    f.real_valued = true;
    f.coefficient_rule = [](int n) {
        if (n == 0) return Complex{kPi / 8.0, 0.0};
        const double m = std::abs(static_cast<double>(n));
        return Complex{std::cyl_bessel_j(1.0, m * kPi / 2.0) / (2.0 * m), 0.0};
    };
    return f;
}

PeriodicFunction builtin_exponential(int n) {
    PeriodicFunction f;
    f.name = "exp(i" + std::to_string(n) + "x)";
    f.rule = [n](double x) { return std::polar(1.0, static_cast<double>(n) * x); };
    f.real_valued = (n == 0);
    f.coefficient_rule = [n](int k) { return k == n ? Complex{1.0, 0.0} : Complex{}; };
    f.coefficient_l1 = 1.0;
    f.band_limit = std::abs(n);
    return f;
}

PeriodicFunction builtin_cos() {
    auto f = from_coefficients({{-1, 0.5}, {1, 0.5}}, "cos");
    f.rule = [](double x) { return Complex{std::cos(x), 0.0}; };
    return f;
}

PeriodicFunction builtin_constant(Complex c) {
    PeriodicFunction f;
    f.name = "constant";
    f.rule = [c](double) { return c; };
    f.real_valued = (c.imag() == 0.0);
    f.coefficient_rule = [c](int n) { return n == 0 ? c : Complex{}; };
    f.coefficient_l1 = std::abs(c);
    f.band_limit = 0;
    return f;
}

PeriodicFunction from_coefficients(const std::map<int, Complex>& coefficients, std::string name) {
    int degree = 0;
    for (const auto& [n, a] : coefficients) degree = std::max(degree, std::abs(n));
    TrigPolynomial p(degree);
    for (const auto& [n, a] : coefficients) p.set_coefficient(n, a);
    return p.as_function(std::move(name));
}

PeriodicFunction difference(const PeriodicFunction& f, const TrigPolynomial& g) {
    PeriodicFunction h;
    h.name = f.name + " - partial sum";
    h.rule = [f, g](double x) { return f.rule(x) - g(x); };
    h.real_valued = f.real_valued && g.is_real();
    if (f.coefficient_rule)
        h.coefficient_rule = [f, g](int n) { return f.coefficient_rule(n) - g.coefficient(n); };
    if (f.band_limit) h.band_limit = std::max(*f.band_limit, g.degree());
    return h;
}

PeriodicFunction shifted(const PeriodicFunction& f, Complex c) {
    PeriodicFunction h = f;
    h.name = f.name + " + const";
    h.rule = [f, c](double x) { return f.rule(x) + c; };
    h.real_valued = f.real_valued && c.imag() == 0.0;
    if (f.coefficient_rule)
        h.coefficient_rule = [f, c](int n) { return n == 0 ? f.coefficient_rule(0) + c : f.coefficient_rule(n); };
    h.coefficient_l1.reset();
    return h;
}

// --- coefficient files ----------------------------------------------------

std::map<int, Complex> parse_coefficient_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("coefficient file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw DomainError("coefficient file must be a JSON object {\"n\": [re, im]}");
    std::map<int, Complex> out;
    for (const auto& [key, value] : doc.items()) {
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size()) throw DomainError("coefficient key '" + key + "' is not an integer");
        if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
            throw DomainError("coefficient '" + key + "' must be [re, im]");
        out[n] = {value[0].get<double>(), value[1].get<double>()};
    }
    return out;
}

std::string coefficient_json(const std::map<int, Complex>& coefficients) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [n, a] : coefficients) doc[std::to_string(n)] = {a.real(), a.imag()};
    return doc.dump(2);
}

std::map<int, Complex> load_coefficient_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open coefficient file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_coefficient_json(buffer.str());
}

}  // namespace commbound
