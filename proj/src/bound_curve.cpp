#include "commbound/bound_curve.hpp"

#include <algorithm>
#include <cstdio>

#include "commbound/errors.hpp"

namespace commbound {

std::string Provenance::label() const {
    char buffer[64];
    std::string out;
    switch (kind) {
        case LineKind::folk: out = "folk"; break;
        case LineKind::split: out = "split"; break;
        case LineKind::truncation:
            std::snprintf(buffer, sizeof buffer, "truncation N=%d", static_cast<int>(parameter));
            out = buffer;
            break;
        case LineKind::constant_cap: out = "constant-cap"; break;
        case LineKind::power_series:
            std::snprintf(buffer, sizeof buffer, "power-series N=%d", static_cast<int>(parameter));
            out = buffer;
            break;
        case LineKind::pedersen:
            std::snprintf(buffer, sizeof buffer, "pedersen N=%d", static_cast<int>(parameter));
            out = buffer;
            break;
        case LineKind::tangent:
            std::snprintf(buffer, sizeof buffer, "tangent a=%.9g", parameter);
            out = buffer;
            break;
    }
    if (!detail.empty()) out += " " + detail;
    return out;
}

BoundCurve::BoundCurve(std::vector<BoundLine> lines, double domain_max, QueryLine query_line)
    : lines_(std::move(lines)), domain_max_(domain_max), query_line_(std::move(query_line)) {
    if (lines_.empty()) throw DomainError("a bound curve needs at least one line");
    for (const auto& line : lines_)
        if (line.domain_max < domain_max_) throw DomainError("line domain shorter than the curve domain");
    segments_ = breakpoints();
}

CurvePoint BoundCurve::evaluate_static(double delta) const {
    if (delta < 0.0) throw DomainError("bound curves are defined for delta >= 0");
    CurvePoint point;
    if (delta > domain_max_) {
        delta = domain_max_;
        point.clamped = true;
    }
    const BoundLine* best = nullptr;
    for (const auto& line : lines_) {
        const double v = line(delta);
        if (v < point.value) {
            point.value = v;
            best = &line;
        }
    }
    point.provenance = best->provenance;
    if (point.clamped) point.provenance.detail += point.provenance.detail.empty() ? "clamped" : " clamped";
    return point;
}

CurvePoint BoundCurve::evaluate(double delta) const {
    CurvePoint point = evaluate_static(delta);
    if (!query_line_) return point;
    const double at = std::min(delta, domain_max_);
    if (auto line = query_line_(at); line && line->applies(at)) {
        const double v = (*line)(at);
        if (v < point.value) {
            point.value = v;
            point.provenance = line->provenance;
            if (point.clamped) point.provenance.detail += point.provenance.detail.empty() ? "clamped" : " clamped";
        }
    }
    return point;
}

std::vector<Segment> BoundCurve::breakpoints() const {
    std::vector<const BoundLine*> sorted;
    sorted.reserve(lines_.size());
    for (const auto& line : lines_) sorted.push_back(&line);
    std::sort(sorted.begin(), sorted.end(), [](const BoundLine* a, const BoundLine* b) {
        if (a->slope != b->slope) return a->slope > b->slope;
        return a->intercept < b->intercept;
    });

    auto crossing = [](const BoundLine* a, const BoundLine* b) {
        return (b->intercept - a->intercept) / (a->slope - b->slope);
    };

    std::vector<const BoundLine*> hull;
    for (const BoundLine* line : sorted) {
        if (!hull.empty() && hull.back()->slope == line->slope) continue;  // higher intercept, same slope
        while (hull.size() >= 2 && crossing(hull[hull.size() - 2], line) <= crossing(hull[hull.size() - 2], hull.back()))
            hull.pop_back();
        hull.push_back(line);
    }

    std::vector<Segment> segments;
    for (std::size_t k = 0; k < hull.size(); ++k) {
        double start = k == 0 ? -std::numeric_limits<double>::infinity() : crossing(hull[k - 1], hull[k]);
        double end = k + 1 == hull.size() ? std::numeric_limits<double>::infinity() : crossing(hull[k], hull[k + 1]);
        start = std::max(start, 0.0);
        end = std::min(end, domain_max_);
        if (end <= start) continue;
        segments.push_back({start, end, *hull[k]});
    }
    if (segments.empty()) {
        // Every crossing falls outside [0, D]; pick the line that is minimal at 0.
        const auto point = evaluate_static(0.0);
        for (const BoundLine* line : hull)
            if ((*line)(0.0) == point.value) return {{0.0, domain_max_, *line}};
    }
    return segments;
}

double BoundCurve::evaluate_segmented(double delta) const {
    delta = std::clamp(delta, 0.0, domain_max_);
    auto it = std::upper_bound(segments_.begin(), segments_.end(), delta,
                               [](double d, const Segment& s) { return d < s.delta_start; });
    if (it != segments_.begin()) --it;
    return it->line(delta);
}

}  // namespace commbound
