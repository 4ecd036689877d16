#pragma once

// Affine bounds δ ↦ mδ + b and their pointwise minimum.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace commbound {

enum class LineKind { folk, split, truncation, constant_cap, power_series, pedersen, tangent };

/// Where a line came from. `parameter` is N for truncation/pedersen lines and
/// a for tangent lines; `detail` names the intercept branch that was used.
struct Provenance {
    LineKind kind = LineKind::folk;
    double parameter = 0.0;
    std::string detail;

    std::string label() const;
};

struct BoundLine {
    double slope = 0.0;
    double intercept = 0.0;
    double domain_max = 2.0;
    Provenance provenance;

    double operator()(double delta) const { return slope * delta + intercept; }
    bool applies(double delta) const { return delta >= 0.0 && delta <= domain_max; }
};

/// A maximal δ-interval on which one line is the minimum.
struct Segment {
    double delta_start = 0.0;
    double delta_end = 0.0;
    BoundLine line;
};

struct CurvePoint {
    double value = std::numeric_limits<double>::infinity();
    Provenance provenance;
    bool clamped = false;
};

/// Pointwise minimum of a family of BoundLines on [0, domain_max].
///
/// `evaluate` is the exact minimum over every stored line. Optionally a
/// query line is generated per δ (the tangent line touching at a = δ for
/// the square-root envelope) and joins the minimum. Queries above
/// domain_max are clamped to domain_max.
class BoundCurve {
  public:
    using QueryLine = std::function<std::optional<BoundLine>(double)>;

    BoundCurve() = default;
    BoundCurve(std::vector<BoundLine> lines, double domain_max, QueryLine query_line = {});

    double operator()(double delta) const { return evaluate(delta).value; }
    CurvePoint evaluate(double delta) const;

    /// Minimum over the stored lines only.
    CurvePoint evaluate_static(double delta) const;

    /// Lower envelope of the stored lines on [0, domain_max], computed by a
    /// slope-sorted sweep that prunes dominated lines.
    std::vector<Segment> breakpoints() const;

    /// Evaluates through the breakpoint segmentation (binary search).
    double evaluate_segmented(double delta) const;

    const std::vector<BoundLine>& lines() const { return lines_; }
    double domain_max() const { return domain_max_; }
    bool has_query_line() const { return static_cast<bool>(query_line_); }

  private:
    std::vector<BoundLine> lines_;
    double domain_max_ = 2.0;
    QueryLine query_line_;
    std::vector<Segment> segments_;
};

}  // namespace commbound
