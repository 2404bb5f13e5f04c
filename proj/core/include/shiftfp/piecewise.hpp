#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "shiftfp/expression.hpp"

namespace shiftfp {

/// Real interval with explicit endpoint openness. Infinite endpoints are
/// always open.
struct Interval {
    double lo = 0.0;
    bool lo_closed = true;
    double hi = 0.0;
    bool hi_closed = true;

    bool contains(double x) const noexcept;
    bool is_point() const noexcept { return lo == hi; }
    bool empty() const noexcept;

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct Piece {
    Interval interval;
    Expression expr;
};

/// Pieces in ascending order with pairwise disjoint intervals. Gaps are
/// allowed; a point in a gap has no rule.
class PiecewiseRule {
public:
    /// Throws std::invalid_argument on empty, unordered or overlapping pieces.
    explicit PiecewiseRule(std::vector<Piece> pieces);

    const std::vector<Piece>& pieces() const noexcept { return pieces_; }

    /// Index of the piece whose interval contains x.
    std::optional<std::size_t> find(double x) const noexcept;

    /// Number of pieces whose interval contains x. Always 0 or 1 for a valid rule.
    std::size_t claims(double x) const noexcept;

    /// True when the pieces cover [0, inf) with no gap.
    bool partitions_half_line() const noexcept;

private:
    std::vector<Piece> pieces_;
};

}  // namespace shiftfp
