#include "shiftfp/piecewise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace shiftfp {

bool Interval::contains(double x) const noexcept {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

bool Interval::empty() const noexcept {
    if (lo > hi) return true;
    if (lo == hi) return !(lo_closed && hi_closed);
    return false;
}

namespace {

std::string describe(const Interval& iv) {
    return std::string(iv.lo_closed ? "[" : "(") + format_double(iv.lo) + ", " + format_double(iv.hi) +
           (iv.hi_closed ? "]" : ")");
}

}  // namespace

PiecewiseRule::PiecewiseRule(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) {
        throw std::invalid_argument("piecewise rule needs at least one piece");
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Interval& iv = pieces_[i].interval;
        if (std::isnan(iv.lo) || std::isnan(iv.hi)) {
            throw std::invalid_argument("piece " + std::to_string(i) + ": NaN endpoint");
        }
        if ((std::isinf(iv.lo) && iv.lo_closed) || (std::isinf(iv.hi) && iv.hi_closed)) {
            throw std::invalid_argument("piece " + std::to_string(i) + ": infinite endpoint must be open");
        }
        if (iv.lo == INFINITY || iv.hi == -INFINITY) {
            throw std::invalid_argument("piece " + std::to_string(i) + ": misplaced infinite endpoint");
        }
        if (iv.empty()) {
            throw std::invalid_argument("piece " + std::to_string(i) + ": empty interval " + describe(iv));
        }
        if (i == 0) continue;
        const Interval& prev = pieces_[i - 1].interval;
        const bool ordered = prev.hi < iv.lo || (prev.hi == iv.lo && !(prev.hi_closed && iv.lo_closed));
        if (!ordered) {
            throw std::invalid_argument("pieces " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                        " overlap or are out of order: " + describe(prev) + " then " +
                                        describe(iv));
        }
    }
}

std::optional<std::size_t> PiecewiseRule::find(double x) const noexcept {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].interval.contains(x)) return i;
    }
    return std::nullopt;
}

std::size_t PiecewiseRule::claims(double x) const noexcept {
    std::size_t n = 0;
    for (const auto& p : pieces_) {
        if (p.interval.contains(x)) ++n;
    }
    return n;
}

bool PiecewiseRule::partitions_half_line() const noexcept {
    const Interval& first = pieces_.front().interval;
    if (first.lo != 0.0 || !first.lo_closed) return false;
    if (pieces_.back().interval.hi != INFINITY) return false;
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        const Interval& prev = pieces_[i - 1].interval;
        const Interval& cur = pieces_[i].interval;
        // Touching endpoints with exactly one side closed.
        if (prev.hi != cur.lo || prev.hi_closed == cur.lo_closed) return false;
    }
    return true;
}

}  // namespace shiftfp
