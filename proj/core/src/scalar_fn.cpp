#include "shiftfp/scalar_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "shiftfp/error.hpp"

namespace shiftfp {

namespace {

constexpr Interval kHalfLine{0.0, true, INFINITY, false};

std::vector<double> interior_endpoints(const std::vector<Piece>& pieces) {
    std::vector<double> out;
    for (const auto& p : pieces) {
        if (std::isfinite(p.interval.hi)) out.push_back(p.interval.hi);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

ScalarFn::ScalarFn(std::vector<Piece> pieces)
    : rule_(std::move(pieces)), breakpoints_(interior_endpoints(rule_.pieces())) {
    if (!rule_.partitions_half_line()) {
        throw std::invalid_argument(
            "pieces must cover [0, inf) exactly once: start closed at 0, touch with exactly one "
            "closed endpoint, end at +inf");
    }
}

ScalarFn ScalarFn::single(Expression expr) { return ScalarFn({Piece{kHalfLine, std::move(expr)}}); }

ScalarFn ScalarFn::single(std::string_view source) { return single(parse_expr(source)); }

ScalarFn ScalarFn::identity() { return single(Expression::variable()); }

ScalarFn ScalarFn::constant(double value) { return single(Expression::number(value)); }

double ScalarFn::eval(double t) const {
    if (!(t >= 0.0)) {
        throw DomainError("ScalarFn evaluated at t=" + format_double(t) + " outside [0, inf)");
    }
    // Partition guarantees a hit for any finite t >= 0.
    const auto idx = rule_.find(t);
    if (!idx) {
        throw DomainError("no piece claims t=" + format_double(t));
    }
    return rule_.pieces()[*idx].expr.eval(t);
}

std::vector<double> ScalarFn::limit_values(double w) const {
    std::vector<double> out{eval(w)};
    for (const auto& p : rule_.pieces()) {
        const Interval& iv = p.interval;
        const bool from_left = w > 0.0 && iv.lo < w && iv.hi >= w;
        const bool from_right = iv.lo <= w && iv.hi > w;
        if (from_left || from_right) {
            out.push_back(p.expr.eval(w));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ScalarFn ScalarFn::scaled(double c) const {
    std::vector<Piece> out;
    out.reserve(pieces().size());
    for (const auto& p : pieces()) {
        out.push_back({p.interval, Expression::number(c) * p.expr});
    }
    return ScalarFn(std::move(out));
}

ScalarFn difference(const ScalarFn& f, const ScalarFn& g) {
    const auto& fp = f.pieces();
    const auto& gp = g.pieces();
    std::vector<Piece> out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < fp.size() && j < gp.size()) {
        const Interval& a = fp[i].interval;
        const Interval& b = gp[j].interval;

        Interval cut;
        if (a.lo == b.lo) {
            cut.lo = a.lo;
            cut.lo_closed = a.lo_closed && b.lo_closed;
        } else {
            const Interval& later = a.lo > b.lo ? a : b;
            cut.lo = later.lo;
            cut.lo_closed = later.lo_closed;
        }
        if (a.hi == b.hi) {
            cut.hi = a.hi;
            cut.hi_closed = a.hi_closed && b.hi_closed;
        } else {
            const Interval& sooner = a.hi < b.hi ? a : b;
            cut.hi = sooner.hi;
            cut.hi_closed = sooner.hi_closed;
        }
        if (!cut.empty()) {
            out.push_back({cut, fp[i].expr - gp[j].expr});
        }

        // Advance whichever piece ends first; an open end finishes before a
        // closed end at the same coordinate.
        if (a.hi < b.hi) {
            ++i;
        } else if (b.hi < a.hi) {
            ++j;
        } else if (a.hi_closed == b.hi_closed) {
            ++i;
            ++j;
        } else if (!a.hi_closed) {
            ++i;
        } else {
            ++j;
        }
    }
    return ScalarFn(std::move(out));
}

}  // namespace shiftfp
