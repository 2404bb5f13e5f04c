#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "shiftfp/expression.hpp"
#include "shiftfp/piecewise.hpp"

namespace shiftfp {

/// Piecewise-elementary real function on [0, inf).
///
/// The pieces partition the half line: the first starts closed at 0, the
/// last is unbounded, and consecutive pieces touch with exactly one of the
/// shared endpoints closed. Values may be negative (the codomain is all of R).
class ScalarFn {
public:
    /// Throws std::invalid_argument unless the pieces partition [0, inf).
    explicit ScalarFn(std::vector<Piece> pieces);

    /// One piece covering [0, inf).
    static ScalarFn single(Expression expr);
    static ScalarFn single(std::string_view source);
    static ScalarFn identity();
    static ScalarFn constant(double value);

    const std::vector<Piece>& pieces() const noexcept { return rule_.pieces(); }
    const PiecewiseRule& rule() const noexcept { return rule_; }

    /// Interior endpoints where pieces meet, ascending.
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

    /// Value at t >= 0. Throws DomainError for t < 0 or when the piece's
    /// expression is undefined at t.
    double eval(double t) const;
    double operator()(double t) const { return eval(t); }

    /// {f(w), left limit, right limit}, sorted with duplicates removed.
    ///
    /// One-sided limits are obtained by evaluating the neighbouring piece's
    /// expression at w; the left limit is absent at w = 0.
    std::vector<double> limit_values(double w) const;

    /// c * f, piece by piece.
    ScalarFn scaled(double c) const;

    /// f - g on the common refinement of both partitions.
    friend ScalarFn difference(const ScalarFn& f, const ScalarFn& g);

private:
    PiecewiseRule rule_;
    std::vector<double> breakpoints_;
};

ScalarFn difference(const ScalarFn& f, const ScalarFn& g);

}  // namespace shiftfp
