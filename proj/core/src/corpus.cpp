#include "shiftfp/corpus.hpp"

#include <cmath>
#include <stdexcept>

#include "shiftfp/expression.hpp"

namespace shiftfp {

namespace corpus {

namespace {

constexpr Interval kUnitClosed{0.0, true, 1.0, true};
constexpr Interval kUnitHalfOpen{0.0, true, 1.0, false};
constexpr Interval kAboveOneOpen{1.0, false, INFINITY, false};
constexpr Interval kFromOneClosed{1.0, true, INFINITY, false};

ScalarFn two_branch(std::string_view low, std::string_view high) {
    return ScalarFn({Piece{kUnitClosed, parse_expr(low)}, Piece{kAboveOneOpen, parse_expr(high)}});
}

}  // namespace

ScalarFn example_psi() { return two_branch("ln(1/12 + 5/12*t)", "ln(1/12 + 4/12*t)"); }

ScalarFn example_phi() { return two_branch("ln(1/12 + 3/12*t)", "ln(1/12 + 2/12*t)"); }

SelfMap example_map() {
    return SelfMap(PiecewiseRule({Piece{kUnitHalfOpen, parse_expr("1/5*t")},
                                  Piece{kFromOneClosed, parse_expr("3/125")}}),
                   "Tx = x/5 on [0,1), 3/125 on {1,2,3,...}");
}

ShiftingPair ln_pair() { return {ScalarFn::single("ln((1+2*t)/2)"), ScalarFn::single("ln((1+t)/2)")}; }

}  // namespace corpus

Instance banach_k(double k, double center) {
    if (!(center > 0.0)) {
        throw std::invalid_argument("banach_k: center must be positive");
    }
    ShiftingPair pair = from_banach(k);
    Expression rule = Expression::number(k) * Expression::variable() + Expression::number((1.0 - k) * center);
    return Instance{
        "banach-k",
        "affine contraction Tx = " + format_double(k) + " x + " + format_double((1.0 - k) * center) + " on [0, " +
            format_double(2.0 * center) + "]",
        interval_space(0.0, 2.0 * center),
        SelfMap::single(rule, "Tx = " + rule.to_string()),
        std::move(pair),
        // Fixed point solves x = k x + (1 - k) c.
        Expectation{center, true, true},
        Point{0.0},
    };
}

namespace {

Instance paper_example() {
    return Instance{
        "paper-example",
        "hybrid space X = [0,1] u {2,3,...}, piecewise T and piecewise logarithmic (psi, phi)",
        hybrid_space(),
        corpus::example_map(),
        {corpus::example_psi(), corpus::example_phi()},
        // T0 = 0 and the integer branch leaves the integers, so 0 is the only fixed point.
        Expectation{0.0, true, true},
        Point{4.0},
    };
}

// Same space and pair, but T uses x/5 on the closed interval [0,1] as in the
// first case of the worked verification; only the image of x = 1 differs.
Instance paper_example_case1() {
    const Interval low{0.0, true, 1.0, true};
    const Interval high{1.0, false, INFINITY, false};
    return Instance{
        "paper-example-case1",
        "paper-example with T1 = 1/5 (x/5 on the closed interval [0,1])",
        hybrid_space(),
        SelfMap(PiecewiseRule({Piece{low, parse_expr("1/5*t")}, Piece{high, parse_expr("3/125")}}),
                "Tx = x/5 on [0,1], 3/125 on {2,3,...}"),
        {corpus::example_psi(), corpus::example_phi()},
        Expectation{0.0, true, true},
        Point{4.0},
    };
}

Instance ln_pair_banach_half() {
    return Instance{
        "ln-pair-banach-half",
        "Tx = x/2 on [0,1] with (ln((1+2t)/2), ln((1+t)/2)); equality case of the contraction",
        interval_space(0.0, 1.0),
        SelfMap::single("t/2"),
        corpus::ln_pair(),
        Expectation{0.0, true, true},
        Point{1.0},
    };
}

Instance dc_reduction() {
    return Instance{
        "dc-reduction",
        "Tx = x/2 on [0,1] with the pair built from altering functions psi = t, varphi = t/2",
        interval_space(0.0, 1.0),
        SelfMap::single("t/2"),
        from_altering_pair(ScalarFn::identity(), ScalarFn::single("t/2")),
        Expectation{0.0, true, true},
        Point{1.0},
    };
}

Instance negative_identity() {
    return Instance{
        "negative-identity",
        "identity on [0,1] with the ln pair; psi(d) > phi(d) for every d > 0",
        interval_space(0.0, 1.0),
        SelfMap::identity(),
        corpus::ln_pair(),
        Expectation{std::nullopt, false, true},
        Point{0.3},
    };
}

}  // namespace

std::vector<std::string> list_instances() {
    return {"paper-example",   "paper-example-case1", "ln-pair-banach-half",
            "banach-k",        "dc-reduction",        "negative-identity"};
}

Instance instance(std::string_view name) {
    if (name == "paper-example") return paper_example();
    if (name == "paper-example-case1") return paper_example_case1();
    if (name == "ln-pair-banach-half") return ln_pair_banach_half();
    if (name == "dc-reduction") return dc_reduction();
    if (name == "negative-identity") return negative_identity();
    if (name == "banach-k") return banach_k(0.5);
    constexpr std::string_view kBanachPrefix = "banach-k:";
    if (name.substr(0, kBanachPrefix.size()) == kBanachPrefix) {
        double k = 0.0;
        try {
            k = parse_constant(name.substr(kBanachPrefix.size()));
        } catch (const std::exception&) {
            throw std::out_of_range("bad banach-k parameter in '" + std::string(name) + "'");
        }
        return banach_k(k);
    }
    throw std::out_of_range("unknown instance '" + std::string(name) + "'");
}

}  // namespace shiftfp
