#include "shiftfp/self_map.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "shiftfp/error.hpp"

namespace shiftfp {

namespace {

constexpr std::size_t kMaxClosureWitnesses = 16;

}  // namespace

SelfMap::SelfMap(PiecewiseRule rule, std::string description)
    : rule_(std::move(rule)), description_(std::move(description)) {}

SelfMap SelfMap::single(Expression expr, std::string description) {
    return SelfMap(PiecewiseRule({Piece{{-INFINITY, false, INFINITY, false}, std::move(expr)}}),
                   std::move(description));
}

SelfMap SelfMap::single(std::string_view source) {
    return single(parse_expr(source), "Tt = " + std::string(source));
}

SelfMap SelfMap::identity() { return single(Expression::variable(), "identity"); }

double SelfMap::image(double x) const {
    const auto idx = rule_.find(x);
    if (!idx) {
        throw DomainError("map has no rule at x=" + format_double(x));
    }
    return rule_.pieces()[*idx].expr.eval(x);
}

Point apply(const MetricSpace& space, const SelfMap& map, Point x) {
    const double v = space.canonical(x.value);
    if (!std::isfinite(v) || !space.contains(v)) {
        throw MembershipError("x=" + format_double(x.value) + " is not a member of " + space.description());
    }
    const double raw = map.image(v);
    const double img = space.canonical(raw);
    if (!space.contains(img)) {
        throw ClosureError("T(" + format_double(v) + ") = " + format_double(raw) + " leaves " + space.description(),
                           v, raw);
    }
    return {img};
}

ClosureReport verify_closure(const MetricSpace& space, const SelfMap& map, std::uint64_t seed, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("verify_closure: n must be >= 1");
    }
    ClosureReport rep;
    auto check = [&](Point x) {
        ++rep.checked;
        double raw = NAN;
        std::string reason;
        try {
            raw = map.image(space.canonical(x.value));
            if (!space.contains(space.canonical(raw))) reason = "image outside the space";
        } catch (const DomainError& e) {
            reason = e.what();
        }
        if (!reason.empty()) {
            ++rep.violations;
            if (rep.witnesses.size() < kMaxClosureWitnesses) {
                rep.witnesses.push_back({x, raw, std::move(reason)});
            }
        }
    };
    for (const Point& a : space.anchor_points()) check(a);
    for (const Point& x : space.sample(derive_seed(seed, "closure"), n)) check(x);
    return rep;
}

}  // namespace shiftfp
