#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "shiftfp/metric.hpp"
#include "shiftfp/piecewise.hpp"

namespace shiftfp {

/// Piecewise rule x -> Tx intended to map a space into itself.
class SelfMap {
public:
    SelfMap(PiecewiseRule rule, std::string description);

    /// Single rule on all of R.
    static SelfMap single(Expression expr, std::string description);
    static SelfMap single(std::string_view source);
    static SelfMap identity();

    const PiecewiseRule& rule() const noexcept { return rule_; }
    const std::string& description() const noexcept { return description_; }

    /// Raw rule value with no membership checks. Throws DomainError when no
    /// piece covers x or the expression is undefined there.
    double image(double x) const;

private:
    PiecewiseRule rule_;
    std::string description_;
};

/// Tx for a member x, canonicalised by the space. Throws MembershipError for
/// a non-member x and ClosureError when Tx leaves the space.
Point apply(const MetricSpace& space, const SelfMap& map, Point x);

struct ClosureWitness {
    Point x;
    double image = 0.0;
    std::string reason;
};

struct ClosureReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::vector<ClosureWitness> witnesses;  // first violations, capped

    bool ok() const noexcept { return violations == 0; }
};

/// Checks that Tx is a member for n sampled members x and for every anchor point.
ClosureReport verify_closure(const MetricSpace& space, const SelfMap& map, std::uint64_t seed, std::size_t n);

}  // namespace shiftfp
