#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shiftfp/defaults.hpp"
#include "shiftfp/scalar_fn.hpp"

namespace shiftfp {

/// Ordered pair (psi, phi) claimed to be a pair of shifting distance
/// functions:
///   (i)  psi(u) <= phi(v)  implies  u <= v;
///   (ii) u_n -> w, v_n -> w and psi(u_n) <= phi(v_n) for all n  implies  w = 0.
struct ShiftingPair {
    ScalarFn psi;
    ScalarFn phi;
};

enum class Verdict { Pass, Violated, Inconclusive };

std::string_view to_string(Verdict v) noexcept;

/// Sample that decided (or bounded) a verdict. `clause` names the checked
/// property; `inputs` are enough to recompute `values` from the functions.
///
///   "i"       inputs {u, v}  values {psi(u), phi(v)}
///   "ii"      inputs {w}     values {min limits of psi, max limits of phi, gap}
///   "a".."d"  altering-function clauses, see check_altering
struct Witness {
    std::string clause;
    std::vector<double> inputs;
    std::vector<double> values;
    double margin = 0.0;
};

/// `margin` is the worst slack after tolerance: positive everywhere a check
/// passed, <= 0 where it failed. Violated and inconclusive reports always
/// carry witnesses, worst first; passing reports carry the tightest sample.
struct ConditionReport {
    Verdict verdict = Verdict::Pass;
    std::vector<Witness> witnesses;
    double margin = 0.0;
    std::size_t samples_used = 0;
    std::size_t violations = 0;

    bool passed() const noexcept { return verdict == Verdict::Pass; }
    bool failed_clause(std::string_view clause) const;
};

/// Condition (i) on n uniform pairs from [0, u_max]^2 plus every pair of a
/// deterministic grid (breakpoints of psi and phi, breakpoints +- 1e-6, and
/// evenly spaced points). A violation is psi(u) <= phi(v) - tol_eq with
/// u > v + tol_ord.
ConditionReport check_condition_i(const ShiftingPair& pair, std::uint64_t seed, std::size_t n,
                                  double tol_eq = defaults::kTol, double tol_ord = defaults::kTol,
                                  double u_max = defaults::kRange);

/// `count` evenly spaced points on (0, w_max] plus each breakpoint b of psi
/// and phi and b +- 1e-6, sorted and deduplicated.
std::vector<double> condition_ii_grid(const ShiftingPair& pair, double w_max = defaults::kRange,
                                      std::size_t count = defaults::kGridSize);

/// Sufficient test for condition (ii): at every grid point w the smallest
/// limit value of psi must exceed the largest limit value of phi by more than
/// tol. A strict gap rules out sequences u_n, v_n -> w with psi(u_n) <=
/// phi(v_n) for piecewise-continuous functions. Failure is reported as
/// Inconclusive, since the condition itself may still hold.
///
/// Throws std::invalid_argument if the grid is not ascending in (0, inf) or
/// misses a breakpoint (or its +- 1e-6 neighbours) below grid.back().
ConditionReport check_condition_ii(const ShiftingPair& pair, std::span<const double> grid,
                                   double tol = defaults::kTol);

/// Altering distance function test. Clauses:
///   a: |psi(0)| <= tol
///   b: psi(t) > tol for sampled t > tol
///   c: psi nondecreasing on consecutive sampled points (up to tol)
///   d: limit values agree within tol at every breakpoint
/// Samples are n uniform points on [0, t_max] plus breakpoints, their
/// +- 1e-6 neighbours and t_max.
ConditionReport check_altering(const ScalarFn& psi, std::uint64_t seed, std::size_t n,
                               double tol = defaults::kTol, double t_max = defaults::kRange);

/// Banach: d(Tx,Ty) <= k d(x,y) becomes (t, k t). Requires 0 <= k < 1.
ShiftingPair from_banach(double k);

/// Khan et al.: psi(d(Tx,Ty)) <= c psi(d(x,y)) becomes (psi, c psi).
/// Requires 0 <= c < 1 and psi to pass check_altering.
ShiftingPair from_khan(const ScalarFn& psi, double c);

/// Dutta-Choudhury: psi(d(Tx,Ty)) <= psi(d(x,y)) - varphi(d(x,y)) becomes
/// (psi, psi - varphi). Both functions must pass check_altering.
ShiftingPair from_altering_pair(const ScalarFn& psi, const ScalarFn& varphi);

}  // namespace shiftfp
