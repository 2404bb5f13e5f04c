// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//
// Usage: shiftfp_acceptance [path-to-shiftfp-binary]
// Without the binary path, criterion 6 drives the CLI in-process.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "oracles.hpp"
#include "shiftfp/conditions.hpp"
#include "shiftfp/corpus.hpp"
#include "shiftfp/pipeline.hpp"
#include "shiftfp/seed.hpp"
#include "shiftfp/solver.hpp"
#include "shiftfp/verifier.hpp"
#include "shiftfp_cli/cli.hpp"

using namespace shiftfp;

namespace {

// Collects failed sub-checks for one criterion.
class Criterion {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) failures_.push_back(what);
    }
    void note(const std::string& s) { notes_.push_back(s); }
    bool passed() const { return failures_.empty(); }
    std::string summary() const {
        std::string s;
        if (!passed()) {
            s = std::to_string(failures_.size()) + "/" + std::to_string(checks_) + " checks failed: ";
            for (std::size_t i = 0; i < failures_.size() && i < 5; ++i) s += (i ? "; " : "") + failures_[i];
            return s;
        }
        s = std::to_string(checks_) + " checks";
        for (const auto& n : notes_) s += "; " + n;
        return s;
    }

private:
    std::size_t checks_ = 0;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

std::string num(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

int cli_in_process(const std::vector<std::string>& args, std::string* out) {
    std::ostringstream o, e;
    const int code = cli::run_cli(args, o, e);
    if (out) *out = o.str();
    return code;
}

// Runs the CLI binary and captures stdout.
int cli_subprocess(const std::string& binary, const std::vector<std::string>& args, std::string* out) {
    std::string cmd = "'" + binary + "'";
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::string text;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
    const int status = pclose(pipe);
    if (out) *out = text;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 1. Paper example end to end.
Criterion criterion_1() {
    Criterion c;
    c.expect(cli_in_process({"corpus", "run", "paper-example"}, nullptr) == 0, "corpus run paper-example exit 0");

    const Instance inst = instance("paper-example");
    const CheckSettings cs;
    const PipelineResult r = run_pipeline(inst, cs);
    c.expect(r.closure.ok() && r.closure.checked >= 10000, "closure on 1e4 samples");
    c.expect(r.condition_i.violations == 0 && r.condition_i.samples_used >= 100000,
             "condition (i): zero violations over 1e5 samples");
    c.expect(r.condition_ii.passed(), "condition (ii) passes on the default grid");

    const auto grid = condition_ii_grid(inst.pair, cs.range(), cs.grid_size);
    for (double w : {1.0 - 1e-6, 1.0, 1.0 + 1e-6}) {
        c.expect(std::find(grid.begin(), grid.end(), w) != grid.end(), "grid contains " + num(w));
    }
    const auto psi_lim = inst.pair.psi.limit_values(1.0);
    const auto phi_lim = inst.pair.phi.limit_values(1.0);
    const double gap = *std::min_element(psi_lim.begin(), psi_lim.end()) -
                       *std::max_element(phi_lim.begin(), phi_lim.end());
    const double expected_gap = std::log(5.0 / 12.0) - std::log(4.0 / 12.0);
    c.expect(std::fabs(gap - expected_gap) <= 1e-9, "gap at w=1 " + num(gap) + " vs " + num(expected_gap));
    c.expect(std::fabs(gap - 0.22314355131420976) <= 1e-9, "gap at w=1 equals ln(5/4)");

    c.expect(r.contraction.worst_margin > 0.0 && r.contraction.samples_used == 100000,
             "contraction worst margin > 0 over 1e5 pairs (got " + num(r.contraction.worst_margin) + ")");
    c.expect(r.trace.iterates.front().value == 4.0, "picard starts at 4");
    c.expect(r.trace.residual < 1e-12 && r.trace.iterations() <= 20,
             "picard residual < 1e-12 within 20 iterations (" + std::to_string(r.trace.iterations()) + ")");
    c.expect(r.uniqueness.starts.size() == 10 && r.uniqueness.verdict == UniquenessVerdict::Unique,
             "uniqueness with 10 starts");
    for (const Point& z : r.uniqueness.limits) c.expect(std::fabs(z.value) <= 1e-9, "limit near 0");
    c.note("worst margin " + num(r.contraction.worst_margin) + ", " + std::to_string(r.trace.iterations()) +
           " iterations, gap(1) " + num(gap));
    return c;
}

// 2. The example psi is not an altering distance function.
Criterion criterion_2(bool criterion_1_passed) {
    Criterion c;
    const ScalarFn psi = instance("paper-example").pair.psi;
    const auto r = check_altering(psi, 0, 10000);
    c.expect(r.verdict == Verdict::Violated, "verdict violated");
    c.expect(r.failed_clause("a"), "clause a fails");
    c.expect(r.failed_clause("d"), "clause d fails");
    for (const Witness& w : r.witnesses) {
        if (w.clause == "a") {
            c.expect(std::fabs(w.values.at(0) - std::log(1.0 / 12.0)) <= 1e-12, "psi(0) = ln(1/12)");
        }
        if (w.clause == "d") {
            c.expect(w.inputs.at(0) == 1.0, "discontinuity at t = 1");
            c.expect(w.values.size() == 2, "two one-sided values");
            c.expect(std::fabs(w.values.at(0) - std::log(5.0 / 12.0)) <= 1e-12, "right value ln(5/12)");
            c.expect(std::fabs(w.values.at(1) - std::log(6.0 / 12.0)) <= 1e-12, "left value ln(6/12)");
        }
    }
    c.expect(criterion_1_passed, "criterion 1 passes alongside");
    return c;
}

// 3. Altering-pair reduction agrees with the Banach pair.
Criterion criterion_3() {
    Criterion c;
    const ShiftingPair dc = from_altering_pair(ScalarFn::identity(), ScalarFn::single("t/2"));
    const ShiftingPair bk = from_banach(0.5);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double t = defaults::kRange * i / 9999.0;
        worst = std::max({worst, std::fabs(dc.psi.eval(t) - bk.psi.eval(t)), std::fabs(dc.phi.eval(t) - bk.phi.eval(t))});
    }
    c.expect(worst <= 1e-12, "pointwise agreement at 1e4 points (max diff " + num(worst) + ")");

    const auto space = interval_space(0, 1);
    const SelfMap half = SelfMap::single("t/2");
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto a = check_contraction(*space, half, dc, seed, 10000);
        const auto b = check_contraction(*space, half, bk, seed, 10000);
        c.expect(a.verdict == b.verdict, "same verdict at seed " + std::to_string(seed));
        const auto sa = search_counterexample(*space, half, dc, seed, 2000);
        const auto sb = search_counterexample(*space, half, bk, seed, 2000);
        c.expect(sa.verdict == sb.verdict, "same search verdict at seed " + std::to_string(seed));
    }
    c.note("max pointwise difference " + num(worst));
    return c;
}

// 4. Banach family: pair conditions and the a-priori error bound.
Criterion criterion_4() {
    Criterion c;
    std::size_t bound_checks = 0;
    for (int i = 1; i <= 9; ++i) {
        const double k = i / 10.0;
        const ShiftingPair p = from_banach(k);
        const auto ci = check_condition_i(p, derive_seed(0, "acceptance/banach"), 100000);
        c.expect(ci.passed() && ci.violations == 0, "condition (i) for k=" + num(k));
        c.expect(check_condition_ii(p, condition_ii_grid(p)).passed(), "condition (ii) for k=" + num(k));

        const Instance inst = banach_k(k, 1.0);
        for (double x0 : {0.0, 0.3, 1.7, 2.0}) {
            const auto tr = picard(*inst.space, inst.map, {x0});
            c.expect(tr.verdict == IterationVerdict::Converged, "converged for k=" + num(k));
            const double d01 = tr.step_distances.empty() ? 0.0 : tr.step_distances.front();
            for (std::size_t n = 0; n < tr.iterates.size(); ++n) {
                const double err = std::fabs(tr.iterates[n].value - 1.0);
                const double bound = std::pow(k, static_cast<double>(n)) * d01 / (1.0 - k) + 1e-12;
                ++bound_checks;
                if (err > bound) {
                    c.expect(false, "bound at k=" + num(k) + " N=" + std::to_string(n));
                }
            }
        }
    }
    c.note(std::to_string(bound_checks) + " bound evaluations");
    return c;
}

// 5. Sound negatives.
Criterion criterion_5() {
    Criterion c;
    const Instance neg = instance("negative-identity");
    const auto s = search_counterexample(*neg.space, neg.map, neg.pair, 0, 1000);
    c.expect(s.verdict == Verdict::Violated && s.witness.has_value(), "negative-identity witness");
    c.expect(s.samples_used <= 1000, "within 1e3 evaluations");
    if (s.witness) {
        c.expect(s.witness->psi > s.witness->phi + defaults::kTol, "witness violates the inequality");
    }

    const ShiftingPair same{ScalarFn::identity(), ScalarFn::identity()};
    const auto grid = condition_ii_grid(same);
    const auto r = check_condition_ii(same, grid);
    c.expect(r.verdict == Verdict::Inconclusive, "pair (t,t) inconclusive");
    c.expect(r.violations == grid.size(), "inconclusive at all " + std::to_string(grid.size()) + " grid points");

    const auto squared = custom_space({[](double v) { return v >= 0.0 && v <= 2.0; },
                                       [](double a, double b) { return (a - b) * (a - b); },
                                       [](std::uint64_t seed, std::size_t n) {
                                           Rng rng = make_rng(seed, "acceptance/squared");
                                           std::uniform_real_distribution<double> u(0.0, 2.0);
                                           std::vector<double> out(n);
                                           for (auto& v : out) v = u(rng);
                                           return out;
                                       },
                                       "[0,2] with (x-y)^2",
                                       {0.0, 1.0, 2.0}});
    const auto ax = check_metric_axioms(*squared, 0, 1000, 1000, 1e-12);
    c.expect(ax.triangle_violations > 0 && ax.worst_triangle.has_value(), "triangle violation found");
    if (ax.worst_triangle) {
        const auto& w = *ax.worst_triangle;
        c.expect(w.x.value == 0.0 && w.y.value == 1.0 && w.z.value == 2.0, "witness (0,1,2)");
        c.expect(w.d_xz == 4.0 && w.d_xy == 1.0 && w.d_yz == 1.0, "4 > 1 + 1");
    }
    return c;
}

// 6. Byte-identical JSON across two runs.
Criterion criterion_6(const std::string& binary) {
    Criterion c;
    std::vector<std::vector<std::string>> commands = {{"--json", "corpus", "list"}};
    for (const auto& name : list_instances()) {
        for (const char* cmd : {"check-pair", "check-contraction", "solve", "probe-uniqueness"}) {
            commands.push_back({"--json", "--seed", "12345", "--instance", name, cmd});
        }
        commands.push_back({"--json", "--seed", "12345", "corpus", "run", name});
        commands.push_back({"--json", "--seed", "12345", "corpus", "export", name});
    }
    for (const auto& args : commands) {
        std::string a, b;
        const int ca = binary.empty() ? cli_in_process(args, &a) : cli_subprocess(binary, args, &a);
        const int cb = binary.empty() ? cli_in_process(args, &b) : cli_subprocess(binary, args, &b);
        std::string label;
        for (const auto& s : args) label += s + " ";
        c.expect(ca == cb && ca >= 0 && ca <= 2, "exit codes for " + label);
        c.expect(!a.empty() && a == b, "identical output for " + label);
    }
    c.note(std::to_string(commands.size()) + " commands" + (binary.empty() ? " (in-process)" : " (subprocess)"));
    return c;
}

// 7. Witness fields recompute from their inputs.
struct PooledWitness {
    std::string source;
    std::function<bool(std::string*)> recompute;
};

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12; }

// Independent evaluation of a pair: closed forms for the example, piece lookup otherwise.
struct PairOracle {
    bool example = false;
    ShiftingPair pair;

    double psi(double t) const { return example ? oracle::example_psi(t) : pair.psi.eval(t); }
    double phi(double t) const { return example ? oracle::example_phi(t) : pair.phi.eval(t); }

    static std::vector<double> limits(double w, double lo_branch, double hi_branch, double value) {
        std::vector<double> v{value};
        if (w == 1.0) v = {lo_branch, hi_branch};
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }
    std::vector<double> psi_limits(double w) const {
        if (!example) return pair.psi.limit_values(w);
        return limits(w, std::log(1.0 / 12 + 5.0 / 12 * w), std::log(1.0 / 12 + 4.0 / 12 * w), psi(w));
    }
    std::vector<double> phi_limits(double w) const {
        if (!example) return pair.phi.limit_values(w);
        return limits(w, std::log(1.0 / 12 + 3.0 / 12 * w), std::log(1.0 / 12 + 2.0 / 12 * w), phi(w));
    }
};

void pool_condition_witnesses(const std::string& label, const PairOracle& po, std::vector<PooledWitness>& pool) {
    const double tol = defaults::kTol;
    for (std::uint64_t seed : {0u, 1u}) {
        for (const Witness& w : check_condition_i(po.pair, seed, 20000).witnesses) {
            pool.push_back({label + " (i)", [po, w, tol](std::string* why) {
                                const double a = po.psi(w.inputs[0]), b = po.phi(w.inputs[1]);
                                *why = "condition (i) witness";
                                return close(w.values[0], a) && close(w.values[1], b) &&
                                       close(w.margin, a - b + tol);
                            }});
        }
    }
    for (const Witness& w : check_condition_ii(po.pair, condition_ii_grid(po.pair)).witnesses) {
        pool.push_back({label + " (ii)", [po, w, tol](std::string* why) {
                            const auto a = po.psi_limits(w.inputs[0]);
                            const auto b = po.phi_limits(w.inputs[0]);
                            const double gap = a.front() - b.back();
                            *why = "condition (ii) witness";
                            return close(w.values[0], a.front()) && close(w.values[1], b.back()) &&
                                   close(w.values[2], gap) && close(w.margin, gap - tol);
                        }});
    }
    for (const Witness& w : check_altering(po.pair.psi, 0, 5000).witnesses) {
        pool.push_back({label + " altering " + w.clause, [po, w, tol](std::string* why) {
                            *why = "altering witness " + w.clause;
                            if (w.clause == "a") return close(w.values[0], po.psi(0)) &&
                                                        close(w.margin, tol - std::fabs(po.psi(0)));
                            if (w.clause == "b") return close(w.values[0], po.psi(w.inputs[0])) &&
                                                        close(w.margin, po.psi(w.inputs[0]) - tol);
                            if (w.clause == "c") {
                                const double a = po.psi(w.inputs[0]), b = po.psi(w.inputs[1]);
                                return close(w.values[0], a) && close(w.values[1], b) && close(w.margin, b - a + tol);
                            }
                            const auto lims = po.psi_limits(w.inputs[0]);
                            if (lims.size() != w.values.size()) return false;
                            for (std::size_t i = 0; i < lims.size(); ++i) {
                                if (!close(lims[i], w.values[i])) return false;
                            }
                            return close(w.margin, tol - (lims.back() - lims.front()));
                        }});
    }
}

Criterion criterion_7() {
    Criterion c;
    std::vector<PooledWitness> pool;
    for (const auto& name : list_instances()) {
        const Instance inst = instance(name);
        const bool example = name.rfind("paper-example", 0) == 0;
        const PairOracle po{example, inst.pair};
        pool_condition_witnesses(name, po, pool);

        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            for (const auto& rep : {check_contraction(*inst.space, inst.map, inst.pair, seed, 5000),
                                    search_counterexample(*inst.space, inst.map, inst.pair, seed, 5000)}) {
                if (!rep.witness) continue;
                const ContractionWitness w = *rep.witness;
                pool.push_back({name + " contraction", [inst, po, w, example](std::string* why) {
                                    *why = "contraction witness";
                                    const double x = w.x.value, y = w.y.value;
                                    double d, tx, ty, dt;
                                    if (example) {
                                        d = oracle::hybrid_distance(x, y);
                                        tx = oracle::example_map(x);
                                        ty = oracle::example_map(y);
                                        dt = oracle::hybrid_distance(tx, ty);
                                    } else {
                                        d = std::fabs(x - y);
                                        tx = inst.map.image(x);
                                        ty = inst.map.image(y);
                                        dt = std::fabs(tx - ty);
                                    }
                                    const double psi = po.psi(dt), phi = po.phi(d);
                                    return close(w.d_xy, d) && close(w.tx, tx) && close(w.ty, ty) &&
                                           close(w.d_txty, dt) && close(w.psi, psi) && close(w.phi, phi) &&
                                           close(w.margin, phi - psi);
                                }});
            }
        }
    }
    // Pairs that fail, so violated witnesses are in the pool too.
    pool_condition_witnesses("(t, 2t)", {false, {ScalarFn::identity(), ScalarFn::single("2*t")}}, pool);
    pool_condition_witnesses("(t, t)", {false, {ScalarFn::identity(), ScalarFn::identity()}}, pool);

    c.expect(pool.size() >= 100, "pool has at least 100 witnesses (" + std::to_string(pool.size()) + ")");
    std::vector<PooledWitness> chosen;
    std::mt19937_64 rng(derive_seed(0, "acceptance/witness-sample"));
    std::sample(pool.begin(), pool.end(), std::back_inserter(chosen), 100, rng);
    for (const auto& w : chosen) {
        std::string why;
        c.expect(w.recompute(&why), why + " from " + w.source);
    }
    c.note(std::to_string(chosen.size()) + " of " + std::to_string(pool.size()) + " witnesses recomputed");
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string binary = argc > 1 ? argv[1] : "";
    int failed = 0;
    auto report = [&](int id, const char* title, const Criterion& c) {
        std::cout << (c.passed() ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  (" << c.summary()
                  << ")\n";
        if (!c.passed()) ++failed;
    };
    const Criterion c1 = criterion_1();
    report(1, "example end to end", c1);
    report(2, "example psi is not an altering function", criterion_2(c1.passed()));
    report(3, "altering-pair reduction matches Banach", criterion_3());
    report(4, "Banach family and a-priori bound", criterion_4());
    report(5, "sound negatives", criterion_5());
    report(6, "byte-identical JSON", criterion_6(binary));
    report(7, "witness recomputation", criterion_7());
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
