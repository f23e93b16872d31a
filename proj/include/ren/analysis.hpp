#pragma once

#include "ren/engine.hpp"
#include "ren/errors.hpp"
#include "ren/pattern.hpp"
#include "ren/rule.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ren {

// ---- steppers ---------------------------------------------------------------

// One step of an extended ECA; heterogeneous when `field` is set.
struct EcaDynamics {
    EcaRule rule;
    int radius = 1;
    std::optional<RadiusField> field;
    StepOptions options;

    Grid1D operator()(const Grid1D& g) const {
        return field ? step_eca_extended(g, rule, *field, options) : step_eca_extended(g, rule, radius, options);
    }
};

// One step of an extended Life-like rule; heterogeneous when `field` is set.
struct LifeDynamics {
    LifeRule rule;
    int radius = 1;
    std::optional<RadiusField> field;
    StepOptions options;

    Grid2D operator()(const Grid2D& g) const {
        return field ? step_life_extended(g, rule, *field, options) : step_life_extended(g, rule, radius, options);
    }
};

// ---- recurrence detection ---------------------------------------------------

// Either (transient, period) with state(transient + period) == state(transient),
// or a timeout when no repeat occurs by step max_steps.
struct RecurrenceResult {
    bool timeout = false;
    std::int64_t transient = 0;
    std::int64_t period = 0;
    bool used_brent = false;
};

struct RestOptions {
    std::int64_t max_steps = 20000;
    // Digests held before switching to Brent's algorithm.
    std::size_t max_states_remembered = std::size_t{1} << 20;
};

template <class Grid, class Step>
Grid advance(Grid g, Step&& step, std::int64_t steps) {
    for (std::int64_t t = 0; t < steps; ++t) g = step(g);
    return g;
}

// Brent's cycle finding over the orbit, holding two states. Timeout when the
// cycle is not closed by step max_steps.
template <class Grid, class Step>
RecurrenceResult run_until_rest_brent(const Grid& initial, Step&& step, std::int64_t max_steps) {
    RecurrenceResult res;
    res.used_brent = true;
    // transient + period <= max_steps implies the power search closes within this many steps.
    const std::int64_t search_budget = 4 * max_steps + 4;
    std::int64_t power = 1, period = 1, spent = 1;
    Grid tortoise = initial;
    Grid hare = step(initial);
    while (!(tortoise == hare)) {
        if (spent >= search_budget) {
            res.timeout = true;
            return res;
        }
        if (power == period) {
            tortoise = hare;
            power *= 2;
            period = 0;
        }
        hare = step(hare);
        ++period;
        ++spent;
    }
    if (period > max_steps) {
        res.timeout = true;
        return res;
    }
    tortoise = initial;
    hare = advance(initial, step, period);
    std::int64_t transient = 0;
    while (!(tortoise == hare)) {
        if (transient + period >= max_steps) {
            res.timeout = true;
            return res;
        }
        tortoise = step(tortoise);
        hare = step(hare);
        ++transient;
    }
    res.transient = transient;
    res.period = period;
    return res;
}

// Steps the grid and digests every state; the first repeated digest at t0 < t1
// (verified by exact re-simulation) gives transient t0 and period t1 - t0.
// Falls back to Brent's algorithm once max_states_remembered digests are held.
template <class Grid, class Step>
RecurrenceResult run_until_rest(const Grid& initial, Step&& step, const RestOptions& opts) {
    if (opts.max_steps < 1) throw contract_violation("max_steps must be >= 1");
    std::unordered_map<Digest128, std::int64_t, Digest128Hash> seen;
    Grid state = initial;
    seen.emplace(state.digest(), 0);
    for (std::int64_t t = 1; t <= opts.max_steps; ++t) {
        state = step(state);
        const Digest128 d = state.digest();
        if (auto it = seen.find(d); it != seen.end()) {
            if (advance(initial, step, it->second) == state) {
                return {false, it->second, t - it->second, false};
            }
            continue;  // digest collision: not a repeat
        }
        if (seen.size() >= opts.max_states_remembered) return run_until_rest_brent(initial, step, opts.max_steps);
        seen.emplace(d, t);
    }
    return {true, 0, 0, false};
}

// ---- activity ---------------------------------------------------------------

struct ActivityRecord {
    std::int64_t step = 0;
    double live_density = 0;
    // Hamming distance to the previous state over the cell count.
    double change_rate = 0;
};

std::uint64_t hamming_distance(const Grid1D& a, const Grid1D& b);
std::uint64_t hamming_distance(const Grid2D& a, const Grid2D& b);

template <class Grid, class Step>
std::vector<ActivityRecord> activity_series(const Grid& initial, Step&& step, std::int64_t steps) {
    if (steps < 1) throw contract_violation("steps must be >= 1");
    std::vector<ActivityRecord> out;
    out.reserve(static_cast<std::size_t>(steps));
    Grid prev = initial;
    double cells = static_cast<double>(initial.width());
    if constexpr (requires { initial.height(); }) cells *= initial.height();
    for (std::int64_t t = 1; t <= steps; ++t) {
        Grid next = step(prev);
        out.push_back({t, static_cast<double>(next.live_count()) / cells,
                       static_cast<double>(hamming_distance(prev, next)) / cells});
        prev = std::move(next);
    }
    return out;
}

// Threshold for calling a run "random": change_rate strictly above this...
inline constexpr double kRandomChangeRate = 0.01;
// ...for every step in this trailing fraction of the budget.
inline constexpr double kRandomTailFraction = 0.25;

bool sustains_activity(const std::vector<ActivityRecord>& series, double threshold = kRandomChangeRate,
                       double tail_fraction = kRandomTailFraction);

// ---- pattern classification ---------------------------------------------------

struct PatternClass {
    enum class Kind { still_life, oscillator, spaceship, growing, unresolved };
    Kind kind = Kind::unresolved;
    int period = 0;
    int dx = 0;  // columns moved per period (positive = right)
    int dy = 0;  // rows moved per period (positive = down)

    // "still_life", "oscillator period=2", "spaceship period=4 dx=1 dy=1", "growing", "unresolved".
    std::string to_string() const;

    friend bool operator==(const PatternClass&, const PatternClass&) = default;
};

// Live count above this multiple of the initial count means growing.
inline constexpr int kGrowthFactor = 4;

// Smallest pad satisfying R * max_period + max(width, height).
int minimum_pad(const Pattern& pattern, int radius, int max_period);

// Simulates the pattern on a zero-bounded grid padded by `pad` (minimum_pad when
// pad < 0). Throws contract_violation for a pad below the minimum or when live
// cells reach the R-wide halo at the grid edge.
PatternClass classify_pattern(const Pattern& pattern, const ExtendedRule& rule, int max_period, int pad = -1);

// ---- batch experiments --------------------------------------------------------

struct TransientRecord {
    std::string rule;  // base rule code
    int radius = 1;
    int width = 0;
    int height = 0;
    double density = 0;
    std::uint64_t seed = 0;  // soup seed, replayable with random_soup
    RecurrenceResult result;
};

struct RadiusSummary {
    int radius = 1;
    int runs = 0;
    int timeouts = 0;
    // Over runs that found a cycle; zero when all timed out.
    double mean_transient = 0;
    double median_transient = 0;
};

struct TransientExperiment {
    SequenceCode sequence;
    std::vector<int> radii;
    int width = 64;
    int height = 64;  // ignored (1) for ECA sequences
    double density = 0.5;
    int seeds = 50;
    std::int64_t max_steps = 20000;
    std::uint64_t base_seed = 0;
    Boundary boundary = Boundary::periodic;
    int threads = 1;
};

struct TransientReport {
    std::vector<TransientRecord> records;  // ordered by (radius list position, seed index)
    std::vector<RadiusSummary> summaries;  // one per radius, same order
};

// Soup seed for (base, R, index): splitmix64 chain over the three values.
std::uint64_t soup_seed(std::uint64_t base_seed, int radius, int index);

TransientReport transient_experiment(const TransientExperiment& experiment);

// Exact header: rule,R,width,height,density,seed,transient,period,timeout
void write_transient_csv(std::ostream& out, const std::vector<TransientRecord>& records);
// Per-radius summary lines for humans.
void write_transient_summary(std::ostream& out, const std::vector<RadiusSummary>& summaries);

struct ParityEntry {
    int radius = 1;
    RecurrenceResult result;
};

// Single live cell on a width-W torus, run_until_rest with `steps` as the budget, per radius.
std::vector<ParityEntry> parity_report(EcaRule rule, const std::vector<int>& radii, int width, std::int64_t steps,
                                       int threads = 1);

// True when the radii split into two nonempty groups (cycle found / not found)
// and membership is decided by the parity of R.
bool alternates_with_parity(const std::vector<ParityEntry>& entries);

}  // namespace ren
