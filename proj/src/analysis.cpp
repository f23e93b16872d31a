#include "ren/analysis.hpp"

#include "ren/parallel.hpp"
#include "ren/random.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <climits>
#include <ostream>

namespace ren {

namespace {

std::uint64_t xor_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    if (a.size() != b.size()) throw contract_violation("grids differ in size");
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i]));
    return n;
}

struct Box {
    int top = INT_MAX, left = INT_MAX, bottom = INT_MIN, right = INT_MIN;
};

Box live_box(const Grid2D& g) {
    Box b;
    for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c) {
            if (!g.get(r, c)) continue;
            b.top = std::min(b.top, r);
            b.bottom = std::max(b.bottom, r);
            b.left = std::min(b.left, c);
            b.right = std::max(b.right, c);
        }
    }
    return b;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::uint64_t hamming_distance(const Grid1D& a, const Grid1D& b) { return xor_popcount(a.words(), b.words()); }
std::uint64_t hamming_distance(const Grid2D& a, const Grid2D& b) { return xor_popcount(a.words(), b.words()); }

bool sustains_activity(const std::vector<ActivityRecord>& series, double threshold, double tail_fraction) {
    if (series.empty()) return false;
    const auto n = series.size();
    const auto tail = std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(n) * tail_fraction));
    return std::all_of(series.end() - static_cast<std::ptrdiff_t>(tail), series.end(),
                       [&](const ActivityRecord& r) { return r.change_rate > threshold; });
}

// ---- classification ----

std::string PatternClass::to_string() const {
    switch (kind) {
        case Kind::still_life: return "still_life";
        case Kind::oscillator: return "oscillator period=" + std::to_string(period);
        case Kind::spaceship:
            return "spaceship period=" + std::to_string(period) + " dx=" + std::to_string(dx) +
                   " dy=" + std::to_string(dy);
        case Kind::growing: return "growing";
        case Kind::unresolved: break;
    }
    return "unresolved";
}

int minimum_pad(const Pattern& pattern, int radius, int max_period) {
    return radius * max_period + std::max(pattern.width(), pattern.height());
}

PatternClass classify_pattern(const Pattern& pattern, const ExtendedRule& rule, int max_period, int pad) {
    if (rule.is_eca()) throw contract_violation("classify_pattern needs a Life-like rule");
    if (max_period < 1) throw contract_violation("max_period must be >= 1");
    const int min_pad = minimum_pad(pattern, rule.radius, max_period);
    if (pad < 0) pad = min_pad;
    if (pad < min_pad) {
        throw contract_violation("pad " + std::to_string(pad) + " below the required " + std::to_string(min_pad));
    }
    const Pattern start = Pattern::from_grid(pattern.to_grid(0));
    if (start.empty()) return {PatternClass::Kind::still_life, 1, 0, 0};

    Grid2D grid = pattern.to_grid(pad, Boundary::fixed_zero);
    const Box origin = live_box(grid);
    const std::uint64_t initial_count = grid.live_count();
    std::uint64_t peak = initial_count;
    const LifeDynamics step{rule.life(), rule.radius, std::nullopt, {}};
    const int halo = rule.radius;

    for (int t = 1; t <= max_period; ++t) {
        grid = step(grid);
        const std::uint64_t count = grid.live_count();
        peak = std::max(peak, count);
        if (count == 0) continue;
        const Box box = live_box(grid);
        if (box.top < halo || box.left < halo || box.bottom >= grid.height() - halo ||
            box.right >= grid.width() - halo) {
            throw contract_violation("pattern reached the boundary halo; increase pad");
        }
        if (count != initial_count || !(Pattern::from_grid(grid) == start)) continue;
        const int dx = box.left - origin.left;
        const int dy = box.top - origin.top;
        if (dx == 0 && dy == 0) {
            return t == 1 ? PatternClass{PatternClass::Kind::still_life, 1, 0, 0}
                          : PatternClass{PatternClass::Kind::oscillator, t, 0, 0};
        }
        return {PatternClass::Kind::spaceship, t, dx, dy};
    }
    if (peak > kGrowthFactor * initial_count) return {PatternClass::Kind::growing, 0, 0, 0};
    return {};
}

// ---- experiments ----

std::uint64_t soup_seed(std::uint64_t base_seed, int radius, int index) {
    return derive_seed(base_seed, {static_cast<std::uint64_t>(radius), static_cast<std::uint64_t>(index)});
}

TransientReport transient_experiment(const TransientExperiment& experiment) {
    if (experiment.seeds < 1) throw contract_violation("n_seeds must be >= 1");
    if (experiment.radii.empty()) throw contract_violation("radius list is empty");
    const bool eca = std::holds_alternative<EcaRule>(experiment.sequence.base);
    const int height = eca ? 1 : experiment.height;
    const std::string code = base_code(experiment.sequence.base);
    if (!eca && std::get<LifeRule>(experiment.sequence.base).births_on(0)) {
        throw unsupported_rule("B0 rules are not supported: " + code);
    }

    TransientReport report;
    const std::size_t per_radius = static_cast<std::size_t>(experiment.seeds);
    report.records.resize(experiment.radii.size() * per_radius);
    for (std::size_t ri = 0; ri < experiment.radii.size(); ++ri) {
        for (std::size_t s = 0; s < per_radius; ++s) {
            auto& rec = report.records[ri * per_radius + s];
            rec.rule = code;
            rec.radius = experiment.radii[ri];
            rec.width = experiment.width;
            rec.height = height;
            rec.density = experiment.density;
            rec.seed = soup_seed(experiment.base_seed, rec.radius, static_cast<int>(s));
        }
    }

    const RestOptions rest{experiment.max_steps};
    parallel_for(report.records.size(), experiment.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto& rec = report.records[i];
            if (eca) {
                const EcaDynamics step{std::get<EcaRule>(experiment.sequence.base), rec.radius, std::nullopt, {}};
                rec.result = run_until_rest(random_soup(rec.width, rec.density, rec.seed, experiment.boundary), step, rest);
            } else {
                const LifeDynamics step{std::get<LifeRule>(experiment.sequence.base), rec.radius, std::nullopt, {}};
                rec.result = run_until_rest(
                    random_soup(rec.width, rec.height, rec.density, rec.seed, experiment.boundary), step, rest);
            }
        }
    });

    for (std::size_t ri = 0; ri < experiment.radii.size(); ++ri) {
        RadiusSummary sum;
        sum.radius = experiment.radii[ri];
        std::vector<std::int64_t> transients;
        for (std::size_t s = 0; s < per_radius; ++s) {
            const auto& rec = report.records[ri * per_radius + s];
            ++sum.runs;
            if (rec.result.timeout) {
                ++sum.timeouts;
            } else {
                transients.push_back(rec.result.transient);
            }
        }
        if (!transients.empty()) {
            double total = 0;
            for (auto t : transients) total += static_cast<double>(t);
            sum.mean_transient = total / static_cast<double>(transients.size());
            std::sort(transients.begin(), transients.end());
            const std::size_t n = transients.size();
            sum.median_transient = n % 2 ? static_cast<double>(transients[n / 2])
                                         : 0.5 * static_cast<double>(transients[n / 2 - 1] + transients[n / 2]);
        }
        report.summaries.push_back(sum);
    }
    return report;
}

void write_transient_csv(std::ostream& out, const std::vector<TransientRecord>& records) {
    out << "rule,R,width,height,density,seed,transient,period,timeout\n";
    for (const auto& r : records) {
        out << r.rule << ',' << r.radius << ',' << r.width << ',' << r.height << ',' << format_double(r.density)
            << ',' << r.seed << ',';
        if (r.result.timeout) {
            out << ",,1\n";
        } else {
            out << r.result.transient << ',' << r.result.period << ",0\n";
        }
    }
}

void write_transient_summary(std::ostream& out, const std::vector<RadiusSummary>& summaries) {
    for (const auto& s : summaries) {
        out << "R=" << s.radius << " runs=" << s.runs << " timeouts=" << s.timeouts
            << " mean_transient=" << format_double(s.mean_transient)
            << " median_transient=" << format_double(s.median_transient) << '\n';
    }
}

std::vector<ParityEntry> parity_report(EcaRule rule, const std::vector<int>& radii, int width, std::int64_t steps,
                                       int threads) {
    std::vector<ParityEntry> out(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const EcaDynamics step{rule, radii[i], std::nullopt, {}};
            out[i] = {radii[i], run_until_rest(single_seed(width, Boundary::periodic), step, RestOptions{steps})};
        }
    });
    return out;
}

bool alternates_with_parity(const std::vector<ParityEntry>& entries) {
    int found_odd = 0, found_even = 0, lost_odd = 0, lost_even = 0;
    for (const auto& e : entries) {
        const bool odd = e.radius % 2 != 0;
        const bool found = !e.result.timeout;
        (found ? (odd ? found_odd : found_even) : (odd ? lost_odd : lost_even)) += 1;
    }
    const bool odd_cycles = found_odd > 0 && lost_odd == 0 && lost_even > 0 && found_even == 0;
    const bool even_cycles = found_even > 0 && lost_even == 0 && lost_odd > 0 && found_odd == 0;
    return odd_cycles || even_cycles;
}

}  // namespace ren
