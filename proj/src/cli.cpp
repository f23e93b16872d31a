#include "ren/cli.hpp"

#include "ren/analysis.hpp"
#include "ren/compiler.hpp"
#include "ren/engine.hpp"
#include "ren/errors.hpp"
#include "ren/pattern_io.hpp"
#include "ren/random.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ren::cli {

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Role tags for subordinate seed streams.
constexpr std::uint64_t kSoupTag = 0x736f7570;   // "soup"
constexpr std::uint64_t kFieldTag = 0x6669656c;  // "fiel"

struct Dims {
    int width = 0;
    int height = 0;
};

Dims parse_dims(const std::string& text) {
    const auto x = text.find_first_of("xX");
    try {
        if (x == std::string::npos) throw std::invalid_argument("");
        std::size_t used = 0;
        Dims d{std::stoi(text.substr(0, x), &used), 0};
        if (used != x) throw std::invalid_argument("");
        d.height = std::stoi(text.substr(x + 1), &used);
        if (used != text.size() - x - 1 || d.width < 1 || d.height < 1) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw usage_error("--dims must look like 64x64, got '" + text + "'");
    }
}

// "1,2,3", "1-6" or mixtures such as "1-3,8".
std::vector<int> parse_radii(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    try {
        while (std::getline(ss, part, ',')) {
            const auto dash = part.find('-');
            std::size_t used = 0;
            if (dash == std::string::npos) {
                out.push_back(std::stoi(part, &used));
                if (used != part.size()) throw std::invalid_argument("");
            } else {
                const int a = std::stoi(part.substr(0, dash)), b = std::stoi(part.substr(dash + 1));
                for (int r = a; r <= b; ++r) out.push_back(r);
            }
        }
    } catch (const std::exception&) {
        throw usage_error("bad radius list '" + text + "'");
    }
    if (out.empty()) throw usage_error("empty radius list");
    for (int r : out)
        if (r < 1) throw usage_error("radii must be >= 1");
    return out;
}

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const parse_error& e) {
        throw usage_error(e.what());
    } catch (const range_error& e) {
        throw usage_error(e.what());
    }
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "out.pbm", 12 -> "out_000012.pbm"
std::string frame_path(const std::string& path, std::int64_t index) {
    const std::filesystem::path p(path);
    char buf[32];
    std::snprintf(buf, sizeof buf, "_%06lld", static_cast<long long>(index));
    return (p.parent_path() / (p.stem().string() + buf + p.extension().string())).string();
}

PbmFormat parse_format(const std::string& s) {
    if (s == "p1" || s == "P1") return PbmFormat::plain;
    if (s == "p4" || s == "P4") return PbmFormat::raw;
    throw usage_error("--format must be p1 or p4");
}

// ---- init experiment ----

struct InitSpec {
    enum class Kind { single, soup, rle } kind = Kind::single;
    double density = 0.5;
    std::uint64_t seed = 0;
    std::string path;
};

InitSpec parse_init(const std::string& text) {
    InitSpec s;
    if (text == "single") return s;
    if (text.rfind("soup:", 0) == 0) {
        s.kind = InitSpec::Kind::soup;
        const auto rest = text.substr(5);
        const auto colon = rest.find(':');
        try {
            std::size_t used = 0;
            const std::string dens = rest.substr(0, colon);
            s.density = std::stod(dens, &used);
            if (used != dens.size()) throw std::invalid_argument("");
            if (colon != std::string::npos) s.seed = std::stoull(rest.substr(colon + 1));
        } catch (const std::exception&) {
            throw usage_error("--init soup needs soup:DENSITY[:SEED], got '" + text + "'");
        }
        if (!(s.density >= 0 && s.density <= 1)) throw usage_error("soup density must lie in [0, 1]");
        return s;
    }
    if (text.rfind("rle:", 0) == 0) {
        s.kind = InitSpec::Kind::rle;
        s.path = text.substr(4);
        return s;
    }
    throw usage_error("--init must be single, soup:DENSITY:SEED or rle:PATH");
}

// ---- subcommands ----

struct SimulateArgs {
    std::string rule, dims, init = "single", boundary = "periodic", out, format = "p4", rle_out;
    int width = 0;
    std::int64_t steps = 100;
    std::int64_t every = 0;
    int threads = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const ExtendedRule rule = as_usage([&] { return parse_extended_code(a.rule); });
    const Boundary boundary = as_usage([&] { return parse_boundary(a.boundary); });
    const InitSpec init = parse_init(a.init);
    const PbmFormat format = parse_format(a.format);
    if (a.steps < 0) throw usage_error("--steps must be >= 0");
    const StepOptions opts{a.threads};

    if (rule.is_eca()) {
        if (a.width < 1) throw usage_error("1-D rules need --width");
        if (init.kind == InitSpec::Kind::rle) throw usage_error("rle init needs a 2-D rule");
        Grid1D g = init.kind == InitSpec::Kind::single ? single_seed(a.width, boundary)
                                                       : random_soup(a.width, init.density, init.seed, boundary);
        std::vector<Grid1D> history{g};
        history.reserve(static_cast<std::size_t>(a.steps) + 1);
        for (std::int64_t t = 0; t < a.steps; ++t) history.push_back(step_eca_extended(history.back(), rule, opts));
        write_file(a.out, render_pbm(space_time(history), format));
        out << "wrote " << a.out << " (" << a.width << "x" << history.size() << ")\n";
        return kExitOk;
    }

    Grid2D g;
    if (init.kind == InitSpec::Kind::rle) {
        const RleDocument doc = as_usage([&] { return parse_rle(read_file(init.path)); });
        if (a.dims.empty()) {
            g = doc.pattern.to_grid(std::max(doc.pattern.width(), doc.pattern.height()), boundary);
        } else {
            const Dims d = parse_dims(a.dims);
            if (doc.pattern.width() > d.width || doc.pattern.height() > d.height) {
                throw usage_error("pattern does not fit in --dims");
            }
            g = Grid2D(d.width, d.height, boundary);
            const int r0 = (d.height - doc.pattern.height()) / 2, c0 = (d.width - doc.pattern.width()) / 2;
            for (const auto& c : doc.pattern.cells()) g.set(r0 + c.row, c0 + c.col, 1);
        }
    } else {
        if (a.dims.empty()) throw usage_error("2-D rules need --dims WxH");
        const Dims d = parse_dims(a.dims);
        if (init.kind == InitSpec::Kind::single) {
            g = Grid2D(d.width, d.height, boundary);
            g.set(d.height / 2, d.width / 2, 1);
        } else {
            g = random_soup(d.width, d.height, init.density, init.seed, boundary);
        }
    }
    for (std::int64_t t = 0; t < a.steps; ++t) {
        if (a.every > 0 && t % a.every == 0) write_file(frame_path(a.out, t), render_pbm(g, format));
        g = step_life_extended(g, rule, opts);
    }
    if (a.every > 0 && a.steps % a.every == 0) write_file(frame_path(a.out, a.steps), render_pbm(g, format));
    write_file(a.out, render_pbm(g, format));
    if (!a.rle_out.empty()) write_file(a.rle_out, emit_rle(Pattern::from_grid(g), rule) + "\n");
    out << "wrote " << a.out << " (" << g.width() << "x" << g.height() << ", " << g.live_count() << " live)\n";
    return kExitOk;
}

struct TransientArgs {
    std::string seq, radii, dims = "64x64", boundary = "periodic", out;
    int width = 0;
    double density = 0.5;
    int seeds = 50;
    std::int64_t max_steps = 20000;
    std::uint64_t seed = 0;
    int threads = 0;
};

int cmd_transient(const TransientArgs& a, std::ostream& out, std::ostream& err) {
    TransientExperiment experiment;
    experiment.sequence = as_usage([&] { return parse_sequence_code(a.seq); });
    experiment.radii = parse_radii(a.radii);
    experiment.boundary = as_usage([&] { return parse_boundary(a.boundary); });
    if (std::holds_alternative<EcaRule>(experiment.sequence.base)) {
        if (a.width < 1) throw usage_error("1-D sequences need --width");
        experiment.width = a.width;
        experiment.height = 1;
    } else {
        const Dims d = parse_dims(a.dims);
        experiment.width = d.width;
        experiment.height = d.height;
    }
    if (!(a.density >= 0 && a.density <= 1)) throw usage_error("--density must lie in [0, 1]");
    if (a.seeds < 1) throw usage_error("--seeds must be >= 1");
    if (a.max_steps < 1) throw usage_error("--max-steps must be >= 1");
    experiment.density = a.density;
    experiment.seeds = a.seeds;
    experiment.max_steps = a.max_steps;
    experiment.base_seed = a.seed;
    experiment.threads = a.threads;

    const TransientReport report = transient_experiment(experiment);
    std::ostringstream csv;
    write_transient_csv(csv, report.records);
    if (a.out.empty() || a.out == "-") {
        out << csv.str();
    } else {
        write_file(a.out, csv.str());
    }
    write_transient_summary(err, report.summaries);
    return kExitOk;
}

struct ParityArgs {
    std::string seq, radii = "1-6";
    int width = 400;
    std::int64_t steps = 2000;
    int threads = 0;
};

int cmd_parity(const ParityArgs& a, std::ostream& out) {
    const SequenceCode seq = as_usage([&] { return parse_sequence_code(a.seq); });
    if (!std::holds_alternative<EcaRule>(seq.base)) throw usage_error("parity reports need an ECA sequence");
    if (a.width < 1 || a.steps < 1) throw usage_error("--width and --steps must be >= 1");
    const auto entries = parity_report(std::get<EcaRule>(seq.base), parse_radii(a.radii), a.width, a.steps, a.threads);
    for (const auto& e : entries) {
        out << base_code(seq.base) << "R" << e.radius << ' ';
        if (e.result.timeout) {
            out << "no_cycle\n";
        } else {
            out << "cycle transient=" << e.result.transient << " period=" << e.result.period << '\n';
        }
    }
    out << "parity_alternation=" << (alternates_with_parity(entries) ? "yes" : "no") << '\n';
    return kExitOk;
}

struct ClassifyArgs {
    std::string rule, pattern;
    int max_period = 64;
    int pad = -1;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
    const RleDocument doc = as_usage([&] { return parse_rle(read_file(a.pattern)); });
    std::optional<ExtendedRule> rule = doc.rule;
    if (!a.rule.empty()) rule = as_usage([&] { return parse_extended_code(a.rule); });
    if (!rule) rule = parse_extended_code("B3S23");
    if (rule->is_eca()) throw usage_error("classify needs a Life-like rule");
    if (a.max_period < 1) throw usage_error("--max-period must be >= 1");
    out << classify_pattern(doc.pattern, *rule, a.max_period, a.pad).to_string() << '\n';
    return kExitOk;
}

struct MixArgs {
    std::string rule, dims = "256x128", out, boundary = "periodic";
    int left_r = 1, right_r = 2;
    double density = -1;
    std::int64_t steps = 500;
    std::uint64_t seed = 1;
    std::int64_t every = 0;
    int threads = 0;
};

int cmd_mix(const MixArgs& a, std::ostream& out) {
    const ExtendedRule parsed = as_usage([&] { return parse_extended_code(a.rule); });
    if (parsed.is_eca()) throw usage_error("mix needs a Life-like rule");
    const LifeRule rule = parsed.life();
    const Dims d = parse_dims(a.dims);
    const Boundary boundary = as_usage([&] { return parse_boundary(a.boundary); });
    if (a.left_r < 1 || a.right_r < 1) throw usage_error("--left-r and --right-r must be >= 1");
    if (d.width < 2) throw usage_error("mix needs width >= 2");
    if (a.steps < 0) throw usage_error("--steps must be >= 0");
    double density = a.density;
    if (density < 0) density = rule == LifeRule(1u << 4, 0b11110) ? 0.2 : 0.5;
    if (density > 1) throw usage_error("--density must lie in [0, 1]");

    const RadiusField field =
        build_gradient_radius_field(d.width, d.height, a.left_r, a.right_r, derive_seed(a.seed, {kFieldTag}));
    Grid2D g = random_soup(d.width, d.height, density, derive_seed(a.seed, {kSoupTag}), boundary);
    g.set_radius_field(field);
    const StepOptions opts{a.threads};
    for (std::int64_t t = 0; t < a.steps; ++t) {
        if (a.every > 0 && t % a.every == 0) write_file(frame_path(a.out, t), render_ppm_radius(g, field));
        g = step_life_extended(g, rule, field, opts);
    }
    if (a.every > 0 && a.steps % a.every == 0) write_file(frame_path(a.out, a.steps), render_ppm_radius(g, field));
    write_file(a.out, render_ppm_radius(g, field));
    out << "wrote " << a.out << " (" << rule.code() << " R" << a.left_r << "->R" << a.right_r << ", density "
        << density << ", " << g.live_count() << " live)\n";
    return kExitOk;
}

struct RulesArgs {
    bool classes = false;
    std::string show, expand;
};

int cmd_rules(const RulesArgs& a, std::ostream& out) {
    if (a.classes) {
        for (const auto& c : eca_equivalence_classes()) {
            out << '#' << c.representative << ':';
            for (int m : c.members) out << " #" << m;
            out << '\n';
        }
    }
    if (!a.show.empty()) {
        const EcaRule r = as_usage([&] { return parse_eca_code(a.show); });
        for (int k = 7; k >= 0; --k) out << ((k >> 2) & 1) << ((k >> 1) & 1) << (k & 1) << " -> " << r.apply(k >> 2, (k >> 1) & 1, k & 1) << '\n';
        out << "mirror " << transform_eca(r, EcaTransform::mirror).code() << '\n';
        out << "complement " << transform_eca(r, EcaTransform::complement).code() << '\n';
        out << "mirror_complement " << transform_eca(r, EcaTransform::mirror_complement).code() << '\n';
    }
    if (!a.expand.empty()) {
        const SequenceCode seq = as_usage([&] { return parse_sequence_code(a.expand); });
        for (const auto& r : seq.expand()) out << r.code() << '\n';
    }
    if (!a.classes && a.show.empty() && a.expand.empty()) throw usage_error("rules needs --classes, --show or --expand");
    return kExitOk;
}

struct CompileArgs {
    std::string rule, out, check;
    int radius = 0;
    std::vector<std::string> equiv;
    int threads = 0;
};

int cmd_compile(const CompileArgs& a, std::ostream& out) {
    if (!a.check.empty()) {
        const WideRuleTable t = read_table_file(a.check);
        out << "#" << t.base_number() << "R" << t.radius() << " windows=" << t.window_count()
            << " digest=" << table_fingerprint(t).hex() << '\n';
        return kExitOk;
    }
    if (!a.equiv.empty()) {
        const ExtendedRule x = as_usage([&] { return parse_extended_code(a.equiv.at(0)); });
        const ExtendedRule y = as_usage([&] { return parse_extended_code(a.equiv.at(1)); });
        if (!x.is_eca() || !y.is_eca()) throw usage_error("--equiv compares ECA codes");
        const bool same = tables_equivalent(compile_extended_eca(x.eca(), x.radius, a.threads),
                                            compile_extended_eca(y.eca(), y.radius, a.threads));
        out << x.code() << (same ? " == " : " != ") << y.code() << '\n';
        return kExitOk;
    }
    if (a.rule.empty() || a.out.empty()) throw usage_error("compile needs --rule and --out");
    const ExtendedRule rule = as_usage([&] { return parse_extended_code(a.rule); });
    if (!rule.is_eca()) throw usage_error("only ECA rules compile to tables");
    const int radius = a.radius > 0 ? a.radius : rule.radius;
    const WideRuleTable t = compile_extended_eca(rule.eca(), radius, a.threads);
    write_table_file(a.out, t);
    out << "wrote " << a.out << " (" << rule.eca().code() << "R" << radius << ", " << t.window_count()
        << " windows, digest " << table_fingerprint(t).hex() << ")\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cellular automata with recursive estimation of neighbors", "ren"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Evolve a 1-D or 2-D extended rule and render PBM output");
    simulate->add_option("--rule", sim.rule, "Rule code, e.g. '#110R2' or B3S23R1")->required();
    simulate->add_option("--width", sim.width, "Lattice width (1-D rules)");
    simulate->add_option("--dims", sim.dims, "Lattice size WxH (2-D rules)");
    simulate->add_option("--steps", sim.steps, "Steps to run")->capture_default_str();
    simulate->add_option("--init", sim.init, "single | soup:DENSITY:SEED | rle:PATH")->capture_default_str();
    simulate->add_option("--boundary", sim.boundary, "periodic | fixed_zero")->capture_default_str();
    simulate->add_option("--out", sim.out, "Output PBM path")->required();
    simulate->add_option("--format", sim.format, "p1 | p4")->capture_default_str();
    simulate->add_option("--every", sim.every, "2-D: also write a frame every N steps");
    simulate->add_option("--rle-out", sim.rle_out, "2-D: also write the final state as RLE");
    simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")->capture_default_str();

    TransientArgs tr;
    auto* transient = app.add_subcommand("transient", "Transient-time experiment over soups; CSV output");
    transient->add_option("--seq", tr.seq, "Sequence code, e.g. '[B3S23]'")->required();
    transient->add_option("--radii", tr.radii, "Radius list, e.g. 1,2,3 or 1-6")->required();
    transient->add_option("--dims", tr.dims, "Lattice size WxH (2-D)")->capture_default_str();
    transient->add_option("--width", tr.width, "Lattice width (1-D)");
    transient->add_option("--density", tr.density, "Initial live-cell probability")->capture_default_str();
    transient->add_option("--seeds", tr.seeds, "Soups per radius")->capture_default_str();
    transient->add_option("--max-steps", tr.max_steps, "Step budget per run")->capture_default_str();
    transient->add_option("--seed", tr.seed, "Base seed")->capture_default_str();
    transient->add_option("--boundary", tr.boundary, "periodic | fixed_zero")->capture_default_str();
    transient->add_option("--out", tr.out, "CSV path (default stdout)");
    transient->add_option("--threads", tr.threads, "Worker threads (0 = all cores)")->capture_default_str();

    ParityArgs par;
    auto* parity = app.add_subcommand("parity", "Cycle found / not found per R from a single live cell");
    parity->add_option("--seq", par.seq, "ECA sequence code, e.g. '[#22]'")->required();
    parity->add_option("--radii", par.radii, "Radius list")->capture_default_str();
    parity->add_option("--width", par.width, "Torus width")->capture_default_str();
    parity->add_option("--steps", par.steps, "Step budget")->capture_default_str();
    parity->add_option("--threads", par.threads, "Worker threads (0 = all cores)")->capture_default_str();

    ClassifyArgs cls;
    auto* classify = app.add_subcommand("classify", "Classify an RLE pattern as still life, oscillator, spaceship, ...");
    classify->add_option("--rule", cls.rule, "Rule code (default: RLE header, else B3S23)");
    classify->add_option("--pattern", cls.pattern, "RLE file")->required();
    classify->add_option("--max-period", cls.max_period, "Longest period probed")->capture_default_str();
    classify->add_option("--pad", cls.pad, "Zero margin around the pattern (default: minimum)");

    MixArgs mx;
    auto* mix = app.add_subcommand("mix", "Heterogeneous lattice with a left-to-right radius gradient; PPM output");
    mix->add_option("--rule", mx.rule, "Base Life-like rule, e.g. B3S23")->required();
    mix->add_option("--left-r", mx.left_r, "Radius at the left edge")->capture_default_str();
    mix->add_option("--right-r", mx.right_r, "Radius at the right edge")->capture_default_str();
    mix->add_option("--dims", mx.dims, "Lattice size WxH")->capture_default_str();
    mix->add_option("--density", mx.density, "Initial live-cell probability (default 0.2 for B4S1234, else 0.5)");
    mix->add_option("--steps", mx.steps, "Steps to run")->capture_default_str();
    mix->add_option("--seed", mx.seed, "Seed for soup and radius field")->capture_default_str();
    mix->add_option("--boundary", mx.boundary, "periodic | fixed_zero")->capture_default_str();
    mix->add_option("--out", mx.out, "Output PPM path")->required();
    mix->add_option("--every", mx.every, "Also write a frame every N steps");
    mix->add_option("--threads", mx.threads, "Worker threads (0 = all cores)")->capture_default_str();

    RulesArgs ru;
    auto* rules = app.add_subcommand("rules", "ECA rule-space utilities");
    rules->add_flag("--classes", ru.classes, "Print the mirror/complement equivalence classes");
    rules->add_option("--show", ru.show, "Print the truth table and transforms of an ECA rule");
    rules->add_option("--expand", ru.expand, "Expand a sequence code into its member rules");

    CompileArgs co;
    auto* compile = app.add_subcommand("compile", "Flatten an extended ECA rule into a RENW lookup table");
    compile->add_option("--rule", co.rule, "ECA code, optionally with R suffix");
    compile->add_option("--radius", co.radius, "Radius (overrides the R suffix)");
    compile->add_option("--out", co.out, "Output table path");
    compile->add_option("--check", co.check, "Validate and describe an existing table file");
    compile->add_option("--equiv", co.equiv, "Compare two extended codes behaviorally")->expected(2);
    compile->add_option("--threads", co.threads, "Worker threads (0 = all cores)")->capture_default_str();

    std::vector<const char*> argv{"ren"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim, out);
        if (transient->parsed()) return cmd_transient(tr, out, err);
        if (parity->parsed()) return cmd_parity(par, out);
        if (classify->parsed()) return cmd_classify(cls, out);
        if (mix->parsed()) return cmd_mix(mx, out);
        if (rules->parsed()) return cmd_rules(ru, out);
        if (compile->parsed()) return cmd_compile(co, out);
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace ren::cli
