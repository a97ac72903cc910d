#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "merosub/lashin.hpp"
#include "merosub/report.hpp"
#include "merosub/series_io.hpp"
#include "merosub/theorem_forms.hpp"
#include "merosub/verifier.hpp"

namespace {

using namespace merosub;

struct CommonOpts {
    std::string theorem;
    std::string preset;
    std::uint64_t seed = 0;
    int trials = 200;
    std::vector<double> grid_radii;
    int grid_n = 1024;
    double amplitude = 0.1;
    int order = 0; // 0 means: use the preset's calibrated order
    std::string mode = "convex";
    bool mutate = false;
    std::string out;
    std::vector<std::string> overrides;
};

Preset apply_overrides(Preset p, const std::vector<std::string>& overrides) {
    for (const std::string& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw UsageError("--set expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const double v = std::stod(kv.substr(eq + 1));
        if (key == "alpha") p.params.lashin = LashinParams(v, p.params.lashin.beta);
        else if (key == "beta") p.params.lashin = LashinParams(p.params.lashin.alpha, v);
        else if (key == "lambda") p.params.lambda = v;
        else if (key == "mu") p.params.mu = v;
        else if (key == "gamma") p.params.gamma = v;
        else if (key == "eta") p.params.eta = v;
        else if (key == "delta") p.params.delta = v;
        else if (key == "m") p.params.m = v;
        else if (key == "ell") p.params.ell = v;
        else if (key == "sigma") p.params.sigma = v;
        else if (key == "q.tau") p.q.tau = v;
        else if (key == "q.rho") p.q.rho = v;
        else if (key == "q.A") p.q.A = v;
        else if (key == "q.B") p.q.B = v;
        else if (key == "q1.tau" && p.q1) p.q1->tau = v;
        else if (key == "q1.rho" && p.q1) p.q1->rho = v;
        else if (key == "q1.A" && p.q1) p.q1->A = v;
        else if (key == "q1.B" && p.q1) p.q1->B = v;
        else throw UsageError("--set: unknown key '" + key + "'");
    }
    return p;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_trials) {
    cmd->add_option("--theorem", o.theorem, "theorem id (3.1, 3.5, 3.8, 4.1, 4.3, 5.1, 5.2, 2.6)")
        ->required();
    cmd->add_option("--preset", o.preset, "named preset")->required();
    cmd->add_option("--seed", o.seed, "base seed");
    if (with_trials)
        cmd->add_option("--trials", o.trials, "trial count")->check(CLI::PositiveNumber);
    cmd->add_option("--grid-radii", o.grid_radii, "test circle radii, ascending in (0, 0.95]");
    cmd->add_option("--grid-n", o.grid_n, "angular samples per circle");
    cmd->add_option("--amplitude", o.amplitude, "tail amplitude of generated functions");
    cmd->add_option("--order", o.order, "series truncation order (default: preset order)");
    cmd->add_option("--mode", o.mode, "base expression mode")
        ->check(CLI::IsMember({"as-written", "convex"}));
    cmd->add_flag("--mutate-conclusion", o.mutate,
                  "negative control: shrink the conclusion dominant toward 1");
    cmd->add_option("--out", o.out, "write the report here instead of stdout");
    cmd->add_option("--set", o.overrides, "override a preset parameter, key=value")
        ->group("");
}

DiskGrid make_grid(const CommonOpts& o) {
    DiskGrid grid;
    if (!o.grid_radii.empty())
        grid.radii = o.grid_radii;
    grid.angular_count = o.grid_n;
    grid.validate();
    return grid;
}

BaseMode make_mode(const CommonOpts& o) {
    return o.mode == "as-written" ? BaseMode::AsWritten : BaseMode::ConvexCombination;
}

Preset resolve_preset(const CommonOpts& o) {
    const Preset* p = find_preset(o.preset);
    if (!p)
        throw UsageError("unknown preset '" + o.preset + "'");
    if (p->theorem != o.theorem)
        throw UsageError("preset '" + o.preset + "' belongs to theorem " + p->theorem +
                         ", not " + o.theorem);
    return apply_overrides(*p, o.overrides);
}

void write_doc(const CommonOpts& o, const json& doc) {
    if (o.out.empty())
        std::cout << doc.dump(2) << '\n';
    else
        emit_report(o.out, doc);
}

std::string echo_command(const std::string& sub, const CommonOpts& o) {
    std::string cmd = sub + " --theorem " + o.theorem + " --preset " + o.preset + " --seed " +
                      std::to_string(o.seed);
    if (sub == "fuzz")
        cmd += " --trials " + std::to_string(o.trials);
    cmd += " --grid-n " + std::to_string(o.grid_n) + " --amplitude " +
           std::to_string(o.amplitude) + " --order " + std::to_string(o.order) + " --mode " +
           o.mode;
    if (o.mutate)
        cmd += " --mutate-conclusion";
    return cmd;
}

int cmd_verify(const CommonOpts& raw) {
    const Preset preset = resolve_preset(raw);
    CommonOpts o = raw;
    if (o.order == 0)
        o.order = preset.order;
    const DiskGrid grid = make_grid(o);
    const BaseMode mode = make_mode(o);

    const std::uint64_t tseed = Rng::mix(o.seed, 0);
    const MeromorphicSeries f = random_sigma_function(tseed, o.order, o.amplitude);
    const AnalyticSeries q = q_family(preset.q, o.order);
    std::optional<AnalyticSeries> q1;
    if (preset.q1)
        q1 = q_family(*preset.q1, o.order);

    const auto start = std::chrono::steady_clock::now();
    const TrialReport trial = run_trial(preset.theorem, f, q, q1, preset.params, grid, mode,
                                        o.mutate, tseed, preset.printed_340);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json doc = make_report(echo_command("verify", o), preset.theorem, preset.name, grid, mode,
                           trial_json(trial));
    write_doc(o, doc);
    std::cerr << "verify " << preset.name << ": " << to_string(trial.classification) << " ("
              << wall << " s)\n";
    return trial.classification == Classification::Counterexample ? 1 : 0;
}

int cmd_fuzz(const CommonOpts& raw) {
    const Preset preset = resolve_preset(raw);
    CommonOpts o = raw;
    if (o.order == 0)
        o.order = preset.order;
    const DiskGrid grid = make_grid(o);

    FuzzOptions fopts;
    fopts.mutate_conclusion = o.mutate;
    fopts.amplitude = o.amplitude;
    fopts.order = o.order;
    fopts.mode = make_mode(o);

    const FuzzSummary sum = fuzz_theorem(preset, o.trials, o.seed, grid, fopts);
    json doc = make_report(echo_command("fuzz", o), preset.theorem, preset.name, grid,
                           fopts.mode, summary_json(sum));
    write_doc(o, doc);
    std::cerr << "fuzz " << preset.name << ": " << sum.trials << " trials, " << sum.confirming
              << " confirming, " << sum.vacuous << " vacuous, " << sum.inconclusive
              << " inconclusive, " << sum.counterexamples << " counterexamples ("
              << sum.wall_seconds << " s)\n";
    return sum.counterexamples > 0 ? 1 : 0;
}

int cmd_presets() {
    for (const Preset& p : preset_registry()) {
        std::cout << p.name << "  theorem " << p.theorem << "  q=" << to_string(p.q.kind);
        if (p.q1)
            std::cout << "  q1=" << to_string(p.q1->kind);
        if (!p.note.empty())
            std::cout << "  (" << p.note << ")";
        std::cout << '\n';
    }
    return 0;
}

struct OpEvalOpts {
    double alpha = 1.0;
    double beta = 1.0;
    std::string input;
    std::uint64_t seed = 0;
    int order = 16;
    double amplitude = 0.2;
    double radius = 0.5;
    int points = 16;
};

int cmd_op_eval(const OpEvalOpts& o) {
    const LashinParams prm(o.alpha, o.beta);
    MeromorphicSeries f = MeromorphicSeries::pole(o.order);
    if (!o.input.empty()) {
        std::ifstream in(o.input);
        if (!in)
            throw UsageError("cannot read '" + o.input + "'");
        SeriesLiteral lit = read_series(in);
        if (!std::holds_alternative<MeromorphicSeries>(lit))
            throw UsageError("operator evaluation needs a meromorphic literal");
        f = std::get<MeromorphicSeries>(std::move(lit));
    } else {
        f = random_sigma_function(o.seed, o.order, o.amplitude);
    }

    const MeromorphicSeries mapped = apply_lashin(f, prm);
    double max_resid = 0.0;
    for (const Complex& z : circle_points(o.radius, o.points)) {
        const Complex via_series = evaluate(mapped, z);
        const Complex via_integral = lashin_quadrature(f, prm, z);
        const double resid = std::abs(via_series - via_integral);
        max_resid = std::max(max_resid, resid);
        std::cout << "z=(" << z.real() << "," << z.imag() << ")  series=(" << via_series.real()
                  << "," << via_series.imag() << ")  integral=(" << via_integral.real() << ","
                  << via_integral.imag() << ")  resid=" << resid << '\n';
    }
    std::cout << "max residual " << max_resid << '\n';
    std::cout << "recurrence residual " << check_recurrence(f, prm) << '\n';
    return 0;
}

struct CurvesOpts {
    std::string preset;
    std::uint64_t seed = 0;
    double radius = 0.95;
    int samples = 512;
    int order = default_order;
    double amplitude = 0.1;
    std::string mode = "convex";
    std::string out;
};

int cmd_curves(const CurvesOpts& o) {
    const Preset* p = find_preset(o.preset);
    if (!p)
        throw UsageError("unknown preset '" + o.preset + "'");
    if (!(o.radius > 0.0) || o.radius > outer_radius)
        throw UsageError("curve radius must lie in (0, 0.95]");

    const MeromorphicSeries f = random_sigma_function(Rng::mix(o.seed, 0), o.order, o.amplitude);
    const BaseMode mode = o.mode == "as-written" ? BaseMode::AsWritten : BaseMode::ConvexCombination;
    const TheoremParams& prm = p->params;
    const AnalyticSeries lhs = (p->theorem == "3.5" || p->theorem == "4.1" ||
                                p->theorem == "5.1" || p->theorem == "2.6")
                                   ? p_series(f, prm)
                                   : k_series(f, prm, mode);
    const AnalyticSeries q = q_family(p->q, o.order);

    const auto write_one = [&](const std::string& path, const std::string& label,
                               const AnalyticSeries& s) {
        std::ofstream out(path, std::ios::trunc);
        if (!out)
            throw UsageError("cannot open '" + path + "' for writing");
        emit_curves(out, label, o.radius, sample_circle(s, o.radius, o.samples));
    };
    write_one(o.out + "-expr.csv", p->name + " expression", lhs);
    write_one(o.out + "-dominant.csv", p->name + " dominant", q);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical sandwich-theorem verifier for meromorphic functions"};
    app.require_subcommand(1);

    CLI::App* op = app.add_subcommand("op", "operator level utilities");
    op->require_subcommand(1);
    OpEvalOpts eo;
    CLI::App* op_eval =
        op->add_subcommand("eval", "compare the coefficient map against the integral form");
    op_eval->add_option("--alpha", eo.alpha, "operator exponent")->check(CLI::PositiveNumber);
    op_eval->add_option("--beta", eo.beta, "operator weight")->check(CLI::PositiveNumber);
    op_eval->add_option("--input", eo.input, "series literal file (meromorphic)");
    op_eval->add_option("--seed", eo.seed, "seed for a generated function");
    op_eval->add_option("--order", eo.order, "truncation order for generated functions");
    op_eval->add_option("--amplitude", eo.amplitude, "tail amplitude for generated functions");
    op_eval->add_option("--radius", eo.radius, "evaluation circle radius");
    op_eval->add_option("--points", eo.points, "evaluation point count");

    CommonOpts vo;
    CLI::App* verify = app.add_subcommand("verify", "run one seeded trial of a theorem");
    add_common(verify, vo, false);

    CommonOpts fo;
    CLI::App* fuzz = app.add_subcommand("fuzz", "run a seeded fuzz campaign");
    add_common(fuzz, fo, true);

    CLI::App* presets = app.add_subcommand("presets", "list the named presets");

    CurvesOpts co;
    CLI::App* curves = app.add_subcommand("curves", "emit boundary image curves as CSV");
    curves->add_option("--preset", co.preset, "named preset")->required();
    curves->add_option("--seed", co.seed, "seed for the generated function");
    curves->add_option("--radius", co.radius, "boundary circle radius");
    curves->add_option("--samples", co.samples, "points per curve")->check(CLI::PositiveNumber);
    curves->add_option("--order", co.order, "series truncation order");
    curves->add_option("--amplitude", co.amplitude, "tail amplitude");
    curves->add_option("--mode", co.mode, "base expression mode")
        ->check(CLI::IsMember({"as-written", "convex"}));
    curves->add_option("--out", co.out, "output file prefix")->required();

    try {
        app.parse(argc, argv);
        if (op_eval->parsed())
            return cmd_op_eval(eo);
        if (verify->parsed())
            return cmd_verify(vo);
        if (fuzz->parsed())
            return cmd_fuzz(fo);
        if (presets->parsed())
            return cmd_presets();
        if (curves->parsed())
            return cmd_curves(co);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const merosub::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const merosub::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    }
}
