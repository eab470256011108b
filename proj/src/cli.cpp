#include "scalefit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "scalefit/design.hpp"
#include "scalefit/errors.hpp"
#include "scalefit/evaluation.hpp"
#include "scalefit/extrapolation.hpp"
#include "scalefit/fitter.hpp"
#include "scalefit/fixtures.hpp"
#include "scalefit/io.hpp"
#include "scalefit/report.hpp"

namespace scalefit {

namespace {

struct FitOptions {
    std::string input;
    std::optional<double> eps0;
    std::optional<std::int64_t> classes;
    bool eps0_free = false;
    int restarts = 100;
    std::uint64_t seed = 0;
    int max_iterations = 2000;
    unsigned threads = 0;
    std::string out;
    std::string points_csv;
};

void add_fit_options(CLI::App* cmd, FitOptions& o) {
    cmd->add_option("--input", o.input, "Measurement CSV (m,n,error)")->required();
    auto* eps0 = cmd->add_option("--eps0", o.eps0, "Fix the random-guess error at VALUE");
    auto* classes = cmd->add_option("--classes", o.classes, "Fix eps0 at (K-1)/K for K balanced classes");
    auto* free = cmd->add_flag("--eps0-free", o.eps0_free, "Estimate eps0 as a free parameter");
    eps0->excludes(classes)->excludes(free);
    classes->excludes(free);
    cmd->add_option("--restarts", o.restarts, "Random restarts per fit")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    cmd->add_option("--max-iterations", o.max_iterations, "Iterations per restart")->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads (0: $SCALEFIT_THREADS or all cores)");
    cmd->add_option("--out", o.out, "Write the JSON report here");
}

FitConfig make_config(const FitOptions& o) {
    FitConfig c;
    c.restarts = o.restarts;
    c.seed = o.seed;
    c.max_iterations = o.max_iterations;
    c.threads = o.threads;
    c.validate();
    return c;
}

struct LoadedInput {
    MeasurementGrid grid;
    Eps0Mode mode = Eps0Mode::free();
};

LoadedInput load_input(const FitOptions& o) {
    LoadedInput in{load_measurements(std::filesystem::path(o.input)), Eps0Mode::free()};
    if (o.eps0) {
        in.mode = Eps0Mode::fixed(*o.eps0);
    } else if (o.classes) {
        if (*o.classes < 2) throw ValidationError("--classes must be at least 2");
        in.grid.metric_kind = MetricKind::top1_error;
        in.grid.num_classes = *o.classes;
        in.mode = default_eps0_mode(in.grid);
    } else if (o.eps0_free) {
        in.mode = Eps0Mode::free();
    } else {
        in.mode = default_eps0_mode(in.grid);
    }
    return in;
}

ReportDocument make_document(const std::string& command, const FitConfig& config, const Eps0Mode& mode) {
    ReportDocument doc;
    doc.meta.command = command;
    doc.meta.seed = config.seed;
    doc.meta.config = config;
    doc.meta.config["eps0_mode"] = mode.is_fixed() ? nlohmann::json{{"fixed", mode.value()}}
                                                   : nlohmann::json("free");
    return doc;
}

void write_report(const std::string& path, const ReportDocument& doc) {
    if (!path.empty()) write_file_atomic(path, serialize(doc));
}

std::string num(double v) { return fmt::format("{:.10g}", v); }

void print_theta(std::ostream& out, const ThetaParams& t) {
    fmt::print(out, "alpha  = {}\nbeta   = {}\nb      = {}\nc_inf  = {}\neta    = {}\neps0   = {}{}\n",
               num(t.alpha), num(t.beta), num(t.b), num(t.c_inf), num(t.eta), num(t.eps0),
               t.eps0_fixed ? " (fixed)" : "");
}

void print_stats(std::ostream& out, const DivergenceStats& s) {
    double max_abs = 0.0;
    for (const auto& p : s.per_point) max_abs = std::max(max_abs, std::abs(p.delta));
    fmt::print(out, "mu       = {}\nsigma    = {}\nmean|d|  = {}\nmax|d|   = {}\n", num(s.mu), num(s.sigma),
               num(s.mean_abs), num(max_abs));
    if (s.fold_mu_std) fmt::print(out, "fold std = {} (mu +/- 1 std over folds)\n", num(*s.fold_mu_std));
}

std::string points_csv(const std::vector<PointDivergence>& pts) {
    std::string text = "m,n,eps_actual,eps_estimated,delta\n";
    for (const auto& p : pts) {
        text += fmt::format("{},{},{},{},{}\n", format_double(p.m), format_double(p.n), format_double(p.eps_actual),
                            format_double(p.eps_estimated), format_double(p.delta));
    }
    return text;
}

TargetRule parse_rule(const std::string& s) {
    if (s == "strict" || s == "strict_and") return TargetRule::strict_and;
    if (s == "complement") return TargetRule::complement;
    throw ValidationError("--rule must be 'strict' or 'complement'");
}

const char* status_name(CutStatus s) {
    switch (s) {
        case CutStatus::ok: return "ok";
        case CutStatus::insufficient_data: return "insufficient_data";
        case CutStatus::empty_target: return "empty_target";
    }
    return "ok";
}

int cmd_fit(const FitOptions& o, std::ostream& out, std::ostream& err) {
    const FitConfig config = make_config(o);
    const LoadedInput in = load_input(o);
    const FitResult fit = fit_theta(in.grid, config, in.mode);
    const DivergenceStats stats = divergence_stats(fit.theta, in.grid);
    ReportDocument doc = make_document("fit", config, in.mode);
    doc.fit = fit;
    doc.stats = stats;
    print_theta(out, fit.theta);
    fmt::print(out, "objective = {}\nwinning restart = {} of {}\n", num(fit.objective), fit.winning_restart,
               fit.restart_objectives.size());
    print_stats(out, stats);
    if (!o.points_csv.empty()) write_file_atomic(o.points_csv, points_csv(stats.per_point));
    write_report(o.out, doc);
    (void)err;
    return 0;
}

int cmd_crossval(const FitOptions& o, std::size_t folds, std::ostream& out) {
    const FitConfig config = make_config(o);
    const LoadedInput in = load_input(o);
    const DivergenceStats stats = cross_validate(in.grid, folds, config, in.mode);
    ReportDocument doc = make_document("crossval", config, in.mode);
    doc.meta.config["folds"] = folds;
    doc.stats = stats;
    fmt::print(out, "{}-fold cross-validation over {} points\n", folds, in.grid.size());
    print_stats(out, stats);
    if (!o.points_csv.empty()) write_file_atomic(o.points_csv, points_csv(stats.per_point));
    write_report(o.out, doc);
    return 0;
}

int cmd_extrapolate(const FitOptions& o, double cut_m, double cut_n, const std::string& rule_text, std::ostream& out,
                    std::ostream& err) {
    const FitConfig config = make_config(o);
    const TargetRule rule = parse_rule(rule_text);
    const LoadedInput in = load_input(o);
    const ExtrapolationReport report = extrapolate_once(in.grid, {cut_m, cut_n}, config, in.mode, rule);
    ReportDocument doc = make_document("extrapolate", config, in.mode);
    doc.meta.config["rule"] = rule == TargetRule::strict_and ? "strict_and" : "complement";
    doc.fit = report.fit;
    doc.stats = report.stats;
    doc.extrapolations.push_back(report);
    fmt::print(out, "cut m <= {}, n <= {}: {} training points, {} targets\n", num(cut_m), num(cut_n),
               report.train_points.size(), report.target_points.size());
    print_theta(out, report.fit->theta);
    print_stats(out, *report.stats);
    if (report.low_signal) {
        fmt::print(err, "warning: training errors vary by less than {}x; the fit has little signal\n",
                   kLowSignalSpread);
    }
    if (!o.points_csv.empty()) write_file_atomic(o.points_csv, points_csv(report.target_points));
    write_report(o.out, doc);
    return 0;
}

std::string sweep_csv(const std::vector<ExtrapolationReport>& reports) {
    std::string text = "cut_m,cut_n,m_index,n_index,status,role,m,n,eps_actual,eps_estimated,delta\n";
    for (const auto& r : reports) {
        const bool fitted = r.fit.has_value();
        auto emit = [&](const std::vector<PointDivergence>& pts, const char* role) {
            for (const auto& p : pts) {
                text += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", format_double(r.cut.m),
                                    format_double(r.cut.n), r.m_index, r.n_index, status_name(r.status), role,
                                    format_double(p.m), format_double(p.n), format_double(p.eps_actual),
                                    fitted ? format_double(p.eps_estimated) : "",
                                    fitted ? format_double(p.delta) : "");
            }
        };
        emit(r.train_points, "train");
        emit(r.target_points, "target");
    }
    return text;
}

int cmd_sweep(const FitOptions& o, const std::string& rule_text, const std::string& csv_out, std::ostream& out) {
    const FitConfig config = make_config(o);
    const TargetRule rule = parse_rule(rule_text);
    const LoadedInput in = load_input(o);
    const auto reports = extrapolation_sweep(in.grid, config, in.mode, rule);
    ReportDocument doc = make_document("sweep", config, in.mode);
    doc.meta.config["rule"] = rule == TargetRule::strict_and ? "strict_and" : "complement";
    doc.extrapolations = reports;
    fmt::print(out, "{:>14} {:>14} {:>18} {:>6} {:>7} {:>12} {:>12} {:>12} {}\n", "cut_m", "cut_n", "status", "train",
               "target", "mu", "sigma", "mean|d|", "");
    for (const auto& r : reports) {
        const bool has = r.stats.has_value();
        fmt::print(out, "{:>14} {:>14} {:>18} {:>6} {:>7} {:>12} {:>12} {:>12} {}\n", num(r.cut.m), num(r.cut.n),
                   status_name(r.status), r.train_points.size(), r.target_points.size(),
                   has ? fmt::format("{:.4g}", r.stats->mu) : "-", has ? fmt::format("{:.4g}", r.stats->sigma) : "-",
                   has ? fmt::format("{:.4g}", r.stats->mean_abs) : "-", r.low_signal ? "low-signal" : "");
    }
    if (!csv_out.empty()) write_file_atomic(csv_out, sweep_csv(reports));
    write_report(o.out, doc);
    return 0;
}

struct DesignOptions {
    std::string theta_json;
    std::optional<double> target_eps;
    std::optional<double> contour;
    bool mmax = false;
    bool nmax = false;
    bool optimal = false;
    std::optional<double> nlim;
    std::optional<double> mlim;
    std::optional<double> threshold;
    std::optional<double> m_given_n;
    std::optional<double> n_given_m;
    std::optional<std::size_t> samples;
    std::string round = "none";
    std::vector<double> ladder;
    std::string out;
};

ThetaParams read_theta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
    return theta_from_json(j);
}

std::string format_size(double v, const DesignOptions& o) {
    if (o.round == "integer") return fmt::format("{} (rounded {})", num(v), num(std::round(v)));
    if (o.round == "ladder") return fmt::format("{} (rung {})", num(v), num(round_to_ladder(v, o.ladder)));
    return num(v);
}

void print_answer(std::ostream& out, const DesignAnswer& a, const DesignOptions& o) {
    if (a.reduced_level) fmt::print(out, "reduced level = {}\n", num(*a.reduced_level));
    if (a.kind != AnswerKind::reduced_level) {
        if (a.m) fmt::print(out, "m = {}\n", format_size(*a.m, o));
        if (a.n) fmt::print(out, "n = {}\n", format_size(*a.n, o));
    }
    for (const auto& p : a.contour) fmt::print(out, "  m = {}  n = {}\n", format_size(p.m, o), format_size(p.n, o));
    fmt::print(out, "residual = {:.3g}\n", a.residual);
}

int cmd_design(const DesignOptions& o, std::ostream& out) {
    if (o.round != "none" && o.round != "integer" && o.round != "ladder") {
        throw ValidationError("--round must be none, integer or ladder");
    }
    if (o.round == "ladder" && o.ladder.empty()) throw ValidationError("--round ladder needs --ladder values");
    const ThetaParams theta = read_theta_file(o.theta_json);
    ReportDocument doc;
    doc.meta.command = "design";
    doc.meta.config = nlohmann::json::object();

    std::optional<double> level = o.contour;
    if (o.target_eps) {
        DesignAnswer inv = invert_envelope(theta, *o.target_eps);
        level = *inv.reduced_level - theta.c_inf;
        fmt::print(out, "target error {} -> contour level {}\n", num(*o.target_eps), num(*level));
        print_answer(out, inv, o);
        doc.design_answers.push_back(std::move(inv));
    }
    auto need_level = [&]() -> double {
        if (!level) throw ValidationError("this query needs --target-eps or --contour");
        return *level;
    };
    auto need = [](const std::optional<double>& v, const char* flag) -> double {
        if (!v) throw ValidationError(std::string("missing ") + flag);
        return *v;
    };
    std::vector<DesignAnswer> answers;
    if (o.mmax) answers.push_back(max_useful_model(theta, need(o.nlim, "--nlim"), need(o.threshold, "--T")));
    if (o.nmax) answers.push_back(max_useful_data(theta, need(o.mlim, "--mlim"), need(o.threshold, "--T")));
    if (o.optimal) answers.push_back(compute_optimal_split(theta, need_level()));
    if (o.m_given_n) answers.push_back(contour_model_size(theta, need_level(), *o.m_given_n));
    if (o.n_given_m) answers.push_back(contour_data_size(theta, need_level(), *o.n_given_m));
    if (o.samples) answers.push_back(contour_sweep(theta, need_level(), *o.samples));
    if (answers.empty() && doc.design_answers.empty()) {
        throw ValidationError("no design query given (use --mmax, --nmax, --optimal, --m-given-n, --n-given-m, "
                              "--samples or --target-eps)");
    }
    for (auto& a : answers) {
        print_answer(out, a, o);
        doc.design_answers.push_back(std::move(a));
    }
    write_report(o.out, doc);
    return 0;
}

struct SynthOptions {
    std::string theta;
    std::vector<double> m_levels;
    std::vector<double> n_levels;
    std::optional<double> noise;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_synth(const SynthOptions& o, std::ostream& out) {
    ThetaParams theta;
    std::vector<double> ms = o.m_levels;
    std::vector<double> ns = o.n_levels;
    std::optional<std::int64_t> classes;
    const FixtureRecord* record = nullptr;
    for (const auto& f : fixtures()) {
        if (f.name == o.theta) record = &f;
    }
    if (record) {
        theta = record->theta_for_counts();
        if (ms.empty()) ms = record->m_levels();
        if (ns.empty()) ns = record->n_levels();
        if (record->num_classes) classes = *record->num_classes;
    } else if (std::filesystem::exists(o.theta)) {
        theta = read_theta_file(o.theta);
    } else {
        try {
            theta = theta_from_json(nlohmann::json::parse(o.theta));
        } catch (const nlohmann::json::exception&) {
            throw ValidationError("--theta must be a fixture name, a JSON file or inline JSON");
        }
    }
    if (ms.empty() || ns.empty()) throw ValidationError("--m-levels and --n-levels are required for non-fixture theta");
    std::optional<MultiplicativeNoise> noise;
    if (o.noise) noise = MultiplicativeNoise{*o.noise, o.seed};
    MeasurementGrid grid = synth_landscape(theta, ms, ns, noise);
    if (classes) grid.num_classes = classes;
    write_file_atomic(o.out, measurements_to_csv(grid));
    fmt::print(out, "wrote {} measurements ({} x {}) to {}\n", grid.size(), ms.size(), ns.size(), o.out);
    return 0;
}

int cmd_slice(const FitOptions& o, const std::string& axis, std::optional<double> fix_m, std::optional<double> fix_n,
              std::ostream& out) {
    const FitConfig config = make_config(o);
    const MeasurementGrid grid = load_measurements(std::filesystem::path(o.input));
    SliceAxis slice_axis;
    std::vector<SlicePoint> points;
    if (axis == "model") {
        if (!fix_n) throw ValidationError("--axis model needs --fix-n");
        slice_axis = SliceAxis::model_axis;
        for (const auto& p : grid.points) {
            if (p.n == *fix_n) points.push_back({p.m, p.eps});
        }
    } else if (axis == "data") {
        if (!fix_m) throw ValidationError("--axis data needs --fix-m");
        slice_axis = SliceAxis::data_axis;
        for (const auto& p : grid.points) {
            if (p.m == *fix_m) points.push_back({p.n, p.eps});
        }
    } else {
        throw ValidationError("--axis must be 'model' or 'data'");
    }
    const SliceParams params = fit_slice(points, slice_axis, config);
    std::vector<PointDivergence> per_point;
    for (const auto& p : points) {
        const double est = eval_slice(params, p.size);
        const bool model = slice_axis == SliceAxis::model_axis;
        per_point.push_back({model ? p.size : *fix_m, model ? *fix_n : p.size, p.eps, est, divergence(est, p.eps)});
    }
    const DivergenceStats stats = summarize(per_point);
    ReportDocument doc;
    doc.meta.command = "slice";
    doc.meta.seed = config.seed;
    doc.meta.config = config;
    doc.slice = params;
    doc.stats = stats;
    fmt::print(out, "{} points along the {} axis\ncoeff    = {}\nexponent = {}\nfloor    = {}\n", points.size(), axis,
               num(params.coeff), num(params.exponent), num(params.floor));
    print_stats(out, stats);
    write_report(o.out, doc);
    return 0;
}

int cmd_fixtures(std::ostream& out) {
    fmt::print(out, "{:<12} {:<13} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>10} {:>10}\n", "name", "dataset",
               "alpha", "beta", "b", "c_inf", "eta", "eps0", "M", "N");
    for (const auto& f : fixtures()) {
        const ThetaParams t = f.theta();
        fmt::print(out, "{:<12} {:<13} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>10} {:>10}\n", f.name, f.label,
                   f.alpha, f.beta, f.b, f.c_inf, f.eta, num(t.eps0), num(f.full_m), num(f.full_n));
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fit, evaluate and extrapolate joint model/data error landscapes", "scalefit"};
    app.require_subcommand(1);

    FitOptions fit_opts;
    auto* fit = app.add_subcommand("fit", "Fit the envelope parameters to a measurement grid");
    add_fit_options(fit, fit_opts);
    fit->add_option("--points-csv", fit_opts.points_csv, "Write estimated-vs-actual points as CSV");

    FitOptions cv_opts;
    std::size_t folds = 10;
    auto* crossval = app.add_subcommand("crossval", "k-fold cross-validation of the fit");
    add_fit_options(crossval, cv_opts);
    crossval->add_option("--folds", folds, "Number of folds")->capture_default_str();
    crossval->add_option("--points-csv", cv_opts.points_csv, "Write held-out estimated-vs-actual points as CSV");

    FitOptions ex_opts;
    double cut_m = 0.0;
    double cut_n = 0.0;
    std::string rule = "strict";
    auto* extrapolate = app.add_subcommand("extrapolate", "Fit below a cut and predict larger configurations");
    add_fit_options(extrapolate, ex_opts);
    extrapolate->add_option("--cut-m", cut_m, "Largest model size used for fitting")->required();
    extrapolate->add_option("--cut-n", cut_n, "Largest data size used for fitting")->required();
    extrapolate->add_option("--rule", rule, "Target set: strict (m > cut and n > cut) or complement")
        ->capture_default_str();
    extrapolate->add_option("--points-csv", ex_opts.points_csv, "Write target points as CSV");

    FitOptions sw_opts;
    std::string sweep_rule = "strict";
    std::string sweep_csv_out;
    auto* sweep = app.add_subcommand("sweep", "Extrapolate from every cut of a full grid");
    add_fit_options(sweep, sw_opts);
    sweep->add_option("--rule", sweep_rule, "Target set: strict or complement")->capture_default_str();
    sweep->add_option("--csv-out", sweep_csv_out, "Write a long-format CSV of all cuts");

    DesignOptions design_opts;
    auto* design = app.add_subcommand("design", "Answer design questions from a fitted theta");
    design->add_option("--theta-json", design_opts.theta_json, "Theta JSON or a fit report")->required();
    auto* target = design->add_option("--target-eps", design_opts.target_eps, "Target error level");
    auto* contour = design->add_option("--contour", design_opts.contour, "Contour level c (c_inf excluded)");
    target->excludes(contour);
    design->add_flag("--mmax", design_opts.mmax, "Maximal useful model size for --nlim data");
    design->add_flag("--nmax", design_opts.nmax, "Maximal useful data size for an --mlim model");
    design->add_flag("--optimal", design_opts.optimal, "Compute-optimal (m, n) on the contour");
    design->add_option("--nlim", design_opts.nlim, "Data size limit");
    design->add_option("--mlim", design_opts.mlim, "Model size limit");
    design->add_option("--T", design_opts.threshold, "Contribution threshold (> 1)");
    design->add_option("--m-given-n", design_opts.m_given_n, "Model size on the contour for this data size");
    design->add_option("--n-given-m", design_opts.n_given_m, "Data size on the contour for this model size");
    design->add_option("--samples", design_opts.samples, "Sample this many points along the contour");
    design->add_option("--round", design_opts.round, "Rounding of sizes: none, integer or ladder")
        ->capture_default_str();
    design->add_option("--ladder", design_opts.ladder, "Scale ladder for --round ladder")->delimiter(',');
    design->add_option("--out", design_opts.out, "Write the JSON report here");

    SynthOptions synth_opts;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic measurement grid");
    synth->add_option("--theta", synth_opts.theta, "Fixture name, theta JSON file or inline JSON")->required();
    synth->add_option("--m-levels", synth_opts.m_levels, "Model sizes")->delimiter(',');
    synth->add_option("--n-levels", synth_opts.n_levels, "Data sizes")->delimiter(',');
    synth->add_option("--noise", synth_opts.noise, "Multiplicative uniform noise amplitude p in [0, 1)");
    synth->add_option("--seed", synth_opts.seed, "Noise seed")->capture_default_str();
    synth->add_option("--out", synth_opts.out, "Output CSV")->required();

    FitOptions sl_opts;
    std::string axis = "model";
    std::optional<double> fix_m;
    std::optional<double> fix_n;
    auto* slice = app.add_subcommand("slice", "Fit a saturating power law along one grid row or column");
    add_fit_options(slice, sl_opts);
    slice->add_option("--axis", axis, "model (vary m at --fix-n) or data (vary n at --fix-m)")->capture_default_str();
    slice->add_option("--fix-n", fix_n, "Data size of the model-axis slice");
    slice->add_option("--fix-m", fix_m, "Model size of the data-axis slice");

    auto* list = app.add_subcommand("fixtures", "List the bundled published parameter sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (*fit) return cmd_fit(fit_opts, out, err);
        if (*crossval) return cmd_crossval(cv_opts, folds, out);
        if (*extrapolate) return cmd_extrapolate(ex_opts, cut_m, cut_n, rule, out, err);
        if (*sweep) return cmd_sweep(sw_opts, sweep_rule, sweep_csv_out, out);
        if (*design) return cmd_design(design_opts, out);
        if (*synth) return cmd_synth(synth_opts, out);
        if (*slice) return cmd_slice(sl_opts, axis, fix_m, fix_n, out);
        if (*list) return cmd_fixtures(out);
    } catch (const InputError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return 1;
    } catch (const NumericalError& e) {
        fmt::print(err, "numerical failure: {}\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(err, "internal error: {}\n", e.what());
        return 2;
    }
    return 1;
}

}  // namespace scalefit
