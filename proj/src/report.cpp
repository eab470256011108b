#include "scalefit/report.hpp"

#include <cmath>
#include <limits>

#include "scalefit/errors.hpp"

namespace scalefit {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double finite_or_inf(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& value) {
    if (value) j[key] = *value;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& value) {
    if (j.contains(key) && !j.at(key).is_null()) {
        value = j.at(key).get<T>();
    } else {
        value.reset();
    }
}

const char* to_string(AnswerKind kind) {
    switch (kind) {
        case AnswerKind::size: return "size";
        case AnswerKind::contour: return "contour";
        case AnswerKind::ratio_point: return "ratio_point";
        case AnswerKind::reduced_level: return "reduced_level";
    }
    return "size";
}

AnswerKind answer_kind_from(const std::string& s) {
    if (s == "size") return AnswerKind::size;
    if (s == "contour") return AnswerKind::contour;
    if (s == "ratio_point") return AnswerKind::ratio_point;
    if (s == "reduced_level") return AnswerKind::reduced_level;
    throw ValidationError("unknown design answer kind '" + s + "'");
}

const char* to_string(CutStatus status) {
    switch (status) {
        case CutStatus::ok: return "ok";
        case CutStatus::insufficient_data: return "insufficient_data";
        case CutStatus::empty_target: return "empty_target";
    }
    return "ok";
}

CutStatus cut_status_from(const std::string& s) {
    if (s == "ok") return CutStatus::ok;
    if (s == "insufficient_data") return CutStatus::insufficient_data;
    if (s == "empty_target") return CutStatus::empty_target;
    throw ValidationError("unknown cut status '" + s + "'");
}

const char* to_string(TargetRule rule) { return rule == TargetRule::strict_and ? "strict_and" : "complement"; }

TargetRule target_rule_from(const std::string& s) {
    if (s == "strict_and") return TargetRule::strict_and;
    if (s == "complement") return TargetRule::complement;
    throw ValidationError("unknown target rule '" + s + "'");
}

json range_json(const LogRange& r) { return json::array({r.lo, r.hi}); }

LogRange range_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

void to_json(json& j, const ThetaParams& t) {
    j = json{{"alpha", t.alpha}, {"beta", t.beta}, {"b", t.b},
             {"c_inf", t.c_inf}, {"eta", t.eta},   {"eps0", t.eps0},
             {"eps0_fixed", t.eps0_fixed}};
}

void from_json(const json& j, ThetaParams& t) {
    t.alpha = j.at("alpha").get<double>();
    t.beta = j.at("beta").get<double>();
    t.b = j.at("b").get<double>();
    t.c_inf = j.at("c_inf").get<double>();
    t.eta = j.at("eta").get<double>();
    t.eps0 = j.at("eps0").get<double>();
    t.eps0_fixed = j.value("eps0_fixed", true);
}

void to_json(json& j, const FitConfig& c) {
    j = json{{"restarts", c.restarts},
             {"seed", c.seed},
             {"max_iterations", c.max_iterations},
             {"objective_tolerance", c.objective_tolerance},
             {"step_tolerance", c.step_tolerance},
             {"init_ranges",
              {{"alpha", range_json(c.init_ranges.alpha)},
               {"beta", range_json(c.init_ranges.beta)},
               {"b", range_json(c.init_ranges.b)},
               {"c_inf", range_json(c.init_ranges.c_inf)},
               {"eta", range_json(c.init_ranges.eta)},
               {"eps0", range_json(c.init_ranges.eps0)}}}};
}

void from_json(const json& j, FitConfig& c) {
    c.restarts = j.at("restarts").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.max_iterations = j.at("max_iterations").get<int>();
    c.objective_tolerance = j.at("objective_tolerance").get<double>();
    c.step_tolerance = j.at("step_tolerance").get<double>();
    const json& r = j.at("init_ranges");
    c.init_ranges.alpha = range_from(r.at("alpha"));
    c.init_ranges.beta = range_from(r.at("beta"));
    c.init_ranges.b = range_from(r.at("b"));
    c.init_ranges.c_inf = range_from(r.at("c_inf"));
    c.init_ranges.eta = range_from(r.at("eta"));
    c.init_ranges.eps0 = range_from(r.at("eps0"));
}

void to_json(json& j, const FitResult& r) {
    json objectives = json::array();
    for (double v : r.restart_objectives) objectives.push_back(finite_or_null(v));
    j = json{{"theta", r.theta},
             {"objective", r.objective},
             {"winning_restart", r.winning_restart},
             {"restart_objectives", objectives},
             {"iterations_used", r.iterations_used},
             {"seed", r.seed},
             {"theta_normalized", r.theta_normalized},
             {"size_scale", {{"m_ref", r.m_ref}, {"n_ref", r.n_ref}}}};
}

void from_json(const json& j, FitResult& r) {
    r.theta = j.at("theta").get<ThetaParams>();
    r.objective = j.at("objective").get<double>();
    r.winning_restart = j.at("winning_restart").get<std::size_t>();
    r.restart_objectives.clear();
    for (const auto& v : j.at("restart_objectives")) r.restart_objectives.push_back(finite_or_inf(v));
    r.iterations_used = j.at("iterations_used").get<std::vector<int>>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.theta_normalized = j.at("theta_normalized").get<ThetaParams>();
    r.m_ref = j.at("size_scale").at("m_ref").get<double>();
    r.n_ref = j.at("size_scale").at("n_ref").get<double>();
}

void to_json(json& j, const PointDivergence& p) {
    j = json{{"m", p.m}, {"n", p.n}, {"eps_actual", p.eps_actual}, {"eps_estimated", p.eps_estimated},
             {"delta", p.delta}};
}

void from_json(const json& j, PointDivergence& p) {
    p.m = j.at("m").get<double>();
    p.n = j.at("n").get<double>();
    p.eps_actual = j.at("eps_actual").get<double>();
    p.eps_estimated = j.at("eps_estimated").get<double>();
    p.delta = j.at("delta").get<double>();
}

void to_json(json& j, const DivergenceStats& s) {
    j = json{{"mu", s.mu}, {"sigma", s.sigma}, {"mean_abs", s.mean_abs}, {"per_point", s.per_point}};
    j["fold_mu_std"] = s.fold_mu_std ? json(*s.fold_mu_std) : json(nullptr);
}

void from_json(const json& j, DivergenceStats& s) {
    s.mu = j.at("mu").get<double>();
    s.sigma = j.at("sigma").get<double>();
    s.mean_abs = j.at("mean_abs").get<double>();
    get_optional(j, "fold_mu_std", s.fold_mu_std);
    s.per_point = j.at("per_point").get<std::vector<PointDivergence>>();
}

void to_json(json& j, const DesignAnswer& a) {
    j = json{{"kind", to_string(a.kind)}, {"residual", a.residual}};
    put_optional(j, "m", a.m);
    put_optional(j, "n", a.n);
    put_optional(j, "reduced_level", a.reduced_level);
    if (!a.contour.empty()) {
        json pts = json::array();
        for (const auto& p : a.contour) pts.push_back({{"m", p.m}, {"n", p.n}});
        j["contour"] = pts;
    }
}

void from_json(const json& j, DesignAnswer& a) {
    a.kind = answer_kind_from(j.at("kind").get<std::string>());
    a.residual = j.at("residual").get<double>();
    get_optional(j, "m", a.m);
    get_optional(j, "n", a.n);
    get_optional(j, "reduced_level", a.reduced_level);
    a.contour.clear();
    if (j.contains("contour")) {
        for (const auto& p : j.at("contour")) a.contour.push_back({p.at("m").get<double>(), p.at("n").get<double>()});
    }
}

void to_json(json& j, const ExtrapolationReport& r) {
    j = json{{"cut", {{"m", r.cut.m}, {"n", r.cut.n}}},
             {"level_index", {{"m", r.m_index}, {"n", r.n_index}}},
             {"target_rule", to_string(r.target_rule)},
             {"status", to_string(r.status)},
             {"low_signal", r.low_signal},
             {"train_points", r.train_points},
             {"target_points", r.target_points}};
    j["stats"] = r.stats ? json(*r.stats) : json(nullptr);
    j["fit"] = r.fit ? json(*r.fit) : json(nullptr);
}

void from_json(const json& j, ExtrapolationReport& r) {
    r.cut = {j.at("cut").at("m").get<double>(), j.at("cut").at("n").get<double>()};
    r.m_index = j.at("level_index").at("m").get<std::size_t>();
    r.n_index = j.at("level_index").at("n").get<std::size_t>();
    r.target_rule = target_rule_from(j.at("target_rule").get<std::string>());
    r.status = cut_status_from(j.at("status").get<std::string>());
    r.low_signal = j.at("low_signal").get<bool>();
    r.train_points = j.at("train_points").get<std::vector<PointDivergence>>();
    r.target_points = j.at("target_points").get<std::vector<PointDivergence>>();
    get_optional(j, "stats", r.stats);
    get_optional(j, "fit", r.fit);
}

void to_json(json& j, const SliceParams& s) {
    j = json{{"axis", s.axis == SliceAxis::model_axis ? "model" : "data"},
             {"coeff", s.coeff},
             {"exponent", s.exponent},
             {"floor", s.floor}};
}

void from_json(const json& j, SliceParams& s) {
    const auto axis = j.at("axis").get<std::string>();
    if (axis != "model" && axis != "data") throw ValidationError("unknown slice axis '" + axis + "'");
    s.axis = axis == "model" ? SliceAxis::model_axis : SliceAxis::data_axis;
    s.coeff = j.at("coeff").get<double>();
    s.exponent = j.at("exponent").get<double>();
    s.floor = j.at("floor").get<double>();
}

void to_json(json& j, const ReportDocument& d) {
    j = json::object();
    j["version"] = d.version;
    j["meta"] = {{"command", d.meta.command},
                 {"seed", d.meta.seed},
                 {"config", d.meta.config},
                 {"tool_version", d.meta.tool_version}};
    if (d.fit) {
        j["fit"] = *d.fit;
        j["theta"] = d.fit->theta;
        j["objective"] = d.fit->objective;
    }
    if (d.stats) {
        j["stats"] = {{"mu", d.stats->mu},
                      {"sigma", d.stats->sigma},
                      {"mean_abs", d.stats->mean_abs},
                      {"fold_mu_std", d.stats->fold_mu_std ? json(*d.stats->fold_mu_std) : json(nullptr)}};
        j["per_point"] = d.stats->per_point;
    }
    j["design_answers"] = d.design_answers;
    if (!d.extrapolations.empty()) j["extrapolations"] = d.extrapolations;
    if (d.slice) j["slice"] = *d.slice;
}

void from_json(const json& j, ReportDocument& d) {
    d.version = j.at("version").get<int>();
    if (d.version != kReportVersion) throw ValidationError("unsupported report version " + std::to_string(d.version));
    const json& meta = j.at("meta");
    d.meta.command = meta.at("command").get<std::string>();
    d.meta.seed = meta.at("seed").get<std::uint64_t>();
    d.meta.config = meta.at("config");
    d.meta.tool_version = meta.at("tool_version").get<std::string>();
    get_optional(j, "fit", d.fit);
    if (j.contains("stats")) {
        DivergenceStats s;
        const json& st = j.at("stats");
        s.mu = st.at("mu").get<double>();
        s.sigma = st.at("sigma").get<double>();
        s.mean_abs = st.at("mean_abs").get<double>();
        get_optional(st, "fold_mu_std", s.fold_mu_std);
        s.per_point = j.at("per_point").get<std::vector<PointDivergence>>();
        d.stats = std::move(s);
    } else {
        d.stats.reset();
    }
    d.design_answers = j.value("design_answers", json::array()).get<std::vector<DesignAnswer>>();
    d.extrapolations = j.value("extrapolations", json::array()).get<std::vector<ExtrapolationReport>>();
    get_optional(j, "slice", d.slice);
}

std::string serialize(const ReportDocument& doc) { return json(doc).dump(2) + "\n"; }

ReportDocument parse_report(const std::string& text) {
    try {
        return json::parse(text).get<ReportDocument>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
}

ThetaParams theta_from_json(const json& j) {
    try {
        if (j.contains("fit")) return j.at("fit").at("theta").get<ThetaParams>();
        if (j.contains("theta") && j.at("theta").is_object()) return theta_from_json(j.at("theta"));
        ThetaParams t = j.get<ThetaParams>();
        validate(t);
        if (j.contains("size_scale")) {
            const json& s = j.at("size_scale");
            t = rescale_sizes(t, s.at("m_ref").get<double>(), s.at("n_ref").get<double>());
        }
        return t;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed theta JSON: ") + e.what());
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
}

}  // namespace scalefit
