#pragma once

// Versioned JSON report documents. Every struct below round-trips through
// JSON without loss: doubles are written as shortest round-trip decimals and
// non-finite restart objectives as null.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scalefit/design.hpp"
#include "scalefit/evaluation.hpp"
#include "scalefit/extrapolation.hpp"
#include "scalefit/fitter.hpp"

namespace scalefit {

inline constexpr int kReportVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct ReportMeta {
    std::string command;
    std::uint64_t seed = 0;
    nlohmann::json config = nlohmann::json::object();
    std::string tool_version = kToolVersion;

    bool operator==(const ReportMeta&) const = default;
};

struct ReportDocument {
    int version = kReportVersion;
    ReportMeta meta;
    std::optional<FitResult> fit;  ///< theta, objective and restart diagnostics
    std::optional<DivergenceStats> stats;
    std::vector<DesignAnswer> design_answers;
    std::vector<ExtrapolationReport> extrapolations;
    std::optional<SliceParams> slice;
};

void to_json(nlohmann::json& j, const ThetaParams& t);
void from_json(const nlohmann::json& j, ThetaParams& t);
void to_json(nlohmann::json& j, const FitConfig& c);
void from_json(const nlohmann::json& j, FitConfig& c);
void to_json(nlohmann::json& j, const FitResult& r);
void from_json(const nlohmann::json& j, FitResult& r);
void to_json(nlohmann::json& j, const PointDivergence& p);
void from_json(const nlohmann::json& j, PointDivergence& p);
void to_json(nlohmann::json& j, const DivergenceStats& s);
void from_json(const nlohmann::json& j, DivergenceStats& s);
void to_json(nlohmann::json& j, const DesignAnswer& a);
void from_json(const nlohmann::json& j, DesignAnswer& a);
void to_json(nlohmann::json& j, const ExtrapolationReport& r);
void from_json(const nlohmann::json& j, ExtrapolationReport& r);
void to_json(nlohmann::json& j, const SliceParams& s);
void from_json(const nlohmann::json& j, SliceParams& s);
void to_json(nlohmann::json& j, const ReportDocument& d);
void from_json(const nlohmann::json& j, ReportDocument& d);

std::string serialize(const ReportDocument& doc);
ReportDocument parse_report(const std::string& text);

/// Reads theta from a bare theta object, or from the "fit" section of a
/// report. A bare object may carry "size_scale": {"m_ref", "n_ref"}, meaning
/// its values refer to sizes m / m_ref and n / n_ref; the result is then
/// converted to raw sizes. Throws ValidationError on malformed input.
ThetaParams theta_from_json(const nlohmann::json& j);

}  // namespace scalefit
