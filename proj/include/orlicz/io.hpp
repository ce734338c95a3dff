#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "orlicz/bound_verifier.hpp"
#include "orlicz/golden.hpp"
#include "orlicz/limit_experiments.hpp"
#include "orlicz/split_chain.hpp"
#include "orlicz/tower_chain.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

using json = nlohmann::json;

// Function descriptors: {"family": "power"|"exp_power"|"power_log"|"linear",
// parameters, optional "scale_a"/"scale_b"}. Only the closed families
// round-trip; derived/tabulated functions serialize via sampling.
json young_to_json(const YoungFn& f);
YoungFn young_from_json(const json& j);

// Tower specs: {"atoms": [{label, alpha, f, h}, ...]} or a named generator
// {"geometric": {"ratio", "hmax", "f": "alternating"|"height"|"height_squared"|"zero"}}.
json spec_to_json(const TowerChainSpec& spec);
TowerChainSpec spec_from_json(const json& j);

json report_to_json(const BoundReport& r);
json report_to_json(const MomentCheck& r);
json report_to_json(const CltReport& r);
json report_to_json(const LilReport& r);
json report_to_json(const BerryEsseenReport& r);
json report_to_json(const TailReport& r);
json report_to_json(const WeakOptResult& r);
json report_to_json(const GoldenFitResult& r);
json report_to_json(const DivergenceCertificate& r);

// Plain-text helpers.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Trace export: step, label, level, mark, block id (-1 before completion).
void write_trace_csv(const std::string& path, const RegenTrace& trace);

// Curve export of a derived function on a log grid.
void write_curve_csv(const std::string& path, const GenYoungFn& f, double lo,
                     double hi, int n = 200);

}  // namespace orlicz
