#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "ermrates/classcat.hpp"
#include "ermrates/curves.hpp"
#include "ermrates/dims.hpp"
#include "ermrates/distros.hpp"

namespace ermrates::io {

using json = nlohmann::json;

// Throws InputError on unreadable files or malformed JSON.
json read_json(const std::filesystem::path& path);
// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

// {"id": name, "params": {...}} or {"explicit": {"domain": [...], "hypotheses": [[...], ...]}}
ConceptClass class_from_json(const json& j, const CatalogLimits& limits = {});
json class_spec(const ConceptClass& c);

// all0 | all1 | hyp:i, or a JSON file holding {"labels": [...]} (domain order) or {"hypothesis": i}.
NamedCenter resolve_center(const ConceptClass& c, const std::string& spec);

json to_json(const Witness& w, const ConceptClass& c);
json to_json(const DimResult& r, const ConceptClass& c);
json to_json(const DimensionReport& r, const ConceptClass& c);
json to_json(const RateClassification& r);

json to_json(const RealizableDistribution& p);
RealizableDistribution distribution_from_json(const json& j);

json to_json(const SlowSchedule& s);
json to_json(const BlockDesign& d);
json to_json(const ScheduleCheck& c);

json to_json(const RateFit& f);
json to_json(const BoundReport& r);
json curve_metadata(const LearningCurve& c);

}  // namespace ermrates::io
