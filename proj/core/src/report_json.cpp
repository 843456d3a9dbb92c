#include <string>

#include "json.hpp"
#include "sparsent/coherence.hpp"
#include "sparsent/error.hpp"

namespace sparsent {

using Json = nlohmann::ordered_json;

std::string report_to_json(const CoherenceReport& report) {
  Json j;
  j["similarity"] = std::string(to_string(report.similarity));
  j["mode"] = std::string(to_string(report.mode));
  j["n"] = report.n;
  j["seed"] = report.seed;
  j["mean"] = report.mean ? Json(*report.mean) : Json(nullptr);
  j["usable_dims"] = report.usable_dims;
  j["skipped_dims"] = report.skipped_dims;
  j["baseline"] = report.baseline ? Json(*report.baseline) : Json(nullptr);
  Json dims = Json::array();
  for (const auto& rec : report.dimensions) {
    Json r;
    r["d"] = rec.d;
    r["coherence"] = rec.coherence ? Json(*rec.coherence) : Json(nullptr);
    r["n_used"] = rec.n_used;
    r["skipped_reason"] = rec.skipped_reason ? Json(*rec.skipped_reason) : Json(nullptr);
    dims.push_back(std::move(r));
  }
  j["dimensions"] = std::move(dims);
  return j.dump(2) + "\n";
}

CoherenceReport report_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    CoherenceReport report;
    report.similarity = parse_similarity_kind(j.at("similarity").get<std::string>());
    report.mode = parse_sample_mode(j.at("mode").get<std::string>());
    report.n = j.at("n").get<std::size_t>();
    report.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("mean").is_null()) report.mean = j.at("mean").get<double>();
    report.usable_dims = j.at("usable_dims").get<std::size_t>();
    report.skipped_dims = j.at("skipped_dims").get<std::size_t>();
    if (!j.at("baseline").is_null()) report.baseline = j.at("baseline").get<double>();
    for (const auto& r : j.at("dimensions")) {
      DimensionRecord rec;
      rec.d = r.at("d").get<std::uint32_t>();
      if (!r.at("coherence").is_null()) rec.coherence = r.at("coherence").get<double>();
      rec.n_used = r.at("n_used").get<std::size_t>();
      if (!r.at("skipped_reason").is_null()) {
        rec.skipped_reason = r.at("skipped_reason").get<std::string>();
      }
      report.dimensions.push_back(std::move(rec));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatError::Kind::kInvalidData,
                      std::string("malformed coherence report: ") + e.what());
  }
}

}  // namespace sparsent
