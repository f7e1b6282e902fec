#include "talkshare/report_json.hpp"

#include "json.hpp"

namespace talkshare {

using nlohmann::json;

std::string report_to_json(const DynamicsReport& report) {
  json windows = json::array();
  for (const auto& window : report.regimes.windows) {
    json w{{"start", window.start},
           {"end", window.end},
           {"label", to_string(window.label)},
           {"fraction", window.dominance_fraction},
           {"talk", window.talk_by_party}};
    w["dominant"] = window.dominant_party ? json(*window.dominant_party) : json();
    windows.push_back(std::move(w));
  }

  const WindowConfig& config = report.regimes.config_used;
  json doc{
      {"id", report.id},
      {"duration", report.duration},
      {"imbalance",
       {{"value", report.imbalance.value},
        {"primary", report.imbalance.primary},
        {"secondary", report.imbalance.secondary},
        {"ranking", report.imbalance.ranking},
        {"tie", report.imbalance.tie}}},
      {"windows", std::move(windows)},
      {"composition",
       {{"blue", report.composition.blue_frac},
        {"red", report.composition.red_frac},
        {"gray", report.composition.gray_frac}}},
      {"stereotype", to_string(report.stereotype)},
      {"flips", report.flips},
      {"config",
       {{"k_seconds", config.k_seconds},
        {"l_seconds", config.l_seconds},
        {"m", config.dominance_threshold},
        {"thresholds", config.party_thresholds},
        {"silence_floor_seconds", config.silence_floor_seconds}}},
  };
  if (report.mixed) {
    doc["mixed"] = {{"first", to_string(report.mixed->first)},
                    {"last", to_string(report.mixed->last)},
                    {"transition", report.mixed->transition}};
  } else {
    doc["mixed"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

DynamicsReport report_from_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw ParseError("report: expected a JSON object");
  try {
    DynamicsReport report;
    report.id = doc.at("id").get<std::string>();
    if (doc.contains("duration")) report.duration = doc.at("duration").get<double>();
    const json& imbalance = doc.at("imbalance");
    report.imbalance.value = imbalance.at("value").get<double>();
    report.imbalance.primary = imbalance.at("primary").get<std::string>();
    report.imbalance.secondary = imbalance.at("secondary").get<std::string>();
    if (imbalance.contains("ranking"))
      report.imbalance.ranking = imbalance.at("ranking").get<std::vector<std::string>>();
    if (imbalance.contains("tie")) report.imbalance.tie = imbalance.at("tie").get<bool>();

    const json& config = doc.at("config");
    report.regimes.config_used.k_seconds = config.at("k_seconds").get<double>();
    report.regimes.config_used.l_seconds = config.at("l_seconds").get<double>();
    report.regimes.config_used.dominance_threshold = config.at("m").get<double>();
    report.regimes.config_used.silence_floor_seconds =
        config.at("silence_floor_seconds").get<double>();
    if (config.contains("thresholds"))
      report.regimes.config_used.party_thresholds =
          config.at("thresholds").get<std::map<std::string, double>>();
    report.regimes.primary_party = report.imbalance.primary;
    report.regimes.secondary_party = report.imbalance.secondary;

    for (const json& w : doc.at("windows")) {
      WindowResult window;
      window.start = w.at("start").get<double>();
      window.end = w.at("end").get<double>();
      window.label = regime_from_string(w.at("label").get<std::string>());
      window.dominance_fraction = w.at("fraction").get<double>();
      if (w.contains("dominant") && !w.at("dominant").is_null())
        window.dominant_party = w.at("dominant").get<std::string>();
      if (w.contains("talk"))
        window.talk_by_party = w.at("talk").get<std::map<std::string, double>>();
      report.regimes.windows.push_back(std::move(window));
    }

    const json& comp = doc.at("composition");
    report.composition.blue_frac = comp.at("blue").get<double>();
    report.composition.red_frac = comp.at("red").get<double>();
    report.composition.gray_frac = comp.at("gray").get<double>();
    report.stereotype = stereotype_from_string(doc.at("stereotype").get<std::string>());
    report.flips = doc.at("flips").get<int>();
    if (doc.contains("mixed") && !doc.at("mixed").is_null()) {
      MixedResult mixed;
      mixed.first = stereotype_from_string(doc.at("mixed").at("first").get<std::string>());
      mixed.last = stereotype_from_string(doc.at("mixed").at("last").get<std::string>());
      mixed.transition = doc.at("mixed").at("transition").get<bool>();
      report.mixed = mixed;
    }
    return report;
  } catch (const json::exception& err) {
    throw ParseError(std::string("report: ") + err.what());
  }
}

}  // namespace talkshare
