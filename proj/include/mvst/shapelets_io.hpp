#pragma once

// JSON serialization of shapelet sets and CSV export of feature matrices.

#include <mvst/error.hpp>
#include <mvst/shapelets.hpp>
#include <mvst/text.hpp>

#include <json.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace mvst::io {

  using Json = nlohmann::ordered_json;

  inline Json to_json(const ResolvedSearchConfig& c) {
    Json j;
    j["variant"] = std::string(to_string(c.variant));
    j["minLength"] = c.min_length;
    j["maxLength"] = c.max_length;
    j["k"] = c.k;
    j["seed"] = c.seed;
    j["timeBudget"] = c.time_budget ? Json(*c.time_budget) : Json(nullptr);
    j["totalShapelets"] = c.total_shapelets ? Json(*c.total_shapelets) : Json(nullptr);
    j["normalize"] = c.normalize;
    return j;
  }

  inline Json to_json(const ShapeletCandidate& s) {
    Json j;
    j["variant"] = std::string(to_string(s.variant));
    j["length"] = s.coords.length;
    j["originInstance"] = s.coords.instance;
    j["originPosition"] = s.coords.position;
    j["originDim"] = s.coords.dim;
    j["quality"] = s.quality ? Json(*s.quality) : Json(nullptr);
    j["targetClass"] = s.target_class;
    j["normalized"] = s.normalized;
    j["channels"] = s.channels;
    return j;
  }

  inline ShapeletCandidate shapelet_from_json(const Json& j) {
    try {
      ShapeletCandidate s;
      s.variant = parse_shapelet_variant(j.at("variant").get<std::string>());
      s.coords.length = j.at("length").get<std::size_t>();
      s.coords.instance = j.at("originInstance").get<std::size_t>();
      s.coords.position = j.at("originPosition").get<std::size_t>();
      s.coords.dim = j.at("originDim").get<std::size_t>();
      if (!j.at("quality").is_null()) { s.quality = j.at("quality").get<double>(); }
      s.target_class = j.at("targetClass").get<std::string>();
      s.normalized = j.at("normalized").get<bool>();
      s.channels = j.at("channels").get<std::vector<std::vector<double>>>();
      if (s.channels.empty()) { throw ParseError("shapelet has no channels"); }
      if (s.variant == ShapeletVariant::Independent && s.channels.size() != 1) {
        throw ParseError("independent shapelet must have exactly one channel");
      }
      for (const auto& ch : s.channels) {
        if (ch.size() != s.coords.length) { throw ParseError("channel length disagrees with shapelet length"); }
      }
      return s;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed shapelet entry: ") + e.what());
    }
  }

  /// A shapelet set plus the search settings that produced it.
  struct ShapeletSet {
    std::vector<ShapeletCandidate> shapelets;
    Json config;
    Json manifest;
  };

  inline Json shapelet_set_to_json(const std::vector<ShapeletCandidate>& shapelets, const Json& config,
                                   const Json& manifest = Json()) {
    Json j;
    j["format"] = "mvst-shapelets";
    j["version"] = 1;
    if (!manifest.is_null()) { j["manifest"] = manifest; }
    j["config"] = config;
    Json arr = Json::array();
    for (const auto& s : shapelets) { arr.push_back(to_json(s)); }
    j["shapelets"] = std::move(arr);
    return j;
  }

  inline ShapeletSet shapelet_set_from_json(const Json& j) {
    if (!j.is_object() || j.value("format", "") != "mvst-shapelets") {
      throw ParseError("not a shapelet set (missing format tag)");
    }
    ShapeletSet set;
    set.config = j.value("config", Json());
    set.manifest = j.value("manifest", Json());
    if (!j.contains("shapelets") || !j["shapelets"].is_array()) { throw ParseError("missing shapelets array"); }
    for (const auto& e : j["shapelets"]) { set.shapelets.push_back(shapelet_from_json(e)); }
    return set;
  }

  inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw IoError("cannot write '" + path + "'"); }
    out << j.dump(2) << '\n';
    if (!out) { throw IoError("write failed for '" + path + "'"); }
  }

  inline Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw IoError("cannot open '" + path + "'"); }
    try {
      return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
  }

  /// CSV with header `label,s0,...,s{k-1}`; optional manifest lines prefixed with '#'.
  inline void write_feature_csv(std::ostream& out, const FeatureMatrix& fm, const Json& manifest = Json()) {
    if (!manifest.is_null()) { write_comment_block(out, "manifest " + manifest.dump()); }
    out << "label";
    for (std::size_t j = 0; j < fm.cols; ++j) { out << ",s" << j; }
    out << '\n';
    for (std::size_t i = 0; i < fm.rows; ++i) {
      out << fm.labels[i];
      for (std::size_t j = 0; j < fm.cols; ++j) { out << ',' << format_double(fm.at(i, j)); }
      out << '\n';
    }
  }

  inline void write_feature_csv_file(const std::string& path, const FeatureMatrix& fm, const Json& manifest = Json()) {
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw IoError("cannot write '" + path + "'"); }
    write_feature_csv(out, fm, manifest);
    if (!out) { throw IoError("write failed for '" + path + "'"); }
  }

} // namespace mvst::io
