// SPDX-License-Identifier: Apache-2.0
#include "json_config.hpp"

namespace bcrelay::cli {

namespace {

std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_boolean()) {
    return v.get<bool>() ? "true" : "false";
  }
  if (v.is_number() || v.is_null()) {
    return v.dump();
  }
  throw CLI::ConversionError("config: nested arrays/objects are not option values");
}

void collect(const nlohmann::json& obj, const std::vector<std::string>& parents,
             std::vector<CLI::ConfigItem>& out) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      auto p = parents;
      p.push_back(key);
      collect(value, p, out);
      continue;
    }
    if (value.is_null()) {
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    if (value.is_array()) {
      for (const auto& v : value) {
        item.inputs.push_back(scalar_text(v));
      }
    } else {
      item.inputs.push_back(scalar_text(value));
    }
    out.push_back(std::move(item));
  }
}

std::string option_key(const CLI::Option& o) {
  return o.get_lnames().empty() ? o.get_name() : o.get_lnames().front();
}

} // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(input);
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) {
    throw CLI::ConversionError("config: top level must be a JSON object");
  }
  std::vector<CLI::ConfigItem> items;
  // Sections named after a subcommand are routed by CLI11; the rest belong
  // to the active subcommand.
  nlohmann::json flat = nlohmann::json::object();
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      collect(value, {key}, items);
    } else {
      flat[key] = value;
    }
  }
  std::vector<std::string> parents;
  if (!active_.empty()) {
    parents.push_back(active_);
  }
  collect(flat, parents, items);
  return items;
}

nlohmann::json options_as_json(const CLI::App& app) {
  return nlohmann::json::parse(JsonConfig("").to_config(&app, true, false, ""));
}

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
  nlohmann::json j = nlohmann::json::object();
  for (const CLI::Option* o : app->get_options()) {
    const std::string key = option_key(*o);
    if (key == "help" || key == "config") {
      continue;
    }
    if (o->count() > 0) {
      const auto& r = o->results();
      j[key] = r.size() == 1 ? nlohmann::json(r.front()) : nlohmann::json(r);
    } else if (default_also && !o->get_default_str().empty()) {
      j[key] = o->get_default_str();
    }
  }
  for (const CLI::App* sub : app->get_subcommands()) {
    j[sub->get_name()] = nlohmann::json::parse(to_config(sub, default_also, false, ""));
  }
  return j.dump(2) + "\n";
}

} // namespace bcrelay::cli
