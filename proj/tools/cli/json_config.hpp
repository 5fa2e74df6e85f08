// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace bcrelay::cli {

/// JSON config files for CLI11. Keys are long flag names without dashes.
/// Top-level scalars belong to the subcommand being run; an object keyed by
/// a subcommand name applies only to that subcommand:
///
///   {"ps-db": 10, "workers": 4, "figure": {"blocks": 100000}}
class JsonConfig : public CLI::Config {
public:
  explicit JsonConfig(std::string active_subcommand) : active_(std::move(active_subcommand)) {}

  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

private:
  std::string active_;
};

/// Values of every option of `app` that was given (or has a default) as JSON.
nlohmann::json options_as_json(const CLI::App& app);

} // namespace bcrelay::cli
