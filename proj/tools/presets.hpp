#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"

namespace lvis::app {

struct Preset {
    std::string_view name;
    std::string_view text;
};

/// Presets compiled in from presets/*.ini, sorted by name.
[[nodiscard]] const std::vector<Preset>& builtin_presets();

/// Looks up a preset by name or alias (`beam`, `deflect`).
[[nodiscard]] std::optional<Preset> find_preset(std::string_view name);

/// Preset used when a subcommand gets neither --config nor --preset.
[[nodiscard]] std::string_view default_preset(Mode mode) noexcept;

}  // namespace lvis::app
