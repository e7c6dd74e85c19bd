#include "presets.hpp"

#include <algorithm>

namespace lvis::app {

std::optional<Preset> find_preset(std::string_view name) {
    if (name == "beam") name = "current_setup";
    if (name == "deflect") name = "deflection";
    const auto& all = builtin_presets();
    const auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
    if (it == all.end()) return std::nullopt;
    return *it;
}

std::string_view default_preset(Mode mode) noexcept {
    switch (mode) {
        case Mode::beam: return "current_setup";
        case Mode::deflect: return "deflection";
        case Mode::sweep: return "sweep";
        case Mode::lens: return "lens";
        case Mode::finesse: return "finesse";
    }
    return "current_setup";
}

}  // namespace lvis::app
