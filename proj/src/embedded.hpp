#pragma once

#include <string_view>

namespace defuse {

/// Contents of a bundled data file ("manuals/wire.txt", "prompts/solver.txt").
/// Empty view when absent.
std::string_view embedded_text(std::string_view name);

} // namespace defuse
