#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cetana/core.hpp"
#include "cetana/mindfulness.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cetana {

// trace.csv columns, one row per tick:
//   t, pixels, focus, mental, feeling, factors, menu, selected,
//   world_kind, world_cells [, layer]
// Inner lists join with ';'; fields containing ',', '"' or newlines are
// RFC-quoted. The layer column appears when a tracked object is configured.
std::string trace_to_csv(const Trace& tr, const std::optional<int>& tracked_object = {},
                         double theta = kPresenceTheta);

// Rebuilds entries from a trace.csv body. Seed and scenario id are not part
// of the file; callers that need them take them from the scenario.
Trace trace_from_csv(const std::string& text);

std::string csv_escape(const std::string& field);
std::vector<std::string> csv_split_row(const std::string& line);

// write-temp-then-rename so partial artifacts never appear under the final
// name.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace cetana
