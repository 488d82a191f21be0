#pragma once

#include "rcanav/context.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace rcanav {

/// Structured form: a JSON object
///   { "format": "rcf/1",
///     "contexts": [ { "id", "objects", "attributes",
///                     "incidence": [[object, attribute], ...]
///                     | "rows": { object: [attribute, ...] } } ],
///     "relations": [ { "name", "source", "target", "pairs": [[s, t], ...] } ] }
/// Unknown fields are rejected; errors are ParseError with a JSON pointer, and
/// a line/column for syntax errors.
RelationalContextFamily parse_rcf_json(std::string_view text);

/// Cross-table form, one table per context and per relation:
///
///   format rcf-table 1
///   context DM_tools
///   |        | OS:Windows | DM:ETL |
///   | Astah  | x          |        |
///   relation support: DM_tools -> DBMS
///   |        | MySQL |
///   | Astah  | x     |
///
/// Cells are "x"/"X" (cross) or empty/"."; '#' starts a comment line.
/// Errors are ParseError with line and column.
RelationalContextFamily parse_rcf_table(std::string_view text);

/// Dispatches on the first non-blank character: '{' selects JSON.
RelationalContextFamily parse_rcf(std::string_view text);
RelationalContextFamily load_rcf(const std::filesystem::path& path);

/// Serialises the intrinsic data of a family (grown relational attributes are
/// derived data and are not written).
std::string serialize_rcf_json(const RelationalContextFamily& rcf);
std::string serialize_rcf_table(const RelationalContextFamily& rcf);

}  // namespace rcanav
