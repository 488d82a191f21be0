#pragma once

#include "rcanav/attribute.hpp"
#include "rcanav/context.hpp"
#include "rcanav/naming.hpp"
#include "rcanav/neighborhood.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace rcanav {

/// Intrinsic attributes render as their name, relational ones as
/// "∃ r.(C_<target>_<n>)" / "∃∀ r.(C_<target>_<n>)".
std::string display(const Attribute& attribute, const RelationalContextFamily& rcf,
                    NameRegistry& registry);

nlohmann::json concept_json(const Concept& c, const RelationalContextFamily& rcf,
                            NameRegistry& registry);

/// {context, focus, upper, lower, relational}. Concepts carry name, context,
/// extent and intent; relational intent entries carry the display string plus a
/// structured target reference.
nlohmann::json neighborhood_json(const Neighborhood& n, const RelationalContextFamily& rcf,
                                 NameRegistry& registry);

/// Graphviz rendering of the local view: focus (bold), upper covers above,
/// lower covers below, dashed edges to relational covers labelled "∃ r"/"∃∀ r".
std::string export_neighborhood_dot(const Neighborhood& n, const RelationalContextFamily& rcf,
                                    NameRegistry& registry);

/// Plain-text rendering for terminals.
std::string render_table(const Neighborhood& n, const RelationalContextFamily& rcf,
                         NameRegistry& registry);

}  // namespace rcanav
