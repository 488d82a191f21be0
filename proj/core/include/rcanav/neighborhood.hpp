#pragma once

#include "rcanav/context.hpp"
#include "rcanav/relational_algebra.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rcanav {

/// A target concept reached through a maximal relational attribute of the
/// focus intent.
struct RelationalCover {
  std::string relation;
  ScalingOperator op = ScalingOperator::existential;
  Concept target;

  friend bool operator==(const RelationalCover&, const RelationalCover&) = default;
};

/// A completed focus concept with its closed relational neighbourhood. Cover
/// lists are in canonical extent order; relational covers follow the intent.
struct Neighborhood {
  Concept focus;
  std::vector<Concept> upper;
  std::vector<Concept> lower;
  std::vector<RelationalCover> relational;

  friend bool operator==(const Neighborhood&, const Neighborhood&) = default;
};

struct StepResult {
  RelationalContextFamily rcf;
  Neighborhood neighborhood;
};

/// Inclusion-minimal subsets G of the closed extent `extent` with
/// closure(G) = extent, enumerated breadth-first by size. Returns {∅} when the
/// extent is the closure of the empty set. Throws Error{not_closed}.
std::vector<ObjectSet> min_generators(const RelationalContextFamily& rcf, std::string_view ctx_id,
                                      const ObjectSet& extent);

/// Minimal transversals of a set family (Berge multiplication). All members
/// must share one universe. Throws Error{empty_member} for an empty member and
/// Error{invalid_request} for an empty family.
std::vector<ObjectSet> min_transversals(const std::vector<ObjectSet>& family);

/// (extent_of(A), intent_of(extent_of(A))).
Concept concept_from_query(const RelationalContextFamily& rcf, std::string_view ctx_id,
                           const AttributeSet& attributes);

/// One exploration step: grows the focus' home context along the strategy,
/// completes the focus intent and computes its upper, lower and relational
/// covers in the grown snapshot. Throws Error{not_closed} if the focus extent
/// is not closed after growth and Error{unknown_relation} for strategies
/// naming unknown relations.
StepResult rca_step(const RelationalContextFamily& rcf, const Strategy& strategy,
                    const Concept& focus);

/// Neighbourhood of `extent` in the snapshot as is (no growth).
Neighborhood neighborhood_of(const RelationalContextFamily& rcf, std::string_view ctx_id,
                             const ObjectSet& extent);

}  // namespace rcanav
