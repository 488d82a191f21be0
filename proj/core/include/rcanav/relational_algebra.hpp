#pragma once

#include "rcanav/attribute.hpp"
#include "rcanav/context.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rcanav {

struct StrategyEntry {
  std::string relation;
  ScalingOperator op = ScalingOperator::existential;

  friend auto operator<=>(const StrategyEntry&, const StrategyEntry&) = default;
};

/// The (relation, scaling operator) pairs chosen for an exploration step.
using Strategy = std::set<StrategyEntry>;

/// Parses "support:exists,other:forall" (operator tokens as in parse_operator).
/// The operator is taken after the last ':' so relation names may contain ':'.
/// Throws Error{invalid_strategy}.
Strategy parse_strategy(std::string_view text);

/// Throws Error{unknown_relation} for entries naming relations absent from rcf.
void validate_strategy(const RelationalContextFamily& rcf, const Strategy& strategy);

/// Relational intersection of two attribute sets of `ctx_id` given by their
/// maximal relational attributes: the normal form of the intersection of their
/// downward closures. Pairs of relational attributes over the same relation and
/// operator are combined into the join of their target concepts, recursively
/// through the stored target intents.
AttributeSet intersect(const RelationalContextFamily& rcf, std::string_view ctx_id,
                       const AttributeSet& a, const AttributeSet& b);

/// Intent of an object set: folds intersect() over the stored descriptions,
/// starting from every explicitly known attribute. intent_of(∅) is the normal
/// form of all known attributes.
AttributeSet intent_of(const RelationalContextFamily& rcf, std::string_view ctx_id,
                       const ObjectSet& objects);

/// Extent of an attribute set. Intrinsic attributes use the incidence;
/// ∃ r.(X,Y) requires r(o) ∩ X ≠ ∅; ∃∀ r.(X,Y) requires ∅ ≠ r(o) ⊆ X. Relational
/// attributes need not be stored in the context.
ObjectSet extent_of(const RelationalContextFamily& rcf, std::string_view ctx_id,
                    const AttributeSet& attributes);

/// extent_of(intent_of(objects)).
ObjectSet closure(const RelationalContextFamily& rcf, std::string_view ctx_id,
                  const ObjectSet& objects);

/// Lowest concept whose extent contains `object`, using the relational-aware
/// derivation so the result stays correct after growth.
Concept object_concept(const RelationalContextFamily& rcf, std::string_view ctx_id,
                       std::size_t object);
Concept object_concept(const RelationalContextFamily& rcf, std::string_view ctx_id,
                       std::string_view object);

/// Deduplicated object-concepts in canonical extent order.
std::vector<Concept> object_poset(const RelationalContextFamily& rcf, std::string_view ctx_id);

/// Extends `ctx_id` for one object of relation `relation` under `op`.
/// For ∃, adds ∃ r.(X,Y) with a cross for `object` for every (X,Y) of
/// `object_concepts` meeting r(o). For ∃∀, adds ∃∀ r.(X_o,Y_o) with
/// Y_o = intent_of(target, r(o)) and X_o = extent_of(target, Y_o), skipping
/// objects with r(o) = ∅. Target derivations run on `rcf`. New attributes are
/// stamped with `step`.
FormalContext grow_context(const RelationalContextFamily& rcf, const FormalContext& ctx,
                           std::string_view relation, ScalingOperator op, std::size_t object,
                           const std::vector<Concept>& object_concepts, int step);

/// Applies every strategy entry whose relation has `ctx_id` as source (others
/// are ignored). All target derivations use the incoming snapshot. Returns the
/// extended family; its generation is bumped only if something changed.
RelationalContextFamily grow_all(const RelationalContextFamily& rcf, const Strategy& strategy,
                                 std::string_view ctx_id);

}  // namespace rcanav
