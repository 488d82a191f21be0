#include "rcanav/neighborhood.hpp"

#include "rcanav/error.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rcanav {

namespace {

void sort_canonical(std::vector<Concept>& concepts) {
  std::sort(concepts.begin(), concepts.end(), [](const Concept& a, const Concept& b) {
    return CanonicalOrder{}(a.extent, b.extent);
  });
}

// Calls f on every k-subset of `pool` (given as member indices), in
// lexicographic order of index positions.
template <typename F>
void for_each_subset(const std::vector<std::size_t>& pool, std::size_t k, std::size_t universe,
                     F&& f) {
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    ObjectSet s(universe);
    for (auto p : pick) s.insert(pool[p]);
    f(s);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == pool.size() - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

std::vector<ObjectSet> min_generators(const RelationalContextFamily& rcf, std::string_view ctx_id,
                                      const ObjectSet& extent) {
  if (closure(rcf, ctx_id, extent) != extent) {
    throw Error(ErrorCode::not_closed,
                "object set is not an extent of context " + std::string(ctx_id));
  }
  std::vector<ObjectSet> found;
  const auto pool = extent.indices();
  for (std::size_t k = 0; k <= pool.size(); ++k) {
    for_each_subset(pool, k, extent.universe(), [&](const ObjectSet& g) {
      bool pruned = std::any_of(found.begin(), found.end(),
                                [&](const ObjectSet& f) { return f.is_subset_of(g); });
      if (!pruned && closure(rcf, ctx_id, g) == extent) found.push_back(g);
    });
  }
  return found;
}

std::vector<ObjectSet> min_transversals(const std::vector<ObjectSet>& family) {
  if (family.empty()) throw Error(ErrorCode::invalid_request, "transversals of an empty family");
  const std::size_t universe = family.front().universe();
  for (const auto& member : family) {
    if (member.universe() != universe) {
      throw Error(ErrorCode::invalid_request, "family members use different universes");
    }
    if (member.empty()) throw Error(ErrorCode::empty_member, "family has an empty member");
  }
  std::vector<ObjectSet> current{ObjectSet(universe)};
  for (const auto& member : family) {
    std::vector<ObjectSet> next;
    for (const auto& t : current) {
      if (t.intersects(member)) {
        next.push_back(t);
        continue;
      }
      member.for_each([&](std::size_t v) {
        ObjectSet grown = t;
        grown.insert(v);
        next.push_back(std::move(grown));
      });
    }
    std::sort(next.begin(), next.end(), CanonicalOrder{});
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current.clear();
    for (const auto& t : next) {
      bool dominated = std::any_of(current.begin(), current.end(),
                                   [&](const ObjectSet& kept) { return kept.is_subset_of(t); });
      if (!dominated) current.push_back(t);
    }
  }
  return current;
}

Concept concept_from_query(const RelationalContextFamily& rcf, std::string_view ctx_id,
                           const AttributeSet& attributes) {
  ObjectSet extent = extent_of(rcf, ctx_id, attributes);
  AttributeSet intent = intent_of(rcf, ctx_id, extent);
  return Concept{rcf.context(ctx_id).id(), std::move(extent), std::move(intent)};
}

Neighborhood neighborhood_of(const RelationalContextFamily& rcf, std::string_view ctx_id,
                             const ObjectSet& extent) {
  const auto& ctx = rcf.context(ctx_id);
  if (extent.universe() != ctx.object_count()) {
    throw Error(ErrorCode::unknown_object, "focus extent does not belong to context " + ctx.id());
  }
  Neighborhood n;
  n.focus = Concept{ctx.id(), extent, intent_of(rcf, ctx_id, extent)};
  if (extent_of(rcf, ctx_id, n.focus.intent) != extent) {
    throw Error(ErrorCode::not_closed, "focus is not a concept of context " + ctx.id());
  }

  for (const auto& a : n.focus.intent) {
    if (!a.is_relational()) continue;
    const auto& r = a.relational();
    n.relational.push_back(RelationalCover{
        r.relation, r.op, Concept{rcf.relation(r.relation).target(), r.target_extent, r.intent()}});
  }

  auto generators = min_generators(rcf, ctx_id, extent);
  bool is_bottom = generators.size() == 1 && generators.front().empty();
  if (!is_bottom) {
    for (const auto& t : min_transversals(generators)) {
      ObjectSet rest = extent - t;
      AttributeSet intent = intent_of(rcf, ctx_id, rest);
      if (extent_of(rcf, ctx_id, intent) != rest) {
        throw std::logic_error("lower cover candidate is not closed in context " + ctx.id());
      }
      n.lower.push_back(Concept{ctx.id(), std::move(rest), std::move(intent)});
    }
  }

  std::map<ObjectSet, Concept, CanonicalOrder> candidates;
  for (std::size_t o = 0; o < ctx.object_count(); ++o) {
    if (extent.contains(o)) continue;
    ObjectSet seed = extent;
    seed.insert(o);
    AttributeSet intent = intent_of(rcf, ctx_id, seed);
    ObjectSet closed = extent_of(rcf, ctx_id, intent);
    candidates.try_emplace(closed, Concept{ctx.id(), closed, std::move(intent)});
  }
  for (const auto& [x, c] : candidates) {
    bool minimal = std::none_of(candidates.begin(), candidates.end(), [&](const auto& other) {
      return other.first.is_proper_subset_of(x);
    });
    if (minimal) n.upper.push_back(c);
  }

  sort_canonical(n.lower);
  sort_canonical(n.upper);
  return n;
}

StepResult rca_step(const RelationalContextFamily& rcf, const Strategy& strategy,
                    const Concept& focus) {
  validate_strategy(rcf, strategy);
  RelationalContextFamily grown = grow_all(rcf, strategy, focus.home);
  Neighborhood n = neighborhood_of(grown, focus.home, focus.extent);
  return StepResult{std::move(grown), std::move(n)};
}

}  // namespace rcanav
