#include "rcanav/relational_algebra.hpp"

#include "rcanav/error.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>
#include <stdexcept>

namespace rcanav {

Strategy parse_strategy(std::string_view text) {
  Strategy out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      auto colon = item.rfind(':');
      ScalingOperator op;
      if (colon == std::string_view::npos || colon == 0 ||
          !parse_operator(item.substr(colon + 1), op)) {
        throw Error(ErrorCode::invalid_strategy,
                    "strategy entry '" + std::string(item) + "' is not <relation>:<operator>");
      }
      out.insert(StrategyEntry{std::string(item.substr(0, colon)), op});
    }
    start = end + 1;
  }
  return out;
}

void validate_strategy(const RelationalContextFamily& rcf, const Strategy& strategy) {
  for (const auto& entry : strategy) rcf.relation(entry.relation);
}

namespace detail {

// Joins keyed by operand value: identity, step and intent digest, with the
// intents compared one level deep on lookup.
struct JoinCache {
  struct Entry {
    RelationalAttribute x, y, result;
  };
  std::mutex mutex;
  std::unordered_map<std::size_t, std::vector<Entry>> joins;
};

std::shared_ptr<JoinCache> make_join_cache() { return std::make_shared<JoinCache>(); }

}  // namespace detail

namespace {

void check_steps(const RelationalAttribute& parent) {
  for (const auto& a : parent.intent()) {
    if (a.is_relational() && a.relational().step >= parent.step) {
      throw std::logic_error("relational attribute over '" + parent.relation +
                             "' references a target attribute that is not older than itself");
    }
  }
}

std::size_t operand_hash(const RelationalAttribute& r) {
  std::size_t h = r.target_extent.hash();
  boost::hash_combine(h, r.step);
  boost::hash_combine(h, r.digest);
  return h;
}

bool same_operand(const RelationalAttribute& a, const RelationalAttribute& b) {
  if (!(a == b) || a.step != b.step || a.digest != b.digest) return false;
  if (a.target_intent == b.target_intent) return true;
  if (a.intent() != b.intent()) return false;
  auto ib = b.intent().begin();
  for (const auto& x : a.intent()) {
    const auto& y = *ib++;
    if (!x.is_relational()) continue;
    if (x.relational().step != y.relational().step ||
        x.relational().digest != y.relational().digest)
      return false;
  }
  return true;
}

RelationalAttribute join(const RelationalContextFamily& rcf, const RelationalAttribute& x,
                         const RelationalAttribute& y);

AttributeSet intersect_impl(const RelationalContextFamily& rcf, const AttributeSet& a,
                            const AttributeSet& b) {
  AttributeSet out;
  using Key = std::pair<std::string, ScalingOperator>;
  std::map<Key, std::vector<const RelationalAttribute*>> left;
  for (const auto& x : a) {
    if (x.is_intrinsic()) {
      if (b.count(x)) out.insert(x);
    } else {
      left[{x.relational().relation, x.relational().op}].push_back(&x.relational());
    }
  }
  AttributeSet joins;
  for (const auto& y : b) {
    if (y.is_intrinsic()) continue;
    const auto& ry = y.relational();
    auto it = left.find({ry.relation, ry.op});
    if (it == left.end()) continue;
    for (const auto* rx : it->second) joins.insert(Attribute(join(rcf, *rx, ry)));
  }
  for (const auto& j : normalize(joins)) out.insert(j);
  return out;
}

// Join of the two target concepts: (Ex(Intersect(Y1, Y2)), Intersect(Y1, Y2)).
RelationalAttribute join(const RelationalContextFamily& rcf, const RelationalAttribute& x,
                         const RelationalAttribute& y) {
  // A closed extent containing the other one is already the join.
  if (x.target_extent.is_subset_of(y.target_extent)) return y;
  if (y.target_extent.is_subset_of(x.target_extent)) return x;
  const RelationalAttribute* a = &x;
  const RelationalAttribute* b = &y;
  std::size_t ha = operand_hash(x), hb = operand_hash(y);
  if (hb < ha) {
    std::swap(a, b);
    std::swap(ha, hb);
  }
  std::size_t key = ha;
  boost::hash_combine(key, hb);
  auto& cache = rcf.join_cache();
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.joins.find(key); it != cache.joins.end()) {
      for (const auto& e : it->second) {
        if (same_operand(e.x, *a) && same_operand(e.y, *b)) return e.result;
      }
    }
  }
  check_steps(x);
  check_steps(y);
  const auto& target = rcf.relation(x.relation).target();
  AttributeSet z = intersect_impl(rcf, a->intent(), b->intent());
  ObjectSet extent = extent_of(rcf, target, z);
  auto out = make_relational(x.op, x.relation, std::move(extent), std::move(z),
                             std::max(x.step, y.step));
  std::lock_guard lock(cache.mutex);
  cache.joins[key].push_back({*a, *b, out});
  return out;
}

void validate_attributes(const RelationalContextFamily& rcf, std::string_view ctx_id,
                         const AttributeSet& attributes) {
  const auto& ctx = rcf.context(ctx_id);
  for (const auto& a : attributes) {
    if (a.is_intrinsic()) {
      if (!ctx.has_intrinsic(a.name())) {
        throw Error(ErrorCode::unknown_attribute,
                    "unknown attribute '" + a.name() + "' in context " + ctx.id());
      }
      continue;
    }
    const auto& r = a.relational();
    const auto& rel = rcf.relation(r.relation);
    if (rel.source() != ctx.id() || r.target_extent.universe() != rel.target_size()) {
      throw Error(ErrorCode::unknown_attribute, "relational attribute over '" + r.relation +
                                                    "' does not belong to context " + ctx.id());
    }
  }
}

void validate_objects(const FormalContext& ctx, const ObjectSet& objects) {
  if (objects.universe() != ctx.object_count()) {
    throw Error(ErrorCode::unknown_object, "object set does not belong to context " + ctx.id());
  }
}

std::vector<std::pair<RelationalAttribute, ObjectSet>> growth_for(
    const RelationalContextFamily& rcf, const FormalContext& ctx, const RelationalContext& rel,
    ScalingOperator op, std::size_t object, const std::vector<Concept>& object_concepts,
    int step) {
  std::vector<std::pair<RelationalAttribute, ObjectSet>> out;
  const ObjectSet& related = rel.successors(object);
  ObjectSet cross(ctx.object_count());
  cross.insert(object);
  if (op == ScalingOperator::existential) {
    for (const auto& oc : object_concepts) {
      if (related.intersects(oc.extent)) {
        out.emplace_back(make_relational(op, rel.name(), oc.extent, oc.intent, step), cross);
      }
    }
  } else if (!related.empty()) {
    AttributeSet y = intent_of(rcf, rel.target(), related);
    ObjectSet x = extent_of(rcf, rel.target(), y);
    out.emplace_back(make_relational(op, rel.name(), std::move(x), std::move(y), step), cross);
  }
  return out;
}

}  // namespace

AttributeSet intersect(const RelationalContextFamily& rcf, std::string_view ctx_id,
                       const AttributeSet& a, const AttributeSet& b) {
  validate_attributes(rcf, ctx_id, a);
  validate_attributes(rcf, ctx_id, b);
  return intersect_impl(rcf, a, b);
}

AttributeSet intent_of(const RelationalContextFamily& rcf, std::string_view ctx_id,
                       const ObjectSet& objects) {
  const auto& ctx = rcf.context(ctx_id);
  validate_objects(ctx, objects);
  AttributeSet a = normalize(ctx.attributes());
  objects.for_each([&](std::size_t o) { a = intersect_impl(rcf, a, ctx.description(o)); });
  return a;
}

ObjectSet extent_of(const RelationalContextFamily& rcf, std::string_view ctx_id,
                    const AttributeSet& attributes) {
  validate_attributes(rcf, ctx_id, attributes);
  const auto& ctx = rcf.context(ctx_id);
  ObjectSet out = ctx.all_objects();
  for (const auto& a : attributes) {
    if (a.is_intrinsic()) {
      out &= *ctx.column(a);
      continue;
    }
    const auto& r = a.relational();
    const auto& rel = rcf.relation(r.relation);
    ObjectSet keep(ctx.object_count());
    out.for_each([&](std::size_t o) {
      const ObjectSet& related = rel.successors(o);
      bool holds = r.op == ScalingOperator::existential
                       ? related.intersects(r.target_extent)
                       : !related.empty() && related.is_subset_of(r.target_extent);
      if (holds) keep.insert(o);
    });
    out = std::move(keep);
  }
  return out;
}

ObjectSet closure(const RelationalContextFamily& rcf, std::string_view ctx_id,
                  const ObjectSet& objects) {
  return extent_of(rcf, ctx_id, intent_of(rcf, ctx_id, objects));
}

Concept object_concept(const RelationalContextFamily& rcf, std::string_view ctx_id,
                       std::size_t object) {
  const auto& ctx = rcf.context(ctx_id);
  if (object >= ctx.object_count()) {
    throw Error(ErrorCode::unknown_object, "object index out of range in context " + ctx.id());
  }
  ObjectSet single(ctx.object_count());
  single.insert(object);
  AttributeSet intent = intent_of(rcf, ctx_id, single);
  ObjectSet extent = extent_of(rcf, ctx_id, intent);
  return Concept{ctx.id(), std::move(extent), std::move(intent)};
}

Concept object_concept(const RelationalContextFamily& rcf, std::string_view ctx_id,
                       std::string_view object) {
  const auto& ctx = rcf.context(ctx_id);
  auto index = ctx.object_index(object);
  if (!index) {
    throw Error(ErrorCode::unknown_object,
                "unknown object '" + std::string(object) + "' in context " + ctx.id());
  }
  return object_concept(rcf, ctx_id, *index);
}

std::vector<Concept> object_poset(const RelationalContextFamily& rcf, std::string_view ctx_id) {
  const auto& ctx = rcf.context(ctx_id);
  std::map<ObjectSet, Concept, CanonicalOrder> unique;
  for (std::size_t o = 0; o < ctx.object_count(); ++o) {
    auto c = object_concept(rcf, ctx_id, o);
    auto extent = c.extent;
    unique.emplace(std::move(extent), std::move(c));
  }
  std::vector<Concept> out;
  out.reserve(unique.size());
  for (auto& [extent, c] : unique) out.push_back(std::move(c));
  return out;
}

FormalContext grow_context(const RelationalContextFamily& rcf, const FormalContext& ctx,
                           std::string_view relation, ScalingOperator op, std::size_t object,
                           const std::vector<Concept>& object_concepts, int step) {
  const auto& rel = rcf.relation(relation);
  if (rel.source() != ctx.id() || object >= ctx.object_count()) {
    throw Error(ErrorCode::unknown_object, "relation " + rel.name() +
                                               " does not start at the given object of context " +
                                               ctx.id());
  }
  return ctx.with_relational(growth_for(rcf, ctx, rel, op, object, object_concepts, step));
}

RelationalContextFamily grow_all(const RelationalContextFamily& rcf, const Strategy& strategy,
                                 std::string_view ctx_id) {
  const FormalContext& home = rcf.context(ctx_id);
  const int step = rcf.generation() + 1;
  std::vector<std::pair<RelationalAttribute, ObjectSet>> additions;
  for (const auto& entry : strategy) {
    const auto& rel = rcf.relation(entry.relation);
    if (rel.source() != home.id()) continue;
    std::vector<Concept> poset;
    if (entry.op == ScalingOperator::existential) poset = object_poset(rcf, rel.target());
    for (std::size_t o = 0; o < home.object_count(); ++o) {
      auto grown = growth_for(rcf, home, rel, entry.op, o, poset, step);
      additions.insert(additions.end(), grown.begin(), grown.end());
    }
    // Existing attributes over this relation get their target intents
    // recomputed on the current target snapshot; their crosses are unchanged.
    for (const auto& existing : home.relational_attributes()) {
      if (existing.relation != entry.relation || existing.op != entry.op) continue;
      AttributeSet fresh = intent_of(rcf, rel.target(), existing.target_extent);
      if (deep_equal(fresh, existing.intent())) continue;
      additions.emplace_back(make_relational(existing.op, existing.relation,
                                             existing.target_extent, std::move(fresh), step),
                             home.no_objects());
    }
  }
  FormalContext grown = home.with_relational(additions);
  if (grown == home) return rcf;
  RelationalContextFamily out = rcf;
  out.replace_context(std::move(grown));
  out.set_generation(step);
  return out;
}

}  // namespace rcanav
