#include "rcanav/attribute.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace rcanav {

std::string_view symbol(ScalingOperator op) {
  return op == ScalingOperator::existential ? "∃" : "∃∀";
}

bool parse_operator(std::string_view text, ScalingOperator& out) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (text == "∃" || lower == "exists" || lower == "e") {
    out = ScalingOperator::existential;
    return true;
  }
  if (text == "∃∀" || lower == "forall" || lower == "ea") {
    out = ScalingOperator::universal_strict;
    return true;
  }
  return false;
}

namespace {
const AttributeSet kEmpty;
}

const AttributeSet& RelationalAttribute::intent() const {
  return target_intent ? *target_intent : kEmpty;
}

bool operator==(const RelationalAttribute& a, const RelationalAttribute& b) {
  return a.op == b.op && a.relation == b.relation && a.target_extent == b.target_extent;
}

std::strong_ordering operator<=>(const RelationalAttribute& a, const RelationalAttribute& b) {
  if (auto c = a.relation <=> b.relation; c != 0) return c;
  if (auto c = a.op <=> b.op; c != 0) return c;
  if (a.target_extent.size() != b.target_extent.size())
    return a.target_extent.size() <=> b.target_extent.size();
  return compare_lexicographic(a.target_extent, b.target_extent) <=> 0;
}

RelationalAttribute make_relational(ScalingOperator op, std::string relation, ObjectSet extent,
                                    AttributeSet intent, int step) {
  std::size_t digest = intent.size();
  for (const auto& a : intent) {
    if (a.is_intrinsic()) {
      boost::hash_combine(digest, a.name());
      continue;
    }
    const auto& r = a.relational();
    boost::hash_combine(digest, r.relation);
    boost::hash_combine(digest, static_cast<int>(r.op));
    boost::hash_combine(digest, r.target_extent.hash());
    boost::hash_combine(digest, r.step);
    boost::hash_combine(digest, r.digest);
  }
  return RelationalAttribute{op,
                             std::move(relation),
                             std::move(extent),
                             std::make_shared<const AttributeSet>(std::move(intent)),
                             step,
                             digest};
}

AttributeSet normalize(const AttributeSet& attributes) {
  AttributeSet out;
  std::map<std::pair<std::string, ScalingOperator>, std::vector<const RelationalAttribute*>> groups;
  for (const auto& a : attributes) {
    if (a.is_intrinsic()) {
      out.insert(a);
    } else {
      groups[{a.relational().relation, a.relational().op}].push_back(&a.relational());
    }
  }
  for (const auto& [key, members] : groups) {
    for (const auto* m : members) {
      bool subsumed = std::any_of(members.begin(), members.end(), [&](const auto* other) {
        return other->target_extent.is_proper_subset_of(m->target_extent);
      });
      if (!subsumed) out.insert(Attribute(*m));
    }
  }
  return out;
}

bool is_normal_form(const AttributeSet& attributes) {
  return normalize(attributes).size() == attributes.size();
}

bool deep_equal(const AttributeSet& a, const AttributeSet& b) {
  if (a != b) return false;
  auto ib = b.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
    if (!ia->is_relational()) continue;
    const auto& x = ia->relational();
    const auto& y = ib->relational();
    if (x.target_intent == y.target_intent) continue;
    if (!deep_equal(x.intent(), y.intent())) return false;
  }
  return true;
}

}  // namespace rcanav
