#pragma once

#include "rcanav/object_set.hpp"

#include <compare>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace rcanav {

enum class ScalingOperator { existential, universal_strict };

/// "∃" or "∃∀".
std::string_view symbol(ScalingOperator op);

/// Accepts "∃", "exists", "E" and "∃∀", "forall", "EA" (ASCII forms are
/// case-insensitive). Returns false on anything else.
bool parse_operator(std::string_view text, ScalingOperator& out);

class Attribute;
using AttributeSet = std::set<Attribute>;

/// ρ r.(X, Y): the objects related through `relation` to the target concept
/// (X, Y) as prescribed by `op`. Identity is (op, relation, target_extent);
/// `target_intent` is derived data and `step` records the RCF generation that
/// produced the intent. `digest` hashes the intent, nested intents and steps
/// included; make_relational() fills it in.
struct RelationalAttribute {
  ScalingOperator op = ScalingOperator::existential;
  std::string relation;
  ObjectSet target_extent;
  std::shared_ptr<const AttributeSet> target_intent;
  int step = 0;
  std::size_t digest = 0;

  const AttributeSet& intent() const;
};

bool operator==(const RelationalAttribute& a, const RelationalAttribute& b);
std::strong_ordering operator<=>(const RelationalAttribute& a, const RelationalAttribute& b);

/// Either an intrinsic attribute (a name) or a relational attribute.
/// Intrinsic attributes sort before relational ones.
class Attribute {
 public:
  Attribute(std::string name) : value_(std::move(name)) {}
  Attribute(const char* name) : value_(std::string(name)) {}
  Attribute(RelationalAttribute rel) : value_(std::move(rel)) {}

  bool is_intrinsic() const noexcept { return value_.index() == 0; }
  bool is_relational() const noexcept { return value_.index() == 1; }
  const std::string& name() const { return std::get<0>(value_); }
  const RelationalAttribute& relational() const { return std::get<1>(value_); }

  friend bool operator==(const Attribute&, const Attribute&) = default;
  friend std::strong_ordering operator<=>(const Attribute& a, const Attribute& b) {
    if (a.value_.index() != b.value_.index()) return a.value_.index() <=> b.value_.index();
    if (a.is_intrinsic()) return a.name() <=> b.name();
    return a.relational() <=> b.relational();
  }

 private:
  std::variant<std::string, RelationalAttribute> value_;
};

RelationalAttribute make_relational(ScalingOperator op, std::string relation, ObjectSet extent,
                                    AttributeSet intent, int step = 0);

/// Keeps, for every (relation, operator), only the relational attributes with
/// inclusion-minimal target extents (the attribute-wise maximal ones).
AttributeSet normalize(const AttributeSet& attributes);

/// True iff no relational attribute of the set is subsumed by another one over
/// the same relation and operator.
bool is_normal_form(const AttributeSet& attributes);

/// Structural equality that also compares target intents recursively.
bool deep_equal(const AttributeSet& a, const AttributeSet& b);

}  // namespace rcanav
