#pragma once

#include "rcanav/attribute.hpp"
#include "rcanav/object_set.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rcanav {

/// Objects × attributes incidence table. Objects and intrinsic attributes are
/// kept in lexicographic name order; relational attributes are only ever added
/// by growth, which yields a new snapshot.
class FormalContext {
 public:
  FormalContext() = default;

  /// `incidence` pairs are (object, intrinsic attribute) names. Throws
  /// Error{duplicate_name} for repeated names and Error{unknown_object} /
  /// Error{unknown_attribute} for pairs referencing undeclared names.
  FormalContext(std::string id, std::vector<std::string> objects,
                std::vector<std::string> attributes,
                const std::vector<std::pair<std::string, std::string>>& incidence);

  const std::string& id() const noexcept { return id_; }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<std::string>& intrinsic_attributes() const noexcept { return intrinsic_; }
  const std::vector<RelationalAttribute>& relational_attributes() const noexcept {
    return relational_;
  }
  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t attribute_count() const noexcept { return intrinsic_.size() + relational_.size(); }

  std::optional<std::size_t> object_index(std::string_view name) const;
  const std::string& object_name(std::size_t index) const { return objects_.at(index); }

  ObjectSet no_objects() const { return ObjectSet(objects_.size()); }
  ObjectSet all_objects() const { return ObjectSet::full(objects_.size()); }
  /// Throws Error{unknown_object}.
  ObjectSet objects_named(std::span<const std::string> names) const;
  ObjectSet objects_named(std::initializer_list<std::string> names) const {
    return objects_named(std::span<const std::string>(names.begin(), names.size()));
  }
  std::vector<std::string> names_of(const ObjectSet& set) const;

  /// Every explicitly known attribute (intrinsic and stored relational).
  AttributeSet attributes() const;
  /// The stored row of one object: intrinsic attributes plus relational
  /// attributes carrying a cross for it.
  AttributeSet description(std::size_t object) const;

  bool has_intrinsic(std::string_view name) const;
  /// Stored column of an explicitly known attribute, or nullopt.
  std::optional<ObjectSet> column(const Attribute& attribute) const;

  /// New snapshot with the given relational attributes and crosses merged in.
  /// Crosses of an attribute already present are unioned and its target intent
  /// and step are replaced by the incoming ones.
  FormalContext with_relational(
      const std::vector<std::pair<RelationalAttribute, ObjectSet>>& additions) const;

  friend bool operator==(const FormalContext& a, const FormalContext& b);

 private:
  std::string id_;
  std::vector<std::string> objects_;
  std::vector<std::string> intrinsic_;
  std::vector<ObjectSet> intrinsic_columns_;
  std::vector<RelationalAttribute> relational_;
  std::vector<ObjectSet> relational_columns_;
};

/// Directed object–object relation r ⊆ O_source × O_target.
class RelationalContext {
 public:
  RelationalContext() = default;
  RelationalContext(std::string name, const FormalContext& source, const FormalContext& target,
                    const std::vector<std::pair<std::string, std::string>>& pairs);

  const std::string& name() const noexcept { return name_; }
  const std::string& source() const noexcept { return source_; }
  const std::string& target() const noexcept { return target_; }

  /// r(o) as a set of target objects.
  const ObjectSet& successors(std::size_t source_object) const {
    return successors_.at(source_object);
  }
  std::size_t source_size() const noexcept { return successors_.size(); }
  std::size_t target_size() const noexcept { return target_size_; }

  friend bool operator==(const RelationalContext&, const RelationalContext&) = default;

 private:
  std::string name_;
  std::string source_;
  std::string target_;
  std::size_t target_size_ = 0;
  std::vector<ObjectSet> successors_;
};

/// (K, R): formal contexts plus the relations between their object sets.
/// Values are immutable snapshots; growth returns a new family.
namespace detail {
struct JoinCache;
std::shared_ptr<JoinCache> make_join_cache();
}  // namespace detail

class RelationalContextFamily {
 public:
  RelationalContextFamily() : joins_(detail::make_join_cache()) {}

  /// Throws Error{duplicate_name} if the id is already taken.
  void add_context(FormalContext context);
  /// Throws Error{dangling_endpoint} if an endpoint context is missing.
  void add_relation(std::string name, const std::string& source, const std::string& target,
                    const std::vector<std::pair<std::string, std::string>>& pairs);

  const std::map<std::string, FormalContext>& contexts() const noexcept { return contexts_; }
  const std::map<std::string, RelationalContext>& relations() const noexcept {
    return relations_;
  }

  /// Throws Error{unknown_context}.
  const FormalContext& context(std::string_view id) const;
  /// Throws Error{unknown_relation}.
  const RelationalContext& relation(std::string_view name) const;

  void replace_context(FormalContext context);

  /// Number of growth operations that changed this family.
  int generation() const noexcept { return generation_; }
  void set_generation(int g) noexcept { generation_ = g; }

  friend bool operator==(const RelationalContextFamily& a, const RelationalContextFamily& b) {
    return a.contexts_ == b.contexts_ && a.relations_ == b.relations_;
  }

  /// Memo of target-concept joins, valid for the current contents. Copies
  /// share it until one of them is modified.
  detail::JoinCache& join_cache() const { return *joins_; }

 private:
  std::map<std::string, FormalContext> contexts_;
  std::map<std::string, RelationalContext> relations_;
  int generation_ = 0;
  std::shared_ptr<detail::JoinCache> joins_;
};

/// (extent, intent) of the context `home`. Intents are kept in maximal normal
/// form (see normalize()).
struct Concept {
  std::string home;
  ObjectSet extent;
  AttributeSet intent;

  friend bool operator==(const Concept&, const Concept&) = default;
};

/// Classic derivation on the stored incidence: attributes shared by every
/// object of `objects`. Throws Error{unknown_object} on a universe mismatch.
AttributeSet prime_objects(const FormalContext& ctx, const ObjectSet& objects);

/// Objects carrying every attribute of `attributes` in the stored incidence.
/// Throws Error{unknown_attribute} for attributes not stored in the context.
ObjectSet prime_attributes(const FormalContext& ctx, const AttributeSet& attributes);

}  // namespace rcanav
