#include "rcanav/context.hpp"

#include "rcanav/error.hpp"

#include <algorithm>

namespace rcanav {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> names, const std::string& where,
                                       const char* kind) {
  std::sort(names.begin(), names.end());
  auto dup = std::adjacent_find(names.begin(), names.end());
  if (dup != names.end()) {
    throw Error(ErrorCode::duplicate_name,
                "duplicate " + std::string(kind) + " '" + *dup + "' in " + where);
  }
  return names;
}

std::optional<std::size_t> index_in(const std::vector<std::string>& sorted, std::string_view name) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), name);
  if (it == sorted.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

FormalContext::FormalContext(std::string id, std::vector<std::string> objects,
                             std::vector<std::string> attributes,
                             const std::vector<std::pair<std::string, std::string>>& incidence)
    : id_(std::move(id)),
      objects_(sorted_unique(std::move(objects), "context " + id_, "object")),
      intrinsic_(sorted_unique(std::move(attributes), "context " + id_, "attribute")),
      intrinsic_columns_(intrinsic_.size(), ObjectSet(objects_.size())) {
  for (const auto& [object, attribute] : incidence) {
    auto o = index_in(objects_, object);
    if (!o) {
      throw Error(ErrorCode::unknown_object,
                  "incidence references unknown object '" + object + "' in context " + id_);
    }
    auto a = index_in(intrinsic_, attribute);
    if (!a) {
      throw Error(ErrorCode::unknown_attribute,
                  "incidence references unknown attribute '" + attribute + "' in context " + id_);
    }
    intrinsic_columns_[*a].insert(*o);
  }
}

std::optional<std::size_t> FormalContext::object_index(std::string_view name) const {
  return index_in(objects_, name);
}

ObjectSet FormalContext::objects_named(std::span<const std::string> names) const {
  ObjectSet out(objects_.size());
  for (const auto& n : names) {
    auto i = object_index(n);
    if (!i) throw Error(ErrorCode::unknown_object, "unknown object '" + n + "' in context " + id_);
    out.insert(*i);
  }
  return out;
}

std::vector<std::string> FormalContext::names_of(const ObjectSet& set) const {
  std::vector<std::string> out;
  set.for_each([&](std::size_t i) { out.push_back(objects_.at(i)); });
  return out;
}

AttributeSet FormalContext::attributes() const {
  AttributeSet out(intrinsic_.begin(), intrinsic_.end());
  for (const auto& r : relational_) out.insert(Attribute(r));
  return out;
}

AttributeSet FormalContext::description(std::size_t object) const {
  AttributeSet out;
  for (std::size_t a = 0; a < intrinsic_.size(); ++a) {
    if (intrinsic_columns_[a].contains(object)) out.insert(Attribute(intrinsic_[a]));
  }
  for (std::size_t a = 0; a < relational_.size(); ++a) {
    if (relational_columns_[a].contains(object)) out.insert(Attribute(relational_[a]));
  }
  return out;
}

bool FormalContext::has_intrinsic(std::string_view name) const {
  return index_in(intrinsic_, name).has_value();
}

std::optional<ObjectSet> FormalContext::column(const Attribute& attribute) const {
  if (attribute.is_intrinsic()) {
    auto a = index_in(intrinsic_, attribute.name());
    if (!a) return std::nullopt;
    return intrinsic_columns_[*a];
  }
  auto it = std::lower_bound(relational_.begin(), relational_.end(), attribute.relational());
  if (it == relational_.end() || !(*it == attribute.relational())) return std::nullopt;
  return relational_columns_[static_cast<std::size_t>(it - relational_.begin())];
}

FormalContext FormalContext::with_relational(
    const std::vector<std::pair<RelationalAttribute, ObjectSet>>& additions) const {
  FormalContext next = *this;
  for (const auto& [attr, crosses] : additions) {
    auto it = std::lower_bound(next.relational_.begin(), next.relational_.end(), attr);
    auto pos = static_cast<std::size_t>(it - next.relational_.begin());
    if (it != next.relational_.end() && *it == attr) {
      *it = attr;
      next.relational_columns_[pos] |= crosses;
    } else {
      next.relational_.insert(it, attr);
      next.relational_columns_.insert(next.relational_columns_.begin() + pos, crosses);
    }
  }
  return next;
}

bool operator==(const FormalContext& a, const FormalContext& b) {
  if (a.id_ != b.id_ || a.objects_ != b.objects_ || a.intrinsic_ != b.intrinsic_ ||
      a.intrinsic_columns_ != b.intrinsic_columns_ || a.relational_ != b.relational_ ||
      a.relational_columns_ != b.relational_columns_) {
    return false;
  }
  for (std::size_t i = 0; i < a.relational_.size(); ++i) {
    if (!deep_equal(a.relational_[i].intent(), b.relational_[i].intent())) return false;
  }
  return true;
}

RelationalContext::RelationalContext(std::string name, const FormalContext& source,
                                     const FormalContext& target,
                                     const std::vector<std::pair<std::string, std::string>>& pairs)
    : name_(std::move(name)),
      source_(source.id()),
      target_(target.id()),
      target_size_(target.object_count()),
      successors_(source.object_count(), ObjectSet(target.object_count())) {
  for (const auto& [from, to] : pairs) {
    auto s = source.object_index(from);
    if (!s) {
      throw Error(ErrorCode::dangling_endpoint, "relation " + name_ + " references object '" +
                                                    from + "' missing from context " + source_);
    }
    auto t = target.object_index(to);
    if (!t) {
      throw Error(ErrorCode::dangling_endpoint, "relation " + name_ + " references object '" + to +
                                                    "' missing from context " + target_);
    }
    successors_[*s].insert(*t);
  }
}

void RelationalContextFamily::add_context(FormalContext context) {
  auto id = context.id();
  if (contexts_.count(id)) throw Error(ErrorCode::duplicate_name, "duplicate context '" + id + "'");
  contexts_.emplace(id, std::move(context));
  joins_ = detail::make_join_cache();
}

void RelationalContextFamily::add_relation(
    std::string name, const std::string& source, const std::string& target,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (relations_.count(name)) {
    throw Error(ErrorCode::duplicate_name, "duplicate relation '" + name + "'");
  }
  auto s = contexts_.find(source);
  auto t = contexts_.find(target);
  if (s == contexts_.end() || t == contexts_.end()) {
    throw Error(ErrorCode::dangling_endpoint,
                "relation " + name + " has an endpoint outside the family (" + source + " -> " +
                    target + ")");
  }
  RelationalContext rel(name, s->second, t->second, pairs);
  relations_.emplace(std::move(name), std::move(rel));
  joins_ = detail::make_join_cache();
}

const FormalContext& RelationalContextFamily::context(std::string_view id) const {
  auto it = contexts_.find(std::string(id));
  if (it == contexts_.end()) {
    throw Error(ErrorCode::unknown_context, "unknown context '" + std::string(id) + "'");
  }
  return it->second;
}

const RelationalContext& RelationalContextFamily::relation(std::string_view name) const {
  auto it = relations_.find(std::string(name));
  if (it == relations_.end()) {
    throw Error(ErrorCode::unknown_relation, "unknown relation '" + std::string(name) + "'");
  }
  return it->second;
}

void RelationalContextFamily::replace_context(FormalContext context) {
  auto it = contexts_.find(context.id());
  if (it == contexts_.end()) {
    throw Error(ErrorCode::unknown_context, "unknown context '" + context.id() + "'");
  }
  it->second = std::move(context);
  joins_ = detail::make_join_cache();
}

AttributeSet prime_objects(const FormalContext& ctx, const ObjectSet& objects) {
  if (objects.universe() != ctx.object_count()) {
    throw Error(ErrorCode::unknown_object, "object set does not belong to context " + ctx.id());
  }
  AttributeSet out;
  for (const auto& a : ctx.attributes()) {
    if (objects.is_subset_of(*ctx.column(a))) out.insert(a);
  }
  return out;
}

ObjectSet prime_attributes(const FormalContext& ctx, const AttributeSet& attributes) {
  ObjectSet out = ctx.all_objects();
  for (const auto& a : attributes) {
    auto col = ctx.column(a);
    if (!col) {
      std::string what = a.is_intrinsic() ? "'" + a.name() + "'" : "relational attribute";
      throw Error(ErrorCode::unknown_attribute, what + " not stored in context " + ctx.id());
    }
    out &= *col;
  }
  return out;
}

}  // namespace rcanav
