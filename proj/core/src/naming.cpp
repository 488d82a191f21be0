#include "rcanav/naming.hpp"

#include <algorithm>

namespace rcanav {

std::string NameRegistry::name(const std::string& context, const ObjectSet& extent) {
  auto key = std::make_pair(context, extent);
  if (auto it = index_.find(key); it != index_.end()) return entries_[it->second].name;
  std::size_t n = ++counters_[context];
  std::string name = "C_" + context + "_" + std::to_string(n);
  entries_.push_back(Entry{context, extent, name});
  index_.emplace(std::move(key), entries_.size() - 1);
  by_name_.emplace(name, entries_.size() - 1);
  return entries_.back().name;
}

std::optional<std::string> NameRegistry::find(const std::string& context,
                                              const ObjectSet& extent) const {
  auto it = index_.find(std::make_pair(context, extent));
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].name;
}

const NameRegistry::Entry* NameRegistry::resolve(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &entries_[it->second];
}

void NameRegistry::register_batch(const std::string& context, std::vector<ObjectSet> extents) {
  std::sort(extents.begin(), extents.end(), NamingOrder{});
  for (const auto& e : extents) name(context, e);
}

std::string concept_name(const std::string& ctx_id, const Concept& c,
                         NameRegistry& registry) {
  return registry.name(ctx_id, c.extent);
}

}  // namespace rcanav
