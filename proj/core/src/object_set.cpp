#include "rcanav/object_set.hpp"

#include <algorithm>

namespace rcanav {

ObjectSet::ObjectSet(std::size_t universe, std::initializer_list<std::size_t> members)
    : bits_(universe) {
  for (auto m : members) bits_.set(m);
}

ObjectSet ObjectSet::full(std::size_t universe) {
  ObjectSet s(universe);
  s.bits_.set();
  return s;
}

std::vector<std::size_t> ObjectSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

int compare_lexicographic(const ObjectSet& a, const ObjectSet& b) {
  auto ia = a.indices();
  auto ib = b.indices();
  std::size_t n = std::min(ia.size(), ib.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (ia[k] != ib[k]) return ia[k] < ib[k] ? -1 : 1;
  }
  if (ia.size() == ib.size()) return 0;
  return ia.size() < ib.size() ? -1 : 1;
}

}  // namespace rcanav
