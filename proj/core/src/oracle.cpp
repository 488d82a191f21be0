#include "rcanav/oracle.hpp"

#include "rcanav/error.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rcanav::oracle {

std::optional<std::size_t> Lattice::find(const ObjectSet& extent) const {
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    if (concepts[i].extent == extent) return i;
  }
  return std::nullopt;
}

namespace {

struct Table {
  std::vector<Attribute> attributes;
  std::vector<ObjectSet> columns;
  std::size_t objects = 0;
};

Table table_of(const FormalContext& ctx) {
  Table t;
  t.objects = ctx.object_count();
  for (const auto& a : ctx.attributes()) {
    t.columns.push_back(*ctx.column(a));
    t.attributes.push_back(a);
  }
  return t;
}

std::vector<bool> derive(const Table& t, const ObjectSet& extent) {
  std::vector<bool> intent(t.attributes.size());
  for (std::size_t j = 0; j < t.columns.size(); ++j) intent[j] = extent.is_subset_of(t.columns[j]);
  return intent;
}

void close_by_one(const Table& t, const ObjectSet& extent, const std::vector<bool>& intent,
                  std::size_t from, std::vector<std::pair<ObjectSet, std::vector<bool>>>& out) {
  out.emplace_back(extent, intent);
  for (std::size_t j = from; j < t.attributes.size(); ++j) {
    if (intent[j]) continue;
    ObjectSet c = extent & t.columns[j];
    auto d = derive(t, c);
    bool canonical = true;
    for (std::size_t k = 0; k < j; ++k) {
      if (d[k] != intent[k]) {
        canonical = false;
        break;
      }
    }
    if (canonical) close_by_one(t, c, d, j + 1, out);
  }
}

}  // namespace

Lattice build_lattice(const FormalContext& ctx) {
  Table t = table_of(ctx);
  std::vector<std::pair<ObjectSet, std::vector<bool>>> raw;
  ObjectSet top = ctx.all_objects();
  close_by_one(t, top, derive(t, top), 0, raw);

  Lattice lattice;
  lattice.context = ctx.id();
  for (const auto& [extent, bits] : raw) {
    AttributeSet intent;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j]) intent.insert(t.attributes[j]);
    }
    lattice.concepts.push_back(Concept{ctx.id(), extent, std::move(intent)});
  }
  std::sort(lattice.concepts.begin(), lattice.concepts.end(),
            [](const Concept& a, const Concept& b) { return CanonicalOrder{}(a.extent, b.extent); });

  const auto& cs = lattice.concepts;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (!cs[i].extent.is_proper_subset_of(cs[j].extent)) continue;
      bool between = false;
      for (std::size_t k = 0; k < cs.size() && !between; ++k) {
        between = cs[i].extent.is_proper_subset_of(cs[k].extent) &&
                  cs[k].extent.is_proper_subset_of(cs[j].extent);
      }
      if (!between) lattice.covers.emplace_back(i, j);
    }
  }
  return lattice;
}

AttributeSet maximal_form(const AttributeSet& intent) {
  AttributeSet out;
  for (const auto& a : intent) {
    if (a.is_intrinsic()) {
      out.insert(a);
      continue;
    }
    const auto& r = a.relational();
    bool dominated = false;
    for (const auto& b : intent) {
      if (!b.is_relational()) continue;
      const auto& s = b.relational();
      if (s.relation == r.relation && s.op == r.op &&
          s.target_extent.is_proper_subset_of(r.target_extent)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.insert(a);
  }
  return out;
}

FormalContext scale(const RelationalContextFamily& rcf, const std::string& home,
                    const Strategy& strategy, const std::map<std::string, Lattice>& targets,
                    int step) {
  const FormalContext& base = rcf.context(home);
  std::vector<std::pair<RelationalAttribute, ObjectSet>> additions;
  for (const auto& entry : strategy) {
    const auto& rel = rcf.relation(entry.relation);
    if (rel.source() != home) continue;
    const Lattice& target = targets.at(rel.target());
    for (const auto& c : target.concepts) {
      ObjectSet column(base.object_count());
      for (std::size_t o = 0; o < base.object_count(); ++o) {
        const ObjectSet& related = rel.successors(o);
        bool holds = false;
        if (entry.op == ScalingOperator::existential) {
          holds = (related & c.extent).size() > 0;
        } else {
          holds = related.size() > 0 && (related - c.extent).size() == 0;
        }
        if (holds) column.insert(o);
      }
      if (column.empty()) continue;
      additions.emplace_back(
          make_relational(entry.op, rel.name(), c.extent, maximal_form(c.intent), step), column);
    }
  }
  return base.with_relational(additions);
}

Lattice one_step_lattice(const RelationalContextFamily& rcf, const Strategy& strategy,
                         const std::string& home) {
  std::map<std::string, Lattice> targets;
  for (const auto& entry : strategy) {
    const auto& rel = rcf.relation(entry.relation);
    if (rel.source() != home || targets.count(rel.target())) continue;
    targets.emplace(rel.target(), build_lattice(rcf.context(rel.target())));
  }
  return build_lattice(scale(rcf, home, strategy, targets, rcf.generation() + 1));
}

Fixpoint rca_fixpoint(const RelationalContextFamily& rcf, const Strategy& strategy) {
  constexpr int kMaxIterations = 256;
  Fixpoint fp;
  for (const auto& [id, ctx] : rcf.contexts()) {
    fp.contexts.emplace(id, ctx);
    fp.lattices.emplace(id, build_lattice(ctx));
  }
  for (int iteration = 1; iteration <= kMaxIterations; ++iteration) {
    std::map<std::string, FormalContext> next;
    for (const auto& [id, ctx] : rcf.contexts()) {
      next.emplace(id, scale(rcf, id, strategy, fp.lattices, iteration));
    }
    if (next == fp.contexts) {
      fp.iterations = iteration - 1;
      return fp;
    }
    fp.contexts = std::move(next);
    for (const auto& [id, ctx] : fp.contexts) fp.lattices[id] = build_lattice(ctx);
  }
  throw std::logic_error("RCA fixpoint did not stabilise");
}

Neighborhood neighborhood_from_lattice(const Lattice& lattice, const RelationalContextFamily& rcf,
                                       const ObjectSet& extent) {
  auto index = lattice.find(extent);
  if (!index) {
    throw Error(ErrorCode::not_closed, "extent is not in the lattice of " + lattice.context);
  }
  auto completed = [&](const Concept& c) {
    return Concept{c.home, c.extent, maximal_form(c.intent)};
  };
  Neighborhood n;
  n.focus = completed(lattice.concepts[*index]);
  for (const auto& [lo, hi] : lattice.covers) {
    if (hi == *index) n.lower.push_back(completed(lattice.concepts[lo]));
    if (lo == *index) n.upper.push_back(completed(lattice.concepts[hi]));
  }
  for (const auto& a : n.focus.intent) {
    if (!a.is_relational()) continue;
    const auto& r = a.relational();
    n.relational.push_back(RelationalCover{
        r.relation, r.op, Concept{rcf.relation(r.relation).target(), r.target_extent, r.intent()}});
  }
  auto by_extent = [](const Concept& a, const Concept& b) {
    return CanonicalOrder{}(a.extent, b.extent);
  };
  std::sort(n.lower.begin(), n.lower.end(), by_extent);
  std::sort(n.upper.begin(), n.upper.end(), by_extent);
  return n;
}

namespace {

bool same_concept(const Concept& a, const Concept& b) {
  return a.home == b.home && a.extent == b.extent && deep_equal(a.intent, b.intent);
}

bool same_list(const std::vector<Concept>& a, const std::vector<Concept>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_concept(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool same_neighborhood(const Neighborhood& a, const Neighborhood& b) {
  if (!same_concept(a.focus, b.focus) || !same_list(a.upper, b.upper) ||
      !same_list(a.lower, b.lower) || a.relational.size() != b.relational.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.relational.size(); ++i) {
    const auto& x = a.relational[i];
    const auto& y = b.relational[i];
    if (x.relation != y.relation || x.op != y.op || !same_concept(x.target, y.target)) {
      return false;
    }
  }
  return true;
}

std::vector<ObjectSet> brute_force_min_transversals(const std::vector<ObjectSet>& family,
                                                    std::size_t universe) {
  std::vector<ObjectSet> hitting;
  for (std::size_t mask = 0; mask < (std::size_t{1} << universe); ++mask) {
    ObjectSet t(universe);
    for (std::size_t v = 0; v < universe; ++v) {
      if (mask & (std::size_t{1} << v)) t.insert(v);
    }
    bool hits_all = std::all_of(family.begin(), family.end(),
                                [&](const ObjectSet& m) { return (m & t).size() > 0; });
    if (hits_all) hitting.push_back(t);
  }
  std::vector<ObjectSet> out;
  for (const auto& t : hitting) {
    bool minimal = std::none_of(hitting.begin(), hitting.end(),
                                [&](const ObjectSet& h) { return h.is_proper_subset_of(t); });
    if (minimal) out.push_back(t);
  }
  std::sort(out.begin(), out.end(), CanonicalOrder{});
  return out;
}

EquivalenceReport check_equivalence(const RelationalContextFamily& rcf, const Strategy& strategy,
                                    const std::string& home) {
  EquivalenceReport report;
  Lattice lattice = one_step_lattice(rcf, strategy, home);
  const auto& ctx = rcf.context(home);
  for (const auto& c : lattice.concepts) {
    ++report.concepts_checked;
    auto expected = neighborhood_from_lattice(lattice, rcf, c.extent);
    std::string failure;
    try {
      auto got = rca_step(rcf, strategy, Concept{home, c.extent, {}}).neighborhood;
      if (!same_neighborhood(got, expected)) failure = "neighbourhoods differ";
    } catch (const std::exception& e) {
      failure = e.what();
    }
    if (!failure.empty()) {
      std::ostringstream os;
      os << home << " {";
      const char* sep = "";
      for (const auto& name : ctx.names_of(c.extent)) {
        os << sep << name;
        sep = ", ";
      }
      os << "}: " << failure;
      report.mismatches.push_back(os.str());
    }
  }
  return report;
}

}  // namespace rcanav::oracle
