#include "properties.hpp"

#include "support/testing.hpp"

#include "rcanav/neighborhood.hpp"
#include "rcanav/oracle.hpp"
#include "rcanav/rcf_io.hpp"
#include "rcanav/session.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace rcanav::testing {

namespace {

struct Case {
  RelationalContextFamily rcf;
  std::string home;
  Strategy strategy;
};

std::string pick_context(std::mt19937& rng, const RelationalContextFamily& rcf) {
  std::uniform_int_distribution<std::size_t> d(0, rcf.contexts().size() - 1);
  return std::next(rcf.contexts().begin(), static_cast<long>(d(rng)))->first;
}

Case random_case(std::mt19937& rng, bool need_relation = false) {
  for (;;) {
    Case c;
    c.rcf = random_rcf(rng);
    if (need_relation && c.rcf.relations().empty()) continue;
    if (need_relation) {
      std::uniform_int_distribution<std::size_t> d(0, c.rcf.relations().size() - 1);
      c.home = std::next(c.rcf.relations().begin(), static_cast<long>(d(rng)))->second.source();
    } else {
      c.home = pick_context(rng, c.rcf);
    }
    c.strategy = random_strategy(rng, c.rcf, c.home);
    return c;
  }
}

bool includes(const AttributeSet& big, const AttributeSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

AttributeSet random_attributes(std::mt19937& rng, const AttributeSet& from, double p = 0.3) {
  std::bernoulli_distribution keep(p);
  AttributeSet out;
  for (const auto& a : from) {
    if (keep(rng)) out.insert(a);
  }
  return out;
}

std::string describe(const ObjectSet& s) {
  std::ostringstream os;
  os << '{';
  const char* sep = "";
  for (auto i : s.indices()) {
    os << sep << i;
    sep = ",";
  }
  os << '}';
  return os.str();
}

// Runs `body` for every case; a body returns an empty string on success.
PropertyResult run(std::uint32_t seed, int cases,
                   const std::function<std::string(std::mt19937&)>& body) {
  PropertyResult result;
  std::mt19937 rng(seed);
  for (int i = 0; i < cases; ++i) {
    ++result.cases;
    std::string failure;
    try {
      failure = body(rng);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (!failure.empty()) {
      if (result.failures++ == 0) {
        result.first_failure = "seed " + std::to_string(seed) + " case " + std::to_string(i) +
                               ": " + failure;
      }
    }
  }
  return result;
}

std::vector<ObjectSet> sorted(std::vector<ObjectSet> v) {
  std::sort(v.begin(), v.end(), CanonicalOrder{});
  return v;
}

}  // namespace

PropertyResult galois_laws(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto rcf = random_rcf(rng);
    const auto& ctx = rcf.context(pick_context(rng, rcf));
    const auto all = ctx.attributes();
    for (int trial = 0; trial < 20; ++trial) {
      auto o = random_subset(rng, ctx.object_count());
      auto a = random_attributes(rng, all, 0.4);
      if (o.is_subset_of(prime_attributes(ctx, a)) != includes(prime_objects(ctx, o), a)) {
        return "O ⊆ A' and A ⊆ O' disagree for O=" + describe(o);
      }
      auto o2 = o | random_subset(rng, ctx.object_count());
      if (!includes(prime_objects(ctx, o), prime_objects(ctx, o2))) {
        return "prime_objects is not antitone";
      }
      auto a2 = a;
      for (const auto& x : random_attributes(rng, all)) a2.insert(x);
      if (!prime_attributes(ctx, a2).is_subset_of(prime_attributes(ctx, a))) {
        return "prime_attributes is not antitone";
      }
    }
    if (prime_objects(ctx, ctx.no_objects()) != all) return "∅' is not every attribute";
    if (prime_attributes(ctx, {}) != ctx.all_objects()) return "∅' is not every object";
    if (object_poset(rcf, ctx.id()).size() > ctx.object_count()) return "object poset too large";
    return {};
  });
}

PropertyResult closure_idempotence(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto c = random_case(rng);
    auto grown = grow_all(c.rcf, c.strategy, c.home);
    const auto& ctx = grown.context(c.home);
    for (int trial = 0; trial < 10; ++trial) {
      auto o = random_subset(rng, ctx.object_count(), 0.35);
      auto closed = closure(grown, c.home, o);
      if (!o.is_subset_of(closed)) return "closure is not extensive for " + describe(o);
      if (closure(grown, c.home, closed) != closed) return "closure is not idempotent for " + describe(o);
      if (!deep_equal(intent_of(grown, c.home, closed), intent_of(grown, c.home, o))) {
        return "intent of the closure differs for " + describe(o);
      }
      auto bigger = o | random_subset(rng, ctx.object_count(), 0.35);
      if (!closed.is_subset_of(closure(grown, c.home, bigger))) return "closure is not monotone";

      auto plain = prime_attributes(ctx, prime_objects(ctx, o));
      if (prime_attributes(ctx, prime_objects(ctx, plain)) != plain) {
        return "plain closure is not idempotent";
      }
    }
    return {};
  });
}

PropertyResult normal_form_losslessness(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto c = random_case(rng, true);
    for (const auto& [name, rel] : c.rcf.relations()) {
      if (rel.source() == c.home) c.strategy.insert({name, ScalingOperator::existential});
    }
    auto grown = grow_all(c.rcf, c.strategy, c.home);
    const auto& ctx = grown.context(c.home);
    for (const auto& entry : c.strategy) {
      if (entry.op != ScalingOperator::existential) continue;
      const auto& rel = c.rcf.relation(entry.relation);
      auto targets = oracle::build_lattice(c.rcf.context(rel.target()));
      for (std::size_t o = 0; o < ctx.object_count(); ++o) {
        auto row = normalize(ctx.description(o));
        for (const auto& t : targets.concepts) {
          if (t.extent.empty()) continue;
          auto attr = make_relational(ScalingOperator::existential, entry.relation, t.extent,
                                      intent_of(c.rcf, rel.target(), t.extent));
          bool implied = extent_of(grown, c.home, {attr}).contains(o);
          bool stored = false;
          for (const auto& a : row) {
            if (!a.is_relational()) continue;
            const auto& r = a.relational();
            stored |= r.relation == entry.relation && r.op == ScalingOperator::existential &&
                      r.target_extent.is_subset_of(t.extent);
          }
          if (implied != stored) {
            return "object " + ctx.object_name(o) + " and target " + describe(t.extent) +
                   ": implied " + std::to_string(implied) + ", stored " + std::to_string(stored);
          }
        }
      }
    }
    const auto all = ctx.attributes();
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_attributes(rng, all, 0.5);
      if (extent_of(grown, c.home, a) != extent_of(grown, c.home, normalize(a))) {
        return "normalize changed an extent";
      }
      auto o = random_subset(rng, ctx.object_count(), 0.4);
      auto intent = intent_of(grown, c.home, o);
      if (!is_normal_form(intent)) return "intent_of is not in normal form";
      auto other = intent_of(grown, c.home, random_subset(rng, ctx.object_count(), 0.4));
      if (!is_normal_form(intersect(grown, c.home, intent, other))) {
        return "intersect is not in normal form";
      }
      if (extent_of(grown, c.home, intent_of(grown, c.home, closure(grown, c.home, o))) !=
          closure(grown, c.home, o)) {
        return "extent_of(intent_of(O)) != O for a closed O";
      }
    }
    return {};
  });
}

PropertyResult universal_strict_semantics(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto c = random_case(rng, true);
    for (const auto& [name, rel] : c.rcf.relations()) {
      const auto& source = c.rcf.context(rel.source());
      const auto& target = c.rcf.context(rel.target());
      for (int trial = 0; trial < 8; ++trial) {
        auto x = random_subset(rng, target.object_count());
        auto intent = intent_of(c.rcf, rel.target(), x);
        auto ea = make_relational(ScalingOperator::universal_strict, name, x, intent);
        auto e = make_relational(ScalingOperator::existential, name, x, intent);
        ObjectSet want_ea(source.object_count()), want_e(source.object_count());
        for (std::size_t o = 0; o < source.object_count(); ++o) {
          const auto& succ = rel.successors(o);
          if (!succ.empty() && succ.is_subset_of(x)) want_ea.insert(o);
          if (succ.intersects(x)) want_e.insert(o);
        }
        if (extent_of(c.rcf, rel.source(), {ea}) != want_ea) return "∃∀ extent wrong for " + describe(x);
        if (extent_of(c.rcf, rel.source(), {e}) != want_e) return "∃ extent wrong for " + describe(x);
      }
    }
    // stored ∃∀ columns follow the definition too
    Strategy forall;
    for (const auto& [name, rel] : c.rcf.relations()) {
      if (rel.source() == c.home) forall.insert({name, ScalingOperator::universal_strict});
    }
    auto grown = grow_all(c.rcf, forall, c.home);
    const auto& ctx = grown.context(c.home);
    for (const auto& a : ctx.relational_attributes()) {
      const auto& rel = grown.relation(a.relation);
      auto column = *ctx.column(Attribute(a));
      for (std::size_t o = 0; o < ctx.object_count(); ++o) {
        const auto& succ = rel.successors(o);
        if (column.contains(o) && (succ.empty() || !succ.is_subset_of(a.target_extent))) {
          return "stored ∃∀ cross for " + ctx.object_name(o) + " violates the definition";
        }
        if (succ.empty() && column.contains(o)) return "∃∀ cross without successors";
      }
    }
    return {};
  });
}

PropertyResult lower_cover_transversal_bijection(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto c = random_case(rng);
    auto grown = grow_all(c.rcf, c.strategy, c.home);
    auto lattice = oracle::one_step_lattice(c.rcf, c.strategy, c.home);
    for (std::size_t i = 0; i < lattice.concepts.size(); ++i) {
      const auto& extent = lattice.concepts[i].extent;
      std::vector<ObjectSet> expected;
      for (const auto& [lo, hi] : lattice.covers) {
        if (hi == i) expected.push_back(lattice.concepts[lo].extent);
      }
      auto gens = min_generators(grown, c.home, extent);
      std::vector<ObjectSet> got;
      if (!(gens.size() == 1 && gens.front().empty())) {
        for (const auto& t : min_transversals(gens)) {
          auto lower = extent - t;
          if (closure(grown, c.home, lower) != lower) return "O∖T is not closed for " + describe(extent);
          got.push_back(lower);
        }
      }
      auto s = sorted(got);
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        return "two transversals give the same lower cover of " + describe(extent);
      }
      if (s != sorted(expected)) return "lower covers differ for " + describe(extent);
    }
    return {};
  });
}

PropertyResult growth_monotone_idempotent(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto c = random_case(rng);
    auto grown = grow_all(c.rcf, c.strategy, c.home);
    auto contained = [](const RelationalContextFamily& small, const RelationalContextFamily& big) {
      for (const auto& [id, ctx] : small.contexts()) {
        const auto& other = big.context(id);
        if (other.objects() != ctx.objects()) return false;
        for (const auto& a : ctx.attributes()) {
          auto before = ctx.column(a);
          auto after = other.column(a);
          if (!after || *before != *after) return false;
        }
      }
      return small.relations() == big.relations();
    };
    if (!contained(c.rcf, grown)) return "growth removed or changed an existing column";
    if (grown.generation() < c.rcf.generation()) return "generation went backwards";

    auto again = grow_all(grown, c.strategy, c.home);
    if (!contained(grown, again)) return "regrowth removed or changed a column";
    bool self_loop = false;
    for (const auto& e : c.strategy) self_loop |= c.rcf.relation(e.relation).target() == c.home;
    if (!self_loop && !(again == grown)) return "growth is not idempotent";
    if (!self_loop && again.generation() != grown.generation()) return "idle growth bumped the generation";
    return {};
  });
}

PropertyResult replay_determinism(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto c = random_case(rng);
    Session session(c.rcf, c.home, c.strategy);
    std::vector<std::string> dumps;
    std::map<std::string, std::size_t> widths;
    auto monotone = [&]() {
      for (const auto& [id, ctx] : session.snapshot().contexts()) {
        auto& w = widths[id];
        if (ctx.attribute_count() < w) return false;
        w = ctx.attribute_count();
      }
      return true;
    };

    std::vector<std::string> query;
    std::bernoulli_distribution take(0.3);
    for (const auto& a : c.rcf.context(c.home).intrinsic_attributes()) {
      if (take(rng)) query.push_back(a);
    }
    auto response = session.query(query);
    dumps.push_back(response.dump());
    if (!monotone()) return "snapshot shrank";
    for (int k = 0; k < 4; ++k) {
      std::vector<std::pair<Direction, std::string>> moves;
      for (const auto& u : response["upper"]) moves.emplace_back(Direction::up, u["name"]);
      for (const auto& l : response["lower"]) moves.emplace_back(Direction::down, l["name"]);
      for (const auto& r : response["relational"]) {
        moves.emplace_back(Direction::relational, r["concept"]["name"]);
      }
      if (moves.empty()) break;
      std::uniform_int_distribution<std::size_t> d(0, moves.size() - 1);
      const auto& [dir, target] = moves[d(rng)];
      response = session.step(dir, target);
      dumps.push_back(response.dump());
      if (!monotone()) return "snapshot shrank";
    }

    auto again = replay(c.rcf, c.home, c.strategy, session.log());
    if (again.size() != dumps.size()) return "replay length differs";
    for (std::size_t i = 0; i < dumps.size(); ++i) {
      if (again[i].dump() != dumps[i]) return "replayed response " + std::to_string(i) + " differs";
    }
    Session twin(c.rcf, c.home, c.strategy);
    for (const auto& entry : session.log()) twin.apply(entry.action);
    if (twin.registry().entries() != session.registry().entries()) return "name tables differ";
    if (!(twin.snapshot() == session.snapshot())) return "snapshots differ";
    return {};
  });
}

PropertyResult neighborhood_shape(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto c = random_case(rng);
    auto lattice = oracle::one_step_lattice(c.rcf, c.strategy, c.home);
    std::uniform_int_distribution<std::size_t> d(0, lattice.concepts.size() - 1);
    const auto& focus = lattice.concepts[d(rng)];
    auto [grown, n] = rca_step(c.rcf, c.strategy, Concept{c.home, focus.extent, {}});
    auto antichain = [](const std::vector<Concept>& cs) {
      for (const auto& a : cs) {
        for (const auto& b : cs) {
          if (&a != &b && a.extent.is_subset_of(b.extent)) return false;
        }
      }
      return true;
    };
    if (n.focus.extent != focus.extent) return "focus extent changed";
    if (!is_normal_form(n.focus.intent)) return "focus intent not in normal form";
    for (const auto& u : n.upper) {
      if (!n.focus.extent.is_proper_subset_of(u.extent)) return "upper cover not above the focus";
      if (extent_of(grown, c.home, u.intent) != u.extent) return "upper cover is not a concept";
    }
    for (const auto& l : n.lower) {
      if (!l.extent.is_proper_subset_of(n.focus.extent)) return "lower cover not below the focus";
      if (extent_of(grown, c.home, l.intent) != l.extent) return "lower cover is not a concept";
    }
    if (!antichain(n.upper) || !antichain(n.lower)) return "comparable covers";
    std::set<std::tuple<std::string, ScalingOperator, std::vector<std::size_t>>> want, got;
    for (const auto& a : n.focus.intent) {
      if (!a.is_relational()) continue;
      const auto& r = a.relational();
      want.emplace(r.relation, r.op, r.target_extent.indices());
    }
    for (const auto& r : n.relational) got.emplace(r.relation, r.op, r.target.extent.indices());
    if (want != got || got.size() != n.relational.size()) {
      return "relational covers do not match the maximal relational attributes";
    }
    for (const auto& u : n.upper) {
      auto back = neighborhood_of(grown, c.home, u.extent);
      if (std::none_of(back.lower.begin(), back.lower.end(),
                       [&](const Concept& x) { return x.extent == focus.extent; })) {
        return "focus missing below its upper cover";
      }
    }
    for (const auto& l : n.lower) {
      auto back = neighborhood_of(grown, c.home, l.extent);
      if (std::none_of(back.upper.begin(), back.upper.end(),
                       [&](const Concept& x) { return x.extent == focus.extent; })) {
        return "focus missing above its lower cover";
      }
    }
    return {};
  });
}

PropertyResult serialization_round_trip(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto rcf = random_rcf(rng, {3, 8, 8, 3, 0.4});
    if (!(parse_rcf(serialize_rcf_json(rcf)) == rcf)) return "JSON round trip changed the family";
    if (!(parse_rcf(serialize_rcf_table(rcf)) == rcf)) return "table round trip changed the family";
    return {};
  });
}

PropertyResult random_oracle_equivalence(std::uint32_t seed, int cases) {
  return run(seed, cases, [](std::mt19937& rng) -> std::string {
    auto rcf = random_rcf(rng);
    for (const auto& [home, ctx] : rcf.contexts()) {
      Strategy full;
      for (const auto& [name, rel] : rcf.relations()) {
        if (rel.source() != home) continue;
        full.insert({name, ScalingOperator::existential});
        full.insert({name, ScalingOperator::universal_strict});
      }
      for (const auto& strategy : {full, random_strategy(rng, rcf, home)}) {
        auto report = oracle::check_equivalence(rcf, strategy, home);
        if (!report.mismatches.empty()) return report.mismatches.front();
      }
    }
    return {};
  });
}

}  // namespace rcanav::testing
