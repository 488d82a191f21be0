#pragma once

// Exhaustive reference implementations: full lattice construction, the
// classical RCA fixpoint and brute-force set-system oracles. They share only
// the data model with the on-demand engine and are meant for cross-checks.

#include "rcanav/context.hpp"
#include "rcanav/neighborhood.hpp"
#include "rcanav/relational_algebra.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rcanav::oracle {

/// Concept lattice of a context read as a plain incidence table (every stored
/// attribute is an ordinary column). Intents hold every column, not the normal
/// form. `covers` are Hasse edges (lower index, upper index) into `concepts`,
/// which are in canonical extent order.
struct Lattice {
  std::string context;
  std::vector<Concept> concepts;
  std::vector<std::pair<std::size_t, std::size_t>> covers;

  /// Index of the concept with this extent, if any.
  std::optional<std::size_t> find(const ObjectSet& extent) const;
};

/// Close-by-One enumeration of all concepts plus the Hasse diagram.
Lattice build_lattice(const FormalContext& ctx);

/// `home` as stored in `rcf`, extended for each strategy entry starting at it
/// with ρ r.(C) for every concept C of the target's lattice whose column is
/// non-empty. Crosses follow the scaling definitions directly.
FormalContext scale(const RelationalContextFamily& rcf, const std::string& home,
                    const Strategy& strategy, const std::map<std::string, Lattice>& targets,
                    int step);

/// Lattice of `home` after one scaling step against the plain lattices of the
/// target contexts as stored in `rcf`.
Lattice one_step_lattice(const RelationalContextFamily& rcf, const Strategy& strategy,
                         const std::string& home);

struct Fixpoint {
  std::map<std::string, FormalContext> contexts;
  std::map<std::string, Lattice> lattices;
  int iterations = 0;
};

/// Classical RCA: scale every context against the previous lattices and
/// rebuild, until no scaled context changes.
Fixpoint rca_fixpoint(const RelationalContextFamily& rcf, const Strategy& strategy);

/// Covers read off the Hasse edges, relational covers off the maximal
/// relational attributes of the stored intent. Intents are normalised.
/// Throws Error{not_closed} if `extent` is not in the lattice.
Neighborhood neighborhood_from_lattice(const Lattice& lattice, const RelationalContextFamily& rcf,
                                       const ObjectSet& extent);

/// Maximal relational attributes of a full intent (independent of normalize()).
AttributeSet maximal_form(const AttributeSet& intent);

/// Structural equality including nested target intents.
bool same_neighborhood(const Neighborhood& a, const Neighborhood& b);

/// Every subset of `extent` whose closure under `closure_of` equals `extent`
/// and that has no proper subset with that property.
template <typename Closure>
std::vector<ObjectSet> brute_force_min_generators(const ObjectSet& extent, Closure&& closure_of);

/// All inclusion-minimal hitting sets by enumeration of the whole power set.
std::vector<ObjectSet> brute_force_min_transversals(const std::vector<ObjectSet>& family,
                                                    std::size_t universe);

struct EquivalenceReport {
  std::size_t concepts_checked = 0;
  std::vector<std::string> mismatches;
};

/// Runs rca_step from `rcf` on every concept of the one-step oracle lattice of
/// `home` and compares against neighborhood_from_lattice.
EquivalenceReport check_equivalence(const RelationalContextFamily& rcf, const Strategy& strategy,
                                    const std::string& home);

template <typename Closure>
std::vector<ObjectSet> brute_force_min_generators(const ObjectSet& extent, Closure&& closure_of) {
  const auto members = extent.indices();
  std::vector<ObjectSet> generating;
  for (std::size_t mask = 0; mask < (std::size_t{1} << members.size()); ++mask) {
    ObjectSet g(extent.universe());
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (mask & (std::size_t{1} << k)) g.insert(members[k]);
    }
    if (closure_of(g) == extent) generating.push_back(g);
  }
  std::vector<ObjectSet> out;
  for (const auto& g : generating) {
    bool minimal = true;
    for (const auto& h : generating) {
      if (h.is_proper_subset_of(g)) minimal = false;
    }
    if (minimal) out.push_back(g);
  }
  return out;
}

}  // namespace rcanav::oracle
