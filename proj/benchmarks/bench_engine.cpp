#include "rcanav/neighborhood.hpp"
#include "rcanav/oracle.hpp"
#include "rcanav/rcf_io.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace rcanav;

namespace {

RelationalContextFamily load_table1() {
  std::ifstream in(std::string(RCANAV_FIXTURE_DIR) + "/table1.rcf");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rcf(ss.str());
}

const Strategy kExists{{"support", ScalingOperator::existential}};

// One context with a self-loop relation, objects o0.., attributes a0..
RelationalContextFamily random_family(std::size_t objects, std::size_t attributes,
                                      std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution cross(0.35);
  std::vector<std::string> obj, attr;
  for (std::size_t i = 0; i < objects; ++i) obj.push_back("o" + std::to_string(i));
  for (std::size_t i = 0; i < attributes; ++i) attr.push_back("a" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> incidence, pairs;
  for (const auto& o : obj) {
    for (const auto& a : attr) {
      if (cross(rng)) incidence.emplace_back(o, a);
    }
    for (const auto& p : obj) {
      if (cross(rng)) pairs.emplace_back(o, p);
    }
  }
  RelationalContextFamily rcf;
  rcf.add_context(FormalContext("K", obj, attr, incidence));
  rcf.add_relation("r", "K", "K", pairs);
  return rcf;
}

void BM_WorkedExampleStep(benchmark::State& state) {
  auto rcf = load_table1();
  auto focus = concept_from_query(rcf, "DM_tools", {"OS:Windows", "DM:Logical", "DM:Conceptual"});
  for (auto _ : state) benchmark::DoNotOptimize(rca_step(rcf, kExists, focus));
}
BENCHMARK(BM_WorkedExampleStep)->Unit(benchmark::kMicrosecond);

void BM_RandomContextStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto rcf = random_family(n, n, 7);
  const Strategy strategy{{"r", ScalingOperator::existential}};
  auto focus = concept_from_query(rcf, "K", {"a0"});
  for (auto _ : state) benchmark::DoNotOptimize(rca_step(rcf, strategy, focus));
}
BENCHMARK(BM_RandomContextStep)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_MinTransversals(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(11);
  std::bernoulli_distribution member(0.4);
  std::vector<ObjectSet> family;
  for (std::size_t e = 0; e < n; ++e) {
    ObjectSet s(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (member(rng)) s.insert(v);
    }
    if (s.empty()) s.insert(e);
    family.push_back(s);
  }
  for (auto _ : state) benchmark::DoNotOptimize(min_transversals(family));
}
BENCHMARK(BM_MinTransversals)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_OracleLattice(benchmark::State& state) {
  auto rcf = load_table1();
  for (auto _ : state) benchmark::DoNotOptimize(oracle::one_step_lattice(rcf, kExists, "DM_tools"));
}
BENCHMARK(BM_OracleLattice)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
