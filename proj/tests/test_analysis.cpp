#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "cdc/analysis.hpp"
#include "cdc/combinatorics.hpp"
#include "cdc/instance.hpp"
#include "cdc/worked_examples.hpp"

using cdc::mask_to_nodes;
using cdc::nodes_to_mask;
using cdc::popcount_mask;
using cdc::algebra::Rational;
using namespace cdc::analysis;

TEST_CASE("catalog of the first worked instance") {
  IVCatalog cat = build_catalog(cdc::examples::example1());
  CHECK(cat.K == 4);
  CHECK(cat.N == 8);
  CHECK(cat.Q == 7);
  CHECK(cat.r_min == 1);
  CHECK(cat.q_min == 1);
  CHECK(cat.total_needed() == 48);

  std::map<std::pair<int, int>, long long> expected = {
      {{1, 1}, 10}, {{1, 2}, 10}, {{2, 1}, 22}, {{2, 2}, 6}};
  CHECK(a_table(cat) == expected);

  CHECK(lower_bound(cat) == Rational(35, 56));
  CHECK(uncoded_load(cat) == Rational(8, 7));
}

TEST_CASE("catalog of the second worked instance") {
  IVCatalog cat = build_catalog(cdc::examples::example2());
  CHECK(lower_bound(cat) == Rational(40, 63));
  CHECK(uncoded_load(cat) == Rational(22, 21));
}

TEST_CASE("bound formulas agree with a per-IV recount") {
  for (const auto& inst : {cdc::examples::example1(), cdc::examples::example2(),
                           cdc::examples::update_rule_counterexample()}) {
    IVCatalog cat = build_catalog(inst);
    Rational lb(0), unc(0);
    for (const IVInfo& iv : cat.needed) {
      long long t = popcount_mask(iv.mappers);
      long long d = popcount_mask(iv.requesters);
      lb += Rational(d, t + d - 1);
      unc += Rational(d);
    }
    Rational qn(static_cast<long long>(cat.Q) * cat.N);
    CHECK(lower_bound(cat) == lb / qn);
    CHECK(uncoded_load(cat) == unc / qn);

    long long a_total = 0;
    for (const auto& [td, count] : a_table(cat)) {
      CHECK(count > 0);
      a_total += count;
    }
    CHECK(a_total == cat.total_needed());
  }
}

TEST_CASE("every needed value lands in exactly one cell") {
  for (const auto& inst : {cdc::examples::example1(), cdc::examples::example2(),
                           cdc::examples::update_rule_counterexample()}) {
    IVCatalog cat = build_catalog(inst);
    auto rounds = enumerate_cluster_rounds(inst, cat);

    std::map<IVKey, int> seen;
    for (const auto& round : rounds) {
      REQUIRE(round.cells.size() == round.cell_ivs.size());
      for (size_t i = 0; i < round.cells.size(); ++i) {
        CHECK(popcount_mask(round.cells[i]) == round.z);
        CHECK((round.cells[i] & ~round.cluster) == 0);
        for (const IVKey& key : round.cell_ivs[i]) ++seen[key];
      }
    }
    CHECK(seen.size() == cat.needed.size());
    for (const IVInfo& iv : cat.needed) {
      auto it = seen.find(iv.key);
      REQUIRE(it != seen.end());
      CHECK(it->second == 1);
    }

    // The owning cell is the mapper set; the rest of the cluster requests it.
    std::map<IVKey, IVInfo> info;
    for (const IVInfo& iv : cat.needed) info[iv.key] = iv;
    for (const auto& round : rounds)
      for (size_t i = 0; i < round.cells.size(); ++i)
        for (const IVKey& key : round.cell_ivs[i]) {
          const IVInfo& iv = info.at(key);
          CHECK(iv.mappers == round.cells[i]);
          CHECK((iv.mappers | iv.requesters) == round.cluster);
        }
  }
}

TEST_CASE("cell contents are sorted and rounds are enumerated in order") {
  IVCatalog cat = build_catalog(cdc::examples::example1());
  auto rounds = enumerate_cluster_rounds(cdc::examples::example1(), cat);

  std::vector<std::pair<std::vector<int>, int>> order;
  for (const auto& round : rounds) {
    order.emplace_back(mask_to_nodes(round.cluster), round.z);
    for (const auto& ivs : round.cell_ivs)
      for (size_t i = 1; i < ivs.size(); ++i) CHECK(ivs[i - 1] < ivs[i]);
  }
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  CHECK(order == sorted);
}

TEST_CASE("window and skippable flags on the first worked instance") {
  IVCatalog cat = build_catalog(cdc::examples::example1());
  auto rounds = enumerate_cluster_rounds(cdc::examples::example1(), cat);

  int nonempty = 0;
  for (const auto& round : rounds) {
    CHECK(round.skippable == (round.total_ivs() == 0));
    if (!round.skippable) ++nonempty;
    // Nominal window: max(r_min + 1, q_min) <= |S| <= min(K, r_min + q_min),
    // which collapses to size 2 here since both extremes are 1.
    CHECK(round.in_window == (round.size() == 2));
  }
  CHECK(nonempty == 15);

  // Larger clusters carry values even though the nominal window stops at 2;
  // the enumeration must keep them.
  bool large_nonempty = false;
  for (const auto& round : rounds)
    if (round.size() > 2 && !round.skippable) large_nonempty = true;
  CHECK(large_nonempty);
}

TEST_CASE("deficit profile identities") {
  for (const auto& inst : {cdc::examples::example1(), cdc::examples::example2(),
                           cdc::examples::update_rule_counterexample()}) {
    Analysis a = analyze(inst);
    for (const auto& round : a.rounds) {
      if (round.skippable) continue;
      DeficitProfile prof = deficit_profile(round);
      int size = round.size();
      long long total = round.total_ivs();
      long long known_sum = 0, requested_sum = 0, n_sum = 0;
      for (const NodeBalance& nb : prof.nodes) {
        CHECK(nb.n_value == (size - round.z) * nb.known_ivs - (round.z - 1) * nb.requested_ivs);
        if (nb.known_ivs > 0) {
          CHECK(nb.ratio_defined);
          CHECK(nb.deficit_ratio == Rational(nb.requested_ivs, nb.known_ivs));
        }
        known_sum += nb.known_ivs;
        requested_sum += nb.requested_ivs;
        n_sum += nb.n_value;
      }
      CHECK(known_sum == round.z * total);
      CHECK(requested_sum == (size - round.z) * total);
      CHECK(n_sum == (size - round.z) * total);
    }
  }
}

TEST_CASE("homogeneous instances reproduce the known tiny bound") {
  using cdc::instance::HomogeneousDesc;
  Analysis a = analyze(cdc::instance::generate(HomogeneousDesc{3, 2, 1, 3, 3}));
  CHECK(lower_bound(a.catalog) == Rational(1, 6));
  CHECK(a.catalog.r_min == 2);
  CHECK(a.catalog.q_min == 1);
}

TEST_CASE("analyze bundles the catalog with its rounds") {
  Analysis a = analyze(cdc::examples::example1());
  CHECK(a.catalog.total_needed() == 48);
  long long in_rounds = 0;
  for (const auto& round : a.rounds) in_rounds += round.total_ivs();
  CHECK(in_rounds == 48);
}
