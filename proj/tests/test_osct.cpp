#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <utility>
#include <vector>

#include "cdc/analysis.hpp"
#include "cdc/combinatorics.hpp"
#include "cdc/oracles.hpp"
#include "cdc/osct.hpp"
#include "cdc/worked_examples.hpp"

using cdc::nodes_to_mask;
using cdc::algebra::Rational;
using cdc::analysis::Analysis;
using cdc::analysis::ClusterRound;
using namespace cdc::osct;

namespace {

std::map<std::pair<uint32_t, int>, const ClusterRound*> nonempty_rounds(const Analysis& a) {
  std::map<std::pair<uint32_t, int>, const ClusterRound*> out;
  for (const auto& round : a.rounds)
    if (!round.skippable) out[{round.cluster, round.z}] = &round;
  return out;
}

}  // namespace

TEST_CASE("per-round alpha vectors of the first worked instance") {
  struct Row {
    std::vector<int> cluster;
    int z;
    std::vector<Rational> alpha;
  };
  const std::vector<Row> table = {
      {{1, 2, 3, 4}, 2, {Rational(1), Rational(1), Rational(0), Rational(0)}},
      {{1, 2, 3}, 2, {Rational(1, 2), Rational(3, 2), Rational(1, 2)}},
      {{1, 2, 3}, 1, {Rational(1), Rational(1), Rational(0)}},
      {{1, 2, 4}, 2, {Rational(1, 2), Rational(3, 2), Rational(1, 2)}},
      {{1, 2, 4}, 1, {Rational(1), Rational(1), Rational(0)}},
      {{1, 3, 4}, 2, {Rational(3), Rational(0), Rational(0)}},
      {{1, 3, 4}, 1, {Rational(2), Rational(0), Rational(1)}},
      {{2, 3, 4}, 2, {Rational(3), Rational(0), Rational(0)}},
      {{2, 3, 4}, 1, {Rational(2), Rational(0), Rational(1)}},
      {{1, 2}, 1, {Rational(0), Rational(1)}},
      {{1, 3}, 1, {Rational(1), Rational(0)}},
      {{1, 4}, 1, {Rational(1), Rational(2)}},
      {{2, 3}, 1, {Rational(1), Rational(0)}},
      {{2, 4}, 1, {Rational(1), Rational(1)}},
      {{3, 4}, 1, {Rational(0), Rational(2)}},
  };
  Analysis a = cdc::analysis::analyze(cdc::examples::example1());
  auto rounds = nonempty_rounds(a);
  REQUIRE(rounds.size() == table.size());

  for (const Row& row : table) {
    auto it = rounds.find({nodes_to_mask(row.cluster), row.z});
    REQUIRE(it != rounds.end());
    AlphaSolution sol = solve_p_osct(*it->second);
    CHECK(sol.objective == Rational(0));
    for (size_t i = 0; i < row.cluster.size(); ++i) {
      INFO("cluster size " << row.cluster.size() << " z " << row.z << " node " << row.cluster[i]);
      CHECK(sol.alpha.at(row.cluster[i]) == row.alpha[i]);
    }
  }
}

TEST_CASE("solver objective matches the enumeration oracle on worked rounds") {
  for (const auto& inst : {cdc::examples::example1(), cdc::examples::example2(),
                           cdc::examples::update_rule_counterexample()}) {
    Analysis a = cdc::analysis::analyze(inst);
    for (const auto& round : a.rounds) {
      if (round.skippable) continue;
      AlphaSolution sol = solve_p_osct(round);
      CHECK(sol.objective == cdc::oracles::exhaustive_posct_objective(round));
    }
  }
}

TEST_CASE("solution structure invariants") {
  for (const auto& inst : {cdc::examples::example1(), cdc::examples::example2()}) {
    Analysis a = cdc::analysis::analyze(inst);
    for (const auto& round : a.rounds) {
      if (round.skippable) continue;
      AlphaSolution sol = solve_p_osct(round);
      CHECK(sol.cluster == round.cluster);
      CHECK(sol.z == round.z);
      CHECK(sol.objective >= Rational(0));
      REQUIRE(sol.tau.size() == round.cells.size());

      Rational recount(0);
      for (size_t i = 0; i < round.cells.size(); ++i) {
        Rational tau(round.cell_size(static_cast<int>(i)));
        for (int node : cdc::mask_to_nodes(round.cells[i])) tau -= sol.alpha.at(node);
        CHECK(tau == sol.tau[i]);
        recount += tau * tau;
      }
      CHECK(recount == sol.objective);

      for (const auto& [node, value] : sol.alpha) {
        CHECK(value >= Rational(0));
        CHECK((round.cluster & (1u << (node - 1))) != 0);
      }

      // Members of empty cells never send for this round.
      for (size_t i = 0; i < round.cells.size(); ++i)
        if (round.cell_size(static_cast<int>(i)) == 0)
          for (int node : cdc::mask_to_nodes(round.cells[i])) CHECK(sol.alpha.at(node) == Rational(0));
    }
  }
}

TEST_CASE("closed-form shortcut fires exactly where it applies") {
  Analysis a = cdc::analysis::analyze(cdc::examples::example1());
  auto rounds = nonempty_rounds(a);

  int shortcut = 0, general = 0;
  for (const auto& [key, round] : rounds) {
    auto profile = cdc::analysis::deficit_profile(*round);
    AlphaSolution sol = solve_p_osct(*round, profile);
    CHECK(sol.closed_form == closed_form_applicable(*round, profile));
    (sol.closed_form ? shortcut : general) += 1;
  }
  CHECK(shortcut > 0);
  CHECK(general > 0);

  // The balanced three-node round solved in closed form.
  const ClusterRound* r123 = rounds.at({nodes_to_mask({1, 2, 3}), 2});
  auto profile = cdc::analysis::deficit_profile(*r123);
  CHECK(closed_form_applicable(*r123, profile));
  AlphaSolution sol = solve_p_osct(*r123, profile);
  CHECK(sol.closed_form);
  CHECK(sol.alpha.at(1) == Rational(1, 2));
  CHECK(sol.alpha.at(2) == Rational(3, 2));
  CHECK(sol.alpha.at(3) == Rational(1, 2));

  // A round with an empty cell must take the general path.
  const ClusterRound* r13 = rounds.at({nodes_to_mask({1, 3}), 1});
  auto profile13 = cdc::analysis::deficit_profile(*r13);
  CHECK(!closed_form_applicable(*r13, profile13));
  AlphaSolution sol13 = solve_p_osct(*r13, profile13);
  CHECK(!sol13.closed_form);
  CHECK(sol13.alpha.at(3) == Rational(0));
}

TEST_CASE("round costs add up to the reported load") {
  for (const auto& inst : {cdc::examples::example1(), cdc::examples::example2()}) {
    Analysis a = cdc::analysis::analyze(inst);
    Rational total(0);
    for (const auto& round : a.rounds) {
      if (round.skippable) continue;
      total += round_cost(round, solve_p_osct(round));
    }
    Rational qn(static_cast<long long>(a.catalog.Q) * a.catalog.N);
    CHECK(osct_load(a) == total / qn);
  }
}

TEST_CASE("loads of the worked instances") {
  CHECK(osct_load(cdc::examples::example1()) == Rational(35, 56));
  CHECK(osct_load(cdc::examples::example2()) == Rational(2, 3));
}

TEST_CASE("optimality checker splits the worked instances") {
  OptimalityCheck ok = check_one_shot_optimality(cdc::examples::example1());
  CHECK(ok.optimal);
  CHECK(ok.violations.empty());

  OptimalityCheck bad = check_one_shot_optimality(cdc::examples::example2());
  CHECK(!bad.optimal);
  REQUIRE(!bad.violations.empty());
  bool widest = false;
  for (const auto& [cluster, z, objective] : bad.violations) {
    CHECK(objective > Rational(0));
    if (cluster == nodes_to_mask({1, 2, 3, 4}) && z == 2) widest = true;
  }
  CHECK(widest);
}

TEST_CASE("solver is deterministic") {
  Analysis a = cdc::analysis::analyze(cdc::examples::example2());
  for (const auto& round : a.rounds) {
    if (round.skippable) continue;
    AlphaSolution s1 = solve_p_osct(round);
    AlphaSolution s2 = solve_p_osct(round);
    CHECK(s1.alpha == s2.alpha);
    CHECK(s1.objective == s2.objective);
  }
}
