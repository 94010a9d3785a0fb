#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdc/analysis.hpp"
#include "cdc/combinatorics.hpp"
#include "cdc/fsct.hpp"
#include "cdc/instance.hpp"
#include "cdc/oracles.hpp"
#include "cdc/osct.hpp"
#include "cdc/worked_examples.hpp"

using cdc::mask_to_nodes;
using cdc::nodes_to_mask;
using cdc::algebra::Rational;
using cdc::analysis::Analysis;
using cdc::instance::SystemInstance;
using namespace cdc::oracles;

TEST_CASE("three-node partition counts exclusive cells") {
  SystemInstance inst = cdc::instance::generate(cdc::instance::ThreeNodeDesc{{{1, 2}, {1, 3}, {2, 3}}, 3});
  ThreeNodePartition p = three_node_partition(inst);
  CHECK(p.s1 == 0);
  CHECK(p.s12 == 1);
  CHECK(p.s13 == 1);
  CHECK(p.s23 == 1);
  CHECK(p.s123 == 0);
  CHECK(three_node_load(p) == Rational(3, 2));
}

TEST_CASE("three-node load covers both branches of the inner maximum") {
  // Pair cells balanced: the half-sum branch.
  ThreeNodePartition balanced;
  balanced.s12 = balanced.s13 = balanced.s23 = 1;
  CHECK(three_node_load(balanced) == Rational(3, 2));

  // One pair cell dominating: the max branch.
  SystemInstance skewed = cdc::instance::generate(cdc::instance::ThreeNodeDesc{{{1}, {1, 2, 3}, {1, 2, 3}}, 3});
  ThreeNodePartition p = three_node_partition(skewed);
  CHECK(p.s23 == 2);
  CHECK(p.s123 == 1);
  CHECK(three_node_load(p) == Rational(2));

  // Exclusive singles are unicast twice each.
  ThreeNodePartition singles;
  singles.s1 = singles.s2 = singles.s3 = 1;
  CHECK(three_node_load(singles) == Rational(6));
}

TEST_CASE("files held everywhere never change the three-node load") {
  SystemInstance inst = cdc::instance::generate(
      cdc::instance::ThreeNodeDesc{{{1, 4}, {2, 3, 4}, {1, 2, 3, 4}}, 4});
  SystemInstance padded = cdc::instance::generate(
      cdc::instance::ThreeNodeDesc{{{1, 4, 5}, {2, 3, 4, 5}, {1, 2, 3, 4, 5}}, 5});
  CHECK(three_node_load(three_node_partition(inst)) == three_node_load(three_node_partition(padded)));
}

TEST_CASE("three-node formula equals both engines on a worked example") {
  SystemInstance inst = cdc::instance::generate(cdc::instance::ThreeNodeDesc{{{1, 2}, {1, 3}, {2, 3}}, 3});
  Analysis a = cdc::analysis::analyze(inst);
  Rational qn(9);
  CHECK(cdc::osct::osct_load(a) * qn == Rational(3, 2));
  CHECK(cdc::fsct::fsct_load(a) * qn == Rational(3, 2));
}

TEST_CASE("three-node partition rejects malformed input") {
  CHECK_THROWS_AS(three_node_partition(cdc::examples::example1()), std::invalid_argument);

  SystemInstance orphan;
  orphan.K = 3;
  orphan.N = 2;
  orphan.Q = 3;
  orphan.placement = {{1}, {1}, {1}};
  orphan.assignment = {{1}, {2}, {3}};
  CHECK_THROWS(three_node_partition(orphan));
}

TEST_CASE("homogeneous closed form") {
  CHECK(homogeneous_load(3, 2, 1) == Rational(1, 6));
  CHECK(homogeneous_load(3, 3, 1) == Rational(0));

  for (auto [K, r, s] : std::vector<std::tuple<int, int, int>>{{3, 2, 1}, {3, 1, 2}, {4, 2, 2}, {4, 3, 1}}) {
    auto inst = cdc::instance::generate(cdc::instance::HomogeneousDesc{
        K, r, s, static_cast<int>(cdc::binom(K, r)), static_cast<int>(cdc::binom(K, s))});
    CHECK(homogeneous_load(K, r, s) == cdc::analysis::lower_bound(cdc::analysis::build_catalog(inst)));
  }
}

TEST_CASE("semi-homogeneous mixture and count table") {
  std::map<int, int> uneven = {{1, 6}, {2, 6}};
  CHECK(semi_homogeneous_mixture(4, 2, uneven) == Rational(25, 72));

  std::map<int, int> divisible = {{1, 4}, {2, 6}};
  CHECK(semi_homogeneous_mixture(4, 2, divisible) == Rational(11, 30));

  for (const auto& qs : {uneven, divisible}) {
    auto inst = cdc::instance::generate(cdc::instance::SemiHomogeneousDesc{4, 2, qs});
    auto cat = cdc::analysis::build_catalog(inst);
    auto counted = cdc::analysis::a_table(cat);
    auto closed = a_semi_closed_form(4, 2, qs, cat.N);
    REQUIRE(closed.size() == counted.size());
    for (const auto& [td, count] : counted) {
      REQUIRE(closed.count(td) == 1);
      CHECK(closed.at(td) == Rational(count));
    }
  }

  auto closed = a_semi_closed_form(4, 2, uneven, 6);
  CHECK(closed.at({2, 1}) == Rational(42));
  CHECK(closed.at({2, 2}) == Rational(6));
}

TEST_CASE("tiny brute force recount") {
  // Everything mapped everywhere: nothing to shuffle.
  SystemInstance calm;
  calm.K = 2;
  calm.N = 2;
  calm.Q = 2;
  calm.placement = {{1, 2}, {1, 2}};
  calm.assignment = {{1}, {2}};
  CHECK(brute_force_min_load_tiny(calm) == Rational(0));

  // One value needed by one node.
  SystemInstance single;
  single.K = 2;
  single.N = 1;
  single.Q = 1;
  single.placement = {{1}, {}};
  single.assignment = {{}, {1}};
  CHECK(brute_force_min_load_tiny(single) == Rational(1));

  CHECK(brute_force_min_load_tiny(cdc::examples::update_rule_counterexample()) ==
        cdc::analysis::lower_bound(cdc::analysis::build_catalog(cdc::examples::update_rule_counterexample())));

  CHECK_THROWS_AS(brute_force_min_load_tiny(cdc::examples::example1()), std::invalid_argument);
}

TEST_CASE("quadratic-program oracle on the worked rounds") {
  for (const auto& inst : {cdc::examples::example1(), cdc::examples::example2()}) {
    Analysis a = cdc::analysis::analyze(inst);
    for (const auto& round : a.rounds) {
      if (round.skippable) continue;
      CHECK(exhaustive_posct_objective(round) == cdc::osct::solve_p_osct(round).objective);
    }
  }
}

TEST_CASE("vertex enumeration mirrors the flow-based feasibility check") {
  Analysis a = cdc::analysis::analyze(cdc::examples::update_rule_counterexample());
  const cdc::analysis::ClusterRound* round = nullptr;
  for (const auto& r : a.rounds)
    if (r.cluster == nodes_to_mask({1, 2, 3, 4}) && r.z == 2) round = &r;
  REQUIRE(round != nullptr);

  for (int receiver : {1, 2, 3, 4}) {
    bool flow = cdc::fsct::check_feasible(*round, receiver).feasible;
    CHECK(feasibility_by_vertex_enumeration(*round, receiver) == flow);
    CHECK(flow == (receiver == 2 || receiver == 3));
  }

  Analysis ex2 = cdc::analysis::analyze(cdc::examples::example2());
  for (const auto& r : ex2.rounds) {
    if (r.skippable) continue;
    for (int receiver : mask_to_nodes(r.cluster)) {
      long long vars = 0;
      for (size_t i = 0; i < r.cells.size(); ++i)
        if (r.cell_size(static_cast<int>(i)) > 0 && !(r.cells[i] & (1u << (receiver - 1)))) vars += r.z;
      if (vars > 6) continue;
      CHECK(feasibility_by_vertex_enumeration(r, receiver) == cdc::fsct::check_feasible(r, receiver).feasible);
    }
  }
}

TEST_CASE("vertex enumeration refuses oversized systems") {
  auto inst = cdc::instance::generate(cdc::instance::HomogeneousDesc{5, 3, 2, 10, 10});
  Analysis a = cdc::analysis::analyze(inst);
  bool threw = false;
  for (const auto& round : a.rounds) {
    if (round.skippable || round.size() != 5) continue;
    for (int receiver : mask_to_nodes(round.cluster)) {
      long long vars = 0;
      for (size_t i = 0; i < round.cells.size(); ++i)
        if (round.cell_size(static_cast<int>(i)) > 0 && !(round.cells[i] & (1u << (receiver - 1)))) vars += round.z;
      if (vars <= 6) continue;
      CHECK_THROWS_AS(feasibility_by_vertex_enumeration(round, receiver), std::invalid_argument);
      threw = true;
      break;
    }
    if (threw) break;
  }
  CHECK(threw);
}
