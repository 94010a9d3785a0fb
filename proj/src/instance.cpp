#include "cdc/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "cdc/combinatorics.hpp"

namespace cdc::instance {

using nlohmann::json;

Rational SystemInstance::mapping_load(int k) const {
  return Rational(static_cast<long long>(placement.at(k - 1).size()), N);
}

Rational SystemInstance::reducing_load(int k) const {
  return Rational(static_cast<long long>(assignment.at(k - 1).size()), Q);
}

Rational SystemInstance::computation_load() const {
  long long total = 0;
  for (const auto& m : placement) total += static_cast<long long>(m.size());
  return Rational(total, N);
}

ValidationReport validate(const SystemInstance& inst) {
  ValidationReport rep;
  auto bad = [&rep](const std::string& s) { rep.violations.push_back(s); };
  if (inst.K < 1) bad("K must be >= 1");
  if (inst.N < 1) bad("N must be >= 1");
  if (inst.Q < 1) bad("Q must be >= 1");
  if (static_cast<int>(inst.placement.size()) != inst.K) bad("placement must list one file set per node");
  if (static_cast<int>(inst.assignment.size()) != inst.K) bad("assignment must list one function set per node");
  if (!rep.ok()) return rep;

  auto check_sets = [&](const std::vector<std::vector<int>>& sets, int upper, const char* what,
                        std::vector<bool>& covered) {
    for (int k = 0; k < inst.K; ++k) {
      std::set<int> seen;
      for (int x : sets[k]) {
        if (x < 1 || x > upper) {
          bad(std::string(what) + " index " + std::to_string(x) + " out of range at node " + std::to_string(k + 1));
          continue;
        }
        if (!seen.insert(x).second)
          bad(std::string("duplicate ") + what + " " + std::to_string(x) + " at node " + std::to_string(k + 1));
        covered[x - 1] = true;
      }
    }
  };
  std::vector<bool> file_covered(inst.N, false), fn_covered(inst.Q, false);
  check_sets(inst.placement, inst.N, "file", file_covered);
  check_sets(inst.assignment, inst.Q, "function", fn_covered);
  for (int n = 1; n <= inst.N; ++n)
    if (!file_covered[n - 1]) bad("file " + std::to_string(n) + " unmapped");
  for (int q = 1; q <= inst.Q; ++q)
    if (!fn_covered[q - 1]) bad("function " + std::to_string(q) + " unassigned");
  return rep;
}

namespace {

void sort_sets(SystemInstance& inst) {
  for (auto& s : inst.placement) std::sort(s.begin(), s.end());
  for (auto& s : inst.assignment) std::sort(s.begin(), s.end());
}

SystemInstance gen_homogeneous(const HomogeneousDesc& d) {
  long long nr = binom(d.K, d.r), ns = binom(d.K, d.s);
  if (d.r < 1 || d.r > d.K || d.s < 1 || d.s > d.K) throw std::invalid_argument("homogeneous: r, s must be in [1, K]");
  if (d.N % nr != 0) throw std::invalid_argument("homogeneous: N not divisible by C(K,r)");
  if (d.Q % ns != 0) throw std::invalid_argument("homogeneous: Q not divisible by C(K,s)");
  SystemInstance inst;
  inst.K = d.K;
  inst.N = d.N;
  inst.Q = d.Q;
  inst.placement.resize(d.K);
  inst.assignment.resize(d.K);
  int f = 1;
  for (uint32_t sub : masks_of_size(d.K, d.r))
    for (long long i = 0; i < d.N / nr; ++i, ++f)
      for (int k : mask_to_nodes(sub)) inst.placement[k - 1].push_back(f);
  int q = 1;
  for (uint32_t sub : masks_of_size(d.K, d.s))
    for (long long i = 0; i < d.Q / ns; ++i, ++q)
      for (int k : mask_to_nodes(sub)) inst.assignment[k - 1].push_back(q);
  sort_sets(inst);
  return inst;
}

SystemInstance gen_semi_homogeneous(const SemiHomogeneousDesc& d) {
  long long nr = binom(d.K, d.r);
  if (d.r < 1 || d.r > d.K) throw std::invalid_argument("semi-homogeneous: r must be in [1, K]");
  SystemInstance inst;
  inst.K = d.K;
  inst.N = static_cast<int>(nr);  // one file per r-subset
  inst.Q = 0;
  for (const auto& [s, qs] : d.Qs) {
    if (s < 1 || s > d.K) throw std::invalid_argument("semi-homogeneous: level out of range");
    if (qs < 0) throw std::invalid_argument("semi-homogeneous: negative function count");
    inst.Q += qs;
  }
  if (inst.Q < 1) throw std::invalid_argument("semi-homogeneous: no functions");
  inst.placement.resize(d.K);
  inst.assignment.resize(d.K);
  int f = 1;
  for (uint32_t sub : masks_of_size(d.K, d.r)) {
    for (int k : mask_to_nodes(sub)) inst.placement[k - 1].push_back(f);
    ++f;
  }
  int q = 1;
  for (const auto& [s, qs] : d.Qs) {
    auto subs = masks_of_size(d.K, s);
    for (int i = 0; i < qs; ++i, ++q)
      for (int k : mask_to_nodes(subs[i % subs.size()])) inst.assignment[k - 1].push_back(q);
  }
  sort_sets(inst);
  return inst;
}

// splitmix64: the deterministic stream behind every seeded draw here.
uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct SplitMix {
  uint64_t state;
  explicit SplitMix(uint64_t seed) : state(seed) {}
  uint64_t next() { return mix64(state++); }
  // uniform integer in [0, n)
  uint64_t below(uint64_t n) { return next() % n; }
};

int round_count(const Rational& load, int total) {
  // round(load * total), half away from zero; loads are nonnegative
  Rational x = load * Rational(total);
  algebra::int128 num2 = x.num * 2 + x.den;  // floor((num/den) + 1/2) = floor((2num+den)/(2den))
  algebra::int128 r = num2 / (2 * x.den);
  if (num2 < 0 && num2 % (2 * x.den) != 0) --r;
  return static_cast<int>(r);
}

SystemInstance gen_random_by_load(const RandomByLoadDesc& d) {
  if (static_cast<int>(d.m.size()) != d.K || static_cast<int>(d.w.size()) != d.K)
    throw std::invalid_argument("random-by-load: one mapping and one reducing load per node");
  std::vector<int> mk(d.K), wk(d.K);
  long long total_m = 0, total_w = 0;
  for (int k = 0; k < d.K; ++k) {
    mk[k] = round_count(d.m[k], d.N);
    wk[k] = round_count(d.w[k], d.Q);
    if (mk[k] < 0 || mk[k] > d.N || wk[k] < 0 || wk[k] > d.Q)
      throw std::invalid_argument("random-by-load: loads out of [0, 1]");
    total_m += mk[k];
    total_w += wk[k];
  }
  if (total_m < d.N || total_w < d.Q)
    throw std::invalid_argument("random-by-load: loads too small to cover all files and functions");

  SplitMix rng(d.seed);
  auto sample_sets = [&](const std::vector<int>& counts, int total) {
    std::vector<std::vector<int>> sets(d.K);
    for (int k = 0; k < d.K; ++k) {
      // Floyd-ish sampling: shuffle the first counts[k] of a fresh index pool.
      std::vector<int> pool(total);
      for (int i = 0; i < total; ++i) pool[i] = i + 1;
      for (int i = 0; i < counts[k]; ++i) {
        int j = i + static_cast<int>(rng.below(total - i));
        std::swap(pool[i], pool[j]);
      }
      sets[k].assign(pool.begin(), pool.begin() + counts[k]);
      std::sort(sets[k].begin(), sets[k].end());
    }
    return sets;
  };

  // An uncovered item steals a slot from a multiply-covered one; slot counts
  // (and therefore the realized loads) stay exact, and a donor always exists
  // because the slot total is at least the item total.
  auto repair_coverage = [](std::vector<std::vector<int>>& sets, int total) {
    std::vector<int> cover(total + 1, 0);
    for (const auto& s : sets)
      for (int x : s) ++cover[x];
    for (int x = 1; x <= total; ++x) {
      if (cover[x] > 0) continue;
      bool fixed = false;
      for (auto& s : sets) {
        for (int& y : s)
          if (cover[y] >= 2) {
            --cover[y];
            ++cover[x];
            y = x;
            fixed = true;
            break;
          }
        if (fixed) break;
      }
    }
    for (auto& s : sets) std::sort(s.begin(), s.end());
  };

  SystemInstance inst;
  inst.K = d.K;
  inst.N = d.N;
  inst.Q = d.Q;
  inst.placement = sample_sets(mk, d.N);
  inst.assignment = sample_sets(wk, d.Q);
  repair_coverage(inst.placement, d.N);
  repair_coverage(inst.assignment, d.Q);
  ValidationReport report = validate(inst);
  if (!report.ok()) throw std::logic_error("random-by-load: repair left an invalid instance");
  return inst;
}

SystemInstance gen_three_node(const ThreeNodeDesc& d) {
  if (d.placement.size() != 3) throw std::invalid_argument("three-node: exactly three placement sets");
  SystemInstance inst;
  inst.K = 3;
  inst.N = d.N;
  inst.Q = 3;
  inst.placement = d.placement;
  inst.assignment = {{1}, {2}, {3}};
  sort_sets(inst);
  auto rep = validate(inst);
  if (!rep.ok()) throw std::invalid_argument("three-node: " + rep.violations.front());
  return inst;
}

}  // namespace

SystemInstance generate(const InstanceDescriptor& desc) {
  return std::visit(
      [](const auto& d) -> SystemInstance {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExplicitDesc>) return d.inst;
        else if constexpr (std::is_same_v<T, HomogeneousDesc>) return gen_homogeneous(d);
        else if constexpr (std::is_same_v<T, SemiHomogeneousDesc>) return gen_semi_homogeneous(d);
        else if constexpr (std::is_same_v<T, RandomByLoadDesc>) return gen_random_by_load(d);
        else return gen_three_node(d);
      },
      desc);
}

SystemInstance from_json_text(const std::string& text) {
  json j = json::parse(text);
  SystemInstance inst;
  if (!j.contains("K") || !j.contains("N") || !j.contains("Q") || !j.contains("placement") ||
      !j.contains("assignment"))
    throw std::invalid_argument("instance document must contain K, N, Q, placement, assignment");
  inst.K = j.at("K").get<int>();
  inst.N = j.at("N").get<int>();
  inst.Q = j.at("Q").get<int>();
  if (inst.K < 1) throw std::invalid_argument("K must be >= 1");
  if (inst.N < 1) throw std::invalid_argument("N must be >= 1");
  if (inst.Q < 1) throw std::invalid_argument("Q must be >= 1");
  inst.placement = j.at("placement").get<std::vector<std::vector<int>>>();
  inst.assignment = j.at("assignment").get<std::vector<std::vector<int>>>();
  auto rep = validate(inst);
  if (!rep.ok()) throw std::invalid_argument("invalid instance: " + rep.violations.front());
  return inst;
}

std::string to_json_text(const SystemInstance& inst) {
  SystemInstance copy = inst;
  for (auto& s : copy.placement) std::sort(s.begin(), s.end());
  for (auto& s : copy.assignment) std::sort(s.begin(), s.end());
  json j;
  j["K"] = copy.K;
  j["N"] = copy.N;
  j["Q"] = copy.Q;
  j["placement"] = copy.placement;
  j["assignment"] = copy.assignment;
  return j.dump(2) + "\n";
}

SystemInstance load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

void save_json(const SystemInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json_text(inst);
}

}  // namespace cdc::instance
