#include "cdc/cli.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "cdc/combinatorics.hpp"

#include "cdc/analysis.hpp"
#include "cdc/fsct.hpp"
#include "cdc/instance.hpp"
#include "cdc/oracles.hpp"
#include "cdc/osct.hpp"
#include "cdc/transcript.hpp"
#include "cdc/worked_examples.hpp"

namespace cdc::cli {

using algebra::Rational;
using instance::SystemInstance;
using json = nlohmann::ordered_json;

namespace {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational '" + text + "'");
  }
}

std::string decimal6(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", to_double(r));
  return buf;
}

json load_entry(const Rational& r) {
  return json{{"rational", algebra::to_string(r)}, {"decimal", to_double(r)}};
}

std::set<std::string> parse_schemes(const std::vector<std::string>& given, std::string* error) {
  std::set<std::string> schemes;
  if (given.empty()) return {"uncoded", "osct", "fsct"};
  for (const auto& entry : given) {
    std::stringstream ss(entry);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item != "uncoded" && item != "osct" && item != "fsct") {
        *error = "unknown scheme '" + item + "'";
        return {};
      }
      schemes.insert(item);
    }
  }
  return schemes;
}

}  // namespace

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  std::string scheme_error;
  std::set<std::string> schemes = parse_schemes(opt.schemes, &scheme_error);
  if (!scheme_error.empty()) {
    err << "error: " << scheme_error << "\n";
    return kExitValidation;
  }
  if (opt.field_bits < 2 || opt.field_bits > 16) {
    err << "error: --field-bits must be between 2 and 16\n";
    return kExitValidation;
  }

  SystemInstance inst;
  try {
    inst = instance::load_json(opt.instance_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  analysis::Analysis a = analysis::analyze(inst);
  json report;
  report["instance"] = opt.instance_path;
  report["K"] = inst.K;
  report["N"] = inst.N;
  report["Q"] = inst.Q;
  report["lower_bound"] = load_entry(analysis::lower_bound(a.catalog));
  if (schemes.count("uncoded")) report["uncoded"] = load_entry(analysis::uncoded_load(a.catalog));

  Rational osct_l, fsct_l;
  if (schemes.count("osct")) {
    osct_l = osct::osct_load(a);
    report["osct"] = load_entry(osct_l);
    report["osct_optimal"] = osct::check_one_shot_optimality(a).optimal;
  }
  if (schemes.count("fsct")) {
    fsct_l = fsct::fsct_load(a);
    report["fsct"] = load_entry(fsct_l);
    report["fsct_optimal"] = fsct::check_few_shot_optimality(a).optimal;
  }

  bool want_decode = opt.verify && (schemes.count("osct") || schemes.count("fsct"));
  bool decode_failed = false;
  std::string decode_error;
  if (want_decode) {
    algebra::Field field(opt.field_bits);
    ShuffleTranscript transcript;
    if (schemes.count("osct")) {
      auto outcome = osct::run_shuffle(inst, a, field, opt.seed, &transcript);
      if (!outcome.ok)
        decode_error = outcome.error;
      else if (outcome.measured_load != osct_l)
        decode_error = "one-shot transcript load differs from the computed load";
    }
    if (decode_error.empty() && schemes.count("fsct")) {
      auto outcome = fsct::run_shuffle(inst, a, field, opt.seed, &transcript);
      if (!outcome.ok)
        decode_error = outcome.error;
      else if (outcome.measured_load != fsct_l)
        decode_error = "few-shot transcript load differs from the computed load";
    }
    decode_failed = !decode_error.empty();
    report["decode_verified"] = !decode_failed;
    if (!decode_failed && !opt.transcript_path.empty()) {
      std::ofstream tf(opt.transcript_path);
      if (!tf) {
        err << "error: cannot write transcript to " << opt.transcript_path << "\n";
        return kExitValidation;
      }
      transcript.write_jsonl(tf);
    }
  } else {
    report["decode_verified"] = nullptr;
  }

  out << report.dump(2) << "\n";
  if (decode_failed) {
    err << "error: " << decode_error << "\n";
    return kExitDecode;
  }
  return kExitOk;
}

namespace {

struct SweepConfig {
  std::vector<Rational> d_grid;
  int samples = 50;
  int N = 64, Q = 64;
  uint64_t seed = 1;
  std::set<std::string> schemes{"uncoded", "osct", "fsct"};
};

SweepConfig read_sweep_config(const std::string& path, bool seed_override, uint64_t seed) {
  SweepConfig cfg;
  for (int i = 0; i < 32; ++i) cfg.d_grid.push_back(Rational(i, 64));
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read sweep config " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
    if (j.contains("N")) cfg.N = j.at("N").get<int>();
    if (j.contains("Q")) cfg.Q = j.at("Q").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("schemes")) {
      cfg.schemes.clear();
      for (const auto& s : j.at("schemes")) {
        std::string name = s.get<std::string>();
        if (name != "uncoded" && name != "osct" && name != "fsct")
          throw std::invalid_argument("unknown scheme '" + name + "' in sweep config");
        cfg.schemes.insert(name);
      }
    }
    if (j.contains("d_grid")) {
      cfg.d_grid.clear();
      for (const auto& d : j.at("d_grid"))
        cfg.d_grid.push_back(d.is_string() ? parse_rational(d.get<std::string>())
                                           : Rational(d.get<long long>()));
    }
  }
  if (seed_override) cfg.seed = seed;
  if (cfg.samples < 1) throw std::invalid_argument("samples must be positive");
  for (const auto& d : cfg.d_grid)
    if (d.sign() < 0 || !(d < Rational(1, 2)))
      throw std::invalid_argument("bias values must lie in [0, 1/2)");
  return cfg;
}

struct SweepCell {
  Rational lower, uncoded, osct, fsct;
};

}  // namespace

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  SweepConfig cfg;
  try {
    cfg = read_sweep_config(opt.config_path, opt.seed_override, opt.seed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  size_t n_tasks = cfg.d_grid.size() * static_cast<size_t>(cfg.samples);
  std::vector<SweepCell> cells(n_tasks);
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (size_t task = next.fetch_add(1); task < n_tasks; task = next.fetch_add(1)) {
      if (failed.load()) return;
      size_t di = task / cfg.samples;
      int sample = static_cast<int>(task % cfg.samples);
      const Rational& d = cfg.d_grid[di];
      Rational half(1, 2);
      instance::RandomByLoadDesc desc;
      desc.K = 4;
      desc.N = cfg.N;
      desc.Q = cfg.Q;
      desc.m = {half - d, half - d, half + d, half + d};
      desc.w = {half + d, half + d, half - d, half - d};
      desc.seed = mix_seed(cfg.seed, static_cast<uint64_t>(sample));
      try {
        SystemInstance inst = instance::generate(desc);
        analysis::Analysis a = analysis::analyze(inst);
        SweepCell& cell = cells[task];
        cell.lower = analysis::lower_bound(a.catalog);
        if (cfg.schemes.count("uncoded")) cell.uncoded = analysis::uncoded_load(a.catalog);
        if (cfg.schemes.count("osct")) cell.osct = osct::osct_load(a);
        if (cfg.schemes.count("fsct")) cell.fsct = fsct::fsct_load(a);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure = e.what();
        failed.store(true);
        return;
      }
    }
  };
  unsigned n_threads = std::max(1u, std::min(std::thread::hardware_concurrency(),
                                             static_cast<unsigned>(n_tasks ? n_tasks : 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load()) {
    err << "error: " << failure << "\n";
    return kExitValidation;
  }

  out << "d,sample,seed,lower_bound,uncoded,osct,fsct\n";
  auto field = [&](const std::set<std::string>& schemes, const std::string& name, const Rational& v) {
    return schemes.count(name) ? decimal6(v) : std::string();
  };
  for (size_t di = 0; di < cfg.d_grid.size(); ++di) {
    SweepCell mean;
    for (int sample = 0; sample < cfg.samples; ++sample) {
      const SweepCell& cell = cells[di * cfg.samples + sample];
      out << decimal6(cfg.d_grid[di]) << ',' << sample << ','
          << mix_seed(cfg.seed, static_cast<uint64_t>(sample)) << ',' << decimal6(cell.lower) << ','
          << field(cfg.schemes, "uncoded", cell.uncoded) << ',' << field(cfg.schemes, "osct", cell.osct) << ','
          << field(cfg.schemes, "fsct", cell.fsct) << "\n";
      mean.lower += cell.lower;
      mean.uncoded += cell.uncoded;
      mean.osct += cell.osct;
      mean.fsct += cell.fsct;
    }
    Rational n(cfg.samples);
    out << decimal6(cfg.d_grid[di]) << ",mean,," << decimal6(mean.lower / n) << ','
        << field(cfg.schemes, "uncoded", mean.uncoded / n) << ',' << field(cfg.schemes, "osct", mean.osct / n) << ','
        << field(cfg.schemes, "fsct", mean.fsct / n) << "\n";
  }
  return kExitOk;
}

namespace {

using GoldenFn = std::function<std::string()>;

std::string check_load(const std::string& label, const Rational& got, const Rational& want) {
  if (got == want) return "";
  return label + " is " + algebra::to_string(got) + ", expected " + algebra::to_string(want) + "; ";
}

std::string golden_example1_loads() {
  auto a = analysis::analyze(examples::example1());
  std::string detail;
  detail += check_load("lower bound", analysis::lower_bound(a.catalog), Rational(35, 56));
  detail += check_load("uncoded load", analysis::uncoded_load(a.catalog), Rational(8, 7));
  detail += check_load("one-shot load", osct::osct_load(a), Rational(35, 56));
  detail += check_load("few-shot load", fsct::fsct_load(a), Rational(35, 56));
  if (!osct::check_one_shot_optimality(a).optimal) detail += "one-shot optimality check failed; ";
  if (!fsct::check_few_shot_optimality(a).optimal) detail += "few-shot optimality check failed; ";
  return detail;
}

std::string golden_example1_alpha_table() {
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
  auto a = analysis::analyze(examples::example1());
  std::map<std::pair<uint32_t, int>, osct::AlphaSolution> solved;
  for (const auto& round : a.rounds) {
    if (round.skippable) continue;
    solved[{round.cluster, round.z}] = osct::solve_p_osct(round);
  }
  if (solved.size() != table.size())
    return "expected " + std::to_string(table.size()) + " nonempty rounds, found " + std::to_string(solved.size());
  std::string detail;
  for (const Row& row : table) {
    uint32_t mask = nodes_to_mask(row.cluster);
    auto it = solved.find({mask, row.z});
    if (it == solved.end()) {
      detail += "missing round; ";
      continue;
    }
    for (size_t i = 0; i < row.cluster.size(); ++i)
      if (it->second.alpha.at(row.cluster[i]) != row.alpha[i]) {
        detail += "alpha mismatch in a round of size " + std::to_string(row.cluster.size()) + "; ";
        break;
      }
  }
  return detail;
}

std::string golden_decode(const SystemInstance& inst, const Rational& want_osct, const Rational& want_fsct) {
  auto a = analysis::analyze(inst);
  algebra::Field field(16);
  auto one = osct::run_shuffle(inst, a, field, 7, nullptr);
  if (!one.ok) return "one-shot shuffle failed: " + one.error;
  if (one.measured_load != want_osct) return "one-shot measured load " + algebra::to_string(one.measured_load);
  auto few = fsct::run_shuffle(inst, a, field, 7, nullptr);
  if (!few.ok) return "few-shot shuffle failed: " + few.error;
  if (few.measured_load != want_fsct) return "few-shot measured load " + algebra::to_string(few.measured_load);
  return "";
}

std::string golden_example2_loads() {
  auto a = analysis::analyze(examples::example2());
  std::string detail;
  detail += check_load("lower bound", analysis::lower_bound(a.catalog), Rational(40, 63));
  detail += check_load("uncoded load", analysis::uncoded_load(a.catalog), Rational(22, 21));
  detail += check_load("one-shot load", osct::osct_load(a), Rational(2, 3));
  detail += check_load("few-shot load", fsct::fsct_load(a), Rational(40, 63));
  if (osct::check_one_shot_optimality(a).optimal) detail += "one-shot check should fail here; ";
  if (!fsct::check_few_shot_optimality(a).optimal) detail += "few-shot optimality check failed; ";
  return detail;
}

std::string golden_homogeneous() {
  std::string detail;
  detail += check_load("closed form K=3 r=2 s=1", oracles::homogeneous_load(3, 2, 1), Rational(1, 6));
  for (auto [K, r, s] : {std::tuple<int, int, int>{3, 2, 1}, {3, 1, 2}, {4, 2, 2}, {4, 3, 1}}) {
    instance::HomogeneousDesc desc;
    desc.K = K;
    desc.r = r;
    desc.s = s;
    desc.N = static_cast<int>(binom(K, r));
    desc.Q = static_cast<int>(binom(K, s));
    auto a = analysis::analyze(instance::generate(desc));
    Rational want = oracles::homogeneous_load(K, r, s);
    detail += check_load("lower bound", analysis::lower_bound(a.catalog), want);
    detail += check_load("one-shot load", osct::osct_load(a), want);
    detail += check_load("few-shot load", fsct::fsct_load(a), want);
  }
  return detail;
}

std::string golden_semi_homogeneous() {
  std::string detail;
  for (auto [q1, q2, want] :
       {std::tuple<int, int, Rational>{6, 6, Rational(25, 72)}, {4, 6, Rational(11, 30)}}) {
    instance::SemiHomogeneousDesc desc;
    desc.K = 4;
    desc.r = 2;
    desc.Qs = {{1, q1}, {2, q2}};
    auto a = analysis::analyze(instance::generate(desc));
    detail += check_load("mixture", oracles::semi_homogeneous_mixture(4, 2, desc.Qs), want);
    detail += check_load("one-shot load", osct::osct_load(a), want);
    detail += check_load("few-shot load", fsct::fsct_load(a), want);
    auto counts = analysis::a_table(a.catalog);
    auto closed = oracles::a_semi_closed_form(4, 2, desc.Qs, a.catalog.N);
    for (const auto& [key, v] : closed)
      if (!counts.count(key) || Rational(counts.at(key)) != v) detail += "IV count table mismatch; ";
    if (counts.size() != closed.size()) detail += "IV count table extent mismatch; ";
  }
  return detail;
}

std::string golden_three_node() {
  std::string detail;
  // one placement per branch of the g formula, plus the shared-by-all case
  instance::ThreeNodeDesc flat;
  flat.placement = {{1, 2}, {1, 3}, {2, 3}};
  flat.N = 3;
  instance::ThreeNodeDesc skewed;
  skewed.placement = {{1}, {1, 2, 3}, {1, 2, 3}};
  skewed.N = 3;
  for (const auto& [desc, want] :
       std::vector<std::pair<instance::ThreeNodeDesc, Rational>>{{flat, Rational(3, 2)}, {skewed, Rational(2)}}) {
    SystemInstance inst = instance::generate(desc);
    auto part = oracles::three_node_partition(inst);
    detail += check_load("oracle", oracles::three_node_load(part), want);
    Rational qn(static_cast<long long>(inst.Q) * inst.N);
    detail += check_load("one-shot total", osct::osct_load(inst) * qn, want);
    detail += check_load("few-shot total", fsct::fsct_load(inst) * qn, want);
  }
  // files stored everywhere add no traffic
  instance::ThreeNodeDesc padded = skewed;
  padded.placement[0].push_back(4);
  padded.placement[1].push_back(4);
  padded.placement[2].push_back(4);
  padded.N = 4;
  SystemInstance inst = instance::generate(padded);
  Rational qn(static_cast<long long>(inst.Q) * inst.N);
  detail += check_load("padded one-shot total", osct::osct_load(inst) * qn, Rational(2));
  return detail;
}

std::string golden_update_rule() {
  SystemInstance inst = examples::update_rule_counterexample();
  auto a = analysis::analyze(inst);
  const analysis::ClusterRound* active = nullptr;
  for (const auto& round : a.rounds)
    if (!round.skippable) {
      if (active) return "expected a single active round";
      active = &round;
    }
  if (!active) return "no active round";

  std::string detail;
  auto deficit = fsct::check_deficit(*active);
  if (!deficit.ok) detail += "balances should all be nonnegative here; ";
  std::set<int> infeasible;
  for (int i : mask_to_nodes(active->cluster))
    if (!fsct::check_feasible(*active, i).feasible) infeasible.insert(i);
  if (infeasible != std::set<int>{1, 4}) detail += "expected receivers 1 and 4 to be unservable; ";

  auto params = fsct::update_parameters(*active);
  if (!params.updated) detail += "relaxation did not trigger; ";
  std::map<int, Rational> want_nbar{
      {1, Rational(3)}, {2, Rational(3, 2)}, {3, Rational(3, 2)}, {4, Rational(3)}};
  if (params.n_bar != want_nbar) detail += "relaxed counts mismatch; ";
  if (!fsct::certify_nonzero_path(*active, params)) detail += "relaxed witness not certifiable; ";
  detail += check_load("few-shot load", fsct::fsct_load(a), Rational(1, 2));
  detail += check_load("lower bound", analysis::lower_bound(a.catalog), Rational(1, 3));
  if (fsct::check_few_shot_optimality(a).optimal) detail += "few-shot check should fail here; ";
  detail += golden_decode(inst, Rational(1, 2), Rational(1, 2));
  return detail;
}

}  // namespace

int cmd_goldens(bool list_only, std::ostream& out, std::ostream& err) {
  const std::vector<std::pair<std::string, GoldenFn>> goldens = {
      {"example-1-loads", golden_example1_loads},
      {"example-1-alpha-table", golden_example1_alpha_table},
      {"example-1-decode",
       [] { return golden_decode(examples::example1(), Rational(35, 56), Rational(35, 56)); }},
      {"example-2-loads", golden_example2_loads},
      {"example-2-decode",
       [] { return golden_decode(examples::example2(), Rational(2, 3), Rational(40, 63)); }},
      {"homogeneous-closed-form", golden_homogeneous},
      {"semi-homogeneous-mixture", golden_semi_homogeneous},
      {"three-node-formula", golden_three_node},
      {"update-rule-relaxation", golden_update_rule},
  };
  if (list_only) {
    for (const auto& [name, _] : goldens) out << name << "\n";
    return kExitOk;
  }
  int failures = 0;
  for (const auto& [name, fn] : goldens) {
    std::string detail;
    try {
      detail = fn();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      out << "ok   " << name << "\n";
    } else {
      ++failures;
      out << "FAIL " << name << ": " << detail << "\n";
    }
  }
  out << (failures == 0 ? "all " : "") << (goldens.size() - failures) << "/" << goldens.size() << " goldens passed\n";
  if (failures) err << "error: " << failures << " golden(s) failed\n";
  return failures ? 1 : kExitOk;
}

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_rational(item));
  return out;
}

}  // namespace

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  SystemInstance inst;
  try {
    if (opt.kind == "homogeneous") {
      instance::HomogeneousDesc desc;
      desc.K = opt.K;
      desc.r = opt.r;
      desc.s = opt.s;
      desc.N = opt.N ? opt.N : static_cast<int>(binom(opt.K, opt.r));
      desc.Q = opt.Q ? opt.Q : static_cast<int>(binom(opt.K, opt.s));
      inst = instance::generate(desc);
    } else if (opt.kind == "semi_homogeneous") {
      instance::SemiHomogeneousDesc desc;
      desc.K = opt.K;
      desc.r = opt.r;
      std::stringstream ss(opt.levels);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("levels must look like s:count,s:count");
        desc.Qs[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
      }
      inst = instance::generate(desc);
    } else if (opt.kind == "random_by_load") {
      instance::RandomByLoadDesc desc;
      desc.K = opt.K;
      desc.N = opt.N;
      desc.Q = opt.Q;
      desc.m = parse_rational_list(opt.m_loads);
      desc.w = parse_rational_list(opt.w_loads);
      desc.seed = opt.seed;
      inst = instance::generate(desc);
    } else if (opt.kind == "three_node") {
      instance::ThreeNodeDesc desc;
      std::stringstream ss(opt.placement);
      std::string part;
      while (std::getline(ss, part, ';')) desc.placement.push_back(parse_int_list(part));
      desc.N = opt.N;
      for (const auto& files : desc.placement)
        for (int n : files) desc.N = std::max(desc.N, n);
      inst = instance::generate(desc);
    } else {
      throw std::invalid_argument("unknown kind '" + opt.kind +
                                  "' (expected homogeneous, semi_homogeneous, random_by_load, or three_node)");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::string text = instance::to_json_text(inst);
  if (opt.out_path.empty()) {
    out << text << "\n";
  } else {
    std::ofstream f(opt.out_path);
    if (!f) {
      err << "error: cannot write " << opt.out_path << "\n";
      return kExitValidation;
    }
    f << text << "\n";
  }
  return kExitOk;
}

}  // namespace cdc::cli
