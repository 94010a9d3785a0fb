#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cdc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact laboratory for coded distributed-computing shuffles"};
  app.require_subcommand(1);

  cdc::cli::RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Compute loads for an instance file and verify decoding");
  run->add_option("instance", run_opt.instance_path, "Instance JSON path")->required();
  run->add_option("--schemes", run_opt.schemes, "Comma-separated subset of uncoded,osct,fsct (default: all)");
  run->add_option("--seed", run_opt.seed, "Payload seed for the verification shuffle");
  run->add_option("--field-bits", run_opt.field_bits, "Symbol field GF(2^m) exponent, 2..16 (default 16)");
  auto* no_verify = run->add_flag_callback(
      "--no-verify", [&run_opt] { run_opt.verify = false; }, "Skip the encode/decode verification");
  run->add_option("--transcript", run_opt.transcript_path, "Write the shuffle transcript (JSON lines) to PATH")
      ->excludes(no_verify);

  cdc::cli::SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand(
      "sweep",
      "Load-bias experiment over random 4-node instances; CSV columns "
      "d,sample,seed,lower_bound,uncoded,osct,fsct with one mean row per d");
  sweep->add_option("config", sweep_opt.config_path, "Optional JSON config (d_grid, samples, N, Q, seed, schemes)");
  sweep->add_option("--seed", sweep_opt.seed, "Master seed (overrides the config)")
      ->each([&sweep_opt](const std::string&) { sweep_opt.seed_override = true; });

  bool goldens_list = false;
  CLI::App* goldens = app.add_subcommand("goldens", "Run the built-in golden suite");
  goldens->add_flag("--list", goldens_list, "List golden identifiers without running them");

  cdc::cli::GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance from a named family");
  gen->add_option("--kind", gen_opt.kind, "homogeneous | semi_homogeneous | random_by_load | three_node")
      ->required();
  gen->add_option("--K", gen_opt.K, "Number of nodes");
  gen->add_option("--r", gen_opt.r, "Storage subset size");
  gen->add_option("--s", gen_opt.s, "Assignment subset size (homogeneous)");
  gen->add_option("--N", gen_opt.N, "File count");
  gen->add_option("--Q", gen_opt.Q, "Function count");
  gen->add_option("--levels", gen_opt.levels, "semi_homogeneous levels, e.g. 1:6,2:6");
  gen->add_option("--m", gen_opt.m_loads, "random_by_load mapping loads, e.g. 1/2,1/2,1/4,3/4");
  gen->add_option("--w", gen_opt.w_loads, "random_by_load reducing loads");
  gen->add_option("--placement", gen_opt.placement, "three_node per-node files, e.g. 1,2;2,3;1,3");
  gen->add_option("--seed", gen_opt.seed, "Generation seed");
  gen->add_option("--out", gen_opt.out_path, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cdc::cli::kExitValidation;
  }

  if (run->parsed()) return cdc::cli::cmd_run(run_opt, std::cout, std::cerr);
  if (sweep->parsed()) return cdc::cli::cmd_sweep(sweep_opt, std::cout, std::cerr);
  if (goldens->parsed()) return cdc::cli::cmd_goldens(goldens_list, std::cout, std::cerr);
  if (gen->parsed()) return cdc::cli::cmd_gen(gen_opt, std::cout, std::cerr);
  return cdc::cli::kExitValidation;
}
