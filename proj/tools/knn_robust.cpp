#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "knnr/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"n-poisoning robustness of KNN: certify or falsify per test input"};
  app.require_subcommand(1);

  knnr::ExperimentConfig cfg;
  std::string mode_str = "full";
  std::vector<int> k_list;

  CLI::App* run = app.add_subcommand("run", "decide robustness for a batch of test inputs");
  run->add_option("--train", cfg.train_path, "training set CSV")->required();
  run->add_option("--test", cfg.test_path, "test inputs CSV")->required();
  run->add_option("--n", cfg.n, "poison budget")->required();
  run->add_option("--folds", cfg.folds, "cross-validation folds")
      ->default_val(10);
  run->add_option("--k-stride", cfg.k_stride,
                  "stride of the default odd candidate K range");
  run->add_option("--k-list", k_list, "explicit candidate K values")
      ->delimiter(',');
  run->add_option("--seed", cfg.seed, "fold partition seed")->default_val(0);
  auto* time_opt =
      run->add_option("--time-limit", cfg.time_limit_secs,
                      "per-input time limit in seconds");
  run->add_option("--mode", mode_str,
                  "full | baseline | quick-only | falsify-only")
      ->default_val("full");
  int poison_max = 0;
  auto* poison_opt = run->add_option("--poison-max", poison_max,
                                     "inject up to this many poisoned elements");
  run->add_option("--poison-seed", cfg.poison_seed, "poison injection seed")
      ->default_val(0);
  run->add_flag("--header", cfg.header, "CSV files carry a header row");
  run->add_option("--workers", cfg.workers, "parallel workers")
      ->default_val(1);
  run->add_option("--out", cfg.out_path, "report output path (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto mode = knnr::parse_run_mode(mode_str);
    if (!mode) {
      std::fprintf(stderr, "error: unknown mode '%s'\n", mode_str.c_str());
      return 1;
    }
    cfg.mode = *mode;
    cfg.k_list = k_list;
    if (poison_opt->count() > 0) cfg.poison_max = poison_max;
    if (time_opt->count() == 0) {
      cfg.time_limit_secs = cfg.mode == knnr::RunMode::Baseline ? 7200.0 : 1800.0;
    }

    const nlohmann::ordered_json report = knnr::run_experiment(cfg);
    const auto& agg = report.at("aggregate");
    std::printf("total %zu: certified %zu, falsified %zu, unknown %zu\n",
                agg.at("total").get<std::size_t>(),
                agg.at("certified").get<std::size_t>(),
                agg.at("falsified").get<std::size_t>(),
                agg.at("unknown").get<std::size_t>());
    return 0;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal invariant failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
