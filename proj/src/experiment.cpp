#include "knnr/experiment.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "knnr/csv.hpp"
#include "knnr/poison.hpp"

namespace knnr {

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Full: return "full";
    case RunMode::Baseline: return "baseline";
    case RunMode::QuickOnly: return "quick-only";
    case RunMode::FalsifyOnly: return "falsify-only";
  }
  return "?";
}

std::optional<RunMode> parse_run_mode(const std::string& s) {
  if (s == "full") return RunMode::Full;
  if (s == "baseline") return RunMode::Baseline;
  if (s == "quick-only") return RunMode::QuickOnly;
  if (s == "falsify-only") return RunMode::FalsifyOnly;
  return std::nullopt;
}

namespace {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Certified: return "certified";
    case Outcome::Falsified: return "falsified";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

std::vector<int> resolve_candidates(const ExperimentConfig& cfg,
                                    std::size_t train_size) {
  std::vector<int> raw = cfg.k_list.empty()
                             ? default_k_candidates(train_size, cfg.k_stride)
                             : cfg.k_list;
  const std::size_t max_fold =
      (train_size + cfg.folds - 1) / cfg.folds;
  std::vector<int> out;
  for (int k : raw) {
    if (static_cast<std::size_t>(k) <= train_size - max_fold) {
      out.push_back(k);
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("no candidate K fits the training set");
  }
  return out;
}

double pct(std::size_t part, std::size_t total) {
  if (total == 0) return 0.0;
  return std::round(1000.0 * static_cast<double>(part) /
                    static_cast<double>(total)) /
         10.0;
}

nlohmann::ordered_json verdict_row(std::size_t index, const Verdict& v) {
  nlohmann::ordered_json row;
  row["index"] = index;
  row["outcome"] = to_string(v.outcome);
  if (v.certified_by) {
    row["certified_by"] =
        *v.certified_by == CertifiedBy::Quick ? "quick" : "exhausted";
  } else {
    row["certified_by"] = nullptr;
  }
  if (v.optimal_k) {
    row["optimal_k"] = *v.optimal_k;
  } else {
    row["optimal_k"] = nullptr;
  }
  if (v.default_label) {
    row["default_label"] = *v.default_label;
  } else {
    row["default_label"] = nullptr;
  }
  row["evidence"] = v.evidence;
  row["subsets_checked"] = v.subsets_checked;
  nlohmann::ordered_json profile = nlohmann::ordered_json::object();
  for (const auto& [k, m] : v.min_rmv_profile) {
    profile[std::to_string(k)] = m;
  }
  row["min_rmv"] = profile;
  if (!v.note.empty()) row["note"] = v.note;
  row["elapsed_secs"] = v.elapsed_secs;
  return row;
}

}  // namespace

nlohmann::ordered_json run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("poison budget must be >= 1");

  LabeledDataset train = load_csv(cfg.train_path, cfg.header);
  const LabeledDataset test = load_csv(cfg.test_path, cfg.header);
  if (test.dimension() != train.dimension()) {
    throw std::invalid_argument("train/test feature dimensions differ");
  }

  std::vector<ElementId> injected;
  if (cfg.poison_max) {
    PoisonResult poisoned =
        inject_poison(train, *cfg.poison_max, cfg.poison_seed);
    train = std::move(poisoned.poisoned);
    injected = std::move(poisoned.injected);
  }

  LearnConfig learn_cfg;
  learn_cfg.folds = cfg.folds;
  learn_cfg.partition_seed = cfg.seed;
  learn_cfg.k_candidates = resolve_candidates(cfg, train.size());

  const std::size_t total = test.size();
  std::vector<Verdict> verdicts(total);
  std::vector<std::string> failures(total);

  auto run_one = [&](std::size_t i) {
    RobustnessQuery q;
    q.x = test.elements()[i].features;
    q.n = cfg.n;
    q.cfg = learn_cfg;
    q.time_limit_secs = cfg.time_limit_secs;
    try {
      switch (cfg.mode) {
        case RunMode::Full:
          verdicts[i] = decide(train, q);
          break;
        case RunMode::FalsifyOnly:
          q.use_quick_certify = false;
          verdicts[i] = decide(train, q);
          break;
        case RunMode::Baseline:
          verdicts[i] = baseline_decide(train, q);
          break;
        case RunMode::QuickOnly: {
          Verdict v;
          const CertifyOutcome oc =
              quick_certify(train, q.n, q.x, learn_cfg.k_candidates);
          if (oc.certified) {
            v.outcome = Outcome::Certified;
            v.certified_by = CertifiedBy::Quick;
            v.default_label =
                predict(train, learn_cfg.k_candidates.front(), q.x);
          } else {
            v.outcome = Outcome::Unknown;
            v.note = "quick certification failed";
          }
          verdicts[i] = v;
          break;
        }
      }
    } catch (const std::exception& e) {
      // Per-input isolation: record and continue the batch.
      verdicts[i] = Verdict{};
      verdicts[i].outcome = Outcome::Unknown;
      failures[i] = e.what();
    }
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = cursor.fetch_add(1);
          if (i >= total) return;
          run_one(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  nlohmann::ordered_json report;
  report["schema_version"] = "1";
  nlohmann::ordered_json jc;
  jc["train"] = cfg.train_path;
  jc["test"] = cfg.test_path;
  jc["n"] = cfg.n;
  jc["folds"] = cfg.folds;
  jc["k_candidates"] = learn_cfg.k_candidates;
  jc["seed"] = cfg.seed;
  jc["time_limit_secs"] = cfg.time_limit_secs;
  jc["mode"] = to_string(cfg.mode);
  if (cfg.poison_max) {
    jc["poison_max"] = *cfg.poison_max;
    jc["poison_seed"] = cfg.poison_seed;
    jc["injected_ids"] = injected;
  }
  jc["workers"] = cfg.workers;
  report["config"] = jc;

  std::size_t certified = 0, falsified = 0, unknown = 0;
  double elapsed_sum = 0.0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < total; ++i) {
    nlohmann::ordered_json row = verdict_row(i, verdicts[i]);
    if (!failures[i].empty()) row["error"] = failures[i];
    rows.push_back(std::move(row));
    switch (verdicts[i].outcome) {
      case Outcome::Certified: ++certified; break;
      case Outcome::Falsified: ++falsified; break;
      case Outcome::Unknown: ++unknown; break;
    }
    elapsed_sum += verdicts[i].elapsed_secs;
  }
  report["inputs"] = std::move(rows);

  nlohmann::ordered_json agg;
  agg["total"] = total;
  agg["certified"] = certified;
  agg["falsified"] = falsified;
  agg["unknown"] = unknown;
  agg["certified_pct"] = pct(certified, total);
  agg["falsified_pct"] = pct(falsified, total);
  agg["unknown_pct"] = pct(unknown, total);
  agg["mean_elapsed_secs"] =
      total == 0 ? 0.0 : elapsed_sum / static_cast<double>(total);
  report["aggregate"] = agg;

  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    if (!out) {
      throw std::runtime_error("cannot write report to " + cfg.out_path);
    }
    out << report.dump(2) << '\n';
  }
  return report;
}

}  // namespace knnr
