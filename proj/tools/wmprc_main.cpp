#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "wmprc/clustering.hpp"
#include "wmprc/indices.hpp"
#include "wmprc/ingest.hpp"
#include "wmprc/model_io.hpp"
#include "wmprc/selection.hpp"
#include "wmprc/simulator.hpp"
#include "wmprc/tba_client.hpp"
#include "wmprc/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value ? value : fallback;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_text(const std::string& path, const std::string& body) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wmprc::IngestError("cannot write output file: " + path);
  out << body;
}

// Sidecar carrying provenance for CSV outputs.
void write_meta(const std::string& csv_path, const json& extra) {
  json meta{{"tool_version", wmprc::kToolVersion}};
  for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = *it;
  write_text(csv_path + ".meta.json", meta.dump(2) + "\n");
}

// Dataset from either a CSV path or a "tba:<event_key>" reference.
wmprc::EventDataset load_dataset(const std::string& input,
                                 const std::vector<std::string>& exclusions) {
  if (input.rfind("tba:", 0) == 0) {
    return wmprc::fetch_event_matches(input.substr(4),
                                      env_or("TBA_AUTH_KEY", ""),
                                      env_or("CACHE_DIR", ".wmprc_cache"),
                                      exclusions);
  }
  return wmprc::read_matches_csv(input, exclusions);
}

int cmd_fit(const std::string& input, const std::string& exclude,
            const std::string& method_name, const std::string& criterion_name,
            const std::string& out_dir, bool emit_trace,
            const std::string& diff_trace) {
  wmprc::EventDataset dataset = load_dataset(input, split_list(exclude));
  const std::string input_digest =
      wmprc::digest_string(wmprc::matches_to_csv(dataset.matches));

  wmprc::DesignMatrix design =
      wmprc::build_design(dataset.matches, dataset.roster);
  wmprc::Method method = wmprc::parse_method(method_name);
  wmprc::Criterion criterion = wmprc::parse_criterion(criterion_name);
  wmprc::CandidateChain chain = wmprc::generate_candidates(design, method);
  wmprc::SelectionResult result = wmprc::select(chain, criterion);

  wmprc::StoredModel stored{dataset.roster, result.chosen->model,
                            dataset.event_id, method_name, criterion_name,
                            result.chosen->row};
  const std::string stem =
      (fs::path(out_dir) / (dataset.event_id + "_" + method_name)).string();
  write_text(stem + "_model.json", wmprc::model_to_json(stored, input_digest));
  write_text(stem + "_criteria.csv", wmprc::criterion_curve_csv(result.table));
  write_meta(stem + "_criteria.csv",
             json{{"input_digest", input_digest},
                  {"event", dataset.event_id},
                  {"method", method_name},
                  {"criterion", criterion_name}});
  if (emit_trace) {
    write_text(stem + "_trace.json", wmprc::trace_to_json(chain.trace));
  }

  json report{{"event", dataset.event_id},
              {"method", method_name},
              {"criterion", criterion_name},
              {"matches", design.match_count()},
              {"robots", design.robot_count()},
              {"chosen_c", result.chosen_c},
              {"pcp", result.chosen->row.pcp},
              {"mspe_p", result.chosen->row.mspe_p},
              {"mspe_y", result.chosen->row.mspe_y},
              {"model_file", stem + "_model.json"},
              {"curve_file", stem + "_criteria.csv"}};

  if (!diff_trace.empty()) {
    std::ifstream in(diff_trace, std::ios::binary);
    if (!in) throw wmprc::IngestError("cannot open trace file: " + diff_trace);
    std::ostringstream buf;
    buf << in.rdbuf();
    wmprc::ChainTrace reference = wmprc::trace_from_json(buf.str());
    auto divergence = wmprc::trace_diff(chain.trace, reference);
    if (divergence) {
      report["trace_divergence"] = divergence->description;
      report["trace_divergence_event"] = divergence->event_index;
    } else {
      report["trace_divergence"] = nullptr;
    }
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& red,
                const std::string& blue) {
  wmprc::StoredModel stored = wmprc::load_model(model_path);
  auto red_ids = split_list(red);
  auto blue_ids = split_list(blue);
  if (red_ids.size() != 3 || blue_ids.size() != 3) {
    throw wmprc::ValidationError("predict needs three robots per alliance");
  }
  Eigen::VectorXd row = wmprc::make_design_row(
      stored.roster, {red_ids[0], red_ids[1], red_ids[2]},
      {blue_ids[0], blue_ids[1], blue_ids[2]});
  json report{{"y_hat", wmprc::predict_score(stored.model, row)},
              {"p_hat", wmprc::predict_prob(stored.model, row)},
              {"d_hat", wmprc::predict_outcome(stored.model, row)}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_indices(const std::string& path_a, const std::string& path_b) {
  wmprc::StoredModel a = wmprc::load_model(path_a);
  wmprc::StoredModel b = wmprc::load_model(path_b);
  if (!(a.roster == b.roster)) {
    throw wmprc::ValidationError("models were fitted on different rosters");
  }
  const double nested = wmprc::minr(a.model, b.model);
  const double rc = wmprc::rank_correlation(a.model, b.model);
  json report{{"minr", nested},
              {"minr_strength", wmprc::classify_strength(nested)},
              {"rc", rc},
              {"rc_strength", wmprc::classify_strength(rc)}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_simulate(const std::string& config_path, int threads,
                 const std::string& out_dir, std::optional<uint64_t> seed) {
  wmprc::ExperimentConfig cfg = wmprc::ExperimentConfig::from_file(config_path);
  if (seed) cfg.seed = *seed;

  wmprc::DesignMatrix schedule = [&] {
    if (!cfg.schedule_csv.empty()) {
      wmprc::EventDataset ds = wmprc::read_matches_csv(cfg.schedule_csv);
      return wmprc::build_design(ds.matches, ds.roster);
    }
    const auto& spec = wmprc::scenario_spec(cfg.scenario);
    int robots = 0;
    for (int n : spec.sizes) robots += n;
    const int matches = cfg.synthetic_matches > 0
                            ? cfg.synthetic_matches
                            : (cfg.scenario == wmprc::Scenario::kM1 ? 112 : 114);
    return wmprc::synthetic_schedule(robots, matches, cfg.seed ^ 0x5EEDull);
  }();

  wmprc::TruthSpec truth =
      wmprc::make_scenario(cfg.scenario, cfg.sigma_multiplier, schedule);
  wmprc::ExperimentSummary summary = wmprc::run_experiment(
      truth, schedule, cfg.reps, cfg.methods, cfg.seed, threads);
  summary.schedule_source =
      cfg.schedule_csv.empty() ? "synthetic" : "csv:" + cfg.schedule_csv;

  const std::string stem =
      (fs::path(out_dir) / (summary.scenario + "_" + std::to_string(cfg.seed)))
          .string();
  const std::string csv = wmprc::summary_to_csv(summary, cfg.criteria);
  write_text(stem + "_summary.csv", csv);

  json strengths = json::array();
  for (int i = 0; i < truth.strengths.size(); ++i) {
    strengths.push_back(truth.strengths[i]);
  }
  json methods = json::array();
  for (wmprc::Method m : cfg.methods) methods.push_back(wmprc::method_name(m));
  write_meta(stem + "_summary.csv",
             json{{"scenario", summary.scenario},
                  {"sigma", summary.sigma},
                  {"true_strengths", std::move(strengths)},
                  {"replications", summary.replications},
                  {"master_seed", summary.master_seed},
                  {"methods", std::move(methods)},
                  {"robots", summary.robots},
                  {"matches", summary.matches},
                  {"schedule_source", summary.schedule_source},
                  {"schedule_synthetic", cfg.schedule_csv.empty()},
                  {"summary_digest", wmprc::digest_string(csv)}});

  json report{{"scenario", summary.scenario},
              {"sigma", summary.sigma},
              {"replications", summary.replications},
              {"summary_file", stem + "_summary.csv"}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_import(const std::string& input, const std::string& output,
               const std::vector<std::string>& mappings) {
  std::vector<std::pair<std::string, std::string>> overrides;
  for (const std::string& entry : mappings) {
    auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw wmprc::ValidationError("bad --map entry (want canonical=source): " +
                                   entry);
    }
    overrides.emplace_back(entry.substr(0, eq), entry.substr(eq + 1));
  }
  const std::string canonical = wmprc::import_matches_csv(input, overrides);
  write_text(output, canonical);
  json report{{"output", output}, {"digest", wmprc::digest_string(canonical)}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latent-cluster robot strength estimation for 3v3 match data"};
  app.set_version_flag("--version", wmprc::kToolVersion);
  app.require_subcommand(1);

  std::string input, exclude, method = "tcl", criterion = "mspeb_d";
  std::string out_dir = ".", model_path, model_b_path, red, blue;
  std::string config_path, output, diff_trace;
  std::vector<std::string> mappings;
  int threads = 1;
  bool emit_trace = false;
  std::optional<uint64_t> seed_override;
  uint64_t seed_value = 0;

  CLI::App* fit = app.add_subcommand("fit", "Fit and select a clustered model");
  fit->add_option("--input", input, "match CSV path or tba:<event_key>")
      ->required();
  fit->add_option("--exclude", exclude, "comma-separated match ids to drop");
  fit->add_option("--method", method, "tcl | lct | alt");
  fit->add_option("--criterion", criterion,
                  "mspe_y|mspe_p|mspe_d|mspeb_y|mspeb_p|mspeb_d");
  fit->add_option("--out-dir", out_dir, "output directory");
  fit->add_flag("--emit-trace", emit_trace, "write the chain trace JSON");
  fit->add_option("--diff-trace", diff_trace,
                  "reference trace JSON to diff against");

  CLI::App* predict = app.add_subcommand("predict", "Score a hypothetical match");
  predict->add_option("--model", model_path, "fitted model JSON")->required();
  predict->add_option("--red", red, "three robot ids, comma separated")
      ->required();
  predict->add_option("--blue", blue, "three robot ids, comma separated")
      ->required();

  CLI::App* indices =
      app.add_subcommand("indices", "Nested-relation and rank indices");
  indices->add_option("--model-a", model_path, "first model JSON")->required();
  indices->add_option("--model-b", model_b_path, "second model JSON")
      ->required();

  CLI::App* simulate = app.add_subcommand("simulate", "Run a replication study");
  simulate->add_option("--config", config_path, "experiment config JSON")
      ->required();
  simulate->add_option("--threads", threads, "worker thread count");
  simulate->add_option("--out-dir", out_dir, "output directory");
  CLI::Option* seed_opt =
      simulate->add_option("--seed", seed_value, "override the config seed");

  CLI::App* import_cmd = app.add_subcommand(
      "import", "Convert a foreign match CSV to the canonical schema");
  import_cmd->add_option("--input", input, "source CSV")->required();
  import_cmd->add_option("--output", output, "canonical CSV destination")
      ->required();
  import_cmd->add_option("--map", mappings,
                         "column override canonical=source (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) {
      return cmd_fit(input, exclude, method, criterion, out_dir, emit_trace,
                     diff_trace);
    }
    if (predict->parsed()) return cmd_predict(model_path, red, blue);
    if (indices->parsed()) return cmd_indices(model_path, model_b_path);
    if (simulate->parsed()) {
      if (seed_opt->count() > 0) seed_override = seed_value;
      return cmd_simulate(config_path, threads, out_dir, seed_override);
    }
    if (import_cmd->parsed()) return cmd_import(input, output, mappings);
  } catch (const wmprc::Error& e) {
    json err{{"error", {{"type", e.type()}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", {{"type", "internal"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
  return 0;
}
