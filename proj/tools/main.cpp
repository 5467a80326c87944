// Command-line front end: validate datasets, produce recommendations,
// fit per-user alphas, run the full evaluation, generate synthetic data.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sensorec/csv.hpp"
#include "sensorec/dataset_io.hpp"
#include "sensorec/evaluation.hpp"
#include "sensorec/predictor.hpp"
#include "sensorec/report.hpp"
#include "sensorec/synthetic.hpp"

namespace {

using namespace sensorec;

struct Options {
  std::string dataset_dir;
  std::string schema_path;
  int folds = 5;
  int top_n = 5;
  int relevance_threshold = 4;
  std::string alpha_objective = "map";
  double alpha_step = 0.01;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "table";
};

Dataset load(const Options& options) {
  if (options.dataset_dir.empty()) {
    throw std::runtime_error("--dataset-dir is required for this command");
  }
  DatasetPaths paths = locate_dataset(options.dataset_dir);
  if (!options.schema_path.empty()) paths.schema = options.schema_path;
  return load_dataset(paths);
}

AlphaObjective objective_of(const Options& options) {
  return *parse_alpha_objective(options.alpha_objective);  // CLI pre-validated
}

// Empty path means standard output; otherwise write the file and say so.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
  std::cout << "wrote " << path << "\n";
}

std::string fmt_score(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

int run_validate(const Options& options) {
  const Dataset dataset = load(options);
  std::size_t ratings = 0;
  for (const UserProfile& user : dataset.users) ratings += user.ratings.size();
  std::cout << "ok: " << dataset.users.size() << " users, "
            << dataset.items.size() << " items, " << dataset.categories.size()
            << " categories, " << ratings << " ratings\n";
  return 0;
}

int run_recommend(const Options& options, const std::string& user_id,
                  const std::string& family_text, const std::string& measure_text,
                  bool have_alpha, double alpha_override, bool exclude_rated) {
  const Dataset dataset = load(options);
  const UserProfile* user = dataset.find_user(user_id);
  if (user == nullptr) {
    throw std::runtime_error("unknown user \"" + user_id + "\"");
  }

  AlgorithmConfig config;
  config.family = *parse_family(family_text);
  if (config.family != Family::PrefOnly) {
    config.measure = *parse_measure(measure_text);
  }
  config.alpha_objective = objective_of(options);
  config.alpha_grid_step = options.alpha_step;

  double alpha = 0.0;
  if (const auto fixed = fixed_alpha(config.family)) {
    alpha = *fixed;
    if (have_alpha) {
      throw std::runtime_error("--alpha only applies to --family ind");
    }
  } else if (config.family == Family::Ind) {
    if (have_alpha) {
      alpha = alpha_override;
    } else if (!user->ratings.empty()) {
      alpha = fit_alpha(*user, user->ratings, dataset, config,
                        options.relevance_threshold);
      std::cerr << "fitted alpha " << csv::format_double(alpha) << " for "
                << user_id << " (" << config.name() << ")\n";
    } else {
      throw std::runtime_error("user \"" + user_id +
                               "\" has no ratings to fit alpha; pass --alpha");
    }
  } else if (have_alpha) {
    throw std::runtime_error("--alpha only applies to --family ind");
  }

  std::vector<const ItemProfile*> candidates;
  for (const ItemProfile& item : dataset.items) {
    if (exclude_rated && user->ratings.count(item.id) != 0) continue;
    candidates.push_back(&item);
  }
  if (candidates.empty()) {
    throw std::runtime_error("no candidate items to rank (all rated?)");
  }

  const RankedList ranked =
      top_n(*user, candidates, dataset.schema, config, alpha, options.top_n);
  std::ostringstream out;
  for (const RankedEntry& entry : ranked) {
    out << entry.item << "\t" << fmt_score(entry.score) << "\n";
  }
  write_output(options.output, out.str());
  return 0;
}

int run_fit_alpha(const Options& options) {
  const Dataset dataset = load(options);
  const Measure measures[] = {Measure::Min, Measure::Ave, Measure::Cos,
                              Measure::RMSD};

  std::vector<std::vector<std::string>> rows;
  for (const UserProfile& user : dataset.users) {
    std::vector<std::string> row = {user.id, std::to_string(user.ratings.size())};
    for (const Measure measure : measures) {
      if (user.ratings.empty()) {
        row.emplace_back();  // nothing to fit on
        continue;
      }
      AlgorithmConfig config{Family::Ind, measure, objective_of(options),
                             options.alpha_step};
      row.push_back(csv::format_double(fit_alpha(
          user, user.ratings, dataset, config, options.relevance_threshold)));
    }
    rows.push_back(std::move(row));
  }

  const std::vector<std::string> header = {"user_id", "ratings", "alpha_min",
                                           "alpha_ave", "alpha_cos", "alpha_rmsd"};
  std::string out;
  if (options.format == "csv") {
    out = csv::format_row(header);
    for (const auto& row : rows) out += csv::format_row(row);
  } else {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        width[c] = std::max(width[c], row[c].size());
      }
    }
    const auto emit = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out += "  ";
        out += row[c];
        if (c + 1 < row.size()) out += std::string(width[c] - row[c].size(), ' ');
      }
      out += "\n";
    };
    emit(header);
    for (const auto& row : rows) emit(row);
  }
  write_output(options.output, out);
  return 0;
}

int run_evaluate(const Options& options) {
  const Dataset dataset = load(options);
  const auto configs = algorithm_matrix(objective_of(options), options.alpha_step);
  const FoldPlan plan = make_fold_plan(dataset, options.folds, options.seed);

  EvaluationOptions eval;
  eval.folds = options.folds;
  eval.top_n = options.top_n;
  eval.relevance_threshold = options.relevance_threshold;
  eval.alpha_objective = objective_of(options);
  eval.alpha_step = options.alpha_step;
  eval.seed = options.seed;
  eval.dataset_label = options.dataset_dir;

  const EvaluationReport report = cross_validate(dataset, configs, plan, eval);
  write_output(options.output,
               options.format == "csv" ? render_csv(report) : render_table(report));
  return 0;
}

struct SynthArgs {
  std::size_t users = 100;
  std::size_t items = 50;
  std::size_t categories = 14;
  double alpha_point = 0.5;
  bool alpha_is_point = false;
  std::string measure = "ave";
  double sigma = 0.3;
  double density = 0.7;
  bool exact_ratings = false;
  int v_max = 0;  // 0 = keep the schema's
  std::string dataset_format = "csv";
};

int run_synth(const Options& options, const SynthArgs& args) {
  if (options.output.empty()) {
    throw std::runtime_error("synth requires --output <directory>");
  }

  SyntheticSpec spec;
  spec.user_count = args.users;
  spec.item_count = args.items;
  spec.category_count = args.categories;
  if (!options.schema_path.empty()) {
    spec.schema = load_schema(options.schema_path);
  } else if (args.v_max != 0) {
    spec.schema = default_schema();
    spec.schema.v_max = args.v_max;
  }
  spec.alpha = args.alpha_is_point ? AlphaDistribution::point(args.alpha_point)
                                   : AlphaDistribution::uniform();
  const auto measure = parse_measure(args.measure);
  if (!measure) throw std::runtime_error("unknown measure \"" + args.measure + "\"");
  spec.generating_measure = *measure;
  spec.noise_sigma = args.sigma;
  spec.rating_density = args.density;
  spec.exact_ratings = args.exact_ratings;
  spec.seed = options.seed;

  const auto [dataset, truth] = generate_synthetic(spec);
  if (args.dataset_format == "json") {
    save_dataset_json(dataset, options.output);
  } else {
    save_dataset_csv(dataset, options.output);
  }
  save_latent_truth(truth, options.output);

  std::size_t ratings = 0;
  for (const UserProfile& user : dataset.users) ratings += user.ratings.size();
  std::cout << "wrote " << dataset.users.size() << " users, "
            << dataset.items.size() << " items, " << ratings << " ratings to "
            << options.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensory-aversion-aware point-of-interest recommender"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read option defaults from an INI file");

  Options options;
  app.add_option("--dataset-dir", options.dataset_dir,
                 "directory with schema/items/users files (.csv or .json)");
  app.add_option("--schema", options.schema_path,
                 "schema file overriding the dataset directory's");
  app.add_option("--folds", options.folds, "cross-validation fold count")
      ->capture_default_str()
      ->check(CLI::Range(2, 100));
  app.add_option("--top-n", options.top_n, "recommendation list length")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000000));
  app.add_option("--relevance-threshold", options.relevance_threshold,
                 "minimum rating that counts as relevant")
      ->capture_default_str();
  app.add_option("--alpha-objective", options.alpha_objective,
                 "alpha grid-search objective")
      ->capture_default_str()
      ->check(CLI::IsMember({"map", "rmse"}));
  app.add_option("--alpha-step", options.alpha_step,
                 "alpha grid step (must divide 1 evenly)")
      ->capture_default_str();
  app.add_option("--seed", options.seed, "seed for folds and generation")
      ->capture_default_str();
  app.add_option("--output", options.output,
                 "output file (or directory for synth); default stdout");
  app.add_option("--format", options.format, "report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "table"}));

  auto* validate_cmd =
      app.add_subcommand("validate", "check a dataset against the invariants");
  validate_cmd->fallthrough();

  auto* recommend_cmd =
      app.add_subcommand("recommend", "Top-N list for one user");
  recommend_cmd->fallthrough();
  std::string user_id;
  std::string family_text = "ind";
  std::string measure_text = "cos";
  double alpha_override = 0.0;
  bool exclude_rated = false;
  recommend_cmd->add_option("--user", user_id, "user to recommend for")
      ->required();
  recommend_cmd->add_option("--family", family_text, "algorithm family")
      ->capture_default_str()
      ->check(CLI::IsMember({"ind", "mc", "c-only", "pref-only"}));
  recommend_cmd->add_option("--measure", measure_text, "aggregation measure")
      ->capture_default_str()
      ->check(CLI::IsMember({"min", "ave", "cos", "rmsd"}));
  auto* alpha_opt = recommend_cmd->add_option(
      "--alpha", alpha_override, "fixed alpha instead of fitting (ind only)");
  alpha_opt->check(CLI::Range(0.0, 1.0));
  recommend_cmd->add_flag("--exclude-rated", exclude_rated,
                          "rank only items the user has not rated");

  auto* fit_cmd =
      app.add_subcommand("fit-alpha", "per-user fitted alpha, one column per measure");
  fit_cmd->fallthrough();

  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "cross-validate the full algorithm matrix and report");
  evaluate_cmd->fallthrough();

  auto* synth_cmd = app.add_subcommand(
      "synth", "generate a synthetic dataset with latent ground truth");
  synth_cmd->fallthrough();
  SynthArgs synth;
  synth_cmd->add_option("--users", synth.users, "user count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--items", synth.items, "item count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--categories", synth.categories, "category count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* alpha_point_opt =
      synth_cmd->add_option("--alpha", synth.alpha_point,
                            "latent alpha point mass (default: uniform [0,1])");
  alpha_point_opt->check(CLI::Range(0.0, 1.0));
  bool alpha_uniform = false;
  auto* alpha_uniform_opt = synth_cmd->add_flag(
      "--alpha-uniform", alpha_uniform, "draw latent alpha uniformly on [0,1]");
  alpha_point_opt->excludes(alpha_uniform_opt);
  alpha_uniform_opt->excludes(alpha_point_opt);
  synth_cmd->add_option("--measure", synth.measure, "generating measure")
      ->capture_default_str()
      ->check(CLI::IsMember({"min", "ave", "cos", "rmsd"}));
  synth_cmd->add_option("--sigma", synth.sigma, "rating noise sigma")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--density", synth.density, "rating density in (0,1]")
      ->capture_default_str();
  synth_cmd->add_flag("--exact-ratings", synth.exact_ratings,
                      "skip Likert rounding of observed ratings");
  synth_cmd->add_option("--v-max", synth.v_max, "Likert upper bound")
      ->check(CLI::Range(2, 100));
  synth_cmd->add_option("--dataset-format", synth.dataset_format,
                        "dataset file format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    return app.exit(error);
  }

  try {
    if (validate_cmd->parsed()) return run_validate(options);
    if (recommend_cmd->parsed()) {
      return run_recommend(options, user_id, family_text, measure_text,
                           alpha_opt->count() > 0, alpha_override, exclude_rated);
    }
    if (fit_cmd->parsed()) return run_fit_alpha(options);
    if (evaluate_cmd->parsed()) return run_evaluate(options);
    if (synth_cmd->parsed()) {
      synth.alpha_is_point = alpha_point_opt->count() > 0;
      return run_synth(options, synth);
    }
  } catch (const std::exception& error) {
    std::cerr << "sensorec: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
