// mvst: command-line front end for the multivariate shapelet transform and DTW baselines.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or parse error.

#include <mvst/mvst.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

  constexpr int exit_ok = 0;
  constexpr int exit_runtime = 1;
  constexpr int exit_usage = 2;

  /// Bad flags, unreadable or malformed inputs.
  struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  mvst::Dataset load(const std::string& path) {
    try {
      return mvst::io::read_dataset_file(path);
    } catch (const mvst::Error& e) {
      throw UsageError(e.what());
    }
  }

  Json load_json(const std::string& path) {
    try {
      return mvst::io::read_json_file(path);
    } catch (const mvst::Error& e) {
      throw UsageError(e.what());
    }
  }

  std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) { fs::create_directories(path.parent_path()); }
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw mvst::IoError("cannot write '" + path.string() + "'"); }
    return out;
  }

  Json base_manifest(const std::string& command) {
    Json m;
    m["tool"] = "mvst";
    m["version"] = mvst::version;
    m["command"] = command;
    return m;
  }

  std::string manifest_comment(const Json& manifest) { return "manifest " + manifest.dump(); }

  // Shapelet search flags shared by transform, classify and benchmark.
  struct SearchFlags {
    std::optional<std::size_t> k, min_length, max_length;
    std::optional<std::uint64_t> total;
    std::optional<double> time_limit;
    std::uint64_t seed = 0;
    bool no_normalize = false;

    void add(CLI::App* cmd) {
      cmd->add_option("--k", k, "Shapelets to keep (default 10 x classes)");
      cmd->add_option("--min", min_length, "Minimum shapelet length (default 3)");
      cmd->add_option("--max", max_length, "Maximum shapelet length (default series length)");
      cmd->add_option("--total", total, "Distinct candidates to evaluate (reproducible mode)");
      cmd->add_option("--time-limit", time_limit, "Search budget in seconds (default 3600 when --total is unset)");
      cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
      cmd->add_flag("--no-normalize", no_normalize, "Disable z-normalization of shapelets and windows");
    }

    [[nodiscard]] mvst::SearchConfig config() const {
      if (time_limit && !(*time_limit > 0.0)) { throw UsageError("--time-limit must be positive"); }
      if (total && *total == 0) { throw UsageError("--total must be positive"); }
      if (k && *k == 0) { throw UsageError("--k must be positive"); }
      mvst::SearchConfig c;
      c.k = k;
      c.min_length = min_length;
      c.max_length = max_length;
      c.total_shapelets = total;
      c.time_budget = time_limit;
      if (!total && !time_limit) { c.time_budget = 3600.0; }
      c.seed = seed;
      c.normalize = !no_normalize;
      return c;
    }

    void record(Json& m) const {
      m["k"] = k ? Json(*k) : Json(nullptr);
      m["min"] = min_length ? Json(*min_length) : Json(nullptr);
      m["max"] = max_length ? Json(*max_length) : Json(nullptr);
      m["total"] = total ? Json(*total) : Json(nullptr);
      const auto cfg = config();
      m["timeLimit"] = cfg.time_budget ? Json(*cfg.time_budget) : Json(nullptr);
      m["seed"] = seed;
      m["normalize"] = !no_normalize;
    }
  };

  mvst::SearchConfig resolve_search(const SearchFlags& flags, const mvst::Dataset& train) {
    auto c = flags.config();
    try {
      (void)mvst::resolve(c, train);
    } catch (const mvst::ConfigError& e) {
      throw UsageError(e.what());
    }
    return c;
  }

  // --- --- --- transform

  struct TransformArgs {
    std::string train, test, method = "shapelet-d", out_dir = ".", shapelets_in;
    SearchFlags search;
    unsigned threads = 1;
  };

  int cmd_transform(const TransformArgs& args) {
    const auto train = load(args.train);
    std::optional<mvst::Dataset> test;
    if (!args.test.empty()) { test = load(args.test); }

    Json manifest = base_manifest("transform");
    manifest["train"] = args.train;
    manifest["test"] = args.test.empty() ? Json(nullptr) : Json(args.test);

    std::vector<mvst::ShapeletCandidate> shapelets;
    Json config;
    Json stats;
    if (!args.shapelets_in.empty()) {
      manifest["shapelets"] = args.shapelets_in;
      mvst::io::ShapeletSet set;
      try {
        set = mvst::io::shapelet_set_from_json(load_json(args.shapelets_in));
      } catch (const mvst::ParseError& e) {
        throw UsageError(args.shapelets_in + ": " + e.what());
      }
      shapelets = std::move(set.shapelets);
      config = set.config;
    } else {
      mvst::ShapeletVariant variant;
      try {
        variant = mvst::parse_shapelet_variant(args.method);
      } catch (const mvst::ConfigError& e) { throw UsageError(e.what()); }
      manifest["method"] = std::string(mvst::to_string(variant));
      args.search.record(manifest);
      auto sc = resolve_search(args.search, train);
      sc.variant = variant;
      sc.threads = args.threads;
      const auto result = mvst::search_detailed(train, sc);
      shapelets = result.shapelets;
      config = mvst::io::to_json(result.config);
      stats["space"] = result.space;
      stats["evaluated"] = result.evaluated;
      stats["exhaustive"] = result.exhaustive;
    }

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    auto set_json = mvst::io::shapelet_set_to_json(shapelets, config, manifest);
    if (!stats.is_null()) { set_json["search"] = stats; }
    {
      auto out = open_output(dir / "shapelets.json");
      out << set_json.dump(2) << '\n';
    }
    const auto train_fm = mvst::transform(train, shapelets, args.threads);
    {
      auto out = open_output(dir / "train_features.csv");
      mvst::io::write_feature_csv(out, train_fm, manifest);
    }
    if (test) {
      const auto test_fm = mvst::transform(*test, shapelets, args.threads);
      auto out = open_output(dir / "test_features.csv");
      mvst::io::write_feature_csv(out, test_fm, manifest);
    }
    std::cout << "shapelets=" << shapelets.size();
    if (!stats.is_null()) { std::cout << " evaluated=" << stats["evaluated"] << " space=" << stats["space"]; }
    std::cout << '\n';
    return exit_ok;
  }

  // --- --- --- classify

  struct ClassifyArgs {
    std::string train, test, algo, out = "predictions.csv", shapelets_out;
    double window = 1.0;
    SearchFlags search;
    unsigned threads = 1;
  };

  mvst::Algorithm parse_algo(const std::string& name) {
    try {
      return mvst::parse_algorithm(name);
    } catch (const mvst::ConfigError& e) { throw UsageError(e.what()); }
  }

  mvst::WarpingWindow parse_window(double fraction) {
    try {
      return mvst::WarpingWindow(fraction);
    } catch (const mvst::ConfigError& e) { throw UsageError(e.what()); }
  }

  int cmd_classify(const ClassifyArgs& args) {
    const auto algo = parse_algo(args.algo);
    const auto window = parse_window(args.window);
    const auto train = load(args.train);
    const auto test = load(args.test);

    Json manifest = base_manifest("classify");
    manifest["train"] = args.train;
    manifest["test"] = args.test;
    manifest["algo"] = args.algo;
    manifest["window"] = args.window;
    mvst::AlgorithmConfig cfg;
    cfg.window = window;
    cfg.threads = args.threads;
    if (mvst::is_shapelet_algorithm(algo)) {
      args.search.record(manifest);
      cfg.search = resolve_search(args.search, train);
    } else {
      manifest["seed"] = args.search.seed;
    }

    const auto fit = mvst::fit_predict(algo, train, test, cfg);
    const double acc = mvst::accuracy(fit.predictions, test);
    {
      auto out = open_output(args.out);
      mvst::write_predictions_csv(out, test, fit.predictions, manifest_comment(manifest));
    }
    if (!args.shapelets_out.empty() && !fit.shapelets.empty()) {
      const auto resolved = mvst::resolve(cfg.search, train);
      auto j = mvst::io::shapelet_set_to_json(fit.shapelets, mvst::io::to_json(resolved), manifest);
      j["config"]["variant"] = std::string(mvst::to_string(fit.shapelets.front().variant));
      auto out = open_output(args.shapelets_out);
      out << j.dump(2) << '\n';
    }
    if (fit.resolved_dtw) { std::cout << "dtw_a_selected=" << mvst::to_string(*fit.resolved_dtw) << '\n'; }
    std::cout << "accuracy=" << mvst::io::format_real(acc) << '\n';
    return exit_ok;
  }

  // --- --- --- benchmark

  struct BenchmarkArgs {
    std::vector<std::string> train, test;
    std::vector<std::string> algos;
    std::size_t folds = 100;
    double window = 1.0;
    SearchFlags search;
    std::string out_dir = ".";
    unsigned threads = 1;
  };

  void print_pairwise_table(std::ostream& out, const std::vector<mvst::PairwiseTest>& tests) {
    out << "first,second,datasets,wPlus,pValue,exact\n";
    for (const auto& t : tests) {
      out << t.first << ',' << t.second << ',' << t.datasets << ',' << mvst::io::format_real(t.result.w_plus) << ','
          << mvst::io::format_double(t.result.p_value) << ',' << (t.result.exact ? "true" : "false") << '\n';
    }
  }

  void write_pairwise(const fs::path& path, const std::vector<mvst::PairwiseTest>& tests, const Json& manifest) {
    auto out = open_output(path);
    mvst::io::write_comment_block(out, manifest_comment(manifest));
    mvst::io::write_comment_block(out, "raw pairwise p-values, no multiplicity correction");
    print_pairwise_table(out, tests);
  }

  void write_benchmark_outputs(const fs::path& dir, const mvst::ResultsTable& table, const Json& manifest) {
    fs::create_directories(dir);
    {
      auto out = open_output(dir / "results.json");
      out << mvst::results_to_json(table, manifest).dump(2) << '\n';
    }
    const auto ranks = mvst::average_ranks(table);
    {
      auto out = open_output(dir / "ranks.csv");
      mvst::io::write_comment_block(out, manifest_comment(manifest));
      mvst::io::write_comment_block(out, "datasets=" + std::to_string(ranks.datasets.size())
                                           + " algorithms=" + std::to_string(ranks.algorithms.size()));
      out << "algorithm,averageRank\n";
      for (std::size_t a = 0; a < ranks.algorithms.size(); ++a) {
        out << ranks.algorithms[a] << ',' << mvst::io::format_double(ranks.average_rank[a]) << '\n';
      }
    }
    write_pairwise(dir / "wilcoxon.csv", mvst::pairwise_wilcoxon(table), manifest);
  }

  void print_means(const mvst::ResultsTable& table) {
    std::cout << "dataset";
    for (const auto& a : table.algorithms()) { std::cout << ',' << a; }
    std::cout << '\n';
    for (std::size_t d = 0; d < table.datasets().size(); ++d) {
      std::cout << table.datasets()[d];
      for (std::size_t a = 0; a < table.algorithms().size(); ++a) {
        const auto m = table.mean(d, a);
        const auto s = table.stddev(d, a);
        char buf[64];
        if (m) {
          std::snprintf(buf, sizeof buf, "%.3f (%.2f)", *m, *s);
        } else {
          std::snprintf(buf, sizeof buf, "failed");
        }
        std::cout << ',' << buf;
      }
      std::cout << '\n';
    }
  }

  int cmd_benchmark(const BenchmarkArgs& args) {
    if (args.train.size() != args.test.size()) {
      throw UsageError("--train and --test must be given the same number of times");
    }
    if (args.algos.size() < 2) { throw UsageError("benchmark needs at least two algorithms"); }
    if (args.folds == 0) { throw UsageError("--folds must be at least 1"); }
    std::vector<mvst::Algorithm> algos;
    for (const auto& a : args.algos) { algos.push_back(parse_algo(a)); }
    const auto window = parse_window(args.window);

    std::vector<mvst::ExperimentDataset> datasets;
    for (std::size_t i = 0; i < args.train.size(); ++i) {
      auto tr = load(args.train[i]);
      auto te = load(args.test[i]);
      datasets.push_back({std::move(tr), std::move(te)});
    }

    Json manifest = base_manifest("benchmark");
    manifest["train"] = args.train;
    manifest["test"] = args.test;
    manifest["algos"] = args.algos;
    manifest["folds"] = args.folds;
    manifest["window"] = args.window;
    args.search.record(manifest);

    mvst::AlgorithmConfig cfg;
    cfg.window = window;
    cfg.search = args.search.config();
    for (const auto& ds : datasets) {
      if (std::any_of(algos.begin(), algos.end(), mvst::is_shapelet_algorithm)) { (void)resolve_search(args.search, ds.train); }
    }
    mvst::ResultsTable table;
    try {
      table = mvst::run_experiment(datasets, algos, args.folds, args.search.seed, cfg, args.threads);
    } catch (const mvst::ConfigError& e) { throw UsageError(e.what()); }
    write_benchmark_outputs(args.out_dir, table, manifest);
    print_means(table);
    if (table.failures() > 0) {
      std::cerr << "mvst: " << table.failures() << " cell(s) failed; see results.json\n";
    }
    return exit_ok;
  }

  // --- --- --- resample

  struct ResampleArgs {
    std::string train, test, out_dir = ".";
    std::size_t fold = 0;
    std::uint64_t seed = 0;
    double proportion = 0.5;
  };

  int cmd_resample(const ResampleArgs& args) {
    const auto train = load(args.train);
    Json manifest = base_manifest("resample");
    manifest["train"] = args.train;
    manifest["test"] = args.test.empty() ? Json(nullptr) : Json(args.test);
    manifest["fold"] = args.fold;
    manifest["seed"] = args.seed;
    std::pair<mvst::Dataset, mvst::Dataset> split;
    try {
      if (args.test.empty()) {
        manifest["proportion"] = args.proportion;
        split = mvst::stratified_resample(train, mvst::ResampleSpec{args.fold, args.seed, args.proportion});
      } else {
        const auto test = load(args.test);
        split = mvst::stratified_resample(train, test, mvst::ResampleSpec{args.fold, args.seed, args.proportion});
      }
    } catch (const mvst::StratificationError& e) {
      throw UsageError(e.what());
    } catch (const mvst::DimensionError& e) { throw UsageError(e.what()); } catch (const mvst::ConfigError& e) {
      throw UsageError(e.what());
    }
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    const std::string stem = train.name() + "_fold" + std::to_string(args.fold);
    for (auto [suffix, data] : {std::pair{"_TRAIN.ts", &split.first}, std::pair{"_TEST.ts", &split.second}}) {
      auto out = open_output(dir / (stem + suffix));
      mvst::io::write_comment_block(out, manifest_comment(manifest));
      mvst::io::write_dataset(out, *data);
      std::cout << (dir / (stem + suffix)).string() << " (" << data->size() << " instances)\n";
    }
    return exit_ok;
  }

  // --- --- --- estimate

  struct EstimateArgs {
    std::string train, method = "shapelet-d";
    std::optional<std::size_t> min_length, max_length;
    double time_limit = 3600.0;
    std::uint64_t seed = 0;
    std::size_t pilot = 100;
    bool no_normalize = false;
  };

  int cmd_estimate(const EstimateArgs& args) {
    if (!(args.time_limit > 0.0)) { throw UsageError("--time-limit must be positive"); }
    if (args.pilot == 0) { throw UsageError("--pilot must be positive"); }
    mvst::SearchConfig sc;
    try {
      sc.variant = mvst::parse_shapelet_variant(args.method);
    } catch (const mvst::ConfigError& e) { throw UsageError(e.what()); }
    const auto train = load(args.train);
    sc.min_length = args.min_length;
    sc.max_length = args.max_length;
    sc.seed = args.seed;
    sc.normalize = !args.no_normalize;
    mvst::ThroughputEstimate est;
    try {
      est = mvst::estimate_throughput(train, sc, args.time_limit, args.pilot);
    } catch (const mvst::ConfigError& e) { throw UsageError(e.what()); }
    std::cout << "method=" << mvst::to_string(sc.variant) << '\n'
              << "space=" << est.space << '\n'
              << "pilot=" << est.pilot << '\n'
              << "seconds_per_candidate=" << mvst::io::format_double(est.seconds_per_candidate) << '\n'
              << "candidates_per_hour=" << static_cast<std::uint64_t>(est.candidates_per_hour) << '\n'
              << "time_limit=" << mvst::io::format_real(est.budget_seconds) << '\n'
              << "candidates_in_budget=" << static_cast<std::uint64_t>(est.candidates_in_budget) << '\n'
              << "feasible_proportion=" << mvst::io::format_double(est.feasible_proportion) << '\n';
    if (est.full_enumeration_feasible()) {
      std::cout << "full enumeration feasible\n";
    } else {
      std::cout << "sampling required\n";
    }
    return exit_ok;
  }

  // --- --- --- compare

  struct CompareArgs {
    std::string a, b, out;
  };

  mvst::ResultsTable load_results(const std::string& path) {
    try {
      return mvst::results_from_json(load_json(path));
    } catch (const mvst::ParseError& e) { throw UsageError(path + ": " + e.what()); }
  }

  int cmd_compare(const CompareArgs& args) {
    const auto ta = load_results(args.a);
    const auto tb = load_results(args.b);
    std::vector<std::string> datasets;
    for (const auto& d : ta.datasets()) {
      if (std::find(tb.datasets().begin(), tb.datasets().end(), d) != tb.datasets().end()) { datasets.push_back(d); }
    }
    if (datasets.empty()) { throw UsageError("the two results files share no datasets"); }
    const auto clash = [](const std::string& name, const mvst::ResultsTable& other) {
      return std::find(other.algorithms().begin(), other.algorithms().end(), name) != other.algorithms().end();
    };
    std::vector<std::string> algs;
    for (const auto& a : ta.algorithms()) { algs.push_back(clash(a, tb) ? a + "@a" : a); }
    for (const auto& b : tb.algorithms()) { algs.push_back(clash(b, ta) ? b + "@b" : b); }
    mvst::ResultsTable merged(datasets, algs, std::max(ta.folds(), tb.folds()));
    const auto index = [](const std::vector<std::string>& v, const std::string& x) {
      return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
    };
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      const std::size_t da = index(ta.datasets(), datasets[d]);
      const std::size_t db = index(tb.datasets(), datasets[d]);
      for (std::size_t a = 0; a < ta.algorithms().size(); ++a) {
        for (std::size_t f = 0; f < ta.folds(); ++f) { merged.cell(d, a, f).accuracy = ta.cell(da, a, f).accuracy; }
      }
      for (std::size_t b = 0; b < tb.algorithms().size(); ++b) {
        for (std::size_t f = 0; f < tb.folds(); ++f) {
          merged.cell(d, ta.algorithms().size() + b, f).accuracy = tb.cell(db, b, f).accuracy;
        }
      }
    }
    const auto tests = mvst::pairwise_wilcoxon(merged);
    Json manifest = base_manifest("compare");
    manifest["a"] = args.a;
    manifest["b"] = args.b;
    if (!args.out.empty()) { write_pairwise(args.out, tests, manifest); }
    print_pairwise_table(std::cout, tests);
    return exit_ok;
  }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate shapelet transform and multivariate DTW 1-NN benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mvst::version);

  TransformArgs transform_args;
  auto* transform = app.add_subcommand("transform", "Search shapelets on train and write the feature matrices");
  transform->add_option("--train", transform_args.train, "Training dataset (.ts)")->required();
  transform->add_option("--test", transform_args.test, "Test dataset (.ts)");
  transform->add_option("--method", transform_args.method, "indep | shapelet-d | shapelet-i")->capture_default_str();
  transform->add_option("--shapelets", transform_args.shapelets_in, "Apply an existing shapelets.json instead of searching");
  transform->add_option("--out-dir", transform_args.out_dir, "Output directory")->capture_default_str();
  transform->add_option("--threads", transform_args.threads, "Worker threads (does not change results)")->capture_default_str();
  transform_args.search.add(transform);

  ClassifyArgs classify_args;
  auto* classify = app.add_subcommand("classify", "Fit one algorithm on train and classify test");
  classify->add_option("--train", classify_args.train, "Training dataset (.ts)")->required();
  classify->add_option("--test", classify_args.test, "Test dataset (.ts)")->required();
  classify->add_option("--algo", classify_args.algo,
                       "dtw-i | dtw-d | dtw-a | 1nn-ed-c | 1nn-dtw-c | 1nn-dtw-e | st-indep | st-d | st-i")
    ->required();
  classify->add_option("--window", classify_args.window, "DTW warping window fraction in [0,1]")->capture_default_str();
  classify->add_option("--out", classify_args.out, "Predictions CSV")->capture_default_str();
  classify->add_option("--shapelets-out", classify_args.shapelets_out, "Also write the shapelets used (st-* only)");
  classify->add_option("--threads", classify_args.threads, "Worker threads (does not change results)")->capture_default_str();
  classify_args.search.add(classify);

  BenchmarkArgs bench_args;
  auto* bench = app.add_subcommand("benchmark", "Resampled multi-fold comparison of algorithms");
  bench->add_option("--train", bench_args.train, "Training dataset; repeat per dataset")->required();
  bench->add_option("--test", bench_args.test, "Test dataset; repeat in the same order as --train")->required();
  bench->add_option("--algos", bench_args.algos, "Algorithms (comma separated, at least two)")
    ->required()
    ->delimiter(',');
  bench->add_option("--folds", bench_args.folds, "Resamples per dataset; fold 0 is the original split")
    ->capture_default_str();
  bench->add_option("--window", bench_args.window, "DTW warping window fraction in [0,1]")->capture_default_str();
  bench->add_option("--out-dir", bench_args.out_dir, "Output directory")->capture_default_str();
  bench->add_option("--threads", bench_args.threads, "Worker threads (does not change results)")->capture_default_str();
  bench_args.search.add(bench);

  ResampleArgs resample_args;
  auto* resample = app.add_subcommand("resample", "Write one stratified resample of a train/test pair");
  resample->add_option("--train", resample_args.train, "Training dataset, or the only dataset")->required();
  resample->add_option("--test", resample_args.test, "Test dataset");
  resample->add_option("--fold", resample_args.fold, "Fold number; 0 reproduces the original split")->capture_default_str();
  resample->add_option("--seed", resample_args.seed, "Random seed")->capture_default_str();
  resample->add_option("--proportion", resample_args.proportion, "Train share when no --test is given")
    ->capture_default_str();
  resample->add_option("--out-dir", resample_args.out_dir, "Output directory")->capture_default_str();

  EstimateArgs estimate_args;
  auto* estimate = app.add_subcommand("estimate", "Time a pilot sample and project search coverage for a budget");
  estimate->add_option("--train", estimate_args.train, "Training dataset (.ts)")->required();
  estimate->add_option("--method", estimate_args.method, "indep | shapelet-d | shapelet-i")->capture_default_str();
  estimate->add_option("--min", estimate_args.min_length, "Minimum shapelet length (default 3)");
  estimate->add_option("--max", estimate_args.max_length, "Maximum shapelet length (default series length)");
  estimate->add_option("--time-limit", estimate_args.time_limit, "Budget in seconds")->capture_default_str();
  estimate->add_option("--pilot", estimate_args.pilot, "Pilot candidates to time")->capture_default_str();
  estimate->add_option("--seed", estimate_args.seed, "Random seed")->capture_default_str();
  estimate->add_flag("--no-normalize", estimate_args.no_normalize, "Disable z-normalization");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Pairwise Wilcoxon tests across two results files");
  compare->add_option("--a", compare_args.a, "First results.json")->required();
  compare->add_option("--b", compare_args.b, "Second results.json")->required();
  compare->add_option("--out", compare_args.out, "Write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*transform) { return cmd_transform(transform_args); }
    if (*classify) { return cmd_classify(classify_args); }
    if (*bench) { return cmd_benchmark(bench_args); }
    if (*resample) { return cmd_resample(resample_args); }
    if (*estimate) { return cmd_estimate(estimate_args); }
    if (*compare) { return cmd_compare(compare_args); }
  } catch (const UsageError& e) {
    std::cerr << "mvst: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "mvst: " << e.what() << '\n';
    return exit_runtime;
  }
  return exit_usage;
}
