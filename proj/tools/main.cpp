// Command line front end: augment / dtw / dba / eval / ensemble.
//
// Exit codes follow sysexits: 0 success, 64 usage error, 65 malformed or
// inconsistent data, 74 I/O failure. Output files are written to a temporary
// sibling and renamed into place, so failures never leave partial files.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtwaug/augment.hpp"
#include "dtwaug/classify.hpp"
#include "dtwaug/dataset.hpp"
#include "dtwaug/dataset_io.hpp"
#include "dtwaug/dba.hpp"
#include "dtwaug/dtw.hpp"
#include "dtwaug/errors.hpp"
#include "dtwaug/posteriors.hpp"
#include "dtwaug/text.hpp"
#include "dtwaug/time_series.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kUsageError = 64;
constexpr int kDataError = 65;
constexpr int kIoError = 74;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

dtwaug::ReadResult load_dataset(const std::string& path, std::optional<char> delimiter) {
  auto in = open_input(path);
  try {
    return dtwaug::read_dataset(in, delimiter, path);
  } catch (const dtwaug::ParseError& e) {
    throw DataError("'" + path + "': " + e.what());
  }
}

dtwaug::ProbabilityMatrix load_probability_matrix(const std::string& path) {
  auto in = open_input(path);
  try {
    return dtwaug::read_probability_matrix(in);
  } catch (const dtwaug::ParseError& e) {
    throw DataError("'" + path + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError("'" + path + "': " + e.what());
  }
}

// Writes through a temporary sibling and renames on success.
void write_atomic(const std::string& path, const std::function<void(std::ostream&)>& body) {
  const fs::path target(path);
  fs::path tmp(target);
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    try {
      body(out);
    } catch (...) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw;
    }
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("failed while writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move '" + tmp.string() + "' to '" + path + "': " + ec.message());
  }
}

char delimiter_from_name(const std::string& name) {
  if (name == "tab") return '\t';
  if (name == "comma") return ',';
  throw DataError("unknown delimiter name '" + name + "' (expected 'tab' or 'comma')");
}

std::string delimiter_name(char delimiter) {
  return delimiter == '\t' ? "tab" : "comma";
}

// DTWAUG_SEED supplies the default master seed; an explicit --seed wins.
std::optional<std::uint64_t> seed_from_environment() {
  const char* raw = std::getenv("DTWAUG_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::uint64_t value = 0;
  const char* last = raw + std::strlen(raw);
  const auto res = std::from_chars(raw, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw UsageError("DTWAUG_SEED must be an unsigned integer, got '" + std::string(raw) + "'");
  }
  return value;
}

struct AugmentArgs {
  std::string train;
  std::string out;
  std::string meta;
  std::string manifest;
  std::string delimiter;  // "tab", "comma", or empty for auto-detection
  dtwaug::AugmentationPolicy policy;
  dtwaug::DbaOptions dba;
};

ordered_json manifest_json(const AugmentArgs& args, char effective_delimiter,
                           const std::vector<dtwaug::ClassAugmentation>& per_class) {
  ordered_json m;
  m["tool"] = "dtwaug";
  m["subcommand"] = "augment";
  m["train"] = args.train;
  m["out"] = args.out;
  m["meta"] = args.meta;
  m["delimiter"] = delimiter_name(effective_delimiter);
  m["seed"] = args.policy.master_seed;
  m["k"] = args.policy.neighbor_count;
  m["boosted"] = args.policy.boosted_count;
  m["seed_weight"] = args.policy.seed_weight;
  m["boosted_weight"] = args.policy.boosted_weight;
  m["residual_mass"] = args.policy.residual_mass;
  m["multiplier"] = args.policy.size_multiplier;
  m["dba_iters"] = args.dba.max_iters;
  m["dba_tol"] = args.dba.rel_tol;
  m["classes"] = ordered_json::array();
  for (const auto& record : per_class) {
    ordered_json entry;
    entry["label"] = record.label;
    entry["original"] = record.original_count;
    entry["target"] = record.target;
    entry["generated"] = record.generated;
    entry["skipped_singleton"] = record.skipped_singleton;
    m["classes"].push_back(std::move(entry));
  }
  return m;
}

// Replay mode: every generation parameter comes from the recorded manifest;
// only the output destinations may be overridden.
void apply_manifest(AugmentArgs& args, bool out_overridden, bool meta_overridden) {
  ordered_json m;
  {
    auto in = open_input(args.manifest);
    try {
      m = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("'" + args.manifest + "': " + e.what());
    }
  }
  try {
    if (m.at("tool") != "dtwaug" || m.at("subcommand") != "augment") {
      throw DataError("'" + args.manifest + "' is not an augment run manifest");
    }
    args.train = m.at("train").get<std::string>();
    if (!out_overridden) args.out = m.at("out").get<std::string>();
    if (!meta_overridden) {
      args.meta = out_overridden ? args.out + ".meta.json" : m.at("meta").get<std::string>();
    }
    args.delimiter = m.at("delimiter").get<std::string>();
    args.policy.master_seed = m.at("seed").get<std::uint64_t>();
    args.policy.neighbor_count = m.at("k").get<std::size_t>();
    args.policy.boosted_count = m.at("boosted").get<std::size_t>();
    args.policy.seed_weight = m.at("seed_weight").get<double>();
    args.policy.boosted_weight = m.at("boosted_weight").get<double>();
    args.policy.residual_mass = m.at("residual_mass").get<double>();
    args.policy.size_multiplier = m.at("multiplier").get<double>();
    args.dba.max_iters = m.at("dba_iters").get<std::size_t>();
    args.dba.rel_tol = m.at("dba_tol").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + args.manifest + "': " + e.what());
  }
}

int run_augment(AugmentArgs args) {
  const std::optional<char> forced = args.delimiter.empty()
                                         ? std::nullopt
                                         : std::optional<char>(delimiter_from_name(args.delimiter));
  try {
    args.policy.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (args.dba.max_iters == 0) throw UsageError("--dba-iters must be positive");
  if (!(args.dba.rel_tol >= 0.0)) throw UsageError("--dba-tol must be nonnegative");

  const auto input = load_dataset(args.train, forced);
  const char delimiter = forced.value_or(input.delimiter);

  const auto result = dtwaug::augment_dataset(input.dataset, args.policy, args.dba);

  write_atomic(args.out, [&](std::ostream& out) {
    dtwaug::write_dataset(result.dataset, out, delimiter);
  });
  const ordered_json manifest = manifest_json(args, delimiter, result.per_class);
  write_atomic(args.meta, [&](std::ostream& out) { out << manifest.dump(2) << '\n'; });

  std::size_t generated = 0;
  std::size_t skipped = 0;
  for (const auto& record : result.per_class) {
    generated += record.generated;
    if (record.skipped_singleton) ++skipped;
  }
  std::cerr << "augment: " << input.dataset.size() << " -> " << result.dataset.size()
            << " instances (" << generated << " synthetic";
  if (skipped > 0) std::cerr << ", " << skipped << " singleton class(es) skipped";
  std::cerr << ")\n";
  return 0;
}

const dtwaug::TimeSeries& instance_at(const dtwaug::LabeledDataset& ds, std::size_t index,
                                      const std::string& path) {
  if (index >= ds.size()) {
    throw DataError("instance index " + std::to_string(index) + " out of range ('" + path +
                    "' has " + std::to_string(ds.size()) + " instances)");
  }
  return ds[index].series;
}

int run_dtw(const std::string& file_a, const std::string& file_b, std::size_t ia, std::size_t ib,
            const std::string& delimiter, bool with_path,
            std::optional<std::size_t> window) {
  const std::optional<char> forced =
      delimiter.empty() ? std::nullopt : std::optional<char>(delimiter_from_name(delimiter));
  const auto a = load_dataset(file_a, forced);
  const auto b = load_dataset(file_b, forced);
  const auto& series_a = instance_at(a.dataset, ia, file_a);
  const auto& series_b = instance_at(b.dataset, ib, file_b);

  if (with_path) {
    const auto alignment = dtwaug::dtw_path(series_a, series_b, window);
    std::cout << dtwaug::render_double(alignment.cost) << '\n';
    for (const auto& step : alignment.path) {
      std::cout << step.i << '\t' << step.j << '\n';
    }
  } else {
    std::cout << dtwaug::render_double(dtwaug::dtw_distance(series_a, series_b, window)) << '\n';
  }
  return 0;
}

int run_dba(const std::string& train_path, const std::string& label, std::size_t init_index,
            const std::string& delimiter, const std::string& out_path,
            const dtwaug::DbaOptions& dba) {
  const std::optional<char> forced =
      delimiter.empty() ? std::nullopt : std::optional<char>(delimiter_from_name(delimiter));
  const auto input = load_dataset(train_path, forced);

  std::vector<dtwaug::TimeSeries> subset;
  if (label.empty()) {
    for (const auto& instance : input.dataset.instances()) subset.push_back(instance.series);
  } else {
    if (!input.dataset.has_class(label)) {
      throw DataError("'" + train_path + "' has no class labeled '" + label + "'");
    }
    for (std::size_t idx : input.dataset.class_instances(label)) {
      subset.push_back(input.dataset[idx].series);
    }
  }
  if (init_index >= subset.size()) {
    throw DataError("--init-index " + std::to_string(init_index) +
                    " out of range (selection has " + std::to_string(subset.size()) +
                    " series)");
  }

  const auto result = dtwaug::dba(subset, subset[init_index], dba);

  dtwaug::LabeledDataset out_ds;
  out_ds.append(label.empty() ? "average" : label, result.average);
  const char out_delimiter = forced.value_or(input.delimiter);
  if (out_path.empty()) {
    dtwaug::write_dataset(out_ds, std::cout, out_delimiter);
  } else {
    write_atomic(out_path, [&](std::ostream& out) {
      dtwaug::write_dataset(out_ds, out, out_delimiter);
    });
  }
  std::cerr << "dba: objective " << dtwaug::render_double(result.objectives.front()) << " -> "
            << dtwaug::render_double(result.objectives.back()) << " after "
            << result.objectives.size() - 1 << " iteration(s)\n";
  return 0;
}

void write_probability_file(const std::string& path, const dtwaug::ProbabilityMatrix& matrix) {
  write_atomic(path, [&](std::ostream& out) { dtwaug::write_probability_matrix(matrix, out); });
}

int run_eval(const std::string& train_path, const std::string& test_path,
             const std::string& augmented_path, const std::string& delimiter,
             const std::string& probs_out, const std::string& probs_aug_out) {
  const std::optional<char> forced =
      delimiter.empty() ? std::nullopt : std::optional<char>(delimiter_from_name(delimiter));
  if (!probs_aug_out.empty() && augmented_path.empty()) {
    throw UsageError("--probs-aug-out requires --augmented");
  }

  const auto train = load_dataset(train_path, forced);
  const auto test = load_dataset(test_path, forced);

  std::cout << "training_set,accuracy,correct,total\n";
  const auto report = [&](const char* name, const dtwaug::EvaluationResult& r) {
    std::cout << name << ',' << dtwaug::render_double(r.accuracy) << ',' << r.correct << ','
              << r.total << '\n';
  };

  const auto original = dtwaug::evaluate(train.dataset, test.dataset);
  report("original", original);
  if (!probs_out.empty()) {
    write_probability_file(
        probs_out, dtwaug::one_hot_posteriors(original.predictions, train.dataset.class_order()));
  }

  if (!augmented_path.empty()) {
    const auto augmented = load_dataset(augmented_path, forced);
    const auto boosted = dtwaug::evaluate(augmented.dataset, test.dataset);
    report("augmented", boosted);
    if (!probs_aug_out.empty()) {
      write_probability_file(probs_aug_out, dtwaug::one_hot_posteriors(
                                                boosted.predictions, train.dataset.class_order()));
    }
  }
  return 0;
}

int run_ensemble(const std::string& probs_a, const std::string& probs_b,
                 const std::string& truth_path, const std::string& delimiter,
                 const std::string& out_path) {
  const auto a = load_probability_matrix(probs_a);
  const auto b = load_probability_matrix(probs_b);
  const auto ensemble = dtwaug::average_posteriors(a, b);

  if (!out_path.empty()) write_probability_file(out_path, ensemble.averaged);

  for (const auto& label : ensemble.predictions) std::cout << label << '\n';

  if (!truth_path.empty()) {
    const std::optional<char> forced =
        delimiter.empty() ? std::nullopt : std::optional<char>(delimiter_from_name(delimiter));
    const auto truth = load_dataset(truth_path, forced);
    if (truth.dataset.size() != ensemble.predictions.size()) {
      throw DataError("'" + truth_path + "' has " + std::to_string(truth.dataset.size()) +
                      " instances but the ensemble has " +
                      std::to_string(ensemble.predictions.size()) + " predictions");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < ensemble.predictions.size(); ++i) {
      if (ensemble.predictions[i] == truth.dataset[i].label) ++correct;
    }
    const double accuracy =
        static_cast<double>(correct) / static_cast<double>(ensemble.predictions.size());
    std::cout << "accuracy," << dtwaug::render_double(accuracy) << '\n';
  }
  return 0;
}

int dispatch(const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const dtwaug::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic time series generation by weighted DTW barycenter averaging,\n"
               "with a 1-NN DTW classifier and posterior-averaging ensemble."};
  app.require_subcommand(1);

  const std::string delimiter_help = "Field separator: 'tab' or 'comma' (default: auto-detect)";
  const auto delimiter_check = CLI::IsMember({"tab", "comma"});

  // augment
  AugmentArgs aug;
  auto* augment = app.add_subcommand(
      "augment", "Balance a training set by generating synthetic series per class");
  auto* aug_train = augment->add_option("--train", aug.train, "Training dataset to augment");
  auto* aug_out = augment->add_option("--out", aug.out, "Output path for the augmented dataset");
  auto* aug_meta = augment->add_option(
      "--meta", aug.meta, "Metadata sidecar path (default: <out>.meta.json)");
  auto* aug_manifest = augment->add_option(
      "--manifest", aug.manifest,
      "Replay a recorded sidecar; only --out and --meta may also be given");
  auto* aug_seed =
      augment->add_option("--seed", aug.policy.master_seed,
                          "Master seed (default: $DTWAUG_SEED, else 0)");
  auto* aug_k = augment->add_option("--k", aug.policy.neighbor_count,
                                    "Neighborhood size for weighting")
                    ->capture_default_str()
                    ->check(CLI::PositiveNumber);
  auto* aug_boosted = augment->add_option("--boosted", aug.policy.boosted_count,
                                          "Randomly boosted neighbors per subset")
                          ->capture_default_str()
                          ->check(CLI::PositiveNumber);
  auto* aug_seed_weight = augment->add_option("--seed-weight", aug.policy.seed_weight,
                                              "Weight of the seed series")
                              ->capture_default_str()
                              ->check(CLI::NonNegativeNumber);
  auto* aug_boosted_weight =
      augment->add_option("--boosted-weight", aug.policy.boosted_weight,
                          "Weight of each boosted neighbor")
          ->capture_default_str()
          ->check(CLI::NonNegativeNumber);
  auto* aug_residual = augment->add_option("--residual", aug.policy.residual_mass,
                                           "Mass shared by the remaining neighbors")
                           ->capture_default_str()
                           ->check(CLI::NonNegativeNumber);
  auto* aug_multiplier =
      augment->add_option("--multiplier", aug.policy.size_multiplier,
                          "Per-class target = multiplier * largest class size")
          ->capture_default_str()
          ->check(CLI::PositiveNumber);
  auto* aug_dba_iters = augment->add_option("--dba-iters", aug.dba.max_iters,
                                            "Barycenter iteration budget")
                            ->capture_default_str()
                            ->check(CLI::PositiveNumber);
  auto* aug_dba_tol = augment->add_option("--dba-tol", aug.dba.rel_tol,
                                          "Relative objective-decrease stop threshold")
                          ->capture_default_str()
                          ->check(CLI::NonNegativeNumber);
  auto* aug_delimiter =
      augment->add_option("--delimiter", aug.delimiter, delimiter_help)->check(delimiter_check);

  // dtw
  std::string dtw_a, dtw_b, dtw_delimiter;
  std::size_t dtw_ia = 0, dtw_ib = 0;
  bool dtw_with_path = false;
  std::optional<std::size_t> dtw_window;
  auto* dtw = app.add_subcommand("dtw", "DTW distance (and optional path) between two series");
  dtw->add_option("--a", dtw_a, "Dataset holding series A")->required();
  dtw->add_option("--b", dtw_b, "Dataset holding series B")->required();
  dtw->add_option("--ia", dtw_ia, "Instance index into --a")->capture_default_str();
  dtw->add_option("--ib", dtw_ib, "Instance index into --b")->capture_default_str();
  dtw->add_flag("--path", dtw_with_path, "Also print the warping path, one 'i<TAB>j' per line");
  dtw->add_option("--window", dtw_window,
                  "Sakoe-Chiba band half-width (reserved; widened to at least |n-m|)");
  dtw->add_option("--delimiter", dtw_delimiter, delimiter_help)->check(delimiter_check);

  // dba
  std::string dba_train, dba_label, dba_out, dba_delimiter;
  std::size_t dba_init_index = 0;
  dtwaug::DbaOptions dba_options;
  auto* dba = app.add_subcommand("dba", "Uniform-weight barycenter average of a dataset or class");
  dba->add_option("--train", dba_train, "Input dataset")->required();
  dba->add_option("--label", dba_label, "Restrict the subset to one class");
  dba->add_option("--init-index", dba_init_index,
                  "Index into the selected subset used as initialization")
      ->capture_default_str();
  dba->add_option("--out", dba_out, "Output dataset path (default: stdout)");
  dba->add_option("--dba-iters", dba_options.max_iters, "Barycenter iteration budget")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  dba->add_option("--dba-tol", dba_options.rel_tol,
                  "Relative objective-decrease stop threshold")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  dba->add_option("--delimiter", dba_delimiter, delimiter_help)->check(delimiter_check);

  // eval
  std::string eval_train, eval_test, eval_augmented, eval_delimiter, eval_probs, eval_probs_aug;
  auto* eval =
      app.add_subcommand("eval", "1-NN DTW accuracy of one or two training sets (CSV to stdout)");
  eval->add_option("--train", eval_train, "Training dataset")->required();
  eval->add_option("--test", eval_test, "Labeled test dataset")->required();
  eval->add_option("--augmented", eval_augmented, "Second training set scored the same way");
  eval->add_option("--probs-out", eval_probs, "Write --train's one-hot posteriors here");
  eval->add_option("--probs-aug-out", eval_probs_aug,
                   "Write --augmented's one-hot posteriors here");
  eval->add_option("--delimiter", eval_delimiter, delimiter_help)->check(delimiter_check);

  // ensemble
  std::string ens_a, ens_b, ens_truth, ens_out, ens_delimiter;
  auto* ensemble = app.add_subcommand(
      "ensemble", "Average two posterior matrices and print the combined predictions");
  ensemble->add_option("--probs-a", ens_a, "First probability matrix")->required();
  ensemble->add_option("--probs-b", ens_b, "Second probability matrix")->required();
  ensemble->add_option("--truth", ens_truth,
                       "Labeled dataset in row order; appends an 'accuracy,<value>' line");
  ensemble->add_option("--out", ens_out, "Write the averaged matrix here");
  ensemble->add_option("--delimiter", ens_delimiter, delimiter_help)->check(delimiter_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (app.got_subcommand(augment)) {
    return dispatch([&] {
      const bool replay = aug_manifest->count() > 0;
      if (replay) {
        for (const CLI::Option* opt :
             {aug_train, aug_seed, aug_k, aug_boosted, aug_seed_weight, aug_boosted_weight,
              aug_residual, aug_multiplier, aug_dba_iters, aug_dba_tol, aug_delimiter}) {
          if (opt->count() > 0) {
            throw UsageError(opt->get_name() +
                             " cannot be combined with --manifest (only --out and --meta"
                             " may override the recorded run)");
          }
        }
        apply_manifest(aug, aug_out->count() > 0, aug_meta->count() > 0);
      } else {
        if (aug_train->count() == 0) throw UsageError("--train is required (or --manifest)");
        if (aug_out->count() == 0) throw UsageError("--out is required (or --manifest)");
        if (aug_meta->count() == 0) aug.meta = aug.out + ".meta.json";
        if (aug_seed->count() == 0) {
          aug.policy.master_seed = seed_from_environment().value_or(0);
        }
      }
      return run_augment(aug);
    });
  }
  if (app.got_subcommand(dtw)) {
    return dispatch([&] {
      return run_dtw(dtw_a, dtw_b, dtw_ia, dtw_ib, dtw_delimiter, dtw_with_path, dtw_window);
    });
  }
  if (app.got_subcommand(dba)) {
    return dispatch([&] {
      if (dba_options.max_iters == 0) throw UsageError("--dba-iters must be positive");
      return run_dba(dba_train, dba_label, dba_init_index, dba_delimiter, dba_out, dba_options);
    });
  }
  if (app.got_subcommand(eval)) {
    return dispatch([&] {
      return run_eval(eval_train, eval_test, eval_augmented, eval_delimiter, eval_probs,
                      eval_probs_aug);
    });
  }
  return dispatch([&] {
    return run_ensemble(ens_a, ens_b, ens_truth, ens_delimiter, ens_out);
  });
}
