#include "commands.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "comogphog/error.hpp"
#include "comogphog/featuredb.hpp"
#include "comogphog/scoring.hpp"
#include "text_util.hpp"

namespace comogphog::cli {

namespace fs = std::filesystem;

namespace {

void echo_config(const Config& config, std::ostream& err) {
  err << "config: " << config.describe() << '\n';
}

std::string format_value(double v) {
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  return detail::format_general(v, 17);
}

}  // namespace

Config load_config(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "config '" + path.string() + "': " + e.what());
  }
  if (!j.is_object())
    throw Error(ErrorCode::InvalidArgument, "config '" + path.string() + "' must be a JSON object");

  Config config;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_unsigned())
      throw Error(ErrorCode::InvalidArgument, "config key '" + key + "' must be a non-negative integer");
    const auto v = value.get<std::size_t>();
    if (key == "bins_comograd")
      config.bins_comograd = v;
    else if (key == "bins_phog")
      config.bins_phog = v;
    else if (key == "phog_levels")
      config.phog_levels = v;
    else if (key == "image_size")
      config.image_size = v;
    else if (key == "eval_bins")
      config.eval_bins = v;
    else
      throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
  }
  config.validate();
  return config;
}

int cmd_extract(const ExtractArgs& args, std::ostream& out, std::ostream& err) {
  echo_config(args.config, err);
  try {
    LabelTable labels;
    IngestOptions options;
    options.config = args.config;
    options.jobs = args.jobs;
    if (args.labels) {
      labels = read_label_table(*args.labels);
      options.labels = &labels;
    }
    options.on_file = [&err](const fs::path& path, const std::string& error) {
      if (error.empty())
        err << "ok   " << path.string() << '\n';
      else
        err << "skip " << path.string() << ": " << error << '\n';
    };
    const IngestResult result = ingest_dir(args.dir, options);
    save_store(result.store, args.out_store);
    if (args.csv)
      detail::write_file(*args.csv, export_csv(result.store));
    out << "extracted " << result.store.size() << " structures, skipped " << result.skipped.size()
        << " -> " << args.out_store.string() << '\n';
    return exit_code::kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::EmptyCorpus ? exit_code::kEmptyCorpus : exit_code::kFailure;
  }
}

std::string format_score_line(double d) { return "d= " + detail::format_fixed(d, 9); }

int cmd_score(const ScoreArgs& args, std::ostream& out, std::ostream& err) {
  echo_config(args.config, err);
  try {
    const FeatureVector a = extract_features(read_structure_file(args.file_a), args.config);
    const FeatureVector b = extract_features(read_structure_file(args.file_b), args.config);
    out << format_score_line(score(a, b)) << '\n';
    return exit_code::kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kFailure;
  }
}

int cmd_search(const SearchArgs& args, std::ostream& out, std::ostream& err) {
  echo_config(args.config, err);
  try {
    const FeatureStore store = load_store(args.store);
    const FeatureVector query = extract_features(read_structure_file(args.query), args.config);
    const auto results = search(store.entries(), query, args.k, args.jobs);
    for (std::size_t i = 0; i < results.size(); ++i)
      out << (i + 1) << ',' << results[i].target_id << ',' << format_value(results[i].distance) << '\n';
    return exit_code::kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kFailure;
  }
}

std::string render_mcc_csv(std::span<const CurvePoint> curve, Polarity pol) {
  std::string s = "threshold,mcc_" + std::string(to_string(pol)) + ",count\n";
  for (const auto& p : curve)
    s += format_value(p.x) + ',' + format_value(p.value) + ',' + std::to_string(p.count) + '\n';
  return s;
}

std::string render_pvalue_csv(std::span<const PValueBin> bins, Polarity pol) {
  std::string s = "bin_center,pvalue_" + std::string(to_string(pol)) + ",count\n";
  for (const auto& b : bins)
    s += format_value(b.center) + ',' + (b.posterior ? format_value(*b.posterior) : std::string("NA")) + ',' +
         std::to_string(b.count) + '\n';
  return s;
}

std::string render_roc_csv(std::span<const RocPoint> curve, Polarity pol) {
  std::string s = "fpr,tpr_" + std::string(to_string(pol)) + ",threshold\n";
  for (const auto& p : curve)
    s += format_value(p.fpr) + ',' + format_value(p.tpr) + ',' + format_value(p.threshold) + '\n';
  return s;
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  echo_config(args.config, err);
  std::vector<ScoredPair> pairs;
  Polarity pol = Polarity::LowerIsSimilar;
  try {
    const LabelTable labels = read_label_table(args.labels);
    if (looks_like_store(args.input)) {
      pol = args.polarity.value_or(Polarity::LowerIsSimilar);
      const FeatureStore store = load_store(args.input);
      pairs = args.sample ? score_sampled_pairs(store, labels, *args.sample, args.seed, args.level, args.jobs)
                          : score_all_pairs(store, labels, args.level, args.jobs);
    } else {
      if (!args.polarity) {
        err << "error: --polarity is required when evaluating a score file\n";
        return exit_code::kFailure;
      }
      pol = *args.polarity;
      pairs = read_score_file(args.input, labels, args.level);
    }
    if (pairs.empty()) {
      err << "error: no pairs to evaluate\n";
      return exit_code::kFailure;
    }
    fs::create_directories(args.out_dir);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::MissingLabel ? exit_code::kMissingLabels : exit_code::kFailure;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kFailure;
  }

  int status = exit_code::kOk;
  auto undefined = [&](const Error& e) {
    err << "warning: " << e.what() << '\n';
    status = exit_code::kUndefinedMetric;
  };

  try {
    const auto grid = threshold_grid(pairs, args.config.eval_bins);
    detail::write_file(args.out_dir / "mcc.csv", render_mcc_csv(mcc_curve(pairs, pol, grid), pol));

    try {
      detail::write_file(args.out_dir / "pvalue.csv",
                         render_pvalue_csv(pvalue_curve(pairs, pol, args.config.eval_bins), pol));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateRange)
        throw;
      undefined(e);
    }

    std::string auc_text = "NA";
    try {
      const auto roc = roc_curve(pairs, pol);
      detail::write_file(args.out_dir / "roc.csv", render_roc_csv(roc, pol));
      auc_text = format_value(auc(roc));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingleClass)
        throw;
      undefined(e);
    }

    const PeakMcc peak = peak_mcc(pairs, pol);
    std::string sens = "NA";
    std::string spec = "NA";
    try {
      const auto [se, sp] = sensitivity_specificity(peak.counts);
      sens = format_value(se);
      spec = format_value(sp);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UndefinedRate)
        throw;
    }

    std::uint64_t matches = 0;
    for (const auto& p : pairs)
      matches += p.is_match ? 1 : 0;
    std::string summary;
    summary += "pairs=" + std::to_string(pairs.size()) + '\n';
    summary += "matches=" + std::to_string(matches) + '\n';
    summary += "polarity=" + std::string(to_string(pol)) + '\n';
    summary += "level=" + std::string(args.level == MatchLevel::Family ? "family" : "superfamily") + '\n';
    summary += "auc=" + auc_text + '\n';
    summary += "peak_mcc=" + format_value(peak.mcc) + '\n';
    summary += "peak_threshold=" + detail::format_fixed(peak.threshold, 6) + '\n';
    summary += "sensitivity=" + sens + '\n';
    summary += "specificity=" + spec + '\n';
    detail::write_file(args.out_dir / "summary.txt", summary);
    out << summary;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kFailure;
  }
  return status;
}

}  // namespace comogphog::cli
