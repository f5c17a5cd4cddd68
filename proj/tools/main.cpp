#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "comogphog/error.hpp"

namespace cli = comogphog::cli;

int main(int argc, char** argv) {
  CLI::App app{"Protein structure comparison with gradient texture descriptors"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::size_t eval_bins = 0;
  unsigned jobs = 1;
  app.add_option("--config", config_path, "JSON file overriding extraction/evaluation parameters");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  cli::ExtractArgs extract;
  std::string extract_labels, extract_csv;
  auto* extract_cmd = app.add_subcommand("extract", "Extract descriptors for every structure in a directory");
  extract_cmd->add_option("dir", extract.dir, "Directory of PDB files")->required();
  extract_cmd->add_option("out_store", extract.out_store, "Output feature store")->required();
  extract_cmd->add_option("--labels", extract_labels, "Label table; unlabeled structures are skipped");
  extract_cmd->add_option("--csv", extract_csv, "Also export the store as CSV");

  cli::ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Distance between two structures");
  score_cmd->add_option("file_a", score.file_a)->required();
  score_cmd->add_option("file_b", score.file_b)->required();

  cli::SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Rank store entries by distance to a query structure");
  search_cmd->add_option("store", search.store)->required();
  search_cmd->add_option("query", search.query)->required();
  search_cmd->add_option("--k", search.k, "Number of results")->check(CLI::PositiveNumber);

  cli::EvaluateArgs evaluate;
  std::string polarity, level = "family";
  std::size_t sample = 0;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate scores as a same-family classifier");
  eval_cmd->add_option("input", evaluate.input, "Feature store or id_a,id_b,score CSV")->required();
  eval_cmd->add_option("out_dir", evaluate.out_dir, "Directory for pvalue/mcc/roc CSVs and summary")->required();
  eval_cmd->add_option("--labels", evaluate.labels, "Label table (sid,sccs)")->required();
  eval_cmd->add_option("--polarity", polarity, "lower or higher")->check(CLI::IsMember({"lower", "higher"}));
  eval_cmd->add_option("--level", level, "family or superfamily")->check(CLI::IsMember({"family", "superfamily"}));
  eval_cmd->add_option("--eval-bins", eval_bins, "Bins for the P-value curve and MCC threshold grid");
  auto* sample_opt = eval_cmd->add_option("--sample", sample, "Evaluate this many random pairs")
                         ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", evaluate.seed, "Seed for --sample")->needs(sample_opt);

  CLI11_PARSE(app, argc, argv);

  comogphog::Config config;
  try {
    if (!config_path.empty())
      config = cli::load_config(config_path);
    if (eval_bins != 0)
      config.eval_bins = eval_bins;
    config.validate();
  } catch (const comogphog::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code::kFailure;
  }

  if (*extract_cmd) {
    extract.config = config;
    extract.jobs = jobs;
    if (!extract_labels.empty())
      extract.labels = extract_labels;
    if (!extract_csv.empty())
      extract.csv = extract_csv;
    return cli::cmd_extract(extract, std::cout, std::cerr);
  }
  if (*score_cmd) {
    score.config = config;
    return cli::cmd_score(score, std::cout, std::cerr);
  }
  if (*search_cmd) {
    search.config = config;
    search.jobs = jobs;
    return cli::cmd_search(search, std::cout, std::cerr);
  }
  evaluate.config = config;
  evaluate.jobs = jobs;
  if (!polarity.empty())
    evaluate.polarity = comogphog::parse_polarity(polarity);
  evaluate.level = level == "superfamily" ? comogphog::MatchLevel::Superfamily : comogphog::MatchLevel::Family;
  if (*sample_opt)
    evaluate.sample = sample;
  return cli::cmd_evaluate(evaluate, std::cout, std::cerr);
}
