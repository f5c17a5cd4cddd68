#include "comogphog/evalstats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>
#include <thread>

#include "comogphog/error.hpp"
#include "comogphog/scoring.hpp"
#include "text_util.hpp"

namespace comogphog {

namespace {

struct Labeled {
  double score;
  bool match;
};

// Pairs sorted from most to least similar.
std::vector<Labeled> similarity_order(std::span<const ScoredPair> pairs, Polarity pol) {
  std::vector<Labeled> v;
  v.reserve(pairs.size());
  for (const auto& p : pairs)
    v.push_back({p.score, p.is_match});
  if (pol == Polarity::LowerIsSimilar)
    std::sort(v.begin(), v.end(), [](const Labeled& a, const Labeled& b) { return a.score < b.score; });
  else
    std::sort(v.begin(), v.end(), [](const Labeled& a, const Labeled& b) { return a.score > b.score; });
  return v;
}

std::uint64_t count_matches(std::span<const ScoredPair> pairs) {
  return static_cast<std::uint64_t>(
      std::count_if(pairs.begin(), pairs.end(), [](const ScoredPair& p) { return p.is_match; }));
}

ConfusionCounts counts_from_positives(std::uint64_t predicted, std::uint64_t tp, std::uint64_t positives,
                                      std::uint64_t total) {
  ConfusionCounts c;
  c.tp = tp;
  c.fp = predicted - tp;
  c.fn = positives - tp;
  c.tn = total - positives - c.fp;
  return c;
}

bool matches_at(const LabelTable& labels, const std::string& a, const std::string& b, MatchLevel level) {
  auto la = labels.find(a);
  auto lb = labels.find(b);
  if (la == labels.end())
    throw Error(ErrorCode::MissingLabel, "no label for '" + a + "'");
  if (lb == labels.end())
    throw Error(ErrorCode::MissingLabel, "no label for '" + b + "'");
  return level == MatchLevel::Family ? family_match(la->second, lb->second)
                                     : superfamily_match(la->second, lb->second);
}

std::vector<ScoredPair> score_index_pairs(const FeatureStore& store, const LabelTable& labels,
                                          std::span<const std::pair<std::size_t, std::size_t>> index,
                                          MatchLevel level, unsigned jobs) {
  const auto& entries = store.entries();
  for (const auto& fv : entries)
    if (!labels.contains(fv.id))
      throw Error(ErrorCode::MissingLabel, "no label for '" + fv.id + "'");

  std::vector<ScoredPair> out(index.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const FeatureVector& a = entries[index[k].first];
      const FeatureVector& b = entries[index[k].second];
      out[k] = {a.id, b.id, score(a, b), matches_at(labels, a.id, b.id, level)};
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(index.size(), 1));
  if (workers == 1) {
    work(0, index.size());
    return out;
  }
  const std::size_t chunk = (index.size() + workers - 1) / workers;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(index.size(), w * chunk);
    pool.emplace_back(work, begin, std::min(index.size(), begin + chunk));
  }
  return out;
}

}  // namespace

std::string_view to_string(Polarity p) {
  return p == Polarity::LowerIsSimilar ? "lower" : "higher";
}

Polarity parse_polarity(std::string_view text) {
  if (text == "lower")
    return Polarity::LowerIsSimilar;
  if (text == "higher")
    return Polarity::HigherIsSimilar;
  throw Error(ErrorCode::InvalidArgument, "polarity must be 'lower' or 'higher', got '" + std::string(text) + "'");
}

ConfusionCounts confusion_at_threshold(std::span<const ScoredPair> pairs, double t, Polarity pol) {
  ConfusionCounts c;
  for (const ScoredPair& p : pairs) {
    const bool predicted = pol == Polarity::LowerIsSimilar ? p.score <= t : p.score >= t;
    if (predicted)
      (p.is_match ? c.tp : c.fp) += 1;
    else
      (p.is_match ? c.fn : c.tn) += 1;
  }
  return c;
}

double mcc(const ConfusionCounts& c) {
  const auto tp = static_cast<double>(c.tp);
  const auto tn = static_cast<double>(c.tn);
  const auto fp = static_cast<double>(c.fp);
  const auto fn = static_cast<double>(c.fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0)
    return 0.0;
  const double value = (tp * tn - fp * fn) / std::sqrt(denom);
  return std::clamp(value, -1.0, 1.0);
}

std::vector<double> threshold_grid(std::span<const ScoredPair> pairs, std::size_t count) {
  if (pairs.empty() || count == 0)
    return {};
  auto [lo, hi] = std::minmax_element(pairs.begin(), pairs.end(),
                                      [](const ScoredPair& a, const ScoredPair& b) { return a.score < b.score; });
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo->score;
    return grid;
  }
  const double step = (hi->score - lo->score) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = lo->score + step * static_cast<double>(i);
  grid.back() = hi->score;
  return grid;
}

std::vector<CurvePoint> mcc_curve(std::span<const ScoredPair> pairs, Polarity pol,
                                  std::span<const double> thresholds) {
  std::vector<Labeled> sorted;
  sorted.reserve(pairs.size());
  for (const auto& p : pairs)
    sorted.push_back({p.score, p.is_match});
  std::sort(sorted.begin(), sorted.end(), [](const Labeled& a, const Labeled& b) { return a.score < b.score; });

  // prefix[k] = matches among the k lowest scores.
  std::vector<std::uint64_t> prefix(sorted.size() + 1, 0);
  for (std::size_t i = 0; i < sorted.size(); ++i)
    prefix[i + 1] = prefix[i] + (sorted[i].match ? 1 : 0);
  const std::uint64_t total = sorted.size();
  const std::uint64_t positives = prefix.back();

  auto below = [](double t, const Labeled& l) { return t < l.score; };
  auto under = [](const Labeled& l, double t) { return l.score < t; };

  std::vector<CurvePoint> curve;
  curve.reserve(thresholds.size());
  for (double t : thresholds) {
    ConfusionCounts c;
    std::uint64_t predicted = 0;
    if (pol == Polarity::LowerIsSimilar) {
      const auto k = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), t, below) - sorted.begin());
      predicted = k;
      c = counts_from_positives(k, prefix[k], positives, total);
    } else {
      const auto k = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), t, under) - sorted.begin());
      predicted = total - k;
      c = counts_from_positives(predicted, positives - prefix[k], positives, total);
    }
    curve.push_back({t, mcc(c), predicted});
  }
  return curve;
}

PeakMcc peak_mcc(std::span<const ScoredPair> pairs, Polarity pol) {
  if (pairs.empty())
    throw Error(ErrorCode::InvalidArgument, "no pairs to evaluate");
  const auto ordered = similarity_order(pairs, pol);
  const std::uint64_t total = ordered.size();
  const std::uint64_t positives = count_matches(pairs);

  PeakMcc best{ordered.front().score, -2.0, {}};
  std::uint64_t tp = 0;
  for (std::size_t i = 0; i < ordered.size();) {
    const double t = ordered[i].score;
    while (i < ordered.size() && ordered[i].score == t)
      tp += ordered[i++].match ? 1 : 0;
    const ConfusionCounts c = counts_from_positives(i, tp, positives, total);
    const double value = mcc(c);
    if (value > best.mcc)
      best = {t, value, c};
  }
  return best;
}

std::vector<PValueBin> pvalue_curve(std::span<const ScoredPair> pairs, Polarity /*pol*/, std::size_t num_bins) {
  if (num_bins < 2)
    throw Error(ErrorCode::InvalidArgument, "pvalue_curve needs at least 2 bins");
  if (pairs.empty())
    throw Error(ErrorCode::InvalidArgument, "no pairs to evaluate");
  auto [lo_it, hi_it] = std::minmax_element(
      pairs.begin(), pairs.end(), [](const ScoredPair& a, const ScoredPair& b) { return a.score < b.score; });
  const double lo = lo_it->score;
  const double hi = hi_it->score;
  if (!(hi > lo))
    throw Error(ErrorCode::DegenerateRange, "all scores equal " + detail::format_general(lo, 17));

  const double width = (hi - lo) / static_cast<double>(num_bins);
  std::vector<PValueBin> bins(num_bins);
  for (std::size_t i = 0; i < num_bins; ++i) {
    bins[i].lower = lo + width * static_cast<double>(i);
    bins[i].upper = i + 1 == num_bins ? hi : lo + width * static_cast<double>(i + 1);
    bins[i].center = lo + width * (static_cast<double>(i) + 0.5);
  }
  for (const ScoredPair& p : pairs) {
    auto idx = static_cast<std::size_t>(std::floor((p.score - lo) / width));
    idx = std::min(idx, num_bins - 1);
    bins[idx].count += 1;
    bins[idx].matches += p.is_match ? 1 : 0;
  }
  for (auto& b : bins)
    if (b.count > 0)
      b.posterior = static_cast<double>(b.matches) / static_cast<double>(b.count);
  return bins;
}

std::vector<RocPoint> roc_curve(std::span<const ScoredPair> pairs, Polarity pol) {
  const std::uint64_t positives = count_matches(pairs);
  const std::uint64_t negatives = pairs.size() - positives;
  if (positives == 0 || negatives == 0)
    throw Error(ErrorCode::SingleClass, "ROC needs both matching and non-matching pairs");

  const auto ordered = similarity_order(pairs, pol);
  const double start = pol == Polarity::LowerIsSimilar ? -std::numeric_limits<double>::infinity()
                                                       : std::numeric_limits<double>::infinity();
  std::vector<RocPoint> curve{{0.0, 0.0, start}};
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  for (std::size_t i = 0; i < ordered.size();) {
    const double t = ordered[i].score;
    while (i < ordered.size() && ordered[i].score == t)
      (ordered[i++].match ? tp : fp) += 1;
    curve.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                     static_cast<double>(tp) / static_cast<double>(positives), t});
  }
  return curve;
}

double auc(std::span<const RocPoint> curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) * 0.5;
  return area;
}

std::pair<double, double> sensitivity_specificity(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0 || c.tn + c.fp == 0)
    throw Error(ErrorCode::UndefinedRate, "sensitivity/specificity need both classes present");
  return {static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn),
          static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp)};
}

std::vector<ScoredPair> score_all_pairs(const FeatureStore& store, const LabelTable& labels, MatchLevel level,
                                        unsigned jobs) {
  const std::size_t n = store.size();
  std::vector<std::pair<std::size_t, std::size_t>> index;
  index.reserve(n < 2 ? 0 : n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      index.emplace_back(i, j);
  return score_index_pairs(store, labels, index, level, jobs);
}

std::vector<ScoredPair> score_sampled_pairs(const FeatureStore& store, const LabelTable& labels,
                                            std::size_t count, std::uint64_t seed, MatchLevel level,
                                            unsigned jobs) {
  const std::uint64_t n = store.size();
  const std::uint64_t total = n < 2 ? 0 : n * (n - 1) / 2;
  if (count >= total)
    return score_all_pairs(store, labels, level, jobs);

  // Linear pair index -> (i, j): row i owns the n-1-i pairs (i, i+1..n-1).
  std::vector<std::uint64_t> row_start(n);
  for (std::uint64_t i = 0, acc = 0; i < n; ++i) {
    row_start[i] = acc;
    acc += n - 1 - i;
  }
  std::mt19937_64 rng(seed);
  std::set<std::uint64_t> chosen;
  while (chosen.size() < count)
    chosen.insert(rng() % total);

  std::vector<std::pair<std::size_t, std::size_t>> index;
  index.reserve(count);
  for (std::uint64_t linear : chosen) {
    const auto row = static_cast<std::size_t>(
        std::upper_bound(row_start.begin(), row_start.end(), linear) - row_start.begin() - 1);
    index.emplace_back(row, row + 1 + static_cast<std::size_t>(linear - row_start[row]));
  }
  return score_index_pairs(store, labels, index, level, jobs);
}

std::vector<ScoredPair> parse_score_file(std::string_view text, const LabelTable& labels, MatchLevel level) {
  std::vector<ScoredPair> pairs;
  bool first = true;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    const char sep = line.find('\t') != std::string_view::npos ? '\t' : ',';
    const auto fields = detail::split(line, sep);
    const bool header_candidate = first;
    first = false;
    double value = 0.0;
    bool ok = fields.size() == 3;
    if (ok) {
      std::string_view s = detail::trim(fields[2]);
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      ok = !s.empty() && ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(value);
    }
    if (!ok) {
      if (header_candidate)
        continue;
      throw Error(ErrorCode::InvalidArgument, "score file line " + std::to_string(line_no) +
                                                  ": expected id_a,id_b,score");
    }
    std::string a(detail::trim(fields[0]));
    std::string b(detail::trim(fields[1]));
    const bool match = matches_at(labels, a, b, level);
    pairs.push_back({std::move(a), std::move(b), value, match});
  }
  return pairs;
}

std::vector<ScoredPair> read_score_file(const std::filesystem::path& path, const LabelTable& labels,
                                        MatchLevel level) {
  return parse_score_file(detail::read_file(path), labels, level);
}

}  // namespace comogphog
