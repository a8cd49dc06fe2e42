#include "encmatch/evalkit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "encmatch/errors.hpp"
#include "encmatch/rng.hpp"

namespace encmatch::evalkit {

Weights::Weights() : w_{0.1, 0.3, 0.6} {}

Weights::Weights(double w1, double w2, double w3) : w_{w1, w2, w3} {
  for (const double w : w_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("weights must be finite and non-negative");
  }
  if (std::abs(w1 + w2 + w3 - 1.0) > 1e-9) throw ValidationError("weights must sum to 1");
}

double weighted_accuracy(double acc1, double acc2, double acc3, const Weights& weights) {
  for (const double a : {acc1, acc2, acc3}) {
    if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("accuracies must lie in [0, 1]");
  }
  const auto& w = weights.values();
  return std::clamp(w[0] * acc1 + w[1] * acc2 + w[2] * acc3, 0.0, 1.0);
}

ScoreMatrix ScoreMatrix::from_entries(std::span<const ScoreEntry> entries) {
  ScoreMatrix m;
  std::map<std::string, std::size_t> model_index;
  std::set<std::uint64_t> pairs;
  for (const auto& e : entries) {
    if (!std::isfinite(e.score) || e.score < 0.0 || e.score > 1.0) {
      throw ValidationError("score for pair " + std::to_string(e.pair_id) + " is outside [0, 1]");
    }
    if (model_index.emplace(e.model_id, m.model_ids_.size()).second) m.model_ids_.push_back(e.model_id);
    pairs.insert(e.pair_id);
  }
  if (m.model_ids_.empty()) throw ValidationError("no model scores given");
  m.pair_ids_.assign(pairs.begin(), pairs.end());

  std::map<std::uint64_t, std::size_t> row_index;
  for (std::size_t i = 0; i < m.pair_ids_.size(); ++i) row_index[m.pair_ids_[i]] = i;
  const std::size_t cols = m.model_ids_.size();
  m.values_.assign(m.pair_ids_.size() * cols, std::nan(""));
  for (const auto& e : entries) {
    double& cell = m.values_[row_index[e.pair_id] * cols + model_index[e.model_id]];
    if (!std::isnan(cell)) {
      throw ValidationError("duplicate score for pair " + std::to_string(e.pair_id) + ", model " + e.model_id);
    }
    cell = e.score;
  }
  for (std::size_t r = 0; r < m.pair_ids_.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (std::isnan(m.values_[r * cols + c])) {
        throw ValidationError("model " + m.model_ids_[c] + " has no score for pair " +
                              std::to_string(m.pair_ids_[r]));
      }
    }
  }
  return m;
}

ScoreMatrix ScoreMatrix::select_models(std::span<const std::size_t> cols) const {
  ScoreMatrix out;
  out.pair_ids_ = pair_ids_;
  for (const auto c : cols) {
    if (c >= model_ids_.size()) throw ValidationError("model column out of range");
    out.model_ids_.push_back(model_ids_[c]);
  }
  out.values_.reserve(rows() * cols.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto c : cols) out.values_.push_back(at(r, c));
  }
  return out;
}

std::vector<ScoreEntry> parse_scores(std::string_view text) {
  std::vector<ScoreEntry> out;
  std::size_t line_no = 0;
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line != "pair_id,model_id,score") throw ValidationError("score file: expected header pair_id,model_id,score");
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw ValidationError("score file line " + std::to_string(line_no) + ": expected 3 fields");
    }
    ScoreEntry e;
    const auto id = line.substr(0, c1);
    const auto [end, ec] = std::from_chars(id.data(), id.data() + id.size(), e.pair_id);
    if (ec != std::errc{} || end != id.data() + id.size()) {
      throw ValidationError("score file line " + std::to_string(line_no) + ": bad pair_id");
    }
    e.model_id = std::string(line.substr(c1 + 1, c2 - c1 - 1));
    const std::string score(line.substr(c2 + 1));
    try {
      std::size_t used = 0;
      e.score = std::stod(score, &used);
      if (used != score.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ValidationError("score file line " + std::to_string(line_no) + ": bad score");
    }
    out.push_back(std::move(e));
  }
  if (header) throw ValidationError("score file is empty");
  return out;
}

std::string format_scores(std::span<const ScoreEntry> entries) {
  std::ostringstream os;
  os.precision(17);
  os << "pair_id,model_id,score\n";
  for (const auto& e : entries) os << e.pair_id << ',' << e.model_id << ',' << e.score << '\n';
  return os.str();
}

namespace {

std::uint8_t round_score(double mean, TieRule tie) {
  if (mean > 0.5) return 1;
  if (mean < 0.5) return 0;
  return tie == TieRule::HalfUp ? 1 : 0;
}

}  // namespace

Submission ensemble(const ScoreMatrix& scores, TieRule tie) {
  if (scores.cols() == 0) throw ValidationError("ensemble needs at least one model");
  Submission s;
  s.predictions.reserve(scores.rows());
  for (std::size_t r = 0; r < scores.rows(); ++r) {
    std::vector<double> row(scores.cols());
    for (std::size_t c = 0; c < scores.cols(); ++c) row[c] = scores.at(r, c);
    std::sort(row.begin(), row.end());
    double sum = 0.0;
    for (const double v : row) sum += v;
    s.predictions.push_back(round_score(sum / static_cast<double>(row.size()), tie));
  }
  return s;
}

double accuracy(const Submission& predicted, const Submission& truth) {
  if (predicted.size() != truth.size()) throw ValidationError("submissions differ in length");
  if (truth.size() == 0) throw ValidationError("accuracy of an empty submission");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted.predictions[i] == truth.predictions[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

Submission parse_submission(std::string_view text, std::optional<std::size_t> expected_lines) {
  Submission s;
  if (text.starts_with("\xEF\xBB\xBF")) throw ValidationError("submission: byte-order mark not allowed");
  if (!text.empty() && text.back() == '\n') {
    text.remove_suffix(1);
    if (text.empty()) throw ValidationError("submission line 1: blank line");
  }
  if (!text.empty()) {
    std::size_t line_no = 0;
    while (true) {
      const auto nl = text.find('\n');
      const auto line = text.substr(0, nl);
      ++line_no;
      if (line == "1") s.predictions.push_back(1);
      else if (line == "0") s.predictions.push_back(0);
      else if (line.empty()) throw ValidationError("submission line " + std::to_string(line_no) + ": blank line");
      else throw ValidationError("submission line " + std::to_string(line_no) + ": expected 0 or 1, got '" +
                                 std::string(line.substr(0, 20)) + "'");
      if (nl == std::string_view::npos) break;
      text = text.substr(nl + 1);
    }
  }
  if (expected_lines && s.size() != *expected_lines) {
    throw ValidationError("submission has " + std::to_string(s.size()) + " lines, expected " +
                          std::to_string(*expected_lines));
  }
  return s;
}

std::string emit_submission(const Submission& submission) {
  std::string out;
  out.reserve(submission.size() * 2);
  for (const auto p : submission.predictions) {
    if (p > 1) throw ValidationError("submission values must be 0 or 1");
    out += static_cast<char>('0' + p);
    out += '\n';
  }
  return out;
}

Submission truth_from_manifest(const dataset::PairManifest& manifest, std::optional<dataset::Split> only) {
  std::vector<const dataset::PairRecord*> recs;
  for (const auto& r : manifest.records) {
    if (!only || r.split == *only) recs.push_back(&r);
  }
  std::sort(recs.begin(), recs.end(), [](auto* a, auto* b) { return a->pair_id < b->pair_id; });
  Submission s;
  for (const auto* r : recs) s.predictions.push_back(r->label == dataset::Label::Match ? 1 : 0);
  return s;
}

double binary_cross_entropy(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size() || scores.empty()) throw ValidationError("loss needs equal, non-empty inputs");
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double p = std::clamp(scores[i], kLossEpsilon, 1.0 - kLossEpsilon);
    total += labels[i] ? -std::log(p) : -std::log1p(-p);
  }
  return total / static_cast<double>(scores.size());
}

std::vector<ValidationRow> report_validation(const ScoreMatrix& scores, const dataset::PairManifest& manifest,
                                             TieRule tie) {
  std::map<std::uint64_t, std::size_t> row_index;
  for (std::size_t i = 0; i < scores.rows(); ++i) row_index[scores.pair_ids()[i]] = i;

  std::vector<std::pair<std::size_t, std::uint8_t>> valid;  // (score row, label)
  for (const auto& r : manifest.records) {
    if (r.split != dataset::Split::Valid) continue;
    const auto it = row_index.find(r.pair_id);
    if (it == row_index.end()) throw ValidationError("no score for validation pair " + std::to_string(r.pair_id));
    valid.emplace_back(it->second, r.label == dataset::Label::Match ? 1 : 0);
  }
  if (valid.empty()) throw ValidationError("manifest has no validation records");

  std::vector<ValidationRow> rows;
  for (std::size_t c = 0; c < scores.cols(); ++c) {
    std::vector<double> s;
    std::vector<std::uint8_t> labels;
    std::size_t hits = 0;
    for (const auto& [row, label] : valid) {
      const double p = scores.at(row, c);
      s.push_back(p);
      labels.push_back(label);
      hits += round_score(p, tie) == label;
    }
    rows.push_back({scores.model_ids()[c], static_cast<double>(hits) / static_cast<double>(valid.size()),
                    binary_cross_entropy(s, labels), valid.size()});
  }
  return rows;
}

std::string format_report(std::span<const ValidationRow> rows) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << "model_id,validation_accuracy,validation_loss\n";
  for (const auto& r : rows) os << r.model_id << ',' << r.accuracy << ',' << r.loss << '\n';
  return os.str();
}

LeaderboardSplit leaderboard_split(std::size_t count, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ValidationError("preliminary fraction must be in [0, 1]");
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count) + 1e-9));
  LeaderboardSplit s;
  s.preliminary.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  s.final_part.assign(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
  std::sort(s.preliminary.begin(), s.preliminary.end());
  std::sort(s.final_part.begin(), s.final_part.end());
  return s;
}

double accuracy_on(const Submission& predicted, const Submission& truth, std::span<const std::size_t> positions) {
  if (predicted.size() != truth.size()) throw ValidationError("submissions differ in length");
  if (positions.empty()) throw ValidationError("accuracy over an empty subset");
  std::size_t hits = 0;
  for (const auto i : positions) {
    if (i >= truth.size()) throw ValidationError("position out of range");
    hits += predicted.predictions[i] == truth.predictions[i];
  }
  return static_cast<double>(hits) / static_cast<double>(positions.size());
}

}  // namespace encmatch::evalkit
