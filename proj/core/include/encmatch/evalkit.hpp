#pragma once

// Challenge scoring: weighted per-subtask accuracy, score ensembling,
// submission files and validation reports.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "encmatch/dataset.hpp"

namespace encmatch::evalkit {

/// Non-negative subtask weights summing to one.
class Weights {
 public:
  /// 0.1, 0.3, 0.6
  Weights();
  /// Throws ValidationError unless each w >= 0 and |w1 + w2 + w3 - 1| <= 1e-9.
  Weights(double w1, double w2, double w3);

  const std::array<double, 3>& values() const noexcept { return w_; }

 private:
  std::array<double, 3> w_;
};

/// w1*acc1 + w2*acc2 + w3*acc3; each accuracy must lie in [0, 1].
double weighted_accuracy(double acc1, double acc2, double acc3, const Weights& weights = {});

/// How a mean score of exactly 0.5 is rounded.
enum class TieRule { HalfUp, HalfDown };

/// One line per test pair, each 0 or 1.
struct Submission {
  std::vector<std::uint8_t> predictions;

  std::size_t size() const noexcept { return predictions.size(); }
  friend bool operator==(const Submission&, const Submission&) = default;
};

struct ScoreEntry {
  std::uint64_t pair_id = 0;
  std::string model_id;
  double score = 0.0;
};

/// Rows are pairs (ascending pair_id), columns are models (first-seen order).
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  /// Every (pair, model) cell must be given exactly once, with a finite
  /// score in [0, 1].
  static ScoreMatrix from_entries(std::span<const ScoreEntry> entries);

  std::size_t rows() const noexcept { return pair_ids_.size(); }
  std::size_t cols() const noexcept { return model_ids_.size(); }
  const std::vector<std::uint64_t>& pair_ids() const noexcept { return pair_ids_; }
  const std::vector<std::string>& model_ids() const noexcept { return model_ids_; }
  double at(std::size_t row, std::size_t col) const { return values_[row * model_ids_.size() + col]; }

  /// Columns reordered (or subset) by index.
  ScoreMatrix select_models(std::span<const std::size_t> cols) const;

 private:
  std::vector<std::uint64_t> pair_ids_;
  std::vector<std::string> model_ids_;
  std::vector<double> values_;
};

/// Score CSV: header "pair_id,model_id,score" then one row per cell.
std::vector<ScoreEntry> parse_scores(std::string_view text);
std::string format_scores(std::span<const ScoreEntry> entries);

/// Mean across models per pair, then 1 if mean > 0.5; a mean of exactly
/// 0.5 follows `tie`.
Submission ensemble(const ScoreMatrix& scores, TieRule tie = TieRule::HalfUp);

/// Fraction of positions where the two submissions agree.
double accuracy(const Submission& predicted, const Submission& truth);

/// Strict: every line is exactly "0" or "1", newline-separated; one trailing
/// newline is allowed, blank lines are not. Optionally checks the count.
Submission parse_submission(std::string_view text, std::optional<std::size_t> expected_lines = std::nullopt);
/// One value per line, newline-terminated.
std::string emit_submission(const Submission& submission);

/// Labels of `records` in ascending pair_id order.
Submission truth_from_manifest(const dataset::PairManifest& manifest,
                               std::optional<dataset::Split> only = std::nullopt);

/// Mean binary cross-entropy; probabilities are clamped to [eps, 1 - eps].
inline constexpr double kLossEpsilon = 1e-7;
double binary_cross_entropy(std::span<const double> scores, std::span<const std::uint8_t> labels);

struct ValidationRow {
  std::string model_id;
  double accuracy = 0.0;
  double loss = 0.0;
  std::size_t pairs = 0;
};

/// One row per model over the manifest's split=valid records. Every valid
/// pair must have a score.
std::vector<ValidationRow> report_validation(const ScoreMatrix& scores, const dataset::PairManifest& manifest,
                                             TieRule tie = TieRule::HalfUp);
std::string format_report(std::span<const ValidationRow> rows);

/// Leaderboard-style partition of `count` test positions: a seeded
/// `fraction` for the preliminary board, the rest for the final one.
struct LeaderboardSplit {
  std::vector<std::size_t> preliminary;
  std::vector<std::size_t> final_part;
};
LeaderboardSplit leaderboard_split(std::size_t count, double fraction, std::uint64_t seed);

/// Accuracy restricted to `positions`.
double accuracy_on(const Submission& predicted, const Submission& truth, std::span<const std::size_t> positions);

}  // namespace encmatch::evalkit
