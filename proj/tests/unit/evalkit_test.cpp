#include "encmatch/evalkit.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "encmatch/errors.hpp"
#include "oracles.hpp"

namespace encmatch::evalkit {
namespace {

std::vector<ScoreEntry> one_model(const std::string& id, const std::vector<double>& scores) {
  std::vector<ScoreEntry> out;
  for (std::size_t i = 0; i < scores.size(); ++i) out.push_back({i, id, scores[i]});
  return out;
}

dataset::PairManifest balanced_manifest(std::size_t per_class) {
  dataset::PairManifest m;
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    dataset::PairRecord r;
    r.pair_id = i;
    r.label = i < per_class ? dataset::Label::Match : dataset::Label::NonMatch;
    r.split = dataset::Split::Valid;
    m.records.push_back(r);
  }
  return m;
}

TEST(Weights, DefaultsAndValidation) {
  EXPECT_EQ(Weights().values(), (std::array<double, 3>{0.1, 0.3, 0.6}));
  EXPECT_NO_THROW(Weights(0.2, 0.3, 0.5));
  EXPECT_THROW(Weights(0.2, 0.3, 0.6), ValidationError);
  EXPECT_THROW(Weights(-0.1, 0.5, 0.6), ValidationError);
}

TEST(WeightedAccuracy, Examples) {
  EXPECT_EQ(weighted_accuracy(1, 0, 0), 0.1);
  EXPECT_EQ(weighted_accuracy(0, 1, 0), 0.3);
  EXPECT_EQ(weighted_accuracy(0, 0, 1), 0.6);
  EXPECT_DOUBLE_EQ(weighted_accuracy(1, 1, 1), 1.0);
  EXPECT_NEAR(weighted_accuracy(0.999, 0.9595, 0.5246), 0.70251, 1e-12);
  EXPECT_THROW(weighted_accuracy(1.1, 0, 0), ValidationError);
}

TEST(WeightedAccuracy, MonotoneAndConstant) {
  for (double acc = 0.0; acc <= 1.0; acc += 0.125) EXPECT_NEAR(weighted_accuracy(acc, acc, acc), acc, 1e-15);
  EXPECT_LE(weighted_accuracy(0.5, 0.5, 0.5), weighted_accuracy(0.5, 0.5, 0.6));
}

TEST(Ensemble, RoundingRules) {
  EXPECT_EQ(ensemble(ScoreMatrix::from_entries(one_model("m", {0.9, 0.2}))).predictions,
            (std::vector<std::uint8_t>{1, 0}));
  auto two = one_model("a", {0.6});
  two.push_back({0, "b", 0.2});
  EXPECT_EQ(ensemble(ScoreMatrix::from_entries(two)).predictions, (std::vector<std::uint8_t>{0}));
  auto tie = one_model("a", {0.5});
  tie.push_back({0, "b", 0.5});
  EXPECT_EQ(ensemble(ScoreMatrix::from_entries(tie)).predictions, (std::vector<std::uint8_t>{1}));
  EXPECT_EQ(ensemble(ScoreMatrix::from_entries(tie), TieRule::HalfDown).predictions, (std::vector<std::uint8_t>{0}));
}

TEST(Ensemble, ColumnOrderInvariant) {
  std::vector<ScoreEntry> e;
  for (std::uint64_t p = 0; p < 50; ++p) {
    e.push_back({p, "a", 0.1 + 0.017 * static_cast<double>(p % 40)});
    e.push_back({p, "b", 0.3});
    e.push_back({p, "c", 1.0 - 0.013 * static_cast<double>(p % 37)});
  }
  const auto m = ScoreMatrix::from_entries(e);
  const auto ref = ensemble(m);
  const std::vector<std::vector<std::size_t>> orders{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& o : orders) EXPECT_EQ(ensemble(m.select_models(o)), ref);
}

TEST(ScoreMatrix, Validation) {
  EXPECT_THROW(ScoreMatrix::from_entries({}), ValidationError);
  EXPECT_THROW(ScoreMatrix::from_entries(one_model("m", {1.2})), ValidationError);
  EXPECT_THROW(ScoreMatrix::from_entries(one_model("m", {std::nan("")})), ValidationError);
  auto dup = one_model("m", {0.4});
  dup.push_back({0, "m", 0.4});
  EXPECT_THROW(ScoreMatrix::from_entries(dup), ValidationError);
  auto missing = one_model("a", {0.4, 0.5});
  missing.push_back({0, "b", 0.4});
  EXPECT_THROW(ScoreMatrix::from_entries(missing), ValidationError);
}

TEST(ScoreCsv, RoundTripAndErrors) {
  const auto e = one_model("cnn-1", {0.25, 0.875, 1.0 / 3.0});
  const auto text = format_scores(e);
  EXPECT_EQ(text.substr(0, 23), "pair_id,model_id,score\n");
  const auto back = parse_scores(text);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[2].model_id, "cnn-1");
  EXPECT_EQ(back[2].score, 1.0 / 3.0);
  EXPECT_THROW(parse_scores("id,score\n0,1\n"), ValidationError);
  EXPECT_THROW(parse_scores("pair_id,model_id,score\n0,m\n"), ValidationError);
  EXPECT_THROW(parse_scores("pair_id,model_id,score\nx,m,0.5\n"), ValidationError);
  EXPECT_THROW(parse_scores("pair_id,model_id,score\n0,m,0.5x\n"), ValidationError);
}

TEST(Accuracy, Basics) {
  const Submission a{{1, 0, 1, 1}}, b{{0, 1, 0, 0}}, c{{1, 1, 0, 1}};
  EXPECT_EQ(accuracy(a, a), 1.0);
  EXPECT_EQ(accuracy(a, b), 0.0);
  EXPECT_EQ(accuracy(a, c), 0.5);
  EXPECT_EQ(accuracy(c, a), accuracy(a, c));
  EXPECT_THROW(accuracy(a, Submission{{1}}), ValidationError);
}

TEST(Submission, ParseEmit) {
  EXPECT_EQ(parse_submission("1\n0\n1\n").predictions, (std::vector<std::uint8_t>{1, 0, 1}));
  EXPECT_EQ(parse_submission("1\n0\n1").predictions, (std::vector<std::uint8_t>{1, 0, 1}));
  EXPECT_EQ(emit_submission(parse_submission("1\n0\n1\n")), "1\n0\n1\n");
  EXPECT_EQ(emit_submission(parse_submission("0\n1")), "0\n1\n");
  const Submission s{{0, 1, 1, 0}};
  EXPECT_EQ(parse_submission(emit_submission(s)), s);
}

TEST(Submission, RejectsMalformed) {
  for (const char* bad : {"2\n", "1\n\n0\n", "\n", "1\n0\n\n", "1 \n", "1,0\n", "yes\n", "1\r\n0\r\n", "01\n",
                          "\xEF\xBB\xBF" "1\n"}) {
    EXPECT_THROW(parse_submission(bad), ValidationError) << '"' << bad << '"';
  }
  EXPECT_THROW(parse_submission("1\n0\n", 3), ValidationError);
  EXPECT_NO_THROW(parse_submission("1\n0\n1\n", 3));
}

TEST(Loss, MatchesOracleAndClamps) {
  const std::vector<double> p{0.9, 0.2, 0.7, 0.4};
  const std::vector<std::uint8_t> y{1, 0, 0, 1};
  const std::vector<int> yi{1, 0, 0, 1};
  EXPECT_NEAR(binary_cross_entropy(p, y), oracle::bce(p, yi), 1e-12);
  const std::vector<double> wrong{0.0};
  const std::vector<std::uint8_t> one{1};
  EXPECT_NEAR(binary_cross_entropy(wrong, one), -std::log(kLossEpsilon), 1e-6);
}

TEST(Report, ConstantHalfGivesLnTwo) {
  const auto m = balanced_manifest(20);
  const auto rows = report_validation(ScoreMatrix::from_entries(one_model("flat", std::vector<double>(40, 0.5))), m);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].loss, std::log(2.0), 1e-6);
  EXPECT_DOUBLE_EQ(rows[0].accuracy, 0.5);
}

TEST(Report, PerfectAndFlipped) {
  const auto m = balanced_manifest(10);
  std::vector<double> perfect(20), flipped(20);
  for (std::size_t i = 0; i < 20; ++i) {
    perfect[i] = i < 10 ? 1.0 : 0.0;
    flipped[i] = 1.0 - perfect[i];
  }
  auto e = one_model("perfect", perfect);
  const auto f = one_model("flipped", flipped);
  e.insert(e.end(), f.begin(), f.end());
  const auto rows = report_validation(ScoreMatrix::from_entries(e), m);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].accuracy, 1.0);
  EXPECT_LT(rows[0].loss, 1e-6);
  EXPECT_EQ(rows[1].accuracy, 0.0);
  EXPECT_EQ(format_report(rows).substr(0, 46), "model_id,validation_accuracy,validation_loss\np");
}

TEST(Report, OnlyValidationRecordsAndMissingScores) {
  auto m = balanced_manifest(4);
  m.records[0].split = dataset::Split::Train;
  const auto rows = report_validation(ScoreMatrix::from_entries(one_model("m", std::vector<double>(8, 0.9))), m);
  EXPECT_EQ(rows[0].pairs, 7u);
  EXPECT_THROW(report_validation(ScoreMatrix::from_entries(one_model("m", {0.9})), m), ValidationError);
}

TEST(Truth, FromManifestSortedById) {
  dataset::PairManifest m;
  for (const std::uint64_t id : {3u, 1u, 2u}) {
    dataset::PairRecord r;
    r.pair_id = id;
    r.label = id == 1 ? dataset::Label::NonMatch : dataset::Label::Match;
    m.records.push_back(r);
  }
  EXPECT_EQ(truth_from_manifest(m).predictions, (std::vector<std::uint8_t>{0, 1, 1}));
  EXPECT_TRUE(truth_from_manifest(m, dataset::Split::Valid).predictions.empty());
}

TEST(Leaderboard, PartitionIsComplete) {
  const auto s = leaderboard_split(100, 0.2, 5);
  EXPECT_EQ(s.preliminary.size(), 20u);
  EXPECT_EQ(s.final_part.size(), 80u);
  std::vector<bool> seen(100);
  for (const auto i : s.preliminary) seen[i] = true;
  for (const auto i : s.final_part) {
    EXPECT_FALSE(seen[i]);
    seen[i] = true;
  }
  EXPECT_EQ(std::count(seen.begin(), seen.end(), true), 100);
  EXPECT_EQ(leaderboard_split(100, 0.2, 5).preliminary, s.preliminary);
  const Submission a{std::vector<std::uint8_t>(100, 1)};
  EXPECT_EQ(accuracy_on(a, a, s.preliminary), 1.0);
}

}  // namespace
}  // namespace encmatch::evalkit
