#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "famcorr/error.hpp"
#include "famcorr/pseudofam.hpp"
#include "famcorr/rng.hpp"
#include "famcorr/stats.hpp"
#include "famcorr/synth.hpp"
#include "temp_dir.hpp"

using namespace famcorr;

TEST_CASE("scores calibrate the log-frequency range onto 1..7") {
  FrequencyTable freq;
  freq.add("a", 1);
  freq.add("b", 10);
  freq.add("c", 100);
  const auto pf = score(freq, 10.0, "toy");
  CHECK(pf.ratings.rating("a") == 1.0);
  CHECK(pf.ratings.rating("b") == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(pf.ratings.rating("c") == 7.0);
  CHECK(pf.log_min == doctest::Approx(0.0));
  CHECK(pf.log_max == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("endpoint words score exactly 1 and 7") {
  Rng rng(3);
  FrequencyTable freq;
  for (int i = 0; i < 400; ++i) freq.add("w" + std::to_string(i), 2 + rng.below(9999));
  freq.add("floor", 1);
  freq.add("ceiling", 1'000'000);
  const auto pf = score(freq, 10.0, "rng");
  CHECK(pf.ratings.rating("floor") == 1.0);
  CHECK(pf.ratings.rating("ceiling") == 7.0);
  for (const auto& [word, rating] : pf.ratings.entries()) {
    CHECK(rating >= 1.0);
    CHECK(rating <= 7.0);
  }
}

TEST_CASE("a flat table scores the midpoint everywhere") {
  FrequencyTable freq;
  freq.add("x", 5);
  freq.add("y", 5);
  const auto pf = score(freq, 10.0, "flat");
  CHECK(pf.ratings.rating("x") == 4.0);
  CHECK(pf.ratings.rating("y") == 4.0);
}

TEST_CASE("scoring an empty table fails") {
  CHECK_THROWS_AS(score(FrequencyTable{}, 10.0, ""), Error);
}

TEST_CASE("scores are a monotone function of frequency, ties preserved") {
  Rng rng(11);
  FrequencyTable freq;
  for (int i = 0; i < 300; ++i) freq.add("w" + std::to_string(i), 1 + rng.below(40));
  const auto pf = score(freq, 10.0, "rng");

  const auto n = static_cast<Eigen::Index>(freq.total_types());
  Eigen::VectorXd counts(n), ratings(n);
  Eigen::Index i = 0;
  for (const auto& [word, count] : freq.counts()) {
    counts[i] = static_cast<double>(count);
    ratings[i] = *pf.ratings.rating(word);
    ++i;
  }
  const auto rho = stats::spearman(counts, ratings);
  REQUIRE(rho.has_value());
  CHECK(*rho == 1.0);  // identical tie blocks on both sides
}

TEST_CASE("basic word list takes the highest scores with lexicographic ties") {
  FrequencyTable freq;
  freq.add("often", 100);
  freq.add("mid", 10);
  freq.add("rare", 1);
  freq.add("also_often", 100);
  const auto pf = score(freq, 10.0, "toy");
  const auto list = basic_word_list(pf, 2);
  CHECK(list == std::vector<std::string>{"also_often", "often"});
  CHECK(basic_word_list(pf, 99).size() == 4);
}

TEST_CASE("smaller basic lists are prefixes of larger ones") {
  Rng rng(23);
  FrequencyTable freq;
  for (int i = 0; i < 150; ++i) freq.add("w" + std::to_string(i), 1 + rng.below(500));
  const auto pf = score(freq, 10.0, "rng");
  const auto full = basic_word_list(pf, 150);
  for (std::size_t k = 1; k < 150; k += 7) {
    const auto partial = basic_word_list(pf, k);
    REQUIRE(partial.size() == k);
    CHECK(std::equal(partial.begin(), partial.end(), full.begin()));
  }
}

TEST_CASE("readability counts tokens below the threshold") {
  FrequencyTable freq;
  freq.add("easy", 1000);
  freq.add("mid", 30);
  freq.add("hard", 1);
  const auto pf = score(freq, 10.0, "toy");
  const LemmaMap lemmas;

  // Entirely top-scored text is never hard.
  const std::vector<std::string> easy(12, "easy");
  CHECK(assess(easy, pf, lemmas, 7.0).hard_fraction == 0.0);

  const std::vector<std::string> empty;
  const auto none = assess(empty, pf, lemmas, 4.0);
  CHECK(none.total_tokens == 0);
  CHECK(none.hard_fraction == 0.0);

  // 3 of 10 tokens under the threshold.
  std::vector<std::string> text(7, "easy");
  text.insert(text.end(), 3, "hard");
  const auto report = assess(text, pf, lemmas, 2.0);
  CHECK(report.total_tokens == 10);
  CHECK(report.hard_tokens == 3);
  CHECK(report.hard_fraction == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("unknown words assess as least familiar") {
  FrequencyTable freq;
  freq.add("known", 10);   // mid-scale score 4.0
  freq.add("common", 100);
  freq.add("rare", 1);
  const auto pf = score(freq, 10.0, "toy");
  const LemmaMap lemmas;
  const std::vector<std::string> text{"known", "unseen"};
  // threshold 1.0: nothing is hard (rating 1.0 is not < 1.0)
  CHECK(assess(text, pf, lemmas, 1.0).hard_tokens == 0);
  // threshold just above 1: only the unseen word counts
  CHECK(assess(text, pf, lemmas, 1.01).hard_tokens == 1);
}

TEST_CASE("lemma mapping happens before scoring lookup") {
  FrequencyTable freq;
  freq.add("run", 100);
  freq.add("walk", 1);
  const auto pf = score(freq, 10.0, "toy");
  LemmaMap lemmas;
  lemmas.insert("running", "run");
  const std::vector<std::string> text{"running"};
  CHECK(assess(text, pf, lemmas, 6.0).hard_tokens == 0);
}

TEST_CASE("raising the threshold never lowers the hard fraction") {
  Rng rng(31);
  FrequencyTable freq;
  for (int i = 0; i < 120; ++i) freq.add("w" + std::to_string(i), 1 + rng.below(10000));
  const auto pf = score(freq, 10.0, "rng");
  const LemmaMap lemmas;
  std::vector<std::string> text;
  for (int i = 0; i < 400; ++i) text.push_back("w" + std::to_string(rng.below(150)));

  double prev = -1.0;
  for (int step = 0; step <= 20; ++step) {
    const double threshold = 1.0 + 6.0 * step / 20.0;
    const auto report = assess(text, pf, lemmas, threshold);
    CHECK(report.hard_fraction >= prev);
    prev = report.hard_fraction;
  }
}

TEST_CASE("scores agree with the synthetic ground truth on an orderly corpus") {
  // Small vocabulary so empirical counts preserve the true rank order; the
  // noiseless generated ratings are then a monotone map of the counts.
  const synth::ZipfSpec spec{.vocab_size = 8, .exponent = 1.0, .token_count = 100'000,
                             .seed = 0};
  FrequencyTable freq;
  for (const auto r : synth::sample_ranks(spec)) freq.add(synth::zipf_word(r, 8));
  REQUIRE(freq.total_types() == 8);
  const auto pf = score(freq, 10.0, "synth");
  const auto truth = synth::generate_famlist(spec, 0.0, 0);

  Eigen::VectorXd mine(8), real(8);
  for (std::uint32_t r = 1; r <= 8; ++r) {
    mine[r - 1] = *pf.ratings.rating(synth::zipf_word(r, 8));
    real[r - 1] = *truth.rating(synth::zipf_word(r, 8));
  }
  const auto rho = stats::spearman(mine, real);
  REQUIRE(rho.has_value());
  CHECK(*rho == 1.0);
}

TEST_CASE("pseudo lists round-trip with provenance") {
  TempDir dir;
  FrequencyTable freq;
  freq.add("a", 2);
  freq.add("b", 20);
  const auto pf = score(freq, 2.0, "orig-table");

  const auto path = dir.path / "pf.tsv";
  save_pseudofam(pf, path);
  const auto loaded = load_pseudofam(path);
  CHECK(loaded.source == "orig-table");
  CHECK(loaded.log_base == 2.0);
  CHECK(loaded.log_min == pf.log_min);
  CHECK(loaded.log_max == pf.log_max);
  CHECK(loaded.ratings.rating("a") == pf.ratings.rating("a"));
  CHECK(loaded.ratings.rating("b") == pf.ratings.rating("b"));
}
