#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "famcorr/counting.hpp"
#include "famcorr/error.hpp"
#include "famcorr/experiments.hpp"
#include "famcorr/rng.hpp"
#include "famcorr/stats.hpp"
#include "famcorr/synth.hpp"

using namespace famcorr;

namespace {

FamiliarityList ladder_fam(int n) {
  FamiliarityList fam;
  for (int i = 0; i < n; ++i) {
    fam.insert("w" + std::to_string(i), 1.0 + 6.0 * i / std::max(1, n - 1));
  }
  return fam;
}

}  // namespace

TEST_CASE("reversal curve starts at exactly 1 and drops by the closed form") {
  const auto fam = ladder_fam(4);
  const auto curve = reversal_curve(fam, 1, 42);
  REQUIRE(curve.points.size() == 2);
  CHECK(curve.points[0].first == 0.0);
  CHECK(curve.points[0].second == 1.0);
  CHECK(curve.points[1].first == 1.0);
  // First swap always exchanges two distinct adjacent items: sum d^2 = 2,
  // rho = 1 - 12 / (n (n^2 - 1)) = 0.8 for n = 4.
  CHECK(curve.points[1].second == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("reversal curve is reproducible under a fixed seed") {
  const auto fam = ladder_fam(97);
  const auto a = reversal_curve(fam, 400, 7);
  const auto b = reversal_curve(fam, 400, 7);
  CHECK(a.points == b.points);
  const auto c = reversal_curve(fam, 400, 8);
  CHECK(a.points != c.points);
}

TEST_CASE("incremental reversal correlation matches a full spearman recomputation") {
  // Replays the same seeded swap positions on an explicit permutation and
  // recomputes Spearman from scratch through the generic kernel.
  const int n = 23;
  const std::uint64_t seed = 5;
  const auto fam = ladder_fam(n);
  const auto curve = reversal_curve(fam, 60, seed);

  Rng rng(seed);
  std::vector<int> copy(n);
  std::iota(copy.begin(), copy.end(), 0);
  Eigen::VectorXd original(n);
  for (int i = 0; i < n; ++i) original[i] = i;
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const auto i = static_cast<std::size_t>(rng.below(n - 1));
    std::swap(copy[i], copy[i + 1]);
    Eigen::VectorXd position(n);  // position of item e in the copy
    for (int j = 0; j < n; ++j) position[copy[static_cast<std::size_t>(j)]] = j;
    const auto rho = stats::spearman(original, position);
    REQUIRE(rho.has_value());
    CHECK(curve.points[k].second == doctest::Approx(*rho).epsilon(1e-12));
  }
}

TEST_CASE("swaps_to_reach finds the first crossing") {
  const auto fam = ladder_fam(4);
  const auto one = swaps_to_reach(fam, 0.99, 3);
  CHECK(one.reached);
  CHECK(one.swaps == 1);

  const auto exact = swaps_to_reach(fam, 0.8, 3);
  CHECK(exact.reached);
  CHECK(exact.swaps == 1);
  CHECK(exact.correlation == doctest::Approx(0.8).epsilon(1e-14));

  const auto capped = swaps_to_reach(fam, -1.0, 3, 10);
  CHECK_FALSE(capped.reached);
  CHECK(capped.swaps == 10);
  CHECK(capped.correlation > -1.0);

  CHECK_THROWS_AS(swaps_to_reach(fam, 1.0, 3), Error);
}

TEST_CASE("growth curve saturates at the corpus length") {
  const synth::ZipfSpec spec{.vocab_size = 30, .exponent = 1.0, .token_count = 500, .seed = 2};
  const auto tokens = synth::generate_corpus(spec);
  const auto fam = synth::generate_famlist(spec, 0.0, 0);
  const LemmaMap lemmas;

  const std::vector<std::uint64_t> sizes{10, 100, 1000};
  VectorTokenStream stream(tokens);
  const auto curve =
      growth_curve(stream, lemmas, fam, sizes, CurveCoef::spearman, 10.0);
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points[0].first == 10.0);
  CHECK(curve.points[1].first == 100.0);
  CHECK(curve.points[2].first == 500.0);

  const auto full = correlate(count_corpus(tokens, lemmas), fam, 10.0);
  REQUIRE(full.spearman.has_value());
  CHECK(curve.points[2].second == doctest::Approx(*full.spearman).epsilon(1e-13));

  // Powers-of-ten shorthand gives the same grid here.
  VectorTokenStream again(tokens);
  const auto pow10 = growth_curve(again, lemmas, fam, {}, CurveCoef::spearman, 10.0);
  CHECK(pow10.points == curve.points);
}

TEST_CASE("growth curve skips degenerate prefixes instead of fabricating them") {
  const synth::ZipfSpec spec{.vocab_size = 20, .exponent = 1.0, .token_count = 200, .seed = 3};
  const auto tokens = synth::generate_corpus(spec);
  const auto fam = synth::generate_famlist(spec, 0.0, 0);
  const LemmaMap lemmas;
  // A one-token prefix has a single covered pair: Pearson undefined there.
  const std::vector<std::uint64_t> sizes{1, 50, 200};
  VectorTokenStream stream(tokens);
  const auto curve = growth_curve(stream, lemmas, fam, sizes, CurveCoef::pearson, 10.0);
  REQUIRE(curve.points.size() == 2);
  CHECK(curve.points[0].first == 50.0);
  CHECK(curve.points[1].first == 200.0);
  // x stays strictly increasing even with skips.
  CHECK(curve.points[0].first < curve.points[1].first);
}

TEST_CASE("fixed-k with saturated parameters equals the plain correlation") {
  const synth::ZipfSpec spec{.vocab_size = 40, .exponent = 1.0, .token_count = 600, .seed = 4};
  const auto tokens = synth::generate_corpus(spec);
  const auto fam = synth::generate_famlist(spec, 0.0, 0);
  const LemmaMap lemmas;

  VectorTokenStream a(tokens), b(tokens);
  const std::vector<FixedKInput> corpora{{"a", &a}, {"b", &b}};
  const auto results = fixed_k_compare(corpora, lemmas, fam, tokens.size(), 0, 10.0);
  REQUIRE(results.size() == 2);
  REQUIRE(results[0].report.has_value());
  REQUIRE(results[1].report.has_value());

  const auto expected = correlate(count_corpus(tokens, lemmas), fam, 10.0);
  CHECK(results[0].report->spearman == expected.spearman);
  CHECK(results[0].report->pearson == expected.pearson);
  // Identical corpora produce identical reports.
  CHECK(results[0].report->spearman == results[1].report->spearman);
  CHECK(results[0].report->covered == results[1].report->covered);
}

TEST_CASE("fixed-k flags short corpora but processes the rest") {
  const synth::ZipfSpec spec{.vocab_size = 40, .exponent = 1.0, .token_count = 600, .seed = 5};
  const auto tokens = synth::generate_corpus(spec);
  const std::vector<std::string> tiny{"w000001", "w000002"};
  const auto fam = synth::generate_famlist(spec, 0.0, 0);
  const LemmaMap lemmas;

  VectorTokenStream big(tokens), small(tiny);
  const std::vector<FixedKInput> corpora{{"big", &big}, {"small", &small}};
  const auto results = fixed_k_compare(corpora, lemmas, fam, 300, 0, 10.0);
  REQUIRE(results.size() == 2);
  CHECK(results[0].report.has_value());
  CHECK_FALSE(results[1].report.has_value());
  CHECK(results[1].error.find("2 tokens") != std::string::npos);
}

TEST_CASE("random fixed-k sampling is seeded and covers the whole corpus at k = length") {
  const synth::ZipfSpec spec{.vocab_size = 25, .exponent = 1.0, .token_count = 400, .seed = 6};
  const auto tokens = synth::generate_corpus(spec);
  const auto fam = synth::generate_famlist(spec, 0.0, 0);
  const LemmaMap lemmas;

  const auto run = [&](std::uint64_t seed, std::uint64_t k) {
    VectorTokenStream stream(tokens);
    const std::vector<FixedKInput> corpora{{"c", &stream}};
    return fixed_k_compare(corpora, lemmas, fam, k, 0, 10.0, SampleMode::random, seed);
  };
  const auto r1 = run(9, 100);
  const auto r2 = run(9, 100);
  REQUIRE(r1[0].report.has_value());
  CHECK(r1[0].report->spearman == r2[0].report->spearman);

  // Sampling every position is the whole corpus again.
  const auto all = run(3, tokens.size());
  const auto expected = correlate(count_corpus(tokens, lemmas), fam, 10.0);
  CHECK(all[0].report->spearman == expected.spearman);
  CHECK(all[0].report->pearson == expected.pearson);
}

TEST_CASE("top-n curve reaches the full-list correlation and saturates") {
  const synth::ZipfSpec spec{.vocab_size = 100, .exponent = 1.0, .token_count = 5000, .seed = 7};
  const auto tokens = synth::generate_corpus(spec);
  const auto fam = synth::generate_famlist(spec, 0.3, 1);
  const LemmaMap lemmas;
  const auto freq = count_corpus(tokens, lemmas);

  const std::vector<std::uint64_t> grid{10, 50, 100};
  const auto curve = topn_curve(freq, fam, grid, CurveCoef::spearman, 10.0);
  REQUIRE(curve.points.size() == 3);
  const auto full = correlate(freq, fam, 10.0);
  CHECK(curve.points.back().first == 100.0);
  CHECK(curve.points.back().second == doctest::Approx(*full.spearman).epsilon(1e-13));

  const std::vector<std::uint64_t> overflowing{10, 150, 220};
  const auto saturated = topn_curve(freq, fam, overflowing, CurveCoef::spearman, 10.0);
  REQUIRE(saturated.points.size() == 2);
  CHECK(saturated.points[0].first == 10.0);
  CHECK(saturated.points[1].first == 100.0);
  CHECK(saturated.points[1].second == doctest::Approx(*full.spearman).epsilon(1e-13));
}

TEST_CASE("top-n correlation degrades once noisy low ratings enter") {
  // Counts strictly ordered by construction. The 200 highest ratings are a
  // noiseless affine map of log-count (perfect agreement); the tail ratings
  // are random in a lower band. Small N stays at exactly 1; growing N past
  // the noiseless region drags the correlation down.
  const int v = 400;
  const int noiseless = 200;
  FrequencyTable freq;
  std::vector<double> log_counts;
  for (int r = 1; r <= v; ++r) {
    const auto count = static_cast<std::uint64_t>(1e9 / r + 0.5);
    freq.add("w" + std::to_string(1000 + r), count);
    log_counts.push_back(std::log10(static_cast<double>(count)));
  }
  FamiliarityList fam;
  Rng rng(13);
  const double hi = log_counts.front();
  const double lo = log_counts[noiseless - 1];
  for (int r = 1; r <= v; ++r) {
    const double rating = r <= noiseless
                              ? 4.0 + 3.0 * (log_counts[r - 1] - lo) / (hi - lo)
                              : 1.0 + 2.8 * rng.uniform01();
    fam.insert("w" + std::to_string(1000 + r), rating);
  }

  const std::vector<std::uint64_t> grid{50, 100, 200, 300, 400};
  const auto curve = topn_curve(freq, fam, grid, CurveCoef::spearman, 10.0);
  REQUIRE(curve.points.size() == 5);
  CHECK(curve.points[0].second == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curve.points[1].second == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curve.points[2].second == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curve.points[3].second < 1.0 - 1e-6);
  CHECK(curve.points[4].second < curve.points[3].second);

  const auto pearson_curve = topn_curve(freq, fam, grid, CurveCoef::pearson, 10.0);
  CHECK(pearson_curve.points[2].second == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson_curve.points[4].second < 1.0 - 1e-6);
}

TEST_CASE("rank_diff is zero when the orders agree") {
  FamiliarityList fam;
  fam.insert("a", 7.0);
  fam.insert("b", 6.0);
  fam.insert("c", 5.0);
  FrequencyTable freq;
  freq.add("a", 100);
  freq.add("b", 10);
  freq.add("c", 1);
  const auto [high_mn, high_nm] = rank_diff(freq, fam, 3);
  for (const auto& e : high_mn) CHECK(e.diff == 0.0);
  for (const auto& e : high_nm) CHECK(e.diff == 0.0);
}

TEST_CASE("rank_diff extremes of a reversed toy ordering") {
  // Frequency order (a, b, c); rating order (c, b, a).
  FamiliarityList fam;
  fam.insert("a", 5.0);
  fam.insert("b", 6.0);
  fam.insert("c", 7.0);
  FrequencyTable freq;
  freq.add("a", 30);
  freq.add("b", 20);
  freq.add("c", 10);
  const auto [high_mn, high_nm] = rank_diff(freq, fam, 1);
  REQUIRE(high_mn.size() == 1);
  REQUIRE(high_nm.size() == 1);
  // a: n = 1, m = 3 -> m - n = +2; c is the n - m = +2 extreme.
  CHECK(high_mn[0].word == "a");
  CHECK(high_mn[0].corpus_rank == 1.0);
  CHECK(high_mn[0].familiarity_rank == 3.0);
  CHECK(high_mn[0].diff == 2.0);
  CHECK(high_nm[0].word == "c");
  CHECK(high_nm[0].diff == -2.0);
}

TEST_CASE("rank_diff uses average ranks for ties") {
  FamiliarityList fam;
  fam.insert("a", 7.0);
  fam.insert("b", 6.0);
  FrequencyTable freq;
  freq.add("a", 5);
  freq.add("b", 5);
  const auto [high_mn, high_nm] = rank_diff(freq, fam, 2);
  REQUIRE(high_mn.size() == 2);
  // Both words share corpus rank 1.5; ratings rank 1 and 2.
  CHECK(high_mn[0].word == "b");
  CHECK(high_mn[0].corpus_rank == 1.5);
  CHECK(high_mn[0].familiarity_rank == 2.0);
  CHECK(high_mn[0].diff == 0.5);
  CHECK(high_mn[1].diff == -0.5);
}

TEST_CASE("rank_diff lists are disjoint when diffs are distinct") {
  FamiliarityList fam;
  FrequencyTable freq;
  // Six words, all diffs distinct by construction.
  const char* words[] = {"u", "v", "w", "x", "y", "z"};
  const double ratings[] = {7.0, 5.0, 6.0, 3.0, 2.0, 4.0};
  const std::uint64_t counts[] = {600, 500, 400, 300, 200, 100};
  for (int i = 0; i < 6; ++i) {
    fam.insert(words[i], ratings[i]);
    freq.add(words[i], counts[i]);
  }
  const auto [high_mn, high_nm] = rank_diff(freq, fam, 3);
  for (const auto& a : high_mn) {
    for (const auto& b : high_nm) CHECK(a.word != b.word);
  }
}

TEST_CASE("covered token share hits 100 when the vocabulary is a subset") {
  FamiliarityList fam;
  fam.insert("a", 4.0);
  fam.insert("b", 5.0);
  fam.insert("extra", 6.0);
  FrequencyTable freq;
  freq.add("a", 3);
  freq.add("b", 1);
  const auto st = covered_stats(freq, fam);
  CHECK(st.type_pct == 100.0);
  CHECK(st.token_pct == 100.0);
}

TEST_CASE("covered stats renormalize entropy over covered words only") {
  FamiliarityList fam;
  for (const char* w : {"c1", "c2", "c3", "c4"}) fam.insert(w, 4.0);
  FrequencyTable freq;
  freq.add("c1", 4);
  freq.add("c2", 2);
  freq.add("c3", 1);
  freq.add("c4", 1);
  freq.add("outside", 8);
  const auto st = covered_stats(freq, fam);
  CHECK(st.type_pct == doctest::Approx(80.0).epsilon(1e-12));
  CHECK(st.token_pct == doctest::Approx(50.0).epsilon(1e-12));
  REQUIRE(st.entropy_bits.has_value());
  CHECK(*st.entropy_bits == doctest::Approx(1.75).epsilon(1e-12));

  FamiliarityList unrelated;
  unrelated.insert("nope", 3.0);
  const auto none = covered_stats(freq, unrelated);
  CHECK(none.type_pct == 0.0);
  CHECK_FALSE(none.entropy_bits.has_value());
}

TEST_CASE("two equally frequent covered words carry one bit") {
  FamiliarityList fam;
  fam.insert("x", 3.0);
  fam.insert("y", 4.0);
  FrequencyTable freq;
  freq.add("x", 7);
  freq.add("y", 7);
  freq.add("other", 3);
  const auto st = covered_stats(freq, fam);
  REQUIRE(st.entropy_bits.has_value());
  CHECK(*st.entropy_bits == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log-frequency histogram conserves types and places exact bins") {
  FrequencyTable freq;
  freq.add("a", 1);
  freq.add("b", 10);
  freq.add("c", 100);
  const auto one = logfreq_histogram(freq, 1, 10.0);
  CHECK(one.total() == 3);

  const auto three = logfreq_histogram(freq, 3, 10.0);
  CHECK(three.counts == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(three.edges.front() == doctest::Approx(0.0));
  CHECK(three.edges.back() == doctest::Approx(2.0));
}

TEST_CASE("doubling every count shifts the histogram right without reshaping it") {
  const synth::ZipfSpec spec{.vocab_size = 300, .exponent = 1.0, .token_count = 20000, .seed = 8};
  FrequencyTable freq, doubled;
  for (const auto r : synth::sample_ranks(spec)) freq.add(synth::zipf_word(r, 300));
  for (const auto& [word, count] : freq.counts()) doubled.add(word, 2 * count);

  const auto h1 = logfreq_histogram(freq, 12, 10.0);
  const auto h2 = logfreq_histogram(doubled, 12, 10.0);
  CHECK(h1.counts == h2.counts);
  const double shift = std::log10(2.0);
  for (std::size_t i = 0; i < h1.edges.size(); ++i) {
    CHECK(h2.edges[i] == doctest::Approx(h1.edges[i] + shift).epsilon(1e-12));
  }
  // The fitted slope is unchanged by the shift.
  const auto s1 = powerlaw_slope(freq);
  const auto s2 = powerlaw_slope(doubled);
  REQUIRE(s1.has_value());
  CHECK(*s1 == doctest::Approx(*s2).epsilon(1e-9));
}

TEST_CASE("an exact inverse-rank table has slope -1") {
  FrequencyTable freq;
  for (int r = 1; r <= 100; ++r) {
    freq.add("w" + std::to_string(r), static_cast<std::uint64_t>(1e12 / r + 0.5));
  }
  const auto slope = powerlaw_slope(freq);
  REQUIRE(slope.has_value());
  CHECK(std::abs(*slope + 1.0) < 1e-6);
}

TEST_CASE("sampled Zipf tables fit near the generating exponent") {
  const synth::ZipfSpec spec{.vocab_size = 1000, .exponent = 1.0, .token_count = 100'000,
                             .seed = 0};
  FrequencyTable freq;
  for (const auto r : synth::sample_ranks(spec)) freq.add(synth::zipf_word(r, 1000));
  const auto slope = powerlaw_slope(freq);
  REQUIRE(slope.has_value());
  CHECK(*slope > -1.15);
  CHECK(*slope < -0.85);
}

TEST_CASE("slope is undefined without three distinct counts") {
  FrequencyTable flat;
  flat.add("a", 5);
  flat.add("b", 5);
  flat.add("c", 5);
  CHECK_FALSE(powerlaw_slope(flat).has_value());
  FrequencyTable two;
  two.add("a", 5);
  two.add("b", 2);
  two.add("c", 2);
  CHECK_FALSE(powerlaw_slope(two).has_value());
}

TEST_CASE("top words break count ties lexicographically") {
  FrequencyTable freq;
  freq.add("a", 3);
  freq.add("b", 1);
  CHECK(top_words(freq, 1) == std::vector<std::string>{"a"});
  FrequencyTable tied;
  tied.add("zed", 4);
  tied.add("amp", 4);
  tied.add("mid", 4);
  CHECK(top_words(tied, 2) == std::vector<std::string>{"amp", "mid"});
  CHECK(top_words(tied, 99).size() == 3);
}

TEST_CASE("rare words sample one word per count level") {
  FrequencyTable freq;
  freq.add("once_a", 1);
  freq.add("once_b", 1);
  freq.add("thrice", 3);
  freq.add("often", 50);
  const auto rare = rare_words(freq, 3, 1, 0);
  // Levels: count 1 (one of once_*), count 2 absent, count 3.
  REQUIRE(rare.size() == 2);
  CHECK(freq.count(rare[0]) == 1);
  CHECK(rare[1] == "thrice");
  CHECK(rare_words(freq, 3, 1, 0) == rare);  // seeded, reproducible
  // Requesting more samples than a level has returns the whole level.
  const auto both = rare_words(freq, 1, 5, 2);
  CHECK(both.size() == 2);
}

TEST_CASE("curves serialize as x<TAB>correlation") {
  ExperimentCurve curve;
  curve.points = {{0.0, 1.0}, {10.0, 0.5}};
  std::ostringstream out;
  save_curve(curve, out);
  CHECK(out.str() == "0\t1\n10\t0.5\n");
}
