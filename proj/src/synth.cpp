#include "famcorr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "famcorr/error.hpp"
#include "famcorr/rng.hpp"

namespace famcorr::synth {

namespace {

void check_spec(const ZipfSpec& spec) {
  if (spec.vocab_size < 1) throw Error("zipf: vocabulary size must be >= 1");
  if (!(spec.exponent > 0.0)) throw Error("zipf: exponent must be positive");
}

// Cumulative probabilities; cdf[r] = P(rank <= r), cdf[V] == 1 exactly.
std::vector<double> zipf_cdf(std::uint32_t vocab_size, double exponent) {
  std::vector<double> cdf(static_cast<std::size_t>(vocab_size) + 1, 0.0);
  double sum = 0.0;
  for (std::uint32_t r = 1; r <= vocab_size; ++r) {
    sum += std::pow(static_cast<double>(r), -exponent);
    cdf[r] = sum;
  }
  for (auto& c : cdf) c /= sum;
  cdf[vocab_size] = 1.0;
  return cdf;
}

}  // namespace

Eigen::VectorXd zipf_probabilities(std::uint32_t vocab_size, double exponent) {
  if (vocab_size < 1) throw Error("zipf: vocabulary size must be >= 1");
  if (!(exponent > 0.0)) throw Error("zipf: exponent must be positive");
  Eigen::VectorXd p(vocab_size);
  for (std::uint32_t r = 1; r <= vocab_size; ++r) {
    p[r - 1] = std::pow(static_cast<double>(r), -exponent);
  }
  p /= p.sum();
  return p;
}

std::string zipf_word(std::uint32_t rank, std::uint32_t vocab_size) {
  std::size_t width = std::to_string(vocab_size).size();
  width = std::max<std::size_t>(width, 6);
  std::string digits = std::to_string(rank);
  std::string out = "w";
  out.append(width - digits.size(), '0');
  out += digits;
  return out;
}

std::vector<std::uint32_t> sample_ranks(const ZipfSpec& spec) {
  check_spec(spec);
  const auto cdf = zipf_cdf(spec.vocab_size, spec.exponent);
  Rng rng(spec.seed);
  std::vector<std::uint32_t> ranks;
  ranks.reserve(spec.token_count);
  for (std::uint64_t i = 0; i < spec.token_count; ++i) {
    const double u = rng.uniform01();
    // Smallest r with cdf[r] > u.
    const auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), u);
    ranks.push_back(static_cast<std::uint32_t>(it - cdf.begin()));
  }
  return ranks;
}

std::vector<std::string> generate_corpus(const ZipfSpec& spec) {
  const auto ranks = sample_ranks(spec);
  std::vector<std::string> tokens;
  tokens.reserve(ranks.size());
  for (const auto r : ranks) tokens.push_back(zipf_word(r, spec.vocab_size));
  return tokens;
}

void write_corpus(const ZipfSpec& spec, std::ostream& out) {
  check_spec(spec);
  const auto cdf = zipf_cdf(spec.vocab_size, spec.exponent);
  Rng rng(spec.seed);
  for (std::uint64_t i = 0; i < spec.token_count; ++i) {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), u);
    const auto rank = static_cast<std::uint32_t>(it - cdf.begin());
    out << zipf_word(rank, spec.vocab_size);
    out << ((i % 16 == 15 || i + 1 == spec.token_count) ? '\n' : ' ');
  }
}

FamiliarityList generate_famlist(const ZipfSpec& spec, double noise_sd,
                                 std::uint64_t fam_seed) {
  check_spec(spec);
  if (spec.vocab_size == 1) {
    throw Error("famlist generation needs vocabulary size >= 2");
  }
  if (noise_sd < 0.0) throw Error("noise_sd must be nonnegative");

  // rating(r) = 1 + 6 * (log p(r) - log p(V)) / (log p(1) - log p(V)), which
  // reduces to 1 + 6 * (1 - ln r / ln V) independent of the exponent; the
  // reduced form hits the 7.0 / 1.0 endpoints exactly.
  const double log_v = std::log(static_cast<double>(spec.vocab_size));
  Rng rng(fam_seed);
  FamiliarityList list;
  for (std::uint32_t r = 1; r <= spec.vocab_size; ++r) {
    double rating = 1.0 + 6.0 * (1.0 - std::log(static_cast<double>(r)) / log_v);
    if (noise_sd > 0.0) rating += noise_sd * rng.gaussian();
    rating = std::clamp(rating, FamiliarityList::kMinRating, FamiliarityList::kMaxRating);
    list.insert(zipf_word(r, spec.vocab_size), rating);
  }
  return list;
}

}  // namespace famcorr::synth
