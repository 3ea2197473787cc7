#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "famcorr/famlist.hpp"

namespace famcorr::synth {

// Zipfian vocabulary: p(rank r) = r^-s / H with H = sum over 1..V.
struct ZipfSpec {
  std::uint32_t vocab_size = 1000;
  double exponent = 1.0;
  std::uint64_t token_count = 0;
  std::uint64_t seed = 0;
};

// Normalized probabilities, index 0 = rank 1.
Eigen::VectorXd zipf_probabilities(std::uint32_t vocab_size, double exponent);

// "w" + zero-padded rank; width max(6, digits(V)) so labels of one
// vocabulary sort lexicographically by rank.
std::string zipf_word(std::uint32_t rank, std::uint32_t vocab_size);

// token_count i.i.d. rank draws via inverse-CDF bisection; fixed seed gives
// an identical sequence on every platform (see Rng).
std::vector<std::uint32_t> sample_ranks(const ZipfSpec& spec);
std::vector<std::string> generate_corpus(const ZipfSpec& spec);

// Corpus text without materializing the token vector: space-separated,
// 16 tokens per line, trailing newline.
void write_corpus(const ZipfSpec& spec, std::ostream& out);

// Ground-truth ratings: affine in log-probability, scaled so rank 1 maps to
// exactly 7.0 and rank V to exactly 1.0, plus optional Gaussian noise,
// clipped back to [1, 7]. Throws Error when V == 1 (normalization
// undefined). noise_sd == 0 draws nothing from the generator.
FamiliarityList generate_famlist(const ZipfSpec& spec, double noise_sd,
                                 std::uint64_t fam_seed);

}  // namespace famcorr::synth
