#include "famcorr/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "famcorr/correlation.hpp"
#include "famcorr/counting.hpp"
#include "famcorr/error.hpp"
#include "famcorr/experiments.hpp"
#include "famcorr/famlist.hpp"
#include "famcorr/frequency_table.hpp"
#include "famcorr/histogram.hpp"
#include "famcorr/lemma_map.hpp"
#include "famcorr/pseudofam.hpp"
#include "famcorr/synth.hpp"
#include "famcorr/text_format.hpp"

namespace famcorr {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsage = 2;

// Every subcommand writes its whole payload through here: either to --out
// or to standard output.
void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write output file: " + out_path);
  out << payload;
  if (!out.flush()) throw Error("write failed: " + out_path);
}

struct TokenizerFlags {
  std::string mode = "unicode";
  std::optional<bool> fold;  // unset: mode default (on for unicode, off for whitespace)

  TokenizerConfig config() const {
    TokenizerMode m;
    if (mode == "unicode") {
      m = TokenizerMode::unicode_word;
    } else if (mode == "whitespace") {
      m = TokenizerMode::whitespace;
    } else {
      throw Error("unknown tokenizer mode: " + mode);
    }
    TokenizerConfig cfg = default_config(m);
    if (fold) cfg.fold_case = *fold;
    return cfg;
  }
};

void add_tokenizer_flags(CLI::App* cmd, TokenizerFlags& flags) {
  cmd->add_option("--token-mode", flags.mode, "Tokenizer mode: unicode | whitespace")
      ->check(CLI::IsMember({"unicode", "whitespace"}))
      ->capture_default_str();
  cmd->add_flag(
      "--fold-case,!--no-fold-case",
      [&flags](std::int64_t count) { flags.fold = count > 0; },
      "Case folding (default: on for unicode mode, off for whitespace)");
}

MissingMode parse_missing(const std::string& name) {
  if (name == "rank-bottom") return MissingMode::rank_bottom;
  if (name == "exclude") return MissingMode::exclude;
  throw Error("unknown missing-value mode: " + name);
}

CurveCoef parse_coef(const std::string& name) {
  if (name == "pearson") return CurveCoef::pearson;
  if (name == "spearman") return CurveCoef::spearman;
  throw Error("unknown coefficient: " + name);
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
  std::vector<std::uint64_t> grid;
  if (text.empty() || text == "pow10") return grid;  // empty grid = powers of ten
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto value = parse_uint(item);
    if (!value) throw Error("malformed grid entry: '" + item + "'");
    grid.push_back(*value);
  }
  return grid;
}

std::vector<std::filesystem::path> to_paths(const std::vector<std::string>& names) {
  return {names.begin(), names.end()};
}

std::string json_line(const nlohmann::json& j) { return j.dump() + "\n"; }

nlohmann::json opt_json(std::optional<double> v) {
  if (!v) return nullptr;
  return *v;
}

nlohmann::json report_json(const CorrelationReport& report) {
  return nlohmann::json{{"covered", report.covered},
                        {"coverage_pct", report.coverage_pct},
                        {"pearson", opt_json(report.pearson)},
                        {"spearman", opt_json(report.spearman)}};
}

struct CliState {
  // Shared options, bound per subcommand.
  std::vector<std::string> inputs;
  std::string freq_path, freq_b_path, fam_path, lemma_path, out_path, pf_path;
  double log_base = 10.0;
  double divisor = 1.0;
  std::string missing = "rank-bottom";
  std::string coef = "spearman";
  std::uint64_t seed = 0;
  TokenizerFlags tokenizer;
  unsigned threads = 1;

  LemmaMap lemmas() const {
    return lemma_path.empty() ? LemmaMap{} : load_lemma_map(lemma_path);
  }
  FamiliarityList fam() const { return load_famlist(fam_path, divisor); }
  FrequencyTable freq() const { return load_frequency_table(freq_path); }
};

void add_fam_options(CLI::App* cmd, CliState& st) {
  cmd->add_option("--fam", st.fam_path, "Familiarity list (TSV word<TAB>rating)")
      ->required();
  cmd->add_option("--divisor", st.divisor,
                  "Divide raw ratings by this (100 for raw MRC exports)")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("famcorr");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Corpus frequency / word familiarity correlation toolkit"};
  app.require_subcommand(1);
  CliState st;

  // ---- count ----
  auto* count = app.add_subcommand("count", "Count word frequencies in text corpora");
  count->add_option("corpus", st.inputs, "UTF-8 text files, concatenated in order")
      ->required();
  count->add_option("--lemma", st.lemma_path, "Lemma map TSV (surface<TAB>lemma)");
  count->add_option("--threads", st.threads, "Shard-parallel counting")->capture_default_str();
  count->add_option("--out", st.out_path, "Output table path (default: stdout)");
  add_tokenizer_flags(count, st.tokenizer);
  count->callback([&] {
    const auto table =
        count_files(to_paths(st.inputs), st.tokenizer.config(), st.lemmas(), st.threads);
    std::ostringstream out;
    save_frequency_table(table, out);
    emit(st.out_path, out.str());
  });

  // ---- coverage ----
  auto* cov = app.add_subcommand("coverage", "Familiarity-list coverage of a corpus");
  cov->add_option("--freq", st.freq_path, "Frequency table TSV")->required();
  add_fam_options(cov, st);
  cov->add_option("--out", st.out_path, "Output path (default: stdout)");
  cov->callback([&] {
    const auto [covered, pct] = coverage(st.freq(), st.fam());
    emit(st.out_path, json_line({{"covered", covered}, {"coverage_pct", pct}}));
  });

  // ---- correlate ----
  auto* corr = app.add_subcommand("correlate",
                                  "Coverage, Pearson and Spearman of log-frequency vs ratings");
  corr->add_option("--freq", st.freq_path, "Frequency table TSV")->required();
  add_fam_options(corr, st);
  corr->add_option("--base", st.log_base, "Log base")->capture_default_str();
  corr->add_option("--missing", st.missing, "Missing words in Spearman: rank-bottom | exclude")
      ->check(CLI::IsMember({"rank-bottom", "exclude"}))
      ->capture_default_str();
  corr->add_option("--out", st.out_path, "Output path (default: stdout)");
  corr->callback([&] {
    const auto report = correlate(st.freq(), st.fam(), st.log_base, parse_missing(st.missing));
    emit(st.out_path, json_line(report_json(report)));
  });

  // ---- xcorr ----
  auto* xc = app.add_subcommand("xcorr",
                                "Corpus-vs-corpus correlation on familiarity-list words");
  xc->add_option("--freq-a", st.freq_path, "First frequency table")->required();
  xc->add_option("--freq-b", st.freq_b_path, "Second frequency table")->required();
  add_fam_options(xc, st);
  xc->add_option("--base", st.log_base, "Log base")->capture_default_str();
  xc->add_option("--out", st.out_path, "Output path (default: stdout)");
  xc->callback([&] {
    const auto report = cross_correlate(st.freq(), load_frequency_table(st.freq_b_path),
                                        st.fam(), st.log_base);
    emit(st.out_path, json_line(report_json(report)));
  });

  // ---- rankdiff ----
  std::size_t top_k = 10;
  auto* rd = app.add_subcommand("rankdiff", "Words with the largest ranking differences");
  rd->add_option("--freq", st.freq_path, "Frequency table TSV")->required();
  add_fam_options(rd, st);
  rd->add_option("--top", top_k, "Entries per direction")->capture_default_str();
  rd->add_option("--out", st.out_path, "Output path (default: stdout)");
  rd->callback([&] {
    const auto [high_mn, high_nm] = rank_diff(st.freq(), st.fam(), top_k);
    std::ostringstream out;
    out << "# highest m-n (corpus: high, familiarity: low)\n";
    save_rank_diff(high_mn, out);
    out << "# highest n-m (corpus: low, familiarity: high)\n";
    save_rank_diff(high_nm, out);
    emit(st.out_path, out.str());
  });

  // ---- stats ----
  auto* cs = app.add_subcommand("stats", "Covered-word statistics of a corpus");
  cs->add_option("--freq", st.freq_path, "Frequency table TSV")->required();
  add_fam_options(cs, st);
  cs->add_option("--out", st.out_path, "Output path (default: stdout)");
  cs->callback([&] {
    const auto stats = covered_stats(st.freq(), st.fam());
    emit(st.out_path, json_line({{"covered_type_pct", stats.type_pct},
                                 {"covered_token_pct", stats.token_pct},
                                 {"entropy_bits", opt_json(stats.entropy_bits)}}));
  });

  // ---- hist ----
  int bins = 24;
  auto* hist = app.add_subcommand("hist",
                                  "Histogram of ratings (--fam) or log-frequency (--freq)");
  hist->add_option("--fam", st.fam_path, "Familiarity list TSV");
  hist->add_option("--divisor", st.divisor, "Rating scale divisor")->capture_default_str();
  hist->add_option("--freq", st.freq_path, "Frequency table TSV");
  hist->add_option("--bins", bins, "Number of bins")->capture_default_str();
  hist->add_option("--base", st.log_base, "Log base (frequency mode)")->capture_default_str();
  hist->add_option("--out", st.out_path, "Output path (default: stdout)");
  hist->callback([&] {
    if (st.fam_path.empty() == st.freq_path.empty()) {
      throw Error("hist needs exactly one of --fam or --freq");
    }
    const Histogram h = st.fam_path.empty()
                            ? logfreq_histogram(st.freq(), bins, st.log_base)
                            : rating_histogram(st.fam(), bins);
    std::ostringstream out;
    save_histogram(h, out);
    emit(st.out_path, out.str());
  });

  // ---- slope ----
  auto* slope = app.add_subcommand("slope", "Power-law slope of the rank-frequency profile");
  slope->add_option("--freq", st.freq_path, "Frequency table TSV")->required();
  slope->add_option("--out", st.out_path, "Output path (default: stdout)");
  slope->callback([&] {
    emit(st.out_path, json_line({{"slope", opt_json(powerlaw_slope(st.freq()))}}));
  });

  // ---- top ----
  std::size_t top_n = 10;
  std::uint64_t rare_max = 0;
  std::size_t per_level = 1;
  auto* top = app.add_subcommand("top", "Most frequent words, optionally rare-word samples");
  top->add_option("--freq", st.freq_path, "Frequency table TSV")->required();
  top->add_option("--k", top_n, "Top words to list")->capture_default_str();
  top->add_option("--rare-max", rare_max,
                  "Also sample words of count 1..n (0 = off)")
      ->capture_default_str();
  top->add_option("--rare-per-level", per_level, "Samples per count level")
      ->capture_default_str();
  top->add_option("--seed", st.seed, "Sampling seed")->capture_default_str();
  top->add_option("--out", st.out_path, "Output path (default: stdout)");
  top->callback([&] {
    const auto table = st.freq();
    std::ostringstream out;
    out << "# top\n";
    for (const auto& word : top_words(table, top_n)) {
      out << word << '\t' << table.count(word) << '\n';
    }
    if (rare_max > 0) {
      out << "# rare\n";
      for (const auto& word : rare_words(table, rare_max, per_level, st.seed)) {
        out << word << '\t' << table.count(word) << '\n';
      }
    }
    emit(st.out_path, out.str());
  });

  // ---- exp ----
  auto* exp = app.add_subcommand("exp", "Experimental procedures");
  exp->require_subcommand(1);

  // exp reversal
  std::uint64_t swaps = 1000;
  std::uint64_t cap = 1'000'000;
  double target = 2.0;  // > 1: curve mode
  auto* rev = exp->add_subcommand("reversal", "Random adjacent-swap decay of rank correlation");
  add_fam_options(rev, st);
  rev->add_option("--swaps", swaps, "Swap count for the curve")->capture_default_str();
  rev->add_option("--target", target, "Stop at this correlation; outputs JSON instead");
  rev->add_option("--cap", cap, "Swap cap in target mode")->capture_default_str();
  rev->add_option("--seed", st.seed, "Seed")->capture_default_str();
  rev->add_option("--out", st.out_path, "Output path (default: stdout)");
  rev->callback([&] {
    const auto fam = st.fam();
    if (target < 1.0) {
      const auto result = swaps_to_reach(fam, target, st.seed, cap);
      emit(st.out_path, json_line({{"reached", result.reached},
                                   {"swaps", result.swaps},
                                   {"correlation", result.correlation}}));
      return;
    }
    std::ostringstream out;
    save_curve(reversal_curve(fam, swaps, st.seed), out);
    emit(st.out_path, out.str());
  });

  // exp growth
  std::string sizes_text = "pow10";
  auto* growth = exp->add_subcommand("growth", "Correlation vs corpus prefix size");
  growth->add_option("corpus", st.inputs, "UTF-8 text files")->required();
  add_fam_options(growth, st);
  growth->add_option("--lemma", st.lemma_path, "Lemma map TSV");
  growth->add_option("--sizes", sizes_text,
                     "Comma-separated prefix sizes, or `pow10` for powers of ten")
      ->capture_default_str();
  growth->add_option("--coef", st.coef, "Curve coefficient: pearson | spearman")
      ->check(CLI::IsMember({"pearson", "spearman"}))
      ->capture_default_str();
  growth->add_option("--base", st.log_base, "Log base")->capture_default_str();
  growth->add_option("--missing", st.missing, "Spearman missing mode")
      ->check(CLI::IsMember({"rank-bottom", "exclude"}))
      ->capture_default_str();
  growth->add_option("--out", st.out_path, "Output path (default: stdout)");
  add_tokenizer_flags(growth, st.tokenizer);
  growth->callback([&] {
    FileTokenStream stream(to_paths(st.inputs), st.tokenizer.config());
    const auto lemmas = st.lemmas();
    const auto curve = growth_curve(stream, lemmas, st.fam(), parse_grid(sizes_text),
                                    parse_coef(st.coef), st.log_base, parse_missing(st.missing));
    std::ostringstream out;
    save_curve(curve, out);
    emit(st.out_path, out.str());
  });

  // exp topn
  std::string ngrid_text;
  auto* topn = exp->add_subcommand("topn", "Correlation vs familiarity-list size N");
  topn->add_option("--freq", st.freq_path, "Frequency table TSV")->required();
  add_fam_options(topn, st);
  topn->add_option("--ngrid", ngrid_text, "Comma-separated ascending N values")->required();
  topn->add_option("--coef", st.coef, "Curve coefficient: pearson | spearman")
      ->check(CLI::IsMember({"pearson", "spearman"}))
      ->capture_default_str();
  topn->add_option("--base", st.log_base, "Log base")->capture_default_str();
  topn->add_option("--missing", st.missing, "Spearman missing mode")
      ->check(CLI::IsMember({"rank-bottom", "exclude"}))
      ->capture_default_str();
  topn->add_option("--out", st.out_path, "Output path (default: stdout)");
  topn->callback([&] {
    const auto curve = topn_curve(st.freq(), st.fam(), parse_grid(ngrid_text),
                                  parse_coef(st.coef), st.log_base, parse_missing(st.missing));
    std::ostringstream out;
    save_curve(curve, out);
    emit(st.out_path, out.str());
  });

  // exp fixedk
  std::uint64_t fixed_k = 0;
  std::uint64_t fixed_n = 0;
  std::string sample_mode = "prefix";
  auto* fixedk = exp->add_subcommand("fixedk", "Same-K comparison across corpora");
  fixedk->add_option("corpus", st.inputs, "One UTF-8 text file per corpus")->required();
  add_fam_options(fixedk, st);
  fixedk->add_option("--lemma", st.lemma_path, "Lemma map TSV");
  fixedk->add_option("--k", fixed_k, "Tokens taken from each corpus")->required();
  fixedk->add_option("--n", fixed_n, "Top-N familiarity words (0 = whole list)")
      ->capture_default_str();
  fixedk->add_option("--sample", sample_mode, "K-token selection: prefix | random")
      ->check(CLI::IsMember({"prefix", "random"}))
      ->capture_default_str();
  fixedk->add_option("--seed", st.seed, "Seed for random sampling")->capture_default_str();
  fixedk->add_option("--base", st.log_base, "Log base")->capture_default_str();
  fixedk->add_option("--missing", st.missing, "Spearman missing mode")
      ->check(CLI::IsMember({"rank-bottom", "exclude"}))
      ->capture_default_str();
  fixedk->add_option("--out", st.out_path, "Output path (default: stdout)");
  add_tokenizer_flags(fixedk, st.tokenizer);
  fixedk->callback([&] {
    const auto lemmas = st.lemmas();
    std::vector<std::unique_ptr<FileTokenStream>> streams;
    std::vector<FixedKInput> corpora;
    for (const auto& path : st.inputs) {
      streams.push_back(
          std::make_unique<FileTokenStream>(to_paths({path}), st.tokenizer.config()));
      corpora.push_back({path, streams.back().get()});
    }
    const auto results = fixed_k_compare(
        corpora, lemmas, st.fam(), fixed_k, static_cast<std::size_t>(fixed_n), st.log_base,
        sample_mode == "prefix" ? SampleMode::prefix : SampleMode::random, st.seed,
        parse_missing(st.missing));
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
      nlohmann::json entry{{"corpus", r.label}};
      if (r.report) {
        entry.update(report_json(*r.report));
      } else {
        entry["error"] = r.error;
      }
      arr.push_back(std::move(entry));
    }
    emit(st.out_path, arr.dump() + "\n");
  });

  // ---- zipf-gen ----
  synth::ZipfSpec spec;
  auto* zg = app.add_subcommand("zipf-gen", "Generate a synthetic Zipfian corpus");
  zg->add_option("--vocab", spec.vocab_size, "Vocabulary size V")->capture_default_str();
  zg->add_option("--exponent", spec.exponent, "Zipf exponent s")->capture_default_str();
  zg->add_option("--tokens", spec.token_count, "Token count N")->required();
  zg->add_option("--seed", spec.seed, "Seed")->capture_default_str();
  zg->add_option("--out", st.out_path, "Output path (default: stdout)");
  zg->callback([&] {
    std::ostringstream out;
    synth::write_corpus(spec, out);
    emit(st.out_path, out.str());
  });

  // ---- fam-gen ----
  double noise_sd = 0.0;
  std::uint64_t fam_seed = 0;
  auto* fg = app.add_subcommand("fam-gen", "Generate a ground-truth familiarity list");
  fg->add_option("--vocab", spec.vocab_size, "Vocabulary size V")->capture_default_str();
  fg->add_option("--exponent", spec.exponent, "Zipf exponent s")->capture_default_str();
  fg->add_option("--noise-sd", noise_sd, "Gaussian rating noise")->capture_default_str();
  fg->add_option("--fam-seed", fam_seed, "Noise seed")->capture_default_str();
  fg->add_option("--out", st.out_path, "Output path (default: stdout)");
  fg->callback([&] {
    std::ostringstream out;
    save_famlist(synth::generate_famlist(spec, noise_sd, fam_seed), out);
    emit(st.out_path, out.str());
  });

  // ---- score ----
  std::string source_label;
  auto* sc = app.add_subcommand("score", "Pseudo-familiarity scores from log-frequency");
  sc->add_option("--freq", st.freq_path, "Frequency table TSV")->required();
  sc->add_option("--base", st.log_base, "Log base")->capture_default_str();
  sc->add_option("--source", source_label, "Provenance label (default: table path)");
  sc->add_option("--out", st.out_path, "Output path (default: stdout)");
  sc->callback([&] {
    const auto pf = score(st.freq(), st.log_base,
                          source_label.empty() ? st.freq_path : source_label);
    std::ostringstream out;
    save_pseudofam(pf, out);
    emit(st.out_path, out.str());
  });

  // ---- basic-list ----
  std::size_t list_size = 3000;  // the Dale-Chall precedent
  auto* bl = app.add_subcommand("basic-list", "Highest-scored words as a basic word list");
  bl->add_option("--pf", st.pf_path, "Pseudo-familiarity list TSV")->required();
  bl->add_option("--size", list_size, "List size")->capture_default_str();
  bl->add_option("--out", st.out_path, "Output path (default: stdout)");
  bl->callback([&] {
    std::ostringstream out;
    for (const auto& word : basic_word_list(load_pseudofam(st.pf_path), list_size)) {
      out << word << '\n';
    }
    emit(st.out_path, out.str());
  });

  // ---- readability ----
  double threshold = 4.0;
  auto* rb = app.add_subcommand("readability", "Hard-word fraction of a text");
  rb->add_option("text", st.inputs, "UTF-8 text files")->required();
  rb->add_option("--pf", st.pf_path, "Pseudo-familiarity list TSV")->required();
  rb->add_option("--threshold", threshold, "Ratings below this count as hard")
      ->check(CLI::Range(1.0, 7.0))
      ->capture_default_str();
  rb->add_option("--lemma", st.lemma_path, "Lemma map TSV");
  rb->add_option("--out", st.out_path, "Output path (default: stdout)");
  add_tokenizer_flags(rb, st.tokenizer);
  rb->callback([&] {
    FileTokenStream stream(to_paths(st.inputs), st.tokenizer.config());
    const auto lemmas = st.lemmas();
    const auto report = assess(stream, load_pseudofam(st.pf_path), lemmas, threshold);
    emit(st.out_path, to_json(report) + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "famcorr: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "famcorr: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace famcorr
