#include "commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sparsent/autoencoder.hpp"
#include "sparsent/coherence.hpp"
#include "sparsent/corpus.hpp"
#include "sparsent/error.hpp"
#include "sparsent/matrix_io.hpp"
#include "sparsent/model_io.hpp"
#include "sparsent/sparse_coding.hpp"
#include "sparsent/synthetic.hpp"
#include "sparsent/trainer.hpp"
#include "sparsent/word_vectors.hpp"

namespace sparsent::cli {
namespace {

namespace fs = std::filesystem;

// Flag combinations that only become invalid after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Values read from .ssc/.semb files are floats; print their shortest form.
std::string format_stored(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), static_cast<float>(v));
  return std::string(buf, res.ptr);
}

std::vector<std::vector<TokenId>> ids_of(const std::vector<Sentence>& sentences) {
  std::vector<std::vector<TokenId>> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(s.ids);
  return out;
}

struct SparsityFlags {
  std::string kind = "none";
  std::size_t k = 4;
  double tau = 1.0;
  bool ksparse_signed = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--sparsity", kind, "Sparsity layer: none, ksparse, sparsemax")
        ->check(CLI::IsMember({"none", "ksparse", "sparsemax"}))
        ->capture_default_str();
    cmd.add_option("--k", k, "k-Sparse support size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--tau", tau, "Sparsemax temperature")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_flag("--ksparse-signed", ksparse_signed,
                 "Select the k largest values instead of the k largest magnitudes");
  }

  SparsityConfig config() const {
    SparsityConfig cfg;
    cfg.kind = parse_sparsity_kind(kind);
    cfg.k = k;
    cfg.temperature = tau;
    cfg.signed_selection = ksparse_signed;
    return cfg;
  }
};

struct TextFlags {
  std::string stopwords;
  bool keep_punct = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--stopwords", stopwords, "Stop-word file (one token per line)")
        ->check(CLI::ExistingFile);
    cmd.add_flag("--keep-punct", keep_punct, "Keep punctuation tokens in sentence bags");
  }

  std::vector<SentenceBag> bags(const std::vector<Sentence>& sentences) const {
    if (stopwords.empty()) return make_bags(sentences, StopwordList::english(), keep_punct);
    return make_bags(sentences, StopwordList::from_file(stopwords), keep_punct);
  }
};

// ---------------------------------------------------------------- vocab

struct VocabFlags {
  std::string corpus;
  std::size_t cap = 500;
  std::string out;
};

void cmd_vocab(const VocabFlags& f, std::ostream&, std::ostream& err) {
  const auto sentences = load_corpus(f.corpus);
  std::vector<std::vector<std::string>> tokens;
  for (const auto& s : sentences) tokens.push_back(s.tokens);
  const Vocabulary vocab = build_vocab(tokens, f.cap);
  write_vocab(f.out, vocab);
  err << "wrote vocabulary of " << vocab.size() << " tokens to " << f.out << "\n";
}

// ---------------------------------------------------------------- synth

struct SynthFlags {
  std::size_t topics = 8;
  std::size_t per_topic = 250;
  std::uint64_t seed = 0;
  std::string out;
  std::string labels_out;
};

void cmd_synth(const SynthFlags& f, std::ostream&, std::ostream& err) {
  const TopicCorpus corpus = make_topic_corpus({f.topics, f.per_topic, f.seed});
  std::string text;
  for (const auto& line : corpus.lines) text += line + "\n";
  write_file_bytes(f.out, text);
  if (!f.labels_out.empty()) {
    std::string labels;
    for (std::size_t t : corpus.topic) labels += std::to_string(t) + "\n";
    write_file_bytes(f.labels_out, labels);
  }
  err << "wrote " << corpus.lines.size() << " sentences to " << f.out << "\n";
}

// ---------------------------------------------------------------- train

struct TrainFlags {
  std::string corpus;
  std::string vocab;
  std::string vocab_out;
  std::size_t vocab_cap = 500;
  std::string out = "model.samodel";
  std::size_t embed = 32;
  std::size_t hidden = 32;
  SparsityFlags sparsity;
  std::size_t epochs = 10;
  std::size_t batch = 16;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  std::size_t max_len = 20;
  double clip = 5.0;
  std::size_t ksparse_anneal = 0;
};

void cmd_train(const TrainFlags& f, std::ostream& out, std::ostream& err) {
  auto sentences = load_corpus(f.corpus);
  if (sentences.empty()) throw Error("corpus " + f.corpus + " has no sentences");

  Vocabulary vocab;
  if (!f.vocab.empty()) {
    vocab = read_vocab(f.vocab);
  } else {
    std::vector<std::vector<std::string>> tokens;
    for (const auto& s : sentences) tokens.push_back(s.tokens);
    vocab = build_vocab(tokens, f.vocab_cap);
    const fs::path vocab_path =
        f.vocab_out.empty() ? fs::path(f.out).replace_extension(".vocab") : fs::path(f.vocab_out);
    write_vocab(vocab_path, vocab);
    err << "wrote vocabulary of " << vocab.size() << " tokens to " << vocab_path.string() << "\n";
  }
  encode_sentences(sentences, vocab);

  ModelConfig mcfg;
  mcfg.vocab_size = vocab.size();
  mcfg.embed_dim = f.embed;
  mcfg.hidden_dim = f.hidden;
  mcfg.sparsity = f.sparsity.config();
  mcfg.seed = f.seed;
  AutoencoderModel model = make_model(mcfg);

  TrainConfig tcfg;
  tcfg.batch_size = f.batch;
  tcfg.epochs = f.epochs;
  tcfg.lr = f.lr;
  tcfg.seed = f.seed;
  tcfg.max_seq_len = f.max_len;
  tcfg.clip_norm = f.clip;
  tcfg.ksparse_anneal_epochs = f.ksparse_anneal;
  const auto corpus = ids_of(sentences);
  train(model, corpus, tcfg, [&](const EpochLog& e) {
    out << "epoch " << e.epoch << " loss " << format_real(e.mean_loss) << "\n" << std::flush;
  });
  write_model(f.out, model);
  err << "wrote model to " << f.out << "\n";
}

// ---------------------------------------------------------------- embed

struct EmbedFlags {
  std::string model;
  std::string vocab;
  std::string corpus;
  std::string out;
  bool pre_sparsity = false;
  std::size_t threads = 1;
};

void cmd_embed(const EmbedFlags& f, std::ostream&, std::ostream& err) {
  const AutoencoderModel model = read_model(f.model);
  const Vocabulary vocab = read_vocab(f.vocab);
  if (vocab.size() != model.config.vocab_size) {
    throw Error("vocabulary has " + std::to_string(vocab.size()) + " tokens but model expects " +
                std::to_string(model.config.vocab_size));
  }
  auto sentences = load_corpus(f.corpus);
  encode_sentences(sentences, vocab);
  const auto corpus = ids_of(sentences);

  if (f.pre_sparsity || model.config.sparsity.kind == SparsityKind::kNone) {
    const DenseMatrix z = f.pre_sparsity ? encode_corpus(model, corpus, f.threads)
                                         : std::get<DenseMatrix>(embed_corpus(model, corpus, f.threads));
    write_dense(f.out, z);
    err << "wrote dense " << z.rows() << "x" << z.cols() << " embeddings to " << f.out << "\n";
    return;
  }
  const auto codes = std::get<SparseCodeMatrix>(embed_corpus(model, corpus, f.threads));
  write_codes(f.out, codes);
  err << "wrote sparse " << codes.rows() << "x" << codes.cols() << " codes (" << codes.nnz()
      << " nonzeros) to " << f.out << "\n";
}

// ---------------------------------------------------------------- ksvd

struct KsvdFlags {
  std::string input;
  std::size_t atoms = 2000;
  std::size_t k = 15;
  std::size_t iters = 30;
  std::uint64_t seed = 0;
  double residual_tol = kDefaultResidualTol;
  std::string codes_out = "codes.ssc";
  std::string dict_out = "dictionary.semb";
  std::size_t threads = 1;
};

void cmd_ksvd(const KsvdFlags& f, std::ostream& out, std::ostream& err) {
  if (f.k > f.atoms) {
    throw UsageError("--k (" + std::to_string(f.k) + ") must not exceed --atoms (" +
                     std::to_string(f.atoms) + ")");
  }
  const DenseMatrix z = read_dense(f.input);
  KsvdOptions opt;
  opt.num_atoms = f.atoms;
  opt.sparsity = f.k;
  opt.iterations = f.iters;
  opt.seed = f.seed;
  opt.residual_tol = f.residual_tol;
  opt.threads = f.threads;
  const KsvdResult result = ksvd_fit(z, opt);
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const auto& t = result.trace[i];
    err << "iteration " << (i + 1) << " objective " << format_real(t.objective_after_sweep)
        << " dead_atoms " << t.dead_atoms << "\n";
  }
  write_codes(f.codes_out, result.codes);
  write_dense(f.dict_out, result.dictionary.atoms());
  out << "relative_error "
      << format_real(relative_reconstruction_error(result.codes, result.dictionary, z)) << "\n";
}

// ---------------------------------------------------------------- coherence

struct CoherenceFlags {
  std::string codes;
  std::string corpus;
  std::string sim = "jaccard";
  std::size_t n = 10;
  std::string mode = "top";
  std::uint64_t seed = 0;
  std::string vectors;
  std::size_t baseline_pairs = 0;
  TextFlags text;
  std::string out;
  std::size_t threads = 1;
};

std::optional<WordVectorTable> vectors_for(SimilarityKind kind, const std::string& path) {
  if (kind != SimilarityKind::kWmd) return std::nullopt;
  if (path.empty()) throw UsageError("--sim wmd requires --vectors");
  return load_word_vectors(path);
}

void cmd_coherence(const CoherenceFlags& f, std::ostream& out, std::ostream& err) {
  const SimilarityKind kind = parse_similarity_kind(f.sim);
  const auto vectors = vectors_for(kind, f.vectors);
  const SparseCodeMatrix codes = read_codes_any(f.codes);
  const auto sentences = load_corpus(f.corpus);
  if (sentences.size() != codes.rows()) {
    throw DimensionError("codes have " + std::to_string(codes.rows()) + " rows but corpus has " +
                         std::to_string(sentences.size()) + " sentences");
  }
  const auto bags = f.text.bags(sentences);

  CoherenceOptions opt;
  opt.similarity = kind;
  opt.n = f.n;
  opt.mode = parse_sample_mode(f.mode);
  opt.seed = f.seed;
  opt.vectors = vectors ? &*vectors : nullptr;
  opt.threads = f.threads;
  CoherenceReport report = model_coherence(codes, bags, opt);
  if (f.baseline_pairs > 0) {
    report.baseline = random_pair_baseline(bags, kind, f.baseline_pairs, f.seed, opt.vectors);
  }
  const std::string json = report_to_json(report);
  if (f.out.empty()) {
    out << json;
  } else {
    write_file_bytes(f.out, json);
  }
  err << "usable dimensions " << report.usable_dims << ", skipped " << report.skipped_dims
      << ", mean " << (report.mean ? format_real(*report.mean) : std::string("n/a")) << "\n";
}

// ---------------------------------------------------------------- baseline

struct BaselineFlags {
  std::string corpus;
  std::string sim = "jaccard";
  std::size_t pairs = 500;
  std::uint64_t seed = 0;
  std::string vectors;
  TextFlags text;
};

void cmd_baseline(const BaselineFlags& f, std::ostream& out, std::ostream&) {
  const SimilarityKind kind = parse_similarity_kind(f.sim);
  const auto vectors = vectors_for(kind, f.vectors);
  const auto sentences = load_corpus(f.corpus);
  const auto bags = f.text.bags(sentences);
  out << format_real(random_pair_baseline(bags, kind, f.pairs, f.seed,
                                          vectors ? &*vectors : nullptr))
      << "\n";
}

// ---------------------------------------------------------------- top

struct TopFlags {
  std::string codes;
  std::string corpus;
  std::size_t dim = 0;
  std::size_t n = 10;
};

void cmd_top(const TopFlags& f, std::ostream& out, std::ostream&) {
  const SparseCodeMatrix codes = read_codes_any(f.codes);
  const auto sentences = load_corpus(f.corpus);
  if (f.dim >= codes.cols()) {
    throw DimensionError("--dim " + std::to_string(f.dim) + " out of range: codes have " +
                         std::to_string(codes.cols()) + " dimensions");
  }
  for (const auto& s : top_samples(codes, sentences, f.dim, f.n)) {
    out << format_stored(s.value) << "\t" << s.text << "\n";
  }
}

// ---------------------------------------------------------------- reconstruct

struct ReconstructFlags {
  std::string model;
  std::string vocab;
  std::string corpus;
  std::size_t max_len = 30;
};

void cmd_reconstruct(const ReconstructFlags& f, std::ostream& out, std::ostream&) {
  const AutoencoderModel model = read_model(f.model);
  const Vocabulary vocab = read_vocab(f.vocab);
  if (vocab.size() != model.config.vocab_size) {
    throw Error("vocabulary has " + std::to_string(vocab.size()) + " tokens but model expects " +
                std::to_string(model.config.vocab_size));
  }
  auto sentences = load_corpus(f.corpus);
  encode_sentences(sentences, vocab);
  for (const auto& s : sentences) {
    const auto act = apply_sparsity(encode(model, s.ids), model.config.sparsity);
    const auto words = decode_ids(decode_greedy(model, act.output, f.max_len), vocab);
    std::string line;
    for (const auto& w : words) {
      if (!line.empty()) line += ' ';
      line += w;
    }
    out << s.text << "\t" << line << "\n";
  }
}

int guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sparsent: sparse sentence embeddings and their interpretability"};
  app.name("sparsent");
  app.require_subcommand(1);

  VocabFlags vocab_f;
  auto* vocab = app.add_subcommand("vocab", "Build a vocabulary file from a corpus");
  vocab->add_option("--corpus", vocab_f.corpus, "Corpus, one sentence per line")
      ->required()
      ->check(CLI::ExistingFile);
  vocab->add_option("--cap", vocab_f.cap, "Maximum vocabulary size including reserved symbols")
      ->check(CLI::Range(std::size_t{4}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  vocab->add_option("--out", vocab_f.out, "Output vocabulary file")->required();

  SynthFlags synth_f;
  auto* synth = app.add_subcommand("synth", "Write a synthetic templated topic corpus");
  synth->add_option("--topics", synth_f.topics, "Number of topics (1-8)")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  synth->add_option("--per-topic", synth_f.per_topic, "Sentences per topic")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--seed", synth_f.seed, "Random seed")->capture_default_str();
  synth->add_option("--out", synth_f.out, "Output corpus file")->required();
  synth->add_option("--labels-out", synth_f.labels_out, "Optional file of topic ids per line");

  TrainFlags train_f;
  auto* train_cmd = app.add_subcommand("train", "Train a sequence autoencoder");
  train_cmd->add_option("--corpus", train_f.corpus, "Training corpus")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--vocab", train_f.vocab, "Vocabulary file (built from the corpus if absent)")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--vocab-out", train_f.vocab_out,
                        "Where to write a built vocabulary (default: <out>.vocab)");
  train_cmd->add_option("--vocab-cap", train_f.vocab_cap, "Size cap for a built vocabulary")
      ->check(CLI::Range(std::size_t{4}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  train_cmd->add_option("--out", train_f.out, "Output model file")->capture_default_str();
  train_cmd->add_option("--embed", train_f.embed, "Word embedding size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--hidden", train_f.hidden, "GRU hidden size D'")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_f.sparsity.add_to(*train_cmd);
  train_cmd->add_option("--epochs", train_f.epochs, "Training epochs")->capture_default_str();
  train_cmd->add_option("--batch", train_f.batch, "Mini-batch size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--lr", train_f.lr, "Adam learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--seed", train_f.seed, "Seed for initialization and shuffling")
      ->capture_default_str();
  train_cmd->add_option("--max-len", train_f.max_len, "Maximum sequence length incl. <eos>")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--clip", train_f.clip, "Global gradient-norm clip (0 disables)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train_cmd->add_option("--ksparse-anneal", train_f.ksparse_anneal,
                        "Epochs over which k falls from --hidden to --k (0 disables)")
      ->capture_default_str();

  EmbedFlags embed_f;
  auto* embed = app.add_subcommand("embed", "Embed a corpus with a trained model");
  embed->add_option("--model", embed_f.model, "Model file")->required()->check(CLI::ExistingFile);
  embed->add_option("--vocab", embed_f.vocab, "Vocabulary file")
      ->required()
      ->check(CLI::ExistingFile);
  embed->add_option("--corpus", embed_f.corpus, "Corpus to embed")
      ->required()
      ->check(CLI::ExistingFile);
  embed->add_option("--out", embed_f.out, "Output .ssc (sparse models) or .semb (dense)")
      ->required();
  embed->add_flag("--pre-sparsity", embed_f.pre_sparsity,
                  "Write encoder states before the sparsity layer as .semb");
  embed->add_option("--threads", embed_f.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  KsvdFlags ksvd_f;
  auto* ksvd = app.add_subcommand("ksvd", "Sparse-code dense embeddings with k-SVD");
  ksvd->add_option("--input", ksvd_f.input, "Dense embeddings (.semb)")
      ->required()
      ->check(CLI::ExistingFile);
  ksvd->add_option("--atoms", ksvd_f.atoms, "Dictionary size D")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ksvd->add_option("--k", ksvd_f.k, "Nonzeros per code")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ksvd->add_option("--iters", ksvd_f.iters, "k-SVD iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ksvd->add_option("--seed", ksvd_f.seed, "Seed for dictionary initialization")
      ->capture_default_str();
  ksvd->add_option("--residual-tol", ksvd_f.residual_tol, "OMP early-stop residual norm")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  ksvd->add_option("--codes-out", ksvd_f.codes_out, "Output sparse codes")->capture_default_str();
  ksvd->add_option("--dict-out", ksvd_f.dict_out, "Output dictionary")->capture_default_str();
  ksvd->add_option("--threads", ksvd_f.threads, "Worker threads for the coding step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CoherenceFlags coh_f;
  auto* coherence = app.add_subcommand("coherence", "Topic coherence of embedding dimensions");
  coherence->add_option("--codes", coh_f.codes, "Embeddings (.ssc or .semb)")
      ->required()
      ->check(CLI::ExistingFile);
  coherence->add_option("--corpus", coh_f.corpus, "Corpus aligned with the embedding rows")
      ->required()
      ->check(CLI::ExistingFile);
  coherence->add_option("--sim", coh_f.sim, "Similarity: jaccard, bow, wmd")
      ->check(CLI::IsMember({"jaccard", "bow", "wmd"}))
      ->capture_default_str();
  coherence->add_option("--n", coh_f.n, "Sentences per dimension")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  coherence->add_option("--mode", coh_f.mode, "top or random")
      ->check(CLI::IsMember({"top", "random"}))
      ->capture_default_str();
  coherence->add_option("--seed", coh_f.seed, "Seed for random mode and the baseline")
      ->capture_default_str();
  coherence->add_option("--vectors", coh_f.vectors, "Word vectors (required for wmd)")
      ->check(CLI::ExistingFile);
  coherence->add_option("--baseline-pairs", coh_f.baseline_pairs,
                        "Add the mean similarity of this many random pairs")
      ->capture_default_str();
  coh_f.text.add_to(*coherence);
  coherence->add_option("--out", coh_f.out, "Report file (default: standard output)");
  coherence->add_option("--threads", coh_f.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  BaselineFlags base_f;
  auto* baseline = app.add_subcommand("baseline", "Mean similarity of random sentence pairs");
  baseline->add_option("--corpus", base_f.corpus, "Corpus")->required()->check(CLI::ExistingFile);
  baseline->add_option("--sim", base_f.sim, "Similarity: jaccard, bow, wmd")
      ->check(CLI::IsMember({"jaccard", "bow", "wmd"}))
      ->capture_default_str();
  baseline->add_option("--pairs", base_f.pairs, "Number of random pairs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  baseline->add_option("--seed", base_f.seed, "Random seed")->capture_default_str();
  baseline->add_option("--vectors", base_f.vectors, "Word vectors (required for wmd)")
      ->check(CLI::ExistingFile);
  base_f.text.add_to(*baseline);

  TopFlags top_f;
  auto* top = app.add_subcommand("top", "Highest-ranked sentences of one dimension");
  top->add_option("--codes", top_f.codes, "Embeddings (.ssc or .semb)")
      ->required()
      ->check(CLI::ExistingFile);
  top->add_option("--corpus", top_f.corpus, "Corpus aligned with the embedding rows")
      ->required()
      ->check(CLI::ExistingFile);
  top->add_option("--dim", top_f.dim, "Dimension id")->required();
  top->add_option("--n", top_f.n, "Number of sentences")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ReconstructFlags rec_f;
  auto* reconstruct = app.add_subcommand("reconstruct", "Greedy reconstructions of a corpus");
  reconstruct->add_option("--model", rec_f.model, "Model file")
      ->required()
      ->check(CLI::ExistingFile);
  reconstruct->add_option("--vocab", rec_f.vocab, "Vocabulary file")
      ->required()
      ->check(CLI::ExistingFile);
  reconstruct->add_option("--corpus", rec_f.corpus, "Corpus")
      ->required()
      ->check(CLI::ExistingFile);
  reconstruct->add_option("--max-len", rec_f.max_len, "Maximum decoded length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  if (vocab->parsed()) return guarded(err, [&] { cmd_vocab(vocab_f, out, err); });
  if (synth->parsed()) return guarded(err, [&] { cmd_synth(synth_f, out, err); });
  if (train_cmd->parsed()) return guarded(err, [&] { cmd_train(train_f, out, err); });
  if (embed->parsed()) return guarded(err, [&] { cmd_embed(embed_f, out, err); });
  if (ksvd->parsed()) return guarded(err, [&] { cmd_ksvd(ksvd_f, out, err); });
  if (coherence->parsed()) return guarded(err, [&] { cmd_coherence(coh_f, out, err); });
  if (baseline->parsed()) return guarded(err, [&] { cmd_baseline(base_f, out, err); });
  if (top->parsed()) return guarded(err, [&] { cmd_top(top_f, out, err); });
  if (reconstruct->parsed()) return guarded(err, [&] { cmd_reconstruct(rec_f, out, err); });
  return kExitUsageError;
}

}  // namespace sparsent::cli
