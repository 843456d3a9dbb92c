#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "sparsent/matrix_io.hpp"
#include "sparsent/model_io.hpp"
#include "sparsent/sparse_codes.hpp"
#include "test_util.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sparsent");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sparsent::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    corpus_ = dir_.file("corpus.txt");
    ASSERT_EQ(run({"synth", "--topics", "2", "--per-topic", "20", "--seed", "3", "--out", corpus_})
                  .code,
              0);
    sparsent::Rng rng(9);
    embeddings_ = dir_.file("emb.semb");
    sparsent::write_dense(embeddings_, testutil::random_matrix(rng, 40, 6));
  }

  testutil::TempDir dir_;
  std::string corpus_;
  std::string embeddings_;
};

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"vocab", "--out", dir_.file("v")}).code, 2);
  EXPECT_EQ(run({"vocab", "--corpus", dir_.file("missing.txt"), "--out", dir_.file("v")}).code, 2);
  EXPECT_EQ(run({"ksvd", "--input", embeddings_, "--atoms", "0"}).code, 2);
  EXPECT_EQ(run({"ksvd", "--input", embeddings_, "--atoms", "3", "--k", "4"}).code, 2);
  EXPECT_EQ(run({"coherence", "--codes", embeddings_, "--corpus", corpus_, "--sim", "wmd"}).code, 2);
  EXPECT_EQ(run({"coherence", "--codes", embeddings_, "--corpus", corpus_, "--n", "1"}).code, 2);
  EXPECT_EQ(run({"train", "--corpus", corpus_, "--sparsity", "dropout"}).code, 2);
}

TEST_F(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("coherence"), std::string::npos);
}

TEST_F(Cli, RuntimeErrorsExitOne) {
  const auto short_corpus = dir_.file("short.txt");
  write_text(short_corpus, "one line\nanother line\n");
  const auto r = run({"coherence", "--codes", embeddings_, "--corpus", short_corpus});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("40"), std::string::npos);
  EXPECT_NE(r.err.find("2"), std::string::npos);
  EXPECT_EQ(run({"top", "--codes", embeddings_, "--corpus", corpus_, "--dim", "6"}).code, 1);
  const auto garbage = dir_.file("bad.semb");
  write_text(garbage, "not a matrix");
  EXPECT_EQ(run({"ksvd", "--input", garbage}).code, 1);
}

TEST_F(Cli, KsvdAndCoherenceAreDeterministic) {
  std::string first_codes;
  for (int pass = 0; pass < 2; ++pass) {
    const auto codes = dir_.file("codes" + std::to_string(pass) + ".ssc");
    const auto dict = dir_.file("dict" + std::to_string(pass) + ".semb");
    const auto r = run({"ksvd", "--input", embeddings_, "--atoms", "8", "--k", "2", "--iters", "3",
                        "--seed", "5", "--codes-out", codes, "--dict-out", dict});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("relative_error ", 0), 0u);
    if (pass == 0) {
      first_codes = slurp(codes);
    } else {
      EXPECT_EQ(slurp(codes), first_codes);
    }
  }
  const auto codes = dir_.file("codes0.ssc");
  const std::vector<std::string> args{"coherence", "--codes",  codes, "--corpus", corpus_,
                                      "--mode",    "random",   "--n", "4",        "--seed",
                                      "11",        "--baseline-pairs", "50"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"mode\": \"random\""), std::string::npos);
  EXPECT_NE(a.out.find("\"baseline\""), std::string::npos);

  const auto top = run({"top", "--codes", codes, "--corpus", corpus_, "--dim", "0", "--n", "3"});
  ASSERT_EQ(top.code, 0) << top.err;
  EXPECT_NE(top.out.find('\t'), std::string::npos);
}

TEST_F(Cli, TrainEmbedReconstruct) {
  const auto model = dir_.file("m.samodel");
  const auto r = run({"train", "--corpus", corpus_, "--out", model, "--embed", "8", "--hidden", "8",
                      "--sparsity", "ksparse", "--k", "2", "--epochs", "2", "--batch", "8",
                      "--ksparse-anneal", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("epoch 1 loss "), std::string::npos);
  EXPECT_NE(r.out.find("epoch 2 loss "), std::string::npos);
  EXPECT_EQ(sparsent::read_model(model).config.sparsity.k, 2u);
  const auto vocab = dir_.file("m.vocab");

  const auto ssc = dir_.file("e.ssc");
  ASSERT_EQ(run({"embed", "--model", model, "--vocab", vocab, "--corpus", corpus_, "--out", ssc})
                .code,
            0);
  const auto codes = sparsent::read_codes(ssc);
  EXPECT_EQ(codes.rows(), 40u);
  for (std::size_t i = 0; i < codes.rows(); ++i) EXPECT_LE(codes.row(i).size(), 2u);

  const auto pre = dir_.file("pre.semb");
  ASSERT_EQ(run({"embed", "--model", model, "--vocab", vocab, "--corpus", corpus_, "--out", pre,
                 "--pre-sparsity"})
                .code,
            0);
  const auto dense = sparsent::read_dense(pre);
  EXPECT_EQ(dense.rows(), 40u);
  EXPECT_EQ(dense.cols(), 8u);

  const auto rec = run({"reconstruct", "--model", model, "--vocab", vocab, "--corpus", corpus_});
  ASSERT_EQ(rec.code, 0) << rec.err;
  EXPECT_EQ(std::count(rec.out.begin(), rec.out.end(), '\n'), 40);
}

TEST_F(Cli, BaselineAndVocab) {
  const auto r = run({"baseline", "--corpus", corpus_, "--pairs", "100", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, run({"baseline", "--corpus", corpus_, "--pairs", "100", "--seed", "2"}).out);
  const auto v = dir_.file("v.txt");
  ASSERT_EQ(run({"vocab", "--corpus", corpus_, "--out", v}).code, 0);
  EXPECT_EQ(slurp(v).rfind("<person>\n<unk>\n<eos>\n", 0), 0u);
}

}  // namespace
