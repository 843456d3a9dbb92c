#pragma once

// Corpora are UTF-8 text, one sentence per line. Vocabulary files hold one
// token per line with the line number as id; the first three lines are the
// reserved symbols.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sparsent {

using TokenId = std::uint32_t;

inline constexpr std::string_view kPersonToken = "<person>";
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kEosToken = "<eos>";
inline constexpr TokenId kPersonId = 0;
inline constexpr TokenId kUnkId = 1;
inline constexpr TokenId kEosId = 2;
inline constexpr std::size_t kNumReserved = 3;

bool is_reserved_token(std::string_view token);

// True when every byte of `token` is ASCII punctuation.
bool is_punctuation(std::string_view token);

// Lowercases ASCII, splits on whitespace, and splits leading and trailing
// punctuation characters into one-character tokens. Apostrophes between
// letters stay inside the word. Reserved symbols pass through unchanged.
std::vector<std::string> tokenize(std::string_view line);

class Vocabulary {
 public:
  // Reserved symbols only.
  Vocabulary();
  // `tokens` must start with the three reserved symbols and hold no duplicates.
  explicit Vocabulary(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  bool contains(std::string_view token) const;
  // <unk> id for unknown tokens.
  TokenId id(std::string_view token) const;

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

// Reserved symbols, then tokens by descending frequency (lexicographic on
// ties), truncated to `cap` entries in total. cap must be at least 4.
Vocabulary build_vocab(std::span<const std::vector<std::string>> corpus, std::size_t cap);

std::string serialize_vocab(const Vocabulary& vocab);
Vocabulary deserialize_vocab(std::string_view text);
void write_vocab(const std::filesystem::path& path, const Vocabulary& vocab);
Vocabulary read_vocab(const std::filesystem::path& path);

// Maps out-of-vocabulary tokens to <unk> and appends <eos>.
std::vector<TokenId> encode_tokens(std::span<const std::string> tokens, const Vocabulary& vocab);

std::vector<std::string> decode_ids(std::span<const TokenId> ids, const Vocabulary& vocab);

class StopwordList {
 public:
  // Throws Error when empty.
  explicit StopwordList(std::unordered_set<std::string> words, std::string version);

  // The built-in English list.
  static const StopwordList& english();
  // One token per line; blank lines ignored; tokens are lowercased.
  static StopwordList from_file(const std::filesystem::path& path);

  bool contains(std::string_view token) const;
  std::size_t size() const noexcept { return words_.size(); }
  const std::string& version() const noexcept { return version_; }

 private:
  std::unordered_set<std::string> words_;
  std::string version_;
};

// Order-preserving removal of stop words and, unless keep_punct,
// punctuation tokens.
std::vector<std::string> strip_stopwords(std::span<const std::string> tokens,
                                         const StopwordList& list, bool keep_punct = false);

struct Sentence {
  std::string text;
  std::vector<std::string> tokens;
  std::vector<TokenId> ids;  // filled by encode_sentences; ends with <eos>
};

// Validates UTF-8 (error names line and byte offset), skips blank lines and
// keeps file order. Tokens are filled, ids are left empty.
std::vector<Sentence> parse_corpus(std::string_view text);
std::vector<Sentence> load_corpus(const std::filesystem::path& path);

void encode_sentences(std::span<Sentence> sentences, const Vocabulary& vocab);

// Byte offset of the first invalid UTF-8 sequence, or npos.
std::size_t find_invalid_utf8(std::string_view text);

}  // namespace sparsent
