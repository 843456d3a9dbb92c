#include "sparsent/corpus.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "sparsent/binary_io.hpp"
#include "sparsent/error.hpp"

namespace sparsent {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_punct_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
         (u >= 123 && u <= 126);
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

}  // namespace

bool is_reserved_token(std::string_view token) {
  return token == kPersonToken || token == kUnkToken || token == kEosToken;
}

bool is_punctuation(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), is_punct_char);
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (start == i) break;

    std::string chunk(line.substr(start, i - start));
    std::transform(chunk.begin(), chunk.end(), chunk.begin(), ascii_lower);
    if (is_reserved_token(chunk)) {
      out.push_back(std::move(chunk));
      continue;
    }
    std::size_t lo = 0;
    std::size_t hi = chunk.size();
    while (lo < hi && is_punct_char(chunk[lo])) out.emplace_back(1, chunk[lo++]);
    std::vector<std::string> tail;
    while (hi > lo && is_punct_char(chunk[hi - 1])) tail.emplace_back(1, chunk[--hi]);
    if (lo < hi) out.push_back(chunk.substr(lo, hi - lo));
    out.insert(out.end(), tail.rbegin(), tail.rend());
  }
  return out;
}

Vocabulary::Vocabulary()
    : Vocabulary(std::vector<std::string>{std::string(kPersonToken), std::string(kUnkToken),
                                          std::string(kEosToken)}) {}

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.size() < kNumReserved || tokens_[kPersonId] != kPersonToken ||
      tokens_[kUnkId] != kUnkToken || tokens_[kEosId] != kEosToken) {
    throw FormatError(FormatError::Kind::kInvalidData,
                      "vocabulary must start with <person>, <unk>, <eos>");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const std::string& t = tokens_[i];
    if (t.empty() || std::any_of(t.begin(), t.end(), is_space)) {
      throw FormatError(FormatError::Kind::kInvalidData,
                        "vocabulary entry " + std::to_string(i) + " is empty or has whitespace");
    }
    if (!index_.emplace(t, static_cast<TokenId>(i)).second) {
      throw FormatError(FormatError::Kind::kInvalidData, "duplicate vocabulary entry '" + t + "'");
    }
  }
}

bool Vocabulary::contains(std::string_view token) const {
  return index_.find(std::string(token)) != index_.end();
}

TokenId Vocabulary::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnkId : it->second;
}

Vocabulary build_vocab(std::span<const std::vector<std::string>> corpus, std::size_t cap) {
  if (cap < kNumReserved + 1) throw Error("vocabulary cap must be at least 4");
  std::map<std::string, std::size_t> counts;
  for (const auto& sentence : corpus) {
    for (const auto& tok : sentence) {
      if (!is_reserved_token(tok)) ++counts[tok];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens{std::string(kPersonToken), std::string(kUnkToken),
                                  std::string(kEosToken)};
  for (auto& [tok, n] : ranked) {
    if (tokens.size() >= cap) break;
    tokens.push_back(std::move(tok));
  }
  return Vocabulary(std::move(tokens));
}

std::string serialize_vocab(const Vocabulary& vocab) {
  std::string out;
  for (const auto& t : vocab.tokens()) {
    out += t;
    out += '\n';
  }
  return out;
}

Vocabulary deserialize_vocab(std::string_view text) {
  if (const auto bad = find_invalid_utf8(text); bad != std::string_view::npos) {
    throw FormatError(FormatError::Kind::kInvalidData,
                      "vocabulary: invalid UTF-8 at byte offset " + std::to_string(bad));
  }
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw FormatError(FormatError::Kind::kInvalidData,
                        "vocabulary: last line is not newline-terminated");
    }
    tokens.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return Vocabulary(std::move(tokens));
}

void write_vocab(const std::filesystem::path& path, const Vocabulary& vocab) {
  write_file_bytes(path, serialize_vocab(vocab));
}

Vocabulary read_vocab(const std::filesystem::path& path) {
  return deserialize_vocab(read_file_bytes(path));
}

std::vector<TokenId> encode_tokens(std::span<const std::string> tokens, const Vocabulary& vocab) {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size() + 1);
  for (const auto& t : tokens) ids.push_back(vocab.id(t));
  ids.push_back(kEosId);
  return ids;
}

std::vector<std::string> decode_ids(std::span<const TokenId> ids, const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (TokenId id : ids) out.push_back(id < vocab.size() ? vocab.token(id) : std::string(kUnkToken));
  return out;
}

std::vector<std::string> strip_stopwords(std::span<const std::string> tokens,
                                         const StopwordList& list, bool keep_punct) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (list.contains(t)) continue;
    if (!keep_punct && is_punctuation(t)) continue;
    out.push_back(t);
  }
  return out;
}

std::size_t find_invalid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > text.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                          (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::string_view::npos;
}

std::vector<Sentence> parse_corpus(std::string_view text) {
  if (const auto bad = find_invalid_utf8(text); bad != std::string_view::npos) {
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(bad), '\n');
    throw FormatError(FormatError::Kind::kInvalidData,
                      "invalid UTF-8 at byte offset " + std::to_string(bad) + " (line " +
                          std::to_string(line) + ")");
  }
  std::vector<Sentence> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    if (std::all_of(line.begin(), line.end(), is_space)) continue;
    Sentence s;
    s.text = std::string(line);
    s.tokens = tokenize(line);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sentence> load_corpus(const std::filesystem::path& path) {
  std::string bytes;
  try {
    bytes = read_file_bytes(path);
  } catch (const IoError&) {
    throw IoError("cannot read corpus " + path.string());
  }
  try {
    return parse_corpus(bytes);
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), path.string() + ": " + e.what());
  }
}

void encode_sentences(std::span<Sentence> sentences, const Vocabulary& vocab) {
  for (auto& s : sentences) s.ids = encode_tokens(s.tokens, vocab);
}

}  // namespace sparsent
