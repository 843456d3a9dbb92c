#include <algorithm>
#include <string>

#include "sparsent/binary_io.hpp"
#include "sparsent/corpus.hpp"
#include "sparsent/error.hpp"

namespace sparsent {
namespace {

// Version 1 of the built-in English list. Changing it changes every
// coherence value, so bump the version string with any edit.
constexpr const char* kEnglishVersion = "en-1";
constexpr const char* kEnglishWords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and",
    "any", "are", "aren't", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "can't", "cannot", "could",
    "couldn't", "did", "didn't", "do", "does", "doesn't", "doing", "don't", "down",
    "during", "each", "few", "for", "from", "further", "had", "hadn't", "has",
    "hasn't", "have", "haven't", "having", "he", "he'd", "he'll", "he's", "her",
    "here", "here's", "hers", "herself", "him", "himself", "his", "how", "how's",
    "i", "i'd", "i'll", "i'm", "i've", "if", "in", "into", "is", "isn't", "it",
    "it's", "its", "itself", "just", "let's", "me", "more", "most", "mustn't", "my",
    "myself", "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or",
    "other", "ought", "our", "ours", "ourselves", "out", "over", "own", "same",
    "shan't", "she", "she'd", "she'll", "she's", "should", "shouldn't", "so", "some",
    "such", "than", "that", "that's", "the", "their", "theirs", "them", "themselves",
    "then", "there", "there's", "these", "they", "they'd", "they'll", "they're",
    "they've", "this", "those", "through", "to", "too", "under", "until", "up",
    "very", "was", "wasn't", "we", "we'd", "we'll", "we're", "we've", "were",
    "weren't", "what", "what's", "when", "when's", "where", "where's", "which",
    "while", "who", "who's", "whom", "why", "why's", "will", "with", "won't",
    "would", "wouldn't", "you", "you'd", "you'll", "you're", "you've", "your",
    "yours", "yourself", "yourselves"};

}  // namespace

StopwordList::StopwordList(std::unordered_set<std::string> words, std::string version)
    : words_(std::move(words)), version_(std::move(version)) {
  if (words_.empty()) throw Error("stop-word list is empty");
}

const StopwordList& StopwordList::english() {
  static const StopwordList list(
      std::unordered_set<std::string>(std::begin(kEnglishWords), std::end(kEnglishWords)),
      kEnglishVersion);
  return list;
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
  const std::string text = read_file_bytes(path);
  if (const auto bad = find_invalid_utf8(text); bad != std::string::npos) {
    throw FormatError(FormatError::Kind::kInvalidData,
                      path.string() + ": invalid UTF-8 at byte offset " + std::to_string(bad));
  }
  std::unordered_set<std::string> words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    line.erase(0, first);
    std::transform(line.begin(), line.end(), line.begin(),
                   [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; });
    words.insert(std::move(line));
  }
  if (words.empty()) throw Error("stop-word file " + path.string() + " is empty");
  return StopwordList(std::move(words), "file:" + path.filename().string());
}

bool StopwordList::contains(std::string_view token) const {
  return words_.find(std::string(token)) != words_.end();
}

}  // namespace sparsent
