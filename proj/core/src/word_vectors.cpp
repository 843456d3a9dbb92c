#include "sparsent/word_vectors.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "sparsent/binary_io.hpp"
#include "sparsent/corpus.hpp"
#include "sparsent/error.hpp"

namespace sparsent {
namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_integer(std::string_view s, std::size_t& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

void WordVectorTable::add(std::string token, std::vector<double> vec) {
  if (vec.size() != dim_) {
    throw DimensionError("word vector for '" + token + "' has " + std::to_string(vec.size()) +
                         " entries, expected " + std::to_string(dim_));
  }
  for (double x : vec) {
    if (!std::isfinite(x)) throw DimensionError("non-finite word vector entry for '" + token + "'");
  }
  auto it = index_.find(token);
  if (it != index_.end()) {
    std::copy(vec.begin(), vec.end(), storage_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
    return;
  }
  index_.emplace(std::move(token), index_.size());
  storage_.insert(storage_.end(), vec.begin(), vec.end());
}

bool WordVectorTable::contains(std::string_view token) const {
  return index_.find(std::string(token)) != index_.end();
}

std::span<const double> WordVectorTable::lookup(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return {};
  return {storage_.data() + it->second * dim_, dim_};
}

WordVectorTable parse_word_vectors(std::string_view text) {
  if (const auto bad = find_invalid_utf8(text); bad != std::string_view::npos) {
    throw FormatError(FormatError::Kind::kInvalidData,
                      "word vectors: invalid UTF-8 at byte offset " + std::to_string(bad));
  }
  WordVectorTable table;
  bool have_dim = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;

    std::size_t header_count = 0, header_dim = 0;
    if (line_no == 1 && fields.size() == 2 && parse_integer(fields[0], header_count) &&
        parse_integer(fields[1], header_dim)) {
      continue;
    }
    if (fields.size() < 2) {
      throw FormatError(FormatError::Kind::kInvalidData,
                        "word vectors line " + std::to_string(line_no) + ": no values");
    }
    if (!have_dim) {
      table = WordVectorTable(fields.size() - 1);
      have_dim = true;
    }
    if (fields.size() - 1 != table.dim()) {
      throw FormatError(FormatError::Kind::kInvalidData,
                        "word vectors line " + std::to_string(line_no) + ": " +
                            std::to_string(fields.size() - 1) + " values, expected " +
                            std::to_string(table.dim()));
    }
    std::vector<double> vec(table.dim());
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (!parse_double(fields[i + 1], vec[i]) || !std::isfinite(vec[i])) {
        throw FormatError(FormatError::Kind::kInvalidData,
                          "word vectors line " + std::to_string(line_no) + ": bad number '" +
                              std::string(fields[i + 1]) + "'");
      }
    }
    table.add(std::string(fields[0]), std::move(vec));
  }
  return table;
}

WordVectorTable load_word_vectors(const std::filesystem::path& path) {
  try {
    return parse_word_vectors(read_file_bytes(path));
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace sparsent
