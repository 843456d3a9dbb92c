#include "sparsent/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sparsent/error.hpp"
#include "sparsent/rng.hpp"

namespace sparsent {
namespace {

struct TopicWords {
  std::array<const char*, 3> subjects;
  std::array<const char*, 3> verbs;
  std::array<const char*, 3> objects;
  std::array<const char*, 3> places;
};

constexpr std::array<TopicWords, 8> kTopics = {{
    {{"chef", "cook", "baker"}, {"cuts", "stirs", "bakes"},
     {"bread", "soup", "cake"}, {"kitchen", "oven", "counter"}},
    {{"surfer", "swimmer", "sailor"}, {"rides", "paddles", "swims"},
     {"wave", "board", "boat"}, {"beach", "ocean", "shore"}},
    {{"player", "pitcher", "batter"}, {"throws", "catches", "hits"},
     {"ball", "bat", "glove"}, {"field", "stadium", "court"}},
    {{"driver", "bus", "taxi"}, {"drives", "parks", "honks"},
     {"car", "truck", "bike"}, {"street", "road", "corner"}},
    {{"farmer", "cow", "horse"}, {"eats", "grazes", "plows"},
     {"hay", "grass", "tractor"}, {"farm", "barn", "pasture"}},
    {{"clerk", "manager", "typist"}, {"writes", "reads", "files"},
     {"letter", "report", "memo"}, {"office", "desk", "meeting"}},
    {{"singer", "drummer", "pianist"}, {"plays", "sings", "tunes"},
     {"guitar", "song", "piano"}, {"stage", "concert", "studio"}},
    {{"skier", "skater", "boarder"}, {"skis", "slides", "glides"},
     {"sled", "jacket", "pole"}, {"mountain", "rink", "hill"}},
}};

constexpr std::array<const char*, 6> kAdjectives = {"big", "small", "red", "old", "young", "white"};

template <std::size_t N>
std::string pick(Rng& rng, const std::array<const char*, N>& words) {
  return words[rng.index(N)];
}

std::string make_sentence(const TopicWords& t, Rng& rng) {
  const std::string s = pick(rng, t.subjects);
  const std::string v = pick(rng, t.verbs);
  const std::string o = pick(rng, t.objects);
  const std::string p = pick(rng, t.places);
  const std::string adj = pick(rng, kAdjectives);
  switch (rng.index(7)) {
    case 0:
      return "a " + s + " " + v + " " + o;
    case 1:
      return "the " + s + " " + v + " the " + o;
    case 2:
      return "a " + s + " " + v + " a " + o + " in the " + p;
    case 3:
      return "the " + adj + " " + s + " is at the " + p;
    case 4:
      return "a " + s + " and a " + pick(rng, t.subjects) + " " + v + " at the " + p;
    case 5:
      return "there is a " + adj + " " + o + " in the " + p;
    default:
      return s + " " + v + " " + o + " on the " + p;
  }
}

}  // namespace

TopicCorpus make_topic_corpus(const TopicCorpusOptions& options) {
  if (options.topics == 0 || options.topics > kTopics.size()) {
    throw Error("topic corpus supports 1 to " + std::to_string(kTopics.size()) + " topics");
  }
  Rng rng(options.seed);
  std::vector<std::pair<std::size_t, std::string>> rows;
  for (std::size_t t = 0; t < options.topics; ++t) {
    for (std::size_t i = 0; i < options.sentences_per_topic; ++i) {
      rows.emplace_back(t, make_sentence(kTopics[t], rng));
    }
  }
  rng.shuffle(std::span(rows));
  TopicCorpus out;
  for (auto& [t, line] : rows) {
    out.topic.push_back(t);
    out.lines.push_back(std::move(line));
  }
  return out;
}

SparseModelData make_sparse_model_data(std::size_t samples, std::size_t dim,
                                       std::size_t sparsity, double noise, std::uint64_t seed) {
  if (dim == 0 || sparsity == 0 || sparsity > dim) {
    throw DimensionError("need 1 <= sparsity <= dim");
  }
  Rng rng(seed);

  // Orthonormal rows by modified Gram-Schmidt on a Gaussian matrix.
  DenseMatrix atoms(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    auto row = atoms.row(r);
    while (true) {
      for (double& x : row) x = rng.normal();
      for (std::size_t p = 0; p < r; ++p) {
        const double proj = dot(row, atoms.row(p));
        auto prev = atoms.row(p);
        for (std::size_t c = 0; c < dim; ++c) row[c] -= proj * prev[c];
      }
      const double n = norm2(row);
      if (n > 1e-6) {
        for (double& x : row) x /= n;
        break;
      }
    }
  }

  SparseModelData data;
  data.codes = SparseCodeMatrix(samples, dim);
  for (std::size_t i = 0; i < samples; ++i) {
    auto support = rng.sample_without_replacement(dim, sparsity);
    std::sort(support.begin(), support.end());
    SparseRow row;
    for (std::size_t j : support) {
      const double mag = rng.uniform(0.5, 1.5);
      row.push_back({static_cast<std::uint32_t>(j), rng.uniform() < 0.5 ? -mag : mag});
    }
    data.codes.set_row(i, std::move(row));
  }
  data.z = matmul(data.codes.to_dense(), atoms);
  if (noise > 0.0) {
    for (double& x : data.z.data()) x += noise * rng.normal();
  }
  data.atoms = std::move(atoms);
  return data;
}

}  // namespace sparsent
