#include "sparsent/emd.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "sparsent/error.hpp"

namespace sparsent {
namespace {

constexpr double kFlowEps = 1e-15;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
  std::size_t to;
  std::size_t rev;  // index of the reverse edge in graph[to]
  double cap;
  double cost;
};

class FlowGraph {
 public:
  explicit FlowGraph(std::size_t nodes) : graph_(nodes) {}

  // Returns the index of the forward edge in graph_[from].
  std::size_t add_edge(std::size_t from, std::size_t to, double cap, double cost) {
    graph_[from].push_back({to, graph_[to].size(), cap, cost});
    graph_[to].push_back({from, graph_[from].size() - 1, 0.0, -cost});
    return graph_[from].size() - 1;
  }

  const Edge& edge(std::size_t from, std::size_t idx) const { return graph_[from][idx]; }

  // Successive shortest paths (Bellman-Ford handles the negative residual
  // costs). Sends up to `demand` units from source to sink.
  void min_cost_flow(std::size_t source, std::size_t sink, double demand) {
    const std::size_t n = graph_.size();
    double sent = 0.0;
    while (demand - sent > kFlowEps) {
      std::vector<double> dist(n, kInf);
      std::vector<std::size_t> prev_node(n, n), prev_edge(n, 0);
      dist[source] = 0.0;
      for (std::size_t round = 0; round + 1 < n; ++round) {
        bool changed = false;
        for (std::size_t u = 0; u < n; ++u) {
          if (dist[u] == kInf) continue;
          for (std::size_t k = 0; k < graph_[u].size(); ++k) {
            const Edge& e = graph_[u][k];
            if (e.cap <= kFlowEps) continue;
            const double nd = dist[u] + e.cost;
            if (nd < dist[e.to] - 1e-14) {
              dist[e.to] = nd;
              prev_node[e.to] = u;
              prev_edge[e.to] = k;
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (dist[sink] == kInf) break;

      double push = demand - sent;
      for (std::size_t v = sink; v != source; v = prev_node[v]) {
        push = std::min(push, graph_[prev_node[v]][prev_edge[v]].cap);
      }
      for (std::size_t v = sink; v != source; v = prev_node[v]) {
        Edge& e = graph_[prev_node[v]][prev_edge[v]];
        e.cap -= push;
        graph_[v][e.rev].cap += push;
      }
      sent += push;
    }
  }

 private:
  std::vector<std::vector<Edge>> graph_;
};

void check_weights(std::span<const double> w, const char* name) {
  if (w.empty()) throw Error(std::string("emd: ") + name + " is empty");
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(std::string("emd: ") + name + " has a negative or non-finite weight");
    }
  }
}

}  // namespace

double emd(std::span<const double> p, std::span<const double> q, const DenseMatrix& cost) {
  check_weights(p, "p");
  check_weights(q, "q");
  if (cost.rows() != p.size() || cost.cols() != q.size()) {
    throw DimensionError("emd: cost matrix " + std::to_string(cost.rows()) + "x" +
                         std::to_string(cost.cols()) + " for histograms of size " +
                         std::to_string(p.size()) + " and " + std::to_string(q.size()));
  }
  for (double c : cost.data()) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw Error("emd: ground cost must be >= 0 and finite");
  }
  const double sum_p = std::accumulate(p.begin(), p.end(), 0.0);
  const double sum_q = std::accumulate(q.begin(), q.end(), 0.0);
  if (std::abs(sum_p - sum_q) > 1e-6) {
    throw Error("emd: histogram masses differ (" + std::to_string(sum_p) + " vs " +
                std::to_string(sum_q) + ")");
  }

  const std::size_t m = p.size();
  const std::size_t n = q.size();
  const std::size_t source = 0;
  const std::size_t sink = m + n + 1;
  FlowGraph g(m + n + 2);
  for (std::size_t i = 0; i < m; ++i) g.add_edge(source, 1 + i, p[i], 0.0);
  for (std::size_t j = 0; j < n; ++j) g.add_edge(1 + m + j, sink, q[j], 0.0);
  std::vector<std::vector<std::size_t>> transport(m, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < m; ++i) {
    if (p[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (q[j] == 0.0) continue;
      transport[i][j] = g.add_edge(1 + i, 1 + m + j, kInf, cost(i, j));
    }
  }
  g.min_cost_flow(source, sink, std::min(sum_p, sum_q));

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (p[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (q[j] == 0.0) continue;
      const Edge& e = g.edge(1 + i, transport[i][j]);
      // Flow on an infinite-capacity edge is the residual of its reverse.
      const double flow = g.edge(1 + m + j, e.rev).cap;
      total += flow * cost(i, j);
    }
  }
  return total;
}

}  // namespace sparsent
