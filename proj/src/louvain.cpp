#include "spacetext/louvain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <utility>

namespace spacetext {

std::size_t Partition::community_count() const {
  if (community.empty()) return 0;
  return *std::max_element(community.begin(), community.end()) + 1;
}

double modularity(const WeightedGraph& g, const std::vector<std::size_t>& community, double resolution) {
  double m = 0.0;
  for (const auto& e : g.edges) m += e.weight;
  if (m <= 0.0) return 0.0;
  std::map<std::size_t, double> internal, degree;
  for (const auto& e : g.edges) {
    const auto ca = community[e.a], cb = community[e.b];
    degree[ca] += e.weight;
    degree[cb] += e.weight;
    if (ca == cb) internal[ca] += e.weight;
  }
  double q = 0.0;
  for (const auto& [c, d] : degree) {
    const double x = d / (2.0 * m);
    q += internal[c] / m - resolution * x * x;
  }
  return q;
}

namespace {

constexpr int kPerturbationRounds = 32;

struct Level {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // no self entries
  std::vector<double> self;                                      // loop weight, counted once
  std::vector<double> degree;
};

Level make_level(std::size_t n, const std::map<std::pair<std::size_t, std::size_t>, double>& w) {
  Level lv;
  lv.n = n;
  lv.adj.resize(n);
  lv.self.assign(n, 0.0);
  lv.degree.assign(n, 0.0);
  for (const auto& [key, weight] : w) {
    const auto [a, b] = key;
    if (a == b) {
      lv.self[a] += weight;
      lv.degree[a] += 2.0 * weight;
    } else {
      lv.adj[a].push_back({b, weight});
      lv.adj[b].push_back({a, weight});
      lv.degree[a] += weight;
      lv.degree[b] += weight;
    }
  }
  return lv;
}

// Fisher-Yates with the raw engine so orders are identical across standard libraries.
void shuffle_order(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng() % i]);
  }
}

// One local-move phase; returns true if any node changed community.
bool local_moves(const Level& lv, double m, double resolution, std::mt19937_64& rng,
                 std::vector<std::size_t>& comm) {
  comm.resize(lv.n);
  std::iota(comm.begin(), comm.end(), 0);
  std::vector<double> tot = lv.degree;
  std::vector<std::size_t> order(lv.n);
  std::iota(order.begin(), order.end(), 0);
  shuffle_order(order, rng);

  bool any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto i : order) {
      const std::size_t old = comm[i];
      const double ki = lv.degree[i];
      std::map<std::size_t, double> links;
      links[old] += 0.0;
      for (const auto& [j, w] : lv.adj[i]) links[comm[j]] += w;
      tot[old] -= ki;
      std::size_t best = old;
      double best_gain = links[old] - resolution * tot[old] * ki / (2.0 * m);
      for (const auto& [c, w] : links) {
        const double gain = w - resolution * tot[c] * ki / (2.0 * m);
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += ki;
      comm[i] = best;
      if (best != old) moved = any = true;
    }
  }
  return any;
}

std::size_t renumber(std::vector<std::size_t>& comm) {
  std::map<std::size_t, std::size_t> ids;
  for (auto& c : comm) {
    auto it = ids.emplace(c, ids.size()).first;
    c = it->second;
  }
  return ids.size();
}

// Kernighan-Lin style pass over single-node moves on the original graph:
// every node moves once to its best community (possibly at a loss) and the
// best prefix of the move sequence is kept. Returns the modularity gain.
double refine_once(const Level& g, double m, double resolution, std::vector<std::size_t>& comm) {
  const std::size_t n = g.n;
  std::vector<double> tot(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += g.degree[i];
  std::vector<bool> locked(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> moves;  // node, previous community
  double gain = 0.0, best_gain = 0.0;
  std::size_t best_len = 0;
  for (std::size_t step = 0; step < n; ++step) {
    double step_best = -1e300;
    std::size_t bi = n, bc = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (locked[i]) continue;
      const double k = g.degree[i];
      const std::size_t a = comm[i];
      std::map<std::size_t, double> links;
      for (const auto& [j, w] : g.adj[i]) links[comm[j]] += w;
      const double w_a = links.count(a) ? links[a] : 0.0;
      // A fresh singleton community is always a candidate target.
      std::size_t empty = n;
      for (std::size_t c = 0; c <= n; ++c) {
        if (tot[c] == 0.0 && c != a) {
          empty = c;
          break;
        }
      }
      links[empty] += 0.0;
      for (const auto& [c, w] : links) {
        if (c == a) continue;
        const double d = (w - w_a) / m - resolution * k * (tot[c] - tot[a] + k) / (2.0 * m * m);
        if (d > step_best + 1e-15) {
          step_best = d;
          bi = i;
          bc = c;
        }
      }
    }
    if (bi == n) break;
    moves.push_back({bi, comm[bi]});
    tot[comm[bi]] -= g.degree[bi];
    tot[bc] += g.degree[bi];
    comm[bi] = bc;
    locked[bi] = true;
    gain += step_best;
    if (gain > best_gain + 1e-12) {
      best_gain = gain;
      best_len = moves.size();
    }
  }
  while (moves.size() > best_len) {
    comm[moves.back().first] = moves.back().second;
    moves.pop_back();
  }
  return best_gain;
}

Level aggregate(const std::map<std::pair<std::size_t, std::size_t>, double>& w,
                const std::vector<std::size_t>& comm, std::size_t k) {
  std::map<std::pair<std::size_t, std::size_t>, double> agg;
  for (const auto& [key, weight] : w) {
    const auto a = comm[key.first], b = comm[key.second];
    agg[{std::min(a, b), std::max(a, b)}] += weight;
  }
  return make_level(k, agg);
}

// Bisects community `c` by the sign of the leading eigenvector of its
// generalized modularity matrix. Returns false when the community is
// indivisible.
bool spectral_split(const Level& g, double m, double resolution, std::vector<std::size_t>& comm,
                    std::size_t c, std::size_t new_id) {
  std::vector<std::size_t> members;
  for (std::size_t v = 0; v < g.n; ++v) {
    if (comm[v] == c) members.push_back(v);
  }
  const std::size_t s = members.size();
  if (s < 2) return false;
  std::vector<std::size_t> pos(g.n, s);
  for (std::size_t i = 0; i < s; ++i) pos[members[i]] = i;
  std::vector<double> b(s * s, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    const auto v = members[i];
    b[i * s + i] += 2.0 * g.self[v];
    for (const auto& [u, wt] : g.adj[v]) {
      if (pos[u] < s) b[i * s + pos[u]] += wt;
    }
    for (std::size_t j = 0; j < s; ++j) {
      b[i * s + j] -= resolution * g.degree[v] * g.degree[members[j]] / (2.0 * m);
    }
  }
  double shift = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < s; ++j) row += b[i * s + j];
    b[i * s + i] -= row;
  }
  for (std::size_t i = 0; i < s; ++i) {
    double abs_row = 0.0;
    for (std::size_t j = 0; j < s; ++j) abs_row += std::abs(b[i * s + j]);
    shift = std::max(shift, abs_row);
  }
  std::vector<double> x(s), y(s);
  for (std::size_t i = 0; i < s; ++i) x[i] = static_cast<double>(i) - 0.5 * static_cast<double>(s - 1) + 0.1;
  for (int iter = 0; iter < 2000; ++iter) {
    double norm = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      double acc = shift * x[i];
      for (std::size_t j = 0; j < s; ++j) acc += b[i * s + j] * x[j];
      y[i] = acc;
      norm += acc * acc;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) return false;
    double diff = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      y[i] /= norm;
      diff = std::max(diff, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (diff < 1e-12) break;
  }
  double lambda = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s; ++j) acc += b[i * s + j] * x[j];
    lambda += x[i] * acc;
  }
  if (lambda <= 1e-12) return false;
  std::size_t positive = 0;
  for (std::size_t i = 0; i < s; ++i) positive += x[i] > 0.0;
  if (positive == 0 || positive == s) return false;
  for (std::size_t i = 0; i < s; ++i) {
    if (x[i] > 0.0) comm[members[i]] = new_id;
  }
  return true;
}

}  // namespace

Partition louvain(const WeightedGraph& g, std::uint64_t seed, double resolution) {
  Partition p;
  p.seed = seed;
  p.resolution = resolution;
  p.community.resize(g.nodes);
  std::iota(p.community.begin(), p.community.end(), 0);

  std::map<std::pair<std::size_t, std::size_t>, double> w;
  double m = 0.0;
  for (const auto& e : g.edges) {
    if (e.weight == 0.0) continue;
    w[{std::min(e.a, e.b), std::max(e.a, e.b)}] += e.weight;
    m += e.weight;
  }
  if (m <= 0.0 || g.nodes == 0) {
    p.modularity = modularity(g, p.community, resolution);
    p.level_modularity.push_back(p.modularity);
    return p;
  }

  std::mt19937_64 rng(seed);
  const Level base = make_level(g.nodes, w);
  const std::vector<std::size_t> singletons = p.community;

  // Improves `start` until no phase helps; Q never decreases along the way.
  auto improve = [&](std::vector<std::size_t> start) {
    Partition r;
    r.community = std::move(start);
    std::vector<std::vector<std::size_t>> levels = {singletons};  // groupings moved as units
    double q = modularity(g, r.community, resolution);
    Level lv = aggregate(w, r.community, renumber(r.community));
    auto accept = [&](std::vector<std::size_t> next, double next_q) {
      const std::size_t k = renumber(next);
      r.community = std::move(next);
      q = next_q;
      r.level_modularity.push_back(q);
      levels.push_back(r.community);
      lv = aggregate(w, r.community, k);
    };
    while (true) {
      // Louvain phase: local moves on the current level, then aggregation.
      std::vector<std::size_t> comm;
      if (local_moves(lv, m, resolution, rng, comm)) {
        std::vector<std::size_t> next = r.community;
        for (auto& c : next) c = comm[c];
        const double next_q = modularity(g, next, resolution);
        if (next_q >= q) {
          accept(std::move(next), next_q);
          continue;
        }
      }

      // Multilevel refinement, coarse to fine.
      std::vector<std::size_t> refined = r.community;
      for (std::size_t l = levels.size(); l-- > 0;) {
        const auto& groups = levels[l];
        const std::size_t ng = *std::max_element(groups.begin(), groups.end()) + 1;
        const Level gl = aggregate(w, groups, ng);
        std::vector<std::size_t> gc(ng);
        for (std::size_t v = 0; v < g.nodes; ++v) gc[groups[v]] = refined[v];
        renumber(gc);
        while (refine_once(gl, m, resolution, gc) > 1e-12) renumber(gc);
        for (std::size_t v = 0; v < g.nodes; ++v) refined[v] = gc[groups[v]];
      }
      double next_q = modularity(g, refined, resolution);
      if (next_q > q + 1e-12) {
        levels = {singletons};
        accept(std::move(refined), next_q);
        continue;
      }

      // Spectral bisection of each community, fine-tuned by single-node moves.
      bool split = false;
      const std::size_t k = r.community_count();
      for (std::size_t c = 0; c < k && !split; ++c) {
        std::vector<std::size_t> trial = r.community;
        if (!spectral_split(base, m, resolution, trial, c, k)) continue;
        renumber(trial);
        while (refine_once(base, m, resolution, trial) > 1e-12) renumber(trial);
        next_q = modularity(g, trial, resolution);
        if (next_q > q + 1e-12) {
          levels = {singletons};
          accept(std::move(trial), next_q);
          split = true;
        }
      }
      if (!split) break;
    }
    renumber(r.community);
    r.modularity = q;
    return r;
  };

  Partition best = improve(singletons);
  {
    Partition divisive = improve(std::vector<std::size_t>(g.nodes, 0));
    if (divisive.modularity > best.modularity + 1e-12) best = std::move(divisive);
  }
  // Iterated local search. Even rounds restart Louvain with a fresh visit
  // order; odd rounds move a random quarter of the nodes of the best
  // partition into a neighbour's community. Only strict gains are kept.
  for (int round = 0; round < kPerturbationRounds; ++round) {
    std::vector<std::size_t> trial = round % 2 == 0 ? singletons : best.community;
    for (std::size_t t = 0; round % 2 == 1 && t < std::max<std::size_t>(1, g.nodes / 4); ++t) {
      const std::size_t v = rng() % g.nodes;
      if (base.adj[v].empty()) continue;
      trial[v] = trial[base.adj[v][rng() % base.adj[v].size()].first];
    }
    Partition r = improve(std::move(trial));
    if (r.modularity > best.modularity + 1e-12) {
      // Levels of the restart that improve on the previous best.
      std::vector<double> history = best.level_modularity;
      for (double v : r.level_modularity) {
        if (history.empty() || v > history.back()) history.push_back(v);
      }
      r.level_modularity = std::move(history);
      best = std::move(r);
    }
  }
  p.community = std::move(best.community);
  p.level_modularity = std::move(best.level_modularity);
  double q = best.modularity;
  renumber(p.community);
  p.modularity = q;
  if (p.level_modularity.empty()) p.level_modularity.push_back(q);
  return p;
}

}  // namespace spacetext
