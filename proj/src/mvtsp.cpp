#include "mvapx/mvtsp.hpp"

#include <algorithm>
#include <numeric>

#include "mvapx/errors.hpp"

namespace mvapx::mvtsp {

std::int64_t Instance::total_requests() const {
  std::int64_t total = 0;
  for (std::int64_t r : requests) {
    if (__builtin_add_overflow(total, r, &total)) {
      throw Error(ErrorKind::kInvalidInput, "total request overflows 64 bits");
    }
  }
  return total;
}

void validate_shape(const Instance& inst) {
  if (inst.n == 0) throw Error(ErrorKind::kInvalidInput, "instance needs at least one vertex");
  if (inst.costs.size() != inst.n * inst.n) {
    throw Error(ErrorKind::kInvalidInput, "cost matrix must be n x n");
  }
  if (inst.requests.size() != inst.n) {
    throw Error(ErrorKind::kInvalidInput, "one request per vertex expected");
  }
  for (std::size_t v = 0; v < inst.n; ++v) {
    if (inst.requests[v] < 1) {
      throw Error(ErrorKind::kInvalidInput, "request of vertex " + std::to_string(v) + " must be positive");
    }
  }
  for (const Rational& c : inst.costs) {
    if (c < 0) throw Error(ErrorKind::kInvalidInput, "costs must be nonnegative");
  }
  inst.total_requests();
}

// ---------------------------------------------------------------- EdgeMultiplicity

std::int64_t EdgeMultiplicity::get(const Edge& e) const {
  const auto it = counts_.find(Edge::make(e.u, e.v));
  return it == counts_.end() ? 0 : it->second;
}

void EdgeMultiplicity::set(const Edge& e, std::int64_t value) {
  if (value < 0) throw Error(ErrorKind::kInvalidInput, "negative edge multiplicity");
  const Edge key = Edge::make(e.u, e.v);
  if (value == 0) {
    counts_.erase(key);
  } else {
    counts_[key] = value;
  }
}

void EdgeMultiplicity::add(const Edge& e, std::int64_t delta) {
  std::int64_t value = 0;
  if (__builtin_add_overflow(get(e), delta, &value)) {
    throw Error(ErrorKind::kInternal, "edge multiplicity overflows 64 bits");
  }
  set(e, value);
}

std::int64_t EdgeMultiplicity::total() const {
  std::int64_t total = 0;
  for (const auto& [e, m] : counts_) total += m;
  return total;
}

std::vector<std::int64_t> EdgeMultiplicity::degrees(std::size_t n) const {
  std::vector<std::int64_t> d(n, 0);
  for (const auto& [e, m] : counts_) {
    if (e.v >= n) throw Error(ErrorKind::kInvalidInput, "edge " + edge_name(e) + " out of range");
    d[e.u] += m;
    d[e.v] += m;
  }
  return d;
}

IntVector EdgeMultiplicity::dense(std::size_t n) const {
  IntVector z(n * (n + 1) / 2, 0);
  for (const auto& [e, m] : counts_) {
    if (e.v >= n) throw Error(ErrorKind::kInvalidInput, "edge " + edge_name(e) + " out of range");
    z[edge_index(n, e.u, e.v)] = m;
  }
  return z;
}

EdgeMultiplicity EdgeMultiplicity::from_dense(std::size_t n, const IntVector& z) {
  const auto edges = complete_edges_with_loops(n);
  if (z.size() != edges.size()) {
    throw Error(ErrorKind::kInvalidInput, "dense vector has wrong length");
  }
  EdgeMultiplicity out;
  for (std::size_t i = 0; i < edges.size(); ++i) out.set(edges[i], z[i]);
  return out;
}

// ---------------------------------------------------------------- feasibility

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

bool support_connected(std::size_t n, const EdgeMultiplicity& z) {
  UnionFind uf(n);
  std::vector<bool> covered(n, false);
  for (const auto& [e, m] : z.entries()) {
    covered[e.u] = covered[e.v] = true;
    uf.unite(e.u, e.v);
  }
  std::optional<std::size_t> root;
  for (std::size_t v = 0; v < n; ++v) {
    if (!covered[v]) continue;
    if (!root) root = uf.find(v);
    if (uf.find(v) != *root) return false;
  }
  return true;
}

std::string FeasibilityReport::message() const {
  if (!degrees_ok) {
    return "vertex " + std::to_string(*vertex) + " has degree " + std::to_string(degree) +
           ", expected " + std::to_string(expected);
  }
  if (!connected) {
    return vertex ? "vertex " + std::to_string(*vertex) + " is not reached by the tour"
                  : "tour support is disconnected";
  }
  return "feasible";
}

FeasibilityReport check_feasibility(const Instance& inst, const EdgeMultiplicity& z) {
  FeasibilityReport report;
  const auto d = z.degrees(inst.n);
  for (std::size_t v = 0; v < inst.n; ++v) {
    if (d[v] != 2 * inst.requests[v]) {
      report.degrees_ok = false;
      report.vertex = v;
      report.degree = d[v];
      report.expected = 2 * inst.requests[v];
      return report;
    }
  }
  for (std::size_t v = 0; v < inst.n; ++v) {
    if (d[v] == 0) {
      report.connected = false;
      report.vertex = v;
      return report;
    }
  }
  report.connected = support_connected(inst.n, z);
  return report;
}

bool check_feasible(const Instance& inst, const EdgeMultiplicity& z) {
  return check_feasibility(inst, z).ok();
}

Rational tour_cost(const Instance& inst, const EdgeMultiplicity& z) {
  Rational total = 0;
  for (const auto& [e, m] : z.entries()) total += inst.cost(e.u, e.v) * m;
  return total;
}

// ---------------------------------------------------------------- cycles

std::vector<Edge> cycle_edges(const Cycle& c) {
  std::vector<Edge> out;
  const auto& v = c.vertices;
  if (v.size() == 1) {
    out.push_back({v[0], v[0]});
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(Edge::make(v[i], v[(i + 1) % v.size()]));
  return out;
}

EdgeMultiplicity recompose(const CycleCover& cover) {
  EdgeMultiplicity z;
  for (const Cycle& c : cover) {
    for (const Edge& e : cycle_edges(c)) z.add(e, c.mu);
  }
  return z;
}

CycleCover cycle_decompose(std::size_t n, const EdgeMultiplicity& z) {
  const auto d = z.degrees(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (d[v] % 2 != 0) {
      throw Error(ErrorKind::kOddDegree, "vertex " + std::to_string(v) + " has odd degree " +
                  std::to_string(d[v]));
    }
  }
  if (!support_connected(n, z)) throw Error(ErrorKind::kDisconnected, "support is not connected");

  CycleCover cover;
  // Remaining non-loop multiplicities as a dense symmetric matrix.
  std::vector<std::int64_t> rest(n * n, 0);
  for (const auto& [e, m] : z.entries()) {
    if (e.is_loop()) {
      cover.push_back({{e.u}, m});
    } else {
      rest[e.u * n + e.v] = rest[e.v * n + e.u] = m;
    }
  }
  std::vector<std::int64_t> remaining_degree(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) remaining_degree[u] += rest[u * n + v];
  }
  for (;;) {
    std::size_t start = 0;
    while (start < n && remaining_degree[start] == 0) ++start;
    if (start == n) break;
    std::vector<std::int64_t> avail = rest;
    std::vector<std::size_t> path{start};
    std::vector<std::size_t> pos(n, n);
    pos[start] = 0;
    std::size_t cur = start;
    for (;;) {
      // Lowest available neighbour, stepping straight back only when
      // nothing else is available.
      const std::size_t prev = path.size() > 1 ? path[path.size() - 2] : n;
      std::size_t next = n;
      for (std::size_t u = 0; u < n; ++u) {
        if (avail[cur * n + u] == 0) continue;
        if (u != prev) {
          next = u;
          break;
        }
        if (next == n) next = u;
      }
      if (next == n) throw Error(ErrorKind::kInternal, "cycle walk got stuck");
      --avail[cur * n + next];
      --avail[next * n + cur];
      if (pos[next] != n) {
        path.erase(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(pos[next]));
        break;
      }
      pos[next] = path.size();
      path.push_back(next);
      cur = next;
    }
    Cycle c{path, 0};
    std::map<Edge, std::int64_t> uses;
    for (const Edge& e : cycle_edges(c)) ++uses[e];
    std::int64_t mu = INT64_MAX;
    for (const auto& [e, k] : uses) mu = std::min(mu, rest[e.u * n + e.v] / k);
    c.mu = mu;
    for (const auto& [e, k] : uses) {
      rest[e.u * n + e.v] -= mu * k;
      rest[e.v * n + e.u] -= mu * k;
      remaining_degree[e.u] -= mu * k;
      remaining_degree[e.v] -= mu * k;
    }
    cover.push_back(std::move(c));
  }
  return cover;
}

std::vector<std::size_t> eulerian_circuit(std::size_t n, const std::vector<Edge>& edges) {
  if (edges.empty()) return {};
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (edge id, other)
  std::vector<std::int64_t> degree(n, 0);
  for (std::size_t id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    if (e.u >= n || e.v >= n) throw Error(ErrorKind::kInvalidInput, "edge out of range");
    adj[e.u].push_back({id, e.v});
    if (!e.is_loop()) adj[e.v].push_back({id, e.u});
    degree[e.u] += 1;
    degree[e.v] += 1;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] % 2 != 0) {
      throw Error(ErrorKind::kNotEulerian, "vertex " + std::to_string(v) + " has odd degree");
    }
  }
  std::size_t start = 0;
  while (degree[start] == 0) ++start;
  std::vector<bool> used(edges.size(), false);
  std::vector<std::size_t> next_slot(n, 0);
  std::vector<std::size_t> stack{start}, circuit;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    auto& slot = next_slot[v];
    while (slot < adj[v].size() && used[adj[v][slot].first]) ++slot;
    if (slot == adj[v].size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      used[adj[v][slot].first] = true;
      stack.push_back(adj[v][slot].second);
    }
  }
  if (circuit.size() != edges.size() + 1) {
    throw Error(ErrorKind::kNotEulerian, "edges are not connected");
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

// ---------------------------------------------------------------- implicit tours

std::vector<std::int64_t> ImplicitTour::visits(std::size_t n) const {
  std::vector<std::int64_t> out(n, 0);
  for (const Segment& s : segments) {
    for (std::size_t v : s.pattern) out[v] += s.repeat;
  }
  return out;
}

std::int64_t ImplicitTour::length() const {
  std::int64_t total = 0;
  for (const Segment& s : segments) total += static_cast<std::int64_t>(s.pattern.size()) * s.repeat;
  return total;
}

EdgeMultiplicity ImplicitTour::edges() const {
  EdgeMultiplicity z;
  std::vector<const Segment*> live;
  for (const Segment& s : segments) {
    if (!s.pattern.empty() && s.repeat > 0) live.push_back(&s);
  }
  if (live.empty()) return z;
  for (std::size_t j = 0; j < live.size(); ++j) {
    const auto& p = live[j]->pattern;
    const std::int64_t k = live[j]->repeat;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) z.add(Edge::make(p[i], p[i + 1]), k);
    if (k > 1) z.add(Edge::make(p.back(), p.front()), k - 1);
    const auto& next = live[(j + 1) % live.size()]->pattern;
    z.add(Edge::make(p.back(), next.front()), 1);
  }
  return z;
}

std::vector<std::size_t> ImplicitTour::expand(std::size_t max_length) const {
  if (length() > static_cast<std::int64_t>(max_length)) {
    throw Error(ErrorKind::kBudgetExceeded, "tour has more than " + std::to_string(max_length) + " visits");
  }
  std::vector<std::size_t> out;
  for (const Segment& s : segments) {
    for (std::int64_t k = 0; k < s.repeat; ++k) out.insert(out.end(), s.pattern.begin(), s.pattern.end());
  }
  return out;
}

ImplicitTour implicit_order(std::size_t n, const CycleCover& cover) {
  ImplicitTour tour;
  std::vector<Edge> aux;
  for (const Cycle& c : cover) {
    if (c.vertices.empty() || c.mu < 1) throw Error(ErrorKind::kInvalidInput, "empty cycle in cover");
    const auto e = cycle_edges(c);
    aux.insert(aux.end(), e.begin(), e.end());
  }
  tour.base_circuit = eulerian_circuit(n, aux);
  std::vector<bool> seen(n, false), expanded(cover.size(), false);
  for (std::size_t i = 0; i + 1 < tour.base_circuit.size(); ++i) {
    const std::size_t u = tour.base_circuit[i];
    tour.segments.push_back({{u}, 1});
    if (seen[u]) continue;
    seen[u] = true;
    for (std::size_t ci = 0; ci < cover.size(); ++ci) {
      const Cycle& c = cover[ci];
      const auto at = std::find(c.vertices.begin(), c.vertices.end(), u);
      if (expanded[ci] || at == c.vertices.end()) continue;
      expanded[ci] = true;
      if (c.mu == 1) continue;
      // One traversal starting after u and ending back at u.
      Segment s;
      s.pattern.insert(s.pattern.end(), at + 1, c.vertices.end());
      s.pattern.insert(s.pattern.end(), c.vertices.begin(), at + 1);
      s.repeat = c.mu - 1;
      tour.segments.push_back(std::move(s));
    }
  }
  return tour;
}

namespace {

// Removes the last `count` occurrences of w, splitting segments as needed.
void remove_last_occurrences(std::vector<Segment>& segs, std::size_t w, std::int64_t count) {
  for (std::size_t j = segs.size(); j-- > 0 && count > 0;) {
    const Segment seg = segs[j];
    const std::int64_t per = std::count(seg.pattern.begin(), seg.pattern.end(), w);
    if (per == 0 || seg.repeat == 0) continue;
    std::vector<std::size_t> without;
    for (std::size_t v : seg.pattern) {
      if (v != w) without.push_back(v);
    }
    if (count >= per * seg.repeat) {
      count -= per * seg.repeat;
      segs[j].pattern = std::move(without);
      continue;
    }
    const std::int64_t full = count / per;    // trailing copies losing every w
    const std::int64_t partial = count % per; // one copy losing its last w's
    std::vector<Segment> pieces;
    const std::int64_t intact = seg.repeat - full - (partial > 0 ? 1 : 0);
    if (intact > 0) pieces.push_back({seg.pattern, intact});
    if (partial > 0) {
      std::vector<std::size_t> p = seg.pattern;
      std::int64_t left = partial;
      for (std::size_t i = p.size(); i-- > 0 && left > 0;) {
        if (p[i] == w) {
          p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
          --left;
        }
      }
      pieces.push_back({std::move(p), 1});
    }
    if (full > 0) pieces.push_back({without, full});
    segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(j));
    segs.insert(segs.begin() + static_cast<std::ptrdiff_t>(j), pieces.begin(), pieces.end());
    count = 0;
  }
  std::erase_if(segs, [](const Segment& s) { return s.pattern.empty() || s.repeat == 0; });
}

}  // namespace

ImplicitTour shortcut_walk(std::size_t n, const ImplicitTour& tour, const IntVector& r) {
  if (r.size() != n) throw Error(ErrorKind::kInvalidInput, "request vector has wrong length");
  const auto visits = tour.visits(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (visits[v] < r[v]) {
      throw Error(ErrorKind::kDeficitVisit, "vertex " + std::to_string(v) + " is visited " +
                  std::to_string(visits[v]) + " times, fewer than its request " +
                  std::to_string(r[v]));
    }
  }
  ImplicitTour out = tour;
  for (std::size_t w = 0; w < n; ++w) {
    if (visits[w] > r[w]) remove_last_occurrences(out.segments, w, visits[w] - r[w]);
  }
  return out;
}

EdgeMultiplicity shortcut(const Instance& inst, const ImplicitTour& tour) {
  return shortcut_walk(inst.n, tour, inst.requests).edges();
}

}  // namespace mvapx::mvtsp
