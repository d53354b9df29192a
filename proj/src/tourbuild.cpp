#include "tsp12/tourbuild.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace tsp12 {

// ---------------------------------------------------------------------------
// PartialTour

PartialTour::PartialTour(int n) : n_(n), deg_(n, 0), adj_(n) {
  if (n < 1) throw precondition_error("partial tour needs n >= 1");
}

bool PartialTour::can_add(const Edge& e) const {
  if (e.u < 0 || e.v >= n_) throw precondition_error("edge endpoint out of range");
  if (deg_[e.u] >= 2 || deg_[e.v] >= 2) return false;
  return !same_component(e.u, e.v);
}

void PartialTour::add(const Edge& e) {
  if (!can_add(e))
    throw precondition_error("adding edge would break the partial tour");
  edges_.push_back(e);
  ++deg_[e.u];
  ++deg_[e.v];
  adj_[e.u].push_back(e.v);
  adj_[e.v].push_back(e.u);
}

void PartialTour::remove(const Edge& e) {
  auto it = std::find(edges_.begin(), edges_.end(), e);
  if (it == edges_.end()) throw precondition_error("removing absent edge");
  edges_.erase(it);
  --deg_[e.u];
  --deg_[e.v];
  std::erase(adj_[e.u], e.v);
  std::erase(adj_[e.v], e.u);
}

NodeId PartialTour::path_other_end(NodeId v) const {
  if (deg_[v] > 1) throw precondition_error("path_other_end on interior node");
  NodeId prev = -1, cur = v;
  for (;;) {
    NodeId next = -1;
    for (NodeId w : adj_[cur])
      if (w != prev) { next = w; break; }
    if (next < 0) return cur;
    prev = cur;
    cur = next;
  }
}

bool PartialTour::same_component(NodeId a, NodeId b) const {
  if (a == b) return true;
  std::vector<NodeId> stack{a};
  std::vector<bool> seen(n_, false);
  seen[a] = true;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId w : adj_[u]) {
      if (w == b) return true;
      if (!seen[w]) { seen[w] = true; stack.push_back(w); }
    }
  }
  return false;
}

int PartialTour::degree_one_count() const {
  int c = 0;
  for (int v = 0; v < n_; ++v)
    if (deg_[v] == 1) ++c;
  return c;
}

int PartialTour::cost(const Instance& inst) const {
  int c = 0;
  for (const Edge& e : edges_) c += inst.cost(e);
  return c;
}

// ---------------------------------------------------------------------------
// Lemma-1 style augmentation

namespace {

void check_augment_pre(const PartialTour& T, const AugmentSet& A) {
  const int L = A.edge_count();
  if (A.is_cycle) {
    if (static_cast<int>(A.nodes.size()) < 3 || L % 2 == 0)
      throw precondition_error("augment: cycle must be odd with >= 3 nodes");
  } else {
    if (A.nodes.size() < 2) throw precondition_error("augment: path needs an edge");
  }
  std::set<NodeId> distinct(A.nodes.begin(), A.nodes.end());
  if (distinct.size() != A.nodes.size())
    throw precondition_error("augment: repeated node in A");
  for (NodeId v : A.nodes)
    if (T.degree(v) != 1)
      throw precondition_error("augment: node " + std::to_string(v) +
                               " does not have degree 1 in T");
}

// Greedy pass over `seq` of edges; returns the added subset.
std::vector<Edge> greedy_add(PartialTour work, const std::vector<Edge>& seq,
                             bool* first_and_third = nullptr) {
  std::vector<Edge> added;
  std::vector<bool> took(seq.size(), false);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (work.can_add(seq[i])) {
      work.add(seq[i]);
      took[i] = true;
      added.push_back(seq[i]);
    }
  }
  if (first_and_third)
    *first_and_third = seq.size() >= 3 && took[0] && took[2];
  return added;
}

}  // namespace

std::vector<Edge> augment(const PartialTour& T, const AugmentSet& A) {
  check_augment_pre(T, A);
  const int L = A.edge_count();
  const auto& nd = A.nodes;

  if (!A.is_cycle) {
    std::vector<Edge> seq;
    for (int i = 0; i + 1 < static_cast<int>(nd.size()); ++i)
      seq.emplace_back(nd[i], nd[i + 1]);
    auto added = greedy_add(T, seq);
    if (3 * static_cast<int>(added.size()) < L - 1)
      throw structural_error("augment: path bound (|A|-1)/3 violated");
    return added;
  }

  // Odd cycle: start next to a node whose T-path leaves A.
  const int nn = static_cast<int>(nd.size());
  std::set<NodeId> in_a(nd.begin(), nd.end());
  int j = -1;
  NodeId best_node = -1;
  for (int i = 0; i < nn; ++i) {
    if (in_a.count(T.path_other_end(nd[i]))) continue;
    if (j < 0 || nd[i] < best_node) { j = i; best_node = nd[i]; }
  }
  if (j < 0)
    throw structural_error("augment: no cycle node exits A through T");

  auto edge_seq_from = [&](int start_edge) {
    std::vector<Edge> seq;
    for (int i = 0; i < nn; ++i) {
      const int k = (start_edge + i) % nn;
      seq.emplace_back(nd[k], nd[(k + 1) % nn]);
    }
    return seq;
  };
  // Candidate starts: the edge into u_j and the edge out of u_j.
  const auto seq_a = edge_seq_from((j + nn - 1) % nn);
  const auto seq_b = edge_seq_from(j);
  bool ft_a = false, ft_b = false;
  auto add_a = greedy_add(T, seq_a, &ft_a);
  auto add_b = greedy_add(T, seq_b, &ft_b);

  std::vector<Edge> added;
  if (ft_a == ft_b) added = add_a.size() >= add_b.size() ? add_a : add_b;
  else added = ft_a ? add_a : add_b;
  if (3 * static_cast<int>(added.size()) < L)
    throw structural_error("augment: cycle bound |A|/3 violated");
  return added;
}

// ---------------------------------------------------------------------------
// Completion

namespace {

// Chains the maximal paths of T covering `nodes` into one cycle. Every node
// must have degree 1 or 2 in T, and T restricted to them must be acyclic.
std::vector<NodeId> chain_paths(const PartialTour& T, const std::vector<NodeId>& nodes) {
  std::set<NodeId> todo(nodes.begin(), nodes.end());
  for (NodeId v : nodes)
    if (T.degree(v) < 1 || T.degree(v) > 2)
      throw precondition_error("completion: node " + std::to_string(v) +
                               " has degree " + std::to_string(T.degree(v)));
  std::vector<std::vector<NodeId>> paths;
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : T.edges()) {
    if (!todo.count(e.u)) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::set<NodeId> used;
  for (NodeId v : nodes) {
    if (used.count(v) || T.degree(v) != 1) continue;
    std::vector<NodeId> path{v};
    used.insert(v);
    NodeId prev = -1, cur = v;
    for (;;) {
      NodeId next = -1;
      for (NodeId w : adj[cur])
        if (w != prev) { next = w; break; }
      if (next < 0) break;
      used.insert(next);
      path.push_back(next);
      prev = cur;
      cur = next;
    }
    if (path.front() > path.back()) std::reverse(path.begin(), path.end());
    paths.push_back(std::move(path));
  }
  std::size_t covered = 0;
  for (const auto& p : paths) covered += p.size();
  if (covered != nodes.size())
    throw precondition_error("completion: a full cycle is already present");
  std::sort(paths.begin(), paths.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  std::vector<NodeId> cycle;
  for (const auto& p : paths) cycle.insert(cycle.end(), p.begin(), p.end());
  return cycle;
}

int cycle_cost(const Instance& inst, const std::vector<NodeId>& cyc) {
  int c = 0;
  for (std::size_t i = 0; i < cyc.size(); ++i)
    c += inst.cost(Edge(cyc[i], cyc[(i + 1) % cyc.size()]));
  return c;
}

}  // namespace

Tour complete_partial_tour(const Instance& inst, const PartialTour& T) {
  if (T.n() != inst.n())
    throw precondition_error("completion: size mismatch");
  std::vector<NodeId> all(inst.n());
  for (int v = 0; v < inst.n(); ++v) all[v] = v;
  const int d = T.degree_one_count();
  Tour t;
  t.order = chain_paths(T, all);
  t.cost = tour_cost(inst, t.order);
  validate_tour(inst, t);
  if (t.cost > T.cost(inst) + d)
    throw structural_error("completion exceeded the c(T) + d budget");
  return t;
}

// ---------------------------------------------------------------------------
// Cycle covers

CycleCover make_cycle_cover(const Instance& inst,
                            const std::vector<std::vector<NodeId>>& cycles) {
  CycleCover out;
  std::vector<bool> seen(inst.n(), false);
  for (const auto& cyc : cycles) {
    if (cyc.size() < 3)
      throw structural_error("cycle cover: cycle shorter than 3");
    bool is_pure = true;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      NodeId v = cyc[i];
      if (v < 0 || v >= inst.n() || seen[v])
        throw structural_error("cycle cover: not node-disjoint");
      seen[v] = true;
      if (inst.cost(Edge(cyc[i], cyc[(i + 1) % cyc.size()])) == 2) is_pure = false;
    }
    out.cost += cycle_cost(inst, cyc);
    out.pure.push_back(is_pure);
    out.cycles.push_back(cyc);
  }
  for (int v = 0; v < inst.n(); ++v)
    if (!seen[v]) throw structural_error("cycle cover: node " + std::to_string(v) +
                                         " uncovered");
  return out;
}

// ---------------------------------------------------------------------------
// The 7/6 construction on one fractional component

namespace {

struct RPath {
  std::vector<NodeId> nodes;  // >= 1 node; edge count = size-1
  bool in_p1 = false;
  bool eared = false;
  enum class State { Untried, Success, Lost, Plain } state = State::Plain;
  bool success_at_front = false;
  Edge added{0, 1};
};

void trace_line(BuildReport* rep, const std::string& s) {
  if (rep) rep->trace.push_back(s);
}

std::string edge_str(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

// Splits one half-cycle into R-segments (cost-1 arcs between cost-2 edges),
// or reports the whole cycle when every edge costs 1.
void split_cycle_into_r(const Instance& inst, const std::vector<NodeId>& cyc,
                        std::vector<std::vector<NodeId>>& r_cycles,
                        std::vector<RPath>& r_paths) {
  const int len = static_cast<int>(cyc.size());
  std::vector<int> cost2_at;  // i such that edge (cyc[i], cyc[i+1]) costs 2
  for (int i = 0; i < len; ++i)
    if (inst.cost(Edge(cyc[i], cyc[(i + 1) % len])) == 2) cost2_at.push_back(i);
  if (cost2_at.empty()) {
    r_cycles.push_back(cyc);
    return;
  }
  for (std::size_t a = 0; a < cost2_at.size(); ++a) {
    // Arc from the far endpoint of this cost-2 edge to the near endpoint of
    // the next one.
    const int from = (cost2_at[a] + 1) % len;
    const int to = cost2_at[(a + 1) % cost2_at.size()];
    std::vector<NodeId> arc;
    for (int i = from; ; i = (i + 1) % len) {
      arc.push_back(cyc[i]);
      if (i == to) break;
    }
    if (arc.size() >= 2) {
      RPath rp;
      rp.nodes = std::move(arc);
      r_paths.push_back(std::move(rp));
    }
    // Single-node arcs carry no R edges.
  }
}

std::vector<NodeId> component_nodes(const FracComponent& fc) {
  std::set<NodeId> s;
  for (const auto& c : fc.half_cycles) s.insert(c.begin(), c.end());
  for (const auto& p : fc.one_paths) s.insert(p.begin(), p.end());
  return {s.begin(), s.end()};
}

// Finds a preprocessing edge on the unique T-path between a and b.
std::optional<Edge> blocking_preproc_edge(const PartialTour& T, NodeId a, NodeId b,
                                          const std::map<Edge, int>& owner_of) {
  std::map<NodeId, NodeId> parent;
  std::vector<NodeId> stack{a};
  parent[a] = a;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (u == b) break;
    for (const Edge& e : T.edges()) {
      for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        if (x != u || parent.count(y)) continue;
        parent[y] = u;
        stack.push_back(y);
      }
    }
  }
  if (!parent.count(b)) return std::nullopt;
  for (NodeId cur = b; cur != a; cur = parent[cur]) {
    Edge e(cur, parent[cur]);
    if (owner_of.count(e)) return e;
  }
  return std::nullopt;
}

std::vector<NodeId> build_cycle_76(const Instance& inst, const FracComponent& fc,
                                   BuildReport* rep) {
  // T starts as the 1-paths; R is the cost-1 cycle edges.
  PartialTour T(inst.n());
  for (const auto& path : fc.one_paths)
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      T.add(Edge(path[i], path[i + 1]));

  std::map<NodeId, NodeId> one_path_other_end;
  for (const auto& path : fc.one_paths) {
    one_path_other_end[path.front()] = path.back();
    one_path_other_end[path.back()] = path.front();
  }

  std::vector<std::vector<NodeId>> r_cycles;
  std::vector<RPath> r_paths;
  for (const auto& cyc : fc.half_cycles)
    split_cycle_into_r(inst, cyc, r_cycles, r_paths);

  int r_initial = 0;
  for (const auto& c : r_cycles) r_initial += static_cast<int>(c.size());
  for (const auto& p : r_paths) r_initial += static_cast<int>(p.nodes.size()) - 1;

  // Classify the P1 paths and detect ears.
  int z = 0;
  for (RPath& rp : r_paths) {
    const int L = static_cast<int>(rp.nodes.size()) - 1;
    if (L % 3 != 1) continue;
    rp.in_p1 = true;
    rp.state = RPath::State::Untried;
    const NodeId first = rp.nodes.front(), last = rp.nodes.back();
    const bool front_ear = one_path_other_end.count(first) &&
                           one_path_other_end.at(first) == rp.nodes[1];
    const bool back_ear = one_path_other_end.count(last) &&
                          one_path_other_end.at(last) == rp.nodes[rp.nodes.size() - 2];
    rp.eared = (L == 1) ? front_ear : (front_ear && back_ear);
    if (rp.eared) ++z;
  }

  // Preprocessing of the non-eared P1 paths, smallest-node order.
  std::vector<int> order;
  for (std::size_t i = 0; i < r_paths.size(); ++i)
    if (r_paths[i].in_p1 && !r_paths[i].eared) order.push_back(static_cast<int>(i));
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return *std::min_element(r_paths[a].nodes.begin(), r_paths[a].nodes.end()) <
           *std::min_element(r_paths[b].nodes.begin(), r_paths[b].nodes.end());
  });

  std::map<Edge, int> owner_of;  // preprocessing edge -> r_paths index
  int preproc_success = 0;
  auto try_ends = [&](int idx) -> bool {
    RPath& rp = r_paths[idx];
    const Edge first(rp.nodes[0], rp.nodes[1]);
    const Edge last(rp.nodes[rp.nodes.size() - 2], rp.nodes.back());
    for (auto [e, at_front] : {std::pair{first, true}, std::pair{last, false}}) {
      if (!T.can_add(e)) continue;
      T.add(e);
      rp.state = RPath::State::Success;
      rp.success_at_front = at_front;
      rp.added = e;
      owner_of[e] = idx;
      trace_line(rep, "preprocess: added " + edge_str(e));
      return true;
    }
    return false;
  };

  for (int idx : order) {
    if (try_ends(idx)) continue;
    RPath& rp = r_paths[idx];
    // Both ends blocked; the cause must include an edge added for another
    // P1 path. Roll that one back and take this path's edge instead.
    const Edge first(rp.nodes[0], rp.nodes[1]);
    const Edge last(rp.nodes[rp.nodes.size() - 2], rp.nodes.back());
    auto blocker = blocking_preproc_edge(T, first.u, first.v, owner_of);
    if (!blocker) blocker = blocking_preproc_edge(T, last.u, last.v, owner_of);
    if (!blocker)
      throw structural_error(
          "preprocessing claim violated: non-eared path blocked without a "
          "preprocessing edge");
    const int victim = owner_of.at(*blocker);
    T.remove(*blocker);
    owner_of.erase(*blocker);
    r_paths[victim].state = RPath::State::Lost;
    trace_line(rep, "preprocess: rolled back " + edge_str(*blocker));
    if (!try_ends(idx))
      throw structural_error("preprocessing retry failed after rollback");
  }
  for (const RPath& rp : r_paths)
    if (rp.state == RPath::State::Success) ++preproc_success;
  const int candidates = static_cast<int>(order.size());
  if (2 * preproc_success < candidates)
    throw structural_error("preprocessing added edges on fewer than half the paths");

  // Remaining R components through the Lemma-1 augmentation.
  int r_added = preproc_success;
  std::vector<AugmentSet> sets;
  for (const auto& cyc : r_cycles) sets.push_back({cyc, true});
  for (const RPath& rp : r_paths) {
    std::vector<NodeId> nodes = rp.nodes;
    if (rp.state == RPath::State::Success) {
      if (rp.success_at_front)
        nodes = std::vector<NodeId>(rp.nodes.begin() + 2, rp.nodes.end());
      else
        nodes = std::vector<NodeId>(rp.nodes.begin(), rp.nodes.end() - 2);
    }
    if (nodes.size() >= 2) sets.push_back({std::move(nodes), false});
  }
  std::sort(sets.begin(), sets.end(), [](const AugmentSet& a, const AugmentSet& b) {
    return *std::min_element(a.nodes.begin(), a.nodes.end()) <
           *std::min_element(b.nodes.begin(), b.nodes.end());
  });
  for (const AugmentSet& A : sets) {
    auto added = augment(T, A);
    for (const Edge& e : added) {
      T.add(e);
      trace_line(rep, std::string("augment(") + (A.is_cycle ? "cycle" : "path") +
                          "): added " + edge_str(e));
    }
    r_added += static_cast<int>(added.size());
  }

  // Exact counting checks behind the bound.
  F2MStats st;
  {
    F2MDecomposition d;
    d.fractional_components.push_back(fc);
    st = f2m_stats(inst, d);
  }
  st.z_eared = z;
  const int deg1 = [&] {
    int c = 0;
    for (NodeId v : component_nodes(fc))
      if (T.degree(v) == 1) ++c;
    return c;
  }();
  if (r_initial != st.k - st.p)
    throw structural_error("R edge count disagrees with k - p");
  if (3 * r_added < r_initial - z)
    throw structural_error("fewer than (|R| - z)/3 edges added from R");
  if (3 * deg1 > st.k + 2 * st.p + 2 * z)
    throw structural_error("degree-one count exceeds k/3 + 2p/3 + 2z/3");
  if (rep) {
    rep->stats = st;
    rep->r_edges_initial = r_initial;
    rep->r_edges_added = r_added;
    rep->deg1_at_completion = deg1;
    rep->preproc_success = preproc_success;
    rep->preproc_candidates = candidates;
  }
  return chain_paths(T, component_nodes(fc));
}

Rational component_cost(const Instance& inst, const FracComponent& fc) {
  F2MDecomposition d;
  d.fractional_components.push_back(fc);
  return reassemble(d, inst.n()).cost_against(inst);
}

}  // namespace

Tour build_tour_76(const Instance& inst, const FracSolution& x, BuildReport* rep) {
  if (x.n != inst.n()) throw precondition_error("build_tour_76: size mismatch");
  F2MDecomposition d = decompose(x);
  if (!d.integer_cycles.empty() && d.fractional_components.empty())
    throw precondition_error("build_tour_76: integral input; use stitch_cycles");
  if (d.integer_cycles.size() + d.fractional_components.size() != 1)
    throw precondition_error("build_tour_76: F2M solution is not connected");

  Tour t;
  t.order = build_cycle_76(inst, d.fractional_components.front(), rep);
  t.cost = tour_cost(inst, t.order);
  validate_tour(inst, t);
  const Rational cx = x.cost_against(inst);
  if (Rational(6 * t.cost) > Rational(7) * cx)
    throw structural_error("7/6 bound violated: tour " + std::to_string(t.cost) +
                           " vs F2M cost " + to_string(cx));
  return t;
}

Tour build_tour_109_check(const Instance& inst, const FracSolution& x,
                          BuildReport* rep) {
  if (x.n != inst.n()) throw precondition_error("build_tour_109: size mismatch");
  F2MDecomposition d = decompose(x);
  if (d.integer_cycles.size() + d.fractional_components.size() != 1 ||
      d.fractional_components.empty())
    throw precondition_error("build_tour_109: solution must be one fractional component");
  if (!is_canonical(inst, x))
    throw precondition_error("build_tour_109: solution is not canonical");
  if (!is_two_connected(x))
    throw precondition_error("build_tour_109: solution is not 2-connected");

  BuildReport local;
  BuildReport* r = rep ? rep : &local;
  Tour t;
  t.order = build_cycle_76(inst, d.fractional_components.front(), r);
  t.cost = tour_cost(inst, t.order);
  validate_tour(inst, t);
  if (r->stats.z_eared != 0)
    throw structural_error("2-connected solution produced an eared path");
  if (r->stats.c_paths < r->stats.k - 2 * r->stats.p)
    throw structural_error("canonical solution violates c(P) >= k - 2p");
  const Rational cx = x.cost_against(inst);
  if (Rational(9 * t.cost) > Rational(10) * cx)
    throw structural_error("10/9 bound violated: tour " + std::to_string(t.cost) +
                           " vs F2M cost " + to_string(cx));
  return t;
}

Tour build_tour_from_f2m(const Instance& inst, const FracSolution& x) {
  F2MDecomposition d = decompose(x);
  if (d.integer_cycles.size() == 1 && d.fractional_components.empty() &&
      static_cast<int>(d.integer_cycles.front().size()) == inst.n()) {
    Tour t;
    t.order = d.integer_cycles.front();
    t.cost = tour_cost(inst, t.order);
    validate_tour(inst, t);
    return t;
  }
  if (d.integer_cycles.empty() && d.fractional_components.size() == 1)
    return build_tour_76(inst, x);

  std::vector<std::vector<NodeId>> cycles = d.integer_cycles;
  for (const auto& fc : d.fractional_components) {
    auto cyc = build_cycle_76(inst, fc, nullptr);
    const Rational cc = component_cost(inst, fc);
    if (Rational(6 * cycle_cost(inst, cyc)) > Rational(7) * cc)
      throw structural_error("7/6 bound violated on a component");
    cycles.push_back(std::move(cyc));
  }
  return stitch_cycles(inst, make_cycle_cover(inst, cycles));
}

// ---------------------------------------------------------------------------
// Stitching and normalization

Tour stitch_cycles(const Instance& inst, const CycleCover& cover) {
  CycleCover checked = make_cycle_cover(inst, cover.cycles);  // revalidate
  Tour t;
  if (checked.cycles.size() == 1) {
    t.order = checked.cycles.front();
    t.cost = tour_cost(inst, t.order);
    validate_tour(inst, t);
    return t;
  }
  int max_sum = 0;
  std::vector<std::vector<NodeId>> paths;
  for (const auto& cyc : checked.cycles) {
    const int len = static_cast<int>(cyc.size());
    int best = 0;
    for (int i = 1; i < len; ++i) {
      if (inst.cost(Edge(cyc[i], cyc[(i + 1) % len])) >
          inst.cost(Edge(cyc[best], cyc[(best + 1) % len])))
        best = i;
    }
    max_sum += inst.cost(Edge(cyc[best], cyc[(best + 1) % len]));
    std::vector<NodeId> path;
    for (int i = 0; i < len; ++i) path.push_back(cyc[(best + 1 + i) % len]);
    paths.push_back(std::move(path));
  }
  for (const auto& p : paths) t.order.insert(t.order.end(), p.begin(), p.end());
  t.cost = tour_cost(inst, t.order);
  validate_tour(inst, t);
  const int m = static_cast<int>(checked.cycles.size());
  if (t.cost > checked.cost - max_sum + 2 * m)
    throw structural_error("stitching exceeded the removal/rejoin budget");
  if (3 * t.cost > 4 * checked.cost)
    throw structural_error("stitching exceeded 4/3 of the cover cost");
  return t;
}

namespace {

// Cycle as a path after removing the directed edge (cyc[i], cyc[i+1]).
std::vector<NodeId> open_at(const std::vector<NodeId>& cyc, int i) {
  const int len = static_cast<int>(cyc.size());
  std::vector<NodeId> path;
  for (int k = 0; k < len; ++k) path.push_back(cyc[(i + 1 + k) % len]);
  return path;
}

int first_cost2_edge(const Instance& inst, const std::vector<NodeId>& cyc) {
  const int len = static_cast<int>(cyc.size());
  for (int i = 0; i < len; ++i)
    if (inst.cost(Edge(cyc[i], cyc[(i + 1) % len])) == 2) return i;
  return -1;
}

}  // namespace

CycleCover normalize_2m(const Instance& inst, const CycleCover& cover) {
  CycleCover cur = make_cycle_cover(inst, cover.cycles);
  for (;;) {
    std::vector<int> nonpure;
    for (std::size_t i = 0; i < cur.cycles.size(); ++i)
      if (!cur.pure[i]) nonpure.push_back(static_cast<int>(i));

    if (nonpure.size() >= 2) {
      // Splice the first two non-pure cycles at cost-2 edges.
      const int a = nonpure[0], b = nonpure[1];
      const int ia = first_cost2_edge(inst, cur.cycles[a]);
      const int ib = first_cost2_edge(inst, cur.cycles[b]);
      auto pa = open_at(cur.cycles[a], ia);  // runs tail..head of cycle a
      auto pb = open_at(cur.cycles[b], ib);
      // Two ways to reconnect; keep the cheaper one.
      const int fwd = inst.cost(Edge(pa.back(), pb.front())) +
                      inst.cost(Edge(pb.back(), pa.front()));
      std::vector<NodeId> rb(pb.rbegin(), pb.rend());
      const int rev = inst.cost(Edge(pa.back(), rb.front())) +
                      inst.cost(Edge(rb.back(), pa.front()));
      std::vector<NodeId> merged = pa;
      const auto& tail = (rev < fwd) ? rb : pb;
      merged.insert(merged.end(), tail.begin(), tail.end());

      std::vector<std::vector<NodeId>> next;
      for (std::size_t i = 0; i < cur.cycles.size(); ++i)
        if (static_cast<int>(i) != a && static_cast<int>(i) != b)
          next.push_back(cur.cycles[i]);
      next.push_back(std::move(merged));
      CycleCover after = make_cycle_cover(inst, next);
      if (after.cost > cur.cost)
        throw structural_error("normalization merge increased the cost");
      cur = std::move(after);
      continue;
    }

    if (nonpure.size() == 1) {
      const int a = nonpure[0];
      const auto& cyc = cur.cycles[a];
      const int len = static_cast<int>(cyc.size());
      // A node incident to a cost-2 cycle edge with a cost-1 edge into a
      // pure cycle forces a merge.
      int pick_i = -1, pick_j = -1, pick_cycle = -1;
      for (int pos = 0; pos < len && pick_i < 0; ++pos) {
        const NodeId i = cyc[pos];
        const bool touches2 =
            inst.cost(Edge(i, cyc[(pos + 1) % len])) == 2 ||
            inst.cost(Edge(i, cyc[(pos + len - 1) % len])) == 2;
        if (!touches2) continue;
        for (std::size_t c = 0; c < cur.cycles.size() && pick_i < 0; ++c) {
          if (static_cast<int>(c) == a || !cur.pure[c]) continue;
          for (NodeId j : cur.cycles[c]) {
            if (inst.has_one(i, j)) {
              pick_i = pos;
              pick_j = j;
              pick_cycle = static_cast<int>(c);
              break;
            }
          }
        }
      }
      if (pick_i < 0) break;  // normalized

      const NodeId i = cyc[pick_i];
      // Remove a cost-2 edge at i; prefer the forward one.
      int open_pos;
      if (inst.cost(Edge(i, cyc[(pick_i + 1) % len])) == 2) open_pos = pick_i;
      else open_pos = (pick_i + len - 1) % len;
      auto pa = open_at(cyc, open_pos);
      if (pa.front() != i) std::reverse(pa.begin(), pa.end());
      if (pa.front() != i) throw structural_error("normalization: bad opening");
      // pa now runs i .. w where (i, w) was the removed cost-2 edge.

      const auto& pure_cyc = cur.cycles[pick_cycle];
      const int plen = static_cast<int>(pure_cyc.size());
      int jpos = -1;
      for (int k = 0; k < plen; ++k)
        if (pure_cyc[k] == pick_j) jpos = k;
      // Open the pure cycle at an edge incident to j; both neighbors work,
      // pick the one whose far end is cheaper to reach from w.
      // Open the pure cycle next to j, dropping one of its cost-1 edges;
      // choose the neighbor u that makes the closing edge (u, w) cheaper.
      const NodeId w = pa.back();
      const NodeId nxt = pure_cyc[(jpos + 1) % plen];
      const NodeId prv = pure_cyc[(jpos + plen - 1) % plen];
      std::vector<NodeId> pj;  // runs j .. u
      if (inst.cost(Edge(w, nxt)) <= inst.cost(Edge(w, prv))) {
        pj = open_at(pure_cyc, jpos);
        std::reverse(pj.begin(), pj.end());
      } else {
        pj = open_at(pure_cyc, (jpos + plen - 1) % plen);
      }
      if (pj.front() != pick_j) throw structural_error("normalization: bad pure opening");
      // Merged cycle [w .. i] + [j .. u]: uses the cost-1 edge (i, j) and
      // closes with (u, w); the removed edges cost 2 + 1.
      std::vector<NodeId> merged(pa.rbegin(), pa.rend());
      merged.insert(merged.end(), pj.begin(), pj.end());

      std::vector<std::vector<NodeId>> next;
      for (std::size_t c = 0; c < cur.cycles.size(); ++c)
        if (static_cast<int>(c) != a && static_cast<int>(c) != pick_cycle)
          next.push_back(cur.cycles[c]);
      next.push_back(std::move(merged));
      CycleCover after = make_cycle_cover(inst, next);
      if (after.cost > cur.cost)
        throw structural_error("normalization merge increased the cost");
      cur = std::move(after);
      continue;
    }
    break;  // no non-pure cycle at all
  }
  return cur;
}

bool cover_is_normalized(const Instance& inst, const CycleCover& cover) {
  int nonpure = 0;
  for (bool p : cover.pure)
    if (!p) ++nonpure;
  if (nonpure > 1) return false;
  if (nonpure == 0) return true;
  int a = -1;
  for (std::size_t i = 0; i < cover.cycles.size(); ++i)
    if (!cover.pure[i]) a = static_cast<int>(i);
  const auto& cyc = cover.cycles[a];
  const int len = static_cast<int>(cyc.size());
  for (int pos = 0; pos < len; ++pos) {
    const NodeId i = cyc[pos];
    const bool touches2 = inst.cost(Edge(i, cyc[(pos + 1) % len])) == 2 ||
                          inst.cost(Edge(i, cyc[(pos + len - 1) % len])) == 2;
    if (!touches2) continue;
    for (std::size_t c = 0; c < cover.cycles.size(); ++c) {
      if (static_cast<int>(c) == a || !cover.pure[c]) continue;
      for (NodeId j : cover.cycles[c])
        if (inst.has_one(i, j)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pure-cycle bipartite matching with Koenig cover

namespace {

bool kuhn_augment(int left, const std::vector<std::vector<int>>& adj,
                  std::vector<int>& match_right, std::vector<bool>& visited) {
  for (int r : adj[left]) {
    if (visited[r]) continue;
    visited[r] = true;
    if (match_right[r] < 0 || kuhn_augment(match_right[r], adj, match_right, visited)) {
      match_right[r] = left;
      return true;
    }
  }
  return false;
}

}  // namespace

MatchResult pure_cycle_matching(const Instance& inst, const CycleCover& cover) {
  if (!cover_is_normalized(inst, cover))
    throw precondition_error("pure_cycle_matching requires a normalized cover");
  const int n = inst.n();
  MatchResult out;
  for (std::size_t i = 0; i < cover.cycles.size(); ++i) {
    if (!cover.pure[i]) continue;
    if (static_cast<int>(cover.cycles[i].size()) == n) continue;  // spanning: exempt
    out.left_cycles.push_back(static_cast<int>(i));
  }
  const int L = static_cast<int>(out.left_cycles.size());
  std::vector<std::vector<int>> adj(L);
  for (int li = 0; li < L; ++li) {
    const auto& cyc = cover.cycles[out.left_cycles[li]];
    std::set<NodeId> in_c(cyc.begin(), cyc.end());
    for (int i = 0; i < n; ++i) {
      if (in_c.count(i)) continue;
      for (NodeId c : cyc)
        if (inst.has_one(i, c)) { adj[li].push_back(i); break; }
    }
  }
  std::vector<int> match_right(n, -1);
  for (int li = 0; li < L; ++li) {
    std::vector<bool> visited(n, false);
    kuhn_augment(li, adj, match_right, visited);
  }
  std::vector<int> match_left(L, -1);
  for (int r = 0; r < n; ++r)
    if (match_right[r] >= 0) match_left[match_right[r]] = r;

  out.matched_node.assign(L, -1);
  int matched = 0;
  for (int li = 0; li < L; ++li) {
    out.matched_node[li] = match_left[li];
    if (match_left[li] >= 0) ++matched;
  }
  out.r = L - matched;

  // Koenig: alternating reachability from unmatched left vertices.
  std::vector<bool> zl(L, false), zr(n, false);
  std::vector<int> stack;
  for (int li = 0; li < L; ++li)
    if (match_left[li] < 0) { zl[li] = true; stack.push_back(li); }
  while (!stack.empty()) {
    int li = stack.back();
    stack.pop_back();
    for (int r : adj[li]) {
      if (zr[r] || match_left[li] == r) continue;
      zr[r] = true;
      int nl = match_right[r];
      if (nl >= 0 && !zl[nl]) { zl[nl] = true; stack.push_back(nl); }
    }
  }
  for (int li = 0; li < L; ++li)
    if (!zl[li]) out.cover_cycles.push_back(out.left_cycles[li]);
  for (int r = 0; r < n; ++r)
    if (zr[r]) out.cover_nodes.push_back(r);

  if (static_cast<int>(out.cover_cycles.size() + out.cover_nodes.size()) != matched)
    throw structural_error("Koenig cover size differs from the matching size");
  // The cover must hit every bipartite edge.
  std::set<int> cc(out.cover_cycles.begin(), out.cover_cycles.end());
  std::set<int> cn(out.cover_nodes.begin(), out.cover_nodes.end());
  for (int li = 0; li < L; ++li)
    for (int r : adj[li])
      if (!cc.count(out.left_cycles[li]) && !cn.count(r))
        throw structural_error("Koenig cover misses a bipartite edge");
  return out;
}

}  // namespace tsp12
