#include "mspec/buchi.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

namespace mspec {

bool EdgeLabel::matches(const PropSet& props) const {
  for (const auto& p : pos)
    if (!props.count(p)) return false;
  for (const auto& p : neg)
    if (props.count(p)) return false;
  return true;
}

namespace {

bool is_literal(const Formula& f) {
  return f.op == Op::True || f.op == Op::Atom ||
         (f.op == Op::Not && f.kids[0].op == Op::Atom);
}

void collect_untils(const Formula& f, std::vector<Formula>& out) {
  if (f.op == Op::Until && std::find(out.begin(), out.end(), f) == out.end())
    out.push_back(f);
  for (const auto& k : f.kids) collect_untils(k, out);
}

// Fixed-width bitset over the interned subformula universe; all sets inside
// one tableau share the same word count.
struct Bits {
  std::vector<uint64_t> w;
  Bits() = default;
  explicit Bits(size_t words) : w(words, 0) {}
  void set(int i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  int lowest() const {  // -1 when empty
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i]) return static_cast<int>(i * 64) + std::countr_zero(w[i]);
    return -1;
  }
  friend Bits operator&(const Bits& a, const Bits& b) {
    Bits r(a.w.size());
    for (size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
    return r;
  }
  auto operator<=>(const Bits&) const = default;
};

template <typename F>
void for_each_bit(const Bits& b, F fn) {
  for (size_t i = 0; i < b.w.size(); ++i)
    for (uint64_t x = b.w[i]; x; x &= x - 1)
      fn(static_cast<int>(i * 64) + std::countr_zero(x));
}

// Expands the classic tableau over interned subformula ids so that node
// clones copy a few machine words instead of formula trees.  Each distinct
// seed (set of promised formulas) is expanded exactly once: expansion reads
// nothing but the seed, so states sharing a `next` set share successors.
struct Tableau {
  std::vector<Formula> forms;      // id -> formula
  std::map<Formula, int> form_id;  // formula -> id

  struct State {
    Bits processed;  // decomposed at this position ("old")
    Bits next;       // promised for the following position
  };
  std::vector<State> states;
  std::vector<int> state_key;            // state -> seed key of its `next` set
  std::vector<std::vector<int>> leaves;  // seed key -> completed successor states
  int init_key = -1;

  void run(const Formula& nnf_formula, const std::vector<Formula>& sticky) {
    build_universe(nnf_formula, sticky);
    Bits seed(words);
    seed.set(form_id.at(nnf_formula));
    init_key = get_key(std::move(seed));

    while (!pending.empty()) {
      Node node = std::move(pending.back());
      pending.pop_back();

      const int id = node.fresh.lowest();
      if (id < 0) {
        complete(std::move(node));
        continue;
      }
      node.fresh.reset(id);

      const Op op = forms[id].op;
      if (op == Op::False) continue;  // contradiction, drop the branch
      if (lit_id[id]) {
        if (neg_id[id] >= 0 && node.processed.test(neg_id[id])) continue;
        node.processed.set(id);
        pending.push_back(std::move(node));
        continue;
      }
      const std::vector<int>& kids = kid_ids[id];
      switch (op) {
        case Op::And: {
          for (int k : kids)
            if (!node.processed.test(k)) node.fresh.set(k);
          node.processed.set(id);
          pending.push_back(std::move(node));
          break;
        }
        case Op::Or: {
          for (int k : kids) {
            Node branch = node;
            if (!branch.processed.test(k)) branch.fresh.set(k);
            branch.processed.set(id);
            pending.push_back(std::move(branch));
          }
          break;
        }
        case Op::Next: {
          node.next.set(kids[0]);
          node.processed.set(id);
          pending.push_back(std::move(node));
          break;
        }
        case Op::Until:
        case Op::WeakUntil: {
          // f = p U q splits into (p now, f next) and (q now); W splits the
          // same way but carries no acceptance obligation.
          Node defer = node;
          if (!defer.processed.test(kids[0])) defer.fresh.set(kids[0]);
          defer.next.set(id);
          defer.processed.set(id);
          Node settle = std::move(node);
          if (!settle.processed.test(kids[1])) settle.fresh.set(kids[1]);
          settle.processed.set(id);
          pending.push_back(std::move(defer));
          pending.push_back(std::move(settle));
          break;
        }
        default:
          throw formula_error("tableau expects NNF input");
      }
    }
  }

 private:
  struct Node {
    int key = -1;  // seed this expansion belongs to
    Bits fresh, processed, next;
  };
  size_t words = 0;
  std::vector<std::vector<int>> kid_ids;  // id -> kid ids
  std::vector<int> neg_id;                // literal id -> negation id, else -1
  std::vector<char> lit_id;               // id -> is a literal
  Bits keep_mask;                         // ids participating in state identity
  std::vector<Node> pending;
  std::map<Bits, int> key_of;  // seed set -> key
  std::map<std::pair<Bits, Bits>, int> index_of;

  int intern(const Formula& f) {
    auto it = form_id.find(f);
    if (it != form_id.end()) return it->second;
    for (const auto& k : f.kids) intern(k);
    auto [it2, fresh] = form_id.try_emplace(f, static_cast<int>(forms.size()));
    if (fresh) forms.push_back(f);
    return it2->second;
  }

  // Interns the whole subformula closure (plus atom negations, for the
  // contradiction check) before expansion so that ids are dense and fixed.
  void build_universe(const Formula& root, const std::vector<Formula>& sticky) {
    intern(root);
    std::vector<Formula> negs;
    for (const auto& f : forms)
      if (f.op == Op::Atom) negs.push_back(f_not(f));
    for (const auto& nf : negs) intern(nf);

    const size_t n = forms.size();
    kid_ids.resize(n);
    neg_id.assign(n, -1);
    lit_id.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
      for (const auto& k : forms[i].kids) kid_ids[i].push_back(form_id.at(k));
      lit_id[i] = is_literal(forms[i]);
      if (forms[i].op == Op::Atom) neg_id[i] = form_id.at(f_not(forms[i]));
      if (forms[i].op == Op::Not) neg_id[i] = kid_ids[i][0];
    }
    words = (n + 63) / 64;

    // State identity keeps only what later stages read from `processed`:
    // literals (edge labels), temporal formulas (acceptance obligations), and
    // the until right-hand sides (acceptance discharge witnesses).  Transient
    // and/or decomposition markers are dropped; nodes differing only in those
    // have identical labels, acceptance bits, and successors, so keeping them
    // apart only multiplies states the bisimulation quotient would re-merge.
    keep_mask = Bits(words);
    for (size_t i = 0; i < n; ++i) {
      const Op op = forms[i].op;
      if (lit_id[i] || op == Op::Next || op == Op::Until || op == Op::WeakUntil)
        keep_mask.set(static_cast<int>(i));
    }
    for (const auto& f : sticky) keep_mask.set(form_id.at(f));
  }

  int get_key(Bits seed) {
    auto [it, fresh] = key_of.try_emplace(seed, static_cast<int>(leaves.size()));
    if (fresh) {
      leaves.emplace_back();
      Node n;
      n.key = it->second;
      n.fresh = std::move(seed);
      n.processed = Bits(words);
      n.next = Bits(words);
      pending.push_back(std::move(n));
    }
    return it->second;
  }

  void complete(Node node) {
    auto [it, fresh_state] = index_of.try_emplace(
        std::pair{node.processed & keep_mask, node.next}, static_cast<int>(states.size()));
    const int sid = it->second;
    if (fresh_state) {
      states.push_back({std::move(node.processed), node.next});
      state_key.push_back(get_key(std::move(node.next)));
    }
    leaves[node.key].push_back(sid);
  }
};

EdgeLabel label_of(const Tableau& tab, int state) {
  EdgeLabel lbl;
  for_each_bit(tab.states[state].processed, [&](int id) {
    const Formula& f = tab.forms[id];
    if (f.op == Op::Atom) lbl.pos.insert(f.prop);
    if (f.op == Op::Not && f.kids[0].op == Op::Atom) lbl.neg.insert(f.kids[0].prop);
  });
  return lbl;
}

std::vector<BuchiEdge> sorted_unique(std::vector<BuchiEdge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// Merges bisimulation-equivalent states: partition refinement starting from
// the acceptance-membership classes.  Edges carry interned label ids; label
// equality coincides with id equality.
struct Quotient {
  std::vector<int> block;  // state -> block id
  int block_count = 0;
};

Quotient refine(int n, const std::vector<std::vector<std::pair<int, int>>>& edges,
                const std::vector<std::vector<char>>& acc_bits) {
  Quotient q;
  q.block.resize(n);
  {
    std::map<std::vector<char>, int> ids;
    for (int s = 0; s < n; ++s) {
      auto [it, fresh] = ids.try_emplace(acc_bits[s], static_cast<int>(ids.size()));
      q.block[s] = it->second;
    }
    q.block_count = static_cast<int>(ids.size());
  }
  for (;;) {
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> ids;
    std::vector<int> next_block(n);
    for (int s = 0; s < n; ++s) {
      std::vector<std::pair<int, int>> sig;
      for (const auto& [lbl, dst] : edges[s]) sig.emplace_back(lbl, q.block[dst]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      auto [it, fresh] =
          ids.try_emplace({q.block[s], std::move(sig)}, static_cast<int>(ids.size()));
      next_block[s] = it->second;
    }
    if (static_cast<int>(ids.size()) == q.block_count) return q;
    q.block = std::move(next_block);
    q.block_count = static_cast<int>(ids.size());
  }
}

}  // namespace

GeneralizedBuchi ltl_to_gba(const Formula& f) {
  if (!is_ltl(f)) throw formula_error("ltl_to_gba expects an LTL formula");
  const Formula g = nnf(f);

  std::vector<Formula> untils;
  collect_untils(g, untils);
  const int k = static_cast<int>(untils.size());

  std::vector<Formula> sticky;
  for (const auto& u : untils) sticky.push_back(u.kids[1]);

  Tableau tab;
  tab.run(g, sticky);
  const int n = static_cast<int>(tab.states.size());

  if (n == 0) {
    GeneralizedBuchi empty;
    empty.accept.assign(k, {});
    return empty;
  }

  // Push each state's literal constraints onto its incoming edges; a pseudo
  // initial state consumes the first position.  Labels are interned so the
  // partition refinement compares ids, not prop sets.
  std::vector<EdgeLabel> labels(n);
  std::vector<int> lid(n);
  std::map<EdgeLabel, int> lbl_ids;
  for (int s = 0; s < n; ++s) {
    labels[s] = label_of(tab, s);
    lid[s] = lbl_ids.try_emplace(labels[s], static_cast<int>(lbl_ids.size())).first->second;
  }

  std::vector<std::vector<std::pair<int, int>>> edges(n);  // (label id, dst)
  auto dedup = [](std::vector<std::pair<int, int>> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  for (int s = 0; s < n; ++s) {
    for (int dst : tab.leaves[tab.state_key[s]]) edges[s].emplace_back(lid[dst], dst);
    edges[s] = dedup(std::move(edges[s]));
  }
  std::vector<std::pair<int, int>> init_edges;
  for (int dst : tab.leaves[tab.init_key]) init_edges.emplace_back(lid[dst], dst);
  init_edges = dedup(std::move(init_edges));

  // Acceptance per until-subformula u = p U q: states that either carry no
  // u-obligation or discharged it by processing q at this position.
  std::vector<std::vector<char>> acc_bits(n, std::vector<char>(k, 0));
  for (int j = 0; j < k; ++j) {
    const int u_id = tab.form_id.at(untils[j]);
    const int q_id = tab.form_id.at(untils[j].kids[1]);
    for (int s = 0; s < n; ++s)
      acc_bits[s][j] = !tab.states[s].processed.test(u_id) ||
                       tab.states[s].processed.test(q_id);
  }

  const Quotient quot = refine(n, edges, acc_bits);

  // Renumber blocks by smallest member for deterministic output.
  std::vector<int> order(quot.block_count, -1);
  {
    int next_id = 0;
    for (int s = 0; s < n; ++s)
      if (order[quot.block[s]] == -1) order[quot.block[s]] = next_id++;
  }
  auto block_of = [&](int s) { return order[quot.block[s]]; };

  GeneralizedBuchi out;
  out.edges.resize(quot.block_count);
  std::vector<char> built(quot.block_count, 0);
  for (int s = 0; s < n; ++s) {
    const int b = block_of(s);
    if (built[b]) continue;
    built[b] = 1;
    std::vector<BuchiEdge> es;
    for (const auto& [lbl, dst] : edges[s]) es.push_back({labels[dst], block_of(dst)});
    out.edges[b] = sorted_unique(std::move(es));
  }
  out.accept.assign(k, {});
  for (int s = 0; s < n; ++s)
    for (int j = 0; j < k; ++j)
      if (acc_bits[s][j]) out.accept[j].push_back(block_of(s));
  for (auto& a : out.accept) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  std::vector<BuchiEdge> start_edges;
  for (const auto& [lbl, dst] : init_edges) start_edges.push_back({labels[dst], block_of(dst)});
  start_edges = sorted_unique(std::move(start_edges));

  // If an existing state already behaves like the pseudo initial, start there;
  // otherwise materialize the initial state (it is on no cycle, so its
  // acceptance membership is irrelevant).
  int start = -1;
  for (int b = 0; b < quot.block_count; ++b)
    if (out.edges[b] == start_edges) {
      start = b;
      break;
    }
  if (start == -1) {
    start = static_cast<int>(out.edges.size());
    out.edges.push_back(std::move(start_edges));
  }
  out.initial = {start};
  return out;
}

BuchiAutomaton degeneralize(const GeneralizedBuchi& g) {
  const int k = static_cast<int>(g.accept.size());
  const int n = g.num_states();
  if (k == 1) return g;
  if (k == 0) {
    BuchiAutomaton out = g;
    out.accept.assign(1, {});
    for (int s = 0; s < n; ++s) out.accept[0].push_back(s);
    return out;
  }

  std::vector<std::vector<char>> in_set(k, std::vector<char>(n, 0));
  for (int j = 0; j < k; ++j)
    for (int s : g.accept[j]) in_set[j][s] = 1;

  // Counter construction: track which acceptance set is currently owed; leave
  // a copy once its set is visited, wrapping from the last copy to the first.
  std::map<std::pair<int, int>, int> id_of;
  std::vector<std::pair<int, int>> nodes;
  auto intern = [&](int s, int c) {
    auto [it, fresh] = id_of.try_emplace({s, c}, static_cast<int>(nodes.size()));
    if (fresh) nodes.emplace_back(s, c);
    return it->second;
  };

  BuchiAutomaton out;
  for (int s : g.initial) out.initial.push_back(intern(s, 0));
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto [s, c] = nodes[i];
    const int c2 = in_set[c][s] ? (c + 1) % k : c;
    out.edges.resize(nodes.size());
    for (const auto& e : g.edges[s]) out.edges[i].push_back({e.label, intern(e.dst, c2)});
  }
  out.edges.resize(nodes.size());
  out.accept.assign(1, {});
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].second == 0 && in_set[0][nodes[i].first])
      out.accept[0].push_back(static_cast<int>(i));
  return out;
}

BuchiAutomaton ltl_to_buchi(const Formula& f) { return degeneralize(ltl_to_gba(f)); }

namespace {

// Iterative Tarjan over the lazily built product of the lasso graph and the
// automaton.  Product node = position * |Q| + state.
struct ProductScc {
  const GeneralizedBuchi& b;
  const LassoTrace& t;
  const int nq;
  std::unordered_map<int, int> index, lowlink;
  std::unordered_map<int, char> on_stack;
  std::vector<int> stack;
  int counter = 0;
  bool found = false;

  ProductScc(const GeneralizedBuchi& b_, const LassoTrace& t_)
      : b(b_), t(t_), nq(b_.num_states()) {}

  std::vector<int> successors(int node) const {
    const int pos = node / nq, q = node % nq;
    std::vector<int> out;
    const int next_pos = static_cast<int>(t.succ(pos));
    for (const auto& e : b.edges[q])
      if (e.label.matches(t.at(pos))) out.push_back(next_pos * nq + e.dst);
    return out;
  }

  void run(int root) {
    struct Frame {
      int v;
      std::vector<int> succs;
      size_t next = 0;
    };
    std::vector<Frame> frames;
    frames.push_back({root, successors(root), 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < f.succs.size()) {
        const int w = f.succs[f.next++];
        if (!index.count(w)) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, successors(w), 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
        continue;
      }
      const int v = f.v;
      frames.pop_back();
      if (!frames.empty())
        lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
      if (lowlink[v] != index[v]) continue;

      std::vector<int> scc;
      for (;;) {
        const int w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        scc.push_back(w);
        if (w == v) break;
      }
      if (accepting(scc)) found = true;
    }
  }

  bool accepting(const std::vector<int>& scc) const {
    bool nontrivial = scc.size() > 1;
    if (!nontrivial) {
      for (int w : successors(scc[0]))
        if (w == scc[0]) nontrivial = true;
    }
    if (!nontrivial) return false;
    for (const auto& acc : b.accept) {
      bool hit = false;
      for (int node : scc) {
        const int q = node % nq;
        if (std::binary_search(acc.begin(), acc.end(), q)) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    return true;
  }
};

}  // namespace

bool accepts_lasso(const GeneralizedBuchi& b, const LassoTrace& t) {
  if (t.loop.empty()) throw std::invalid_argument("lasso trace needs a non-empty loop");
  if (b.num_states() == 0 || b.initial.empty()) return false;
  ProductScc scc(b, t);
  for (int q0 : b.initial) {
    const int root = 0 * scc.nq + q0;
    if (!scc.index.count(root)) scc.run(root);
    if (scc.found) return true;
  }
  return scc.found;
}

std::string to_hoa(const GeneralizedBuchi& b) {
  std::vector<Prop> aps;
  {
    PropSet all;
    for (const auto& es : b.edges)
      for (const auto& e : es) {
        all.insert(e.label.pos.begin(), e.label.pos.end());
        all.insert(e.label.neg.begin(), e.label.neg.end());
      }
    aps.assign(all.begin(), all.end());
  }
  auto ap_index = [&](const Prop& p) {
    return std::find(aps.begin(), aps.end(), p) - aps.begin();
  };

  const int k = static_cast<int>(b.accept.size());
  std::string out = "HOA: v1\n";
  out += "States: " + std::to_string(b.num_states()) + "\n";
  for (int s : b.initial) out += "Start: " + std::to_string(s) + "\n";
  out += "AP: " + std::to_string(aps.size());
  for (const auto& p : aps) out += " \"" + p.str() + "\"";
  out += "\n";
  if (k == 0) {
    out += "Acceptance: 0 t\n";
    out += "acc-name: all\n";
  } else {
    out += "Acceptance: " + std::to_string(k) + " ";
    for (int j = 0; j < k; ++j) {
      if (j) out += "&";
      out += "Inf(" + std::to_string(j) + ")";
    }
    out += "\n";
    out += k == 1 ? "acc-name: Buchi\n"
                  : "acc-name: generalized-Buchi " + std::to_string(k) + "\n";
  }
  out += "properties: trans-labels explicit-labels state-acc\n";
  out += "--BODY--\n";
  for (int s = 0; s < b.num_states(); ++s) {
    out += "State: " + std::to_string(s);
    std::string marks;
    for (int j = 0; j < k; ++j)
      if (std::binary_search(b.accept[j].begin(), b.accept[j].end(), s))
        marks += (marks.empty() ? "" : " ") + std::to_string(j);
    if (!marks.empty()) out += " {" + marks + "}";
    out += "\n";
    for (const auto& e : b.edges[s]) {
      std::string lbl;
      for (const auto& p : e.label.pos)
        lbl += (lbl.empty() ? "" : " & ") + std::to_string(ap_index(p));
      for (const auto& p : e.label.neg)
        lbl += (lbl.empty() ? "" : " & ") + std::string("!") + std::to_string(ap_index(p));
      if (lbl.empty()) lbl = "t";
      out += "[" + lbl + "] " + std::to_string(e.dst) + "\n";
    }
  }
  out += "--END--\n";
  return out;
}

}  // namespace mspec
