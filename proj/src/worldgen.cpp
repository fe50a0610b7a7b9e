#include "mspec/worldgen.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mspec {

std::string to_string(Variant v) {
  return v == Variant::Adjacent ? "adjacent" : "directed";
}

std::string to_string(WrapRule w) {
  switch (w) {
    case WrapRule::Lex: return "lex";
    case WrapRule::Literal: return "literal";
    default: return "none";
  }
}

std::optional<Variant> variant_by_name(const std::string& name) {
  if (name == "adjacent") return Variant::Adjacent;
  if (name == "directed") return Variant::Directed;
  return std::nullopt;
}

std::optional<WrapRule> wrap_by_name(const std::string& name) {
  if (name == "lex") return WrapRule::Lex;
  if (name == "literal") return WrapRule::Literal;
  if (name == "none") return WrapRule::None;
  return std::nullopt;
}

bool GridScenario::is_cond(int cell) const {
  return std::binary_search(cond_cells.begin(), cond_cells.end(), cell);
}

bool GridScenario::is_act(int cell) const {
  return std::binary_search(act_cells.begin(), act_cells.end(), cell);
}

std::pair<int, int> wrap_edge_lex(const GridScenario& sc) {
  int first = -1, last = -1;
  for (int c = 0; c < sc.num_cells(); ++c) {
    if (!sc.is_traversable(c)) continue;
    if (first == -1) first = c;
    last = c;
  }
  return {last, first};
}

std::pair<int, int> wrap_edge_literal(const GridScenario& sc) {
  // Rule (ii) read literally: source row i is the maximum row index holding a
  // traversable cell and its column the maximum traversable column of row i;
  // destination row h is the minimum such row and its column the minimum
  // traversable column of row h.
  int i = -1, h = -1;
  for (int r = 0; r < sc.rows; ++r)
    for (int c = 0; c < sc.cols; ++c)
      if (sc.is_traversable(r * sc.cols + c)) {
        if (h == -1) h = r;
        i = r;
      }
  int j = -1, k = -1;
  for (int c = 0; c < sc.cols; ++c) {
    if (sc.is_traversable(i * sc.cols + c)) j = c;
    if (k == -1 && sc.is_traversable(h * sc.cols + c)) k = c;
  }
  return {i * sc.cols + j, h * sc.cols + k};
}

std::vector<std::pair<int, int>> movement_edges(const GridScenario& sc) {
  std::vector<std::pair<int, int>> edges;
  auto cell = [&](int r, int c) { return r * sc.cols + c; };
  for (int r = 0; r < sc.rows; ++r) {
    for (int c = 0; c < sc.cols; ++c) {
      const int here = cell(r, c);
      if (!sc.is_traversable(here)) continue;
      const bool right_ok = c + 1 < sc.cols && sc.is_traversable(cell(r, c + 1));
      const bool down_ok = r + 1 < sc.rows && sc.is_traversable(cell(r + 1, c));
      if (right_ok) {
        edges.emplace_back(here, cell(r, c + 1));
        if (sc.variant == Variant::Adjacent) edges.emplace_back(cell(r, c + 1), here);
      }
      if (down_ok) {
        edges.emplace_back(here, cell(r + 1, c));
        if (sc.variant == Variant::Adjacent) edges.emplace_back(cell(r + 1, c), here);
      }
    }
  }
  if (sc.variant == Variant::Directed && sc.wrap != WrapRule::None) {
    const auto e =
        sc.wrap == WrapRule::Lex ? wrap_edge_lex(sc) : wrap_edge_literal(sc);
    if (e.first != e.second) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

namespace {

// Rejection criterion.  Adjacent: the traversable region is connected in the
// undirected orthogonal-neighbor graph.  Directed with a wrap edge: strongly
// connected, so every mission location stays reachable from anywhere.
// Directed without a wrap edge can never be strongly connected (all moves go
// right/down), so plain undirected connectivity is required instead.
bool connected_enough(const GridScenario& sc) {
  const int n = sc.num_cells();
  std::vector<std::vector<int>> fwd(n), bwd(n);
  for (auto [a, b] : movement_edges(sc)) {
    fwd[a].push_back(b);
    bwd[b].push_back(a);
  }
  int start = -1, total = 0;
  for (int c = 0; c < n; ++c)
    if (sc.is_traversable(c)) {
      if (start == -1) start = c;
      ++total;
    }
  if (start == -1) return false;

  auto reach_count = [&](const std::vector<std::vector<int>>& adj, bool undirected) {
    std::vector<char> seen(n, 0);
    std::vector<int> work{start};
    seen[start] = 1;
    int count = 0;
    while (!work.empty()) {
      const int v = work.back();
      work.pop_back();
      ++count;
      auto push = [&](int w) {
        if (!seen[w]) {
          seen[w] = 1;
          work.push_back(w);
        }
      };
      for (int w : adj[v]) push(w);
      if (undirected)
        for (int w : (adj.data() == fwd.data() ? bwd : fwd)[v]) push(w);
    }
    return count;
  };

  const bool strong =
      sc.variant == Variant::Directed && sc.wrap != WrapRule::None;
  if (strong)
    return reach_count(fwd, false) == total && reach_count(bwd, false) == total;
  return reach_count(fwd, true) == total;
}

GridScenario generate(uint64_t seed, Variant variant, WrapRule wrap, int rows,
                      int cols, int blocked, int ncond, int nact) {
  SplitMix64 rng(seed);
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    GridScenario sc;
    sc.rows = rows;
    sc.cols = cols;
    sc.variant = variant;
    sc.wrap = wrap;
    sc.seed = seed;
    sc.attempts = attempt;

    std::vector<int> cells(static_cast<size_t>(rows) * cols);
    std::iota(cells.begin(), cells.end(), 0);
    rng.shuffle(cells);
    sc.traversable.assign(cells.size(), 1);
    for (int b = 0; b < blocked; ++b) sc.traversable[cells[b]] = 0;
    if (!connected_enough(sc)) continue;

    std::vector<int> trav;
    for (int c = 0; c < sc.num_cells(); ++c)
      if (sc.is_traversable(c)) trav.push_back(c);

    std::vector<int> ids = trav;
    rng.shuffle(ids);
    sc.cell_of_loc = ids;
    sc.loc_of_cell.assign(sc.num_cells(), -1);
    for (size_t k = 0; k < ids.size(); ++k) sc.loc_of_cell[ids[k]] = static_cast<int>(k);

    std::vector<int> pick = trav;
    rng.shuffle(pick);
    sc.cond_cells.assign(pick.begin(), pick.begin() + ncond);
    std::sort(sc.cond_cells.begin(), sc.cond_cells.end());

    pick = trav;
    rng.shuffle(pick);
    sc.act_cells.assign(pick.begin(), pick.begin() + nact);
    std::sort(sc.act_cells.begin(), sc.act_cells.end());

    sc.deploy_cell = trav[rng.below(trav.size())];
    return sc;
  }
  throw std::runtime_error("scenario generation did not converge for seed " +
                           std::to_string(seed));
}

}  // namespace

GridScenario generate_scenario(uint64_t seed, Variant variant, WrapRule wrap) {
  return generate(seed, variant, wrap, 4, 4, 4, 4, 4);
}

GridScenario generate_reduced_scenario(uint64_t seed, Variant variant, WrapRule wrap) {
  return generate(seed, variant, wrap, 3, 3, 4, 2, 2);
}

TransitionSystem to_transition_system(const GridScenario& sc) {
  TransitionSystem ts;
  std::vector<int> base_state(sc.num_cells(), -1);
  std::vector<int> act_state(sc.num_cells(), -1);

  for (int c = 0; c < sc.num_cells(); ++c) {
    if (!sc.is_traversable(c)) continue;
    base_state[c] = ts.num_states();
    PropSet props{make_prop(PropKind::Location, "l" + std::to_string(sc.loc_of_cell[c]))};
    if (sc.is_cond(c)) props.insert(make_prop(PropKind::Condition, "cond"));
    ts.label.push_back(props);
    ts.names.push_back("l" + std::to_string(sc.loc_of_cell[c]));
  }
  for (int c : sc.act_cells) {
    act_state[c] = ts.num_states();
    PropSet props = ts.label[base_state[c]];
    props.insert(make_prop(PropKind::Action, "act"));
    ts.label.push_back(props);
    ts.names.push_back(ts.names[base_state[c]] + "_act");
  }
  ts.succ.assign(ts.num_states(), {});

  auto connect = [&](int from_cell, int to_cell) {
    for (int s : {base_state[from_cell], act_state[from_cell]}) {
      if (s == -1) continue;
      ts.succ[s].push_back(base_state[to_cell]);
      if (act_state[to_cell] != -1) ts.succ[s].push_back(act_state[to_cell]);
    }
  };
  for (auto [a, b] : movement_edges(sc)) connect(a, b);
  for (int c : sc.act_cells) {
    ts.succ[base_state[c]].push_back(act_state[c]);
    ts.succ[act_state[c]].push_back(base_state[c]);
  }

  for (auto& row : ts.succ) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  make_total(ts);  // directed variants may leave dead ends
  ts.initial = {base_state[sc.deploy_cell]};
  validate(ts);
  return ts;
}

std::string to_text(const GridScenario& sc) {
  std::ostringstream out;
  out << "seed " << sc.seed << "\n";
  out << "variant " << to_string(sc.variant) << "\n";
  out << "wrap " << to_string(sc.wrap) << "\n";
  out << "attempts " << sc.attempts << "\n";
  out << "grid " << sc.rows << " " << sc.cols << "\n";
  for (int r = 0; r < sc.rows; ++r) {
    for (int c = 0; c < sc.cols; ++c) {
      const int cell = r * sc.cols + c;
      if (c) out << " ";
      if (sc.is_traversable(cell))
        out << "l" << sc.loc_of_cell[cell];
      else
        out << "#";
    }
    out << "\n";
  }
  auto cell_list = [&](const char* key, const std::vector<int>& cells) {
    out << key;
    for (int c : cells) out << " l" << sc.loc_of_cell[c];
    out << "\n";
  };
  cell_list("cond", sc.cond_cells);
  cell_list("act", sc.act_cells);
  out << "deploy l" << sc.loc_of_cell[sc.deploy_cell] << "\n";
  return out.str();
}

GridScenario scenario_from_text(const std::string& text) {
  std::istringstream in(text);
  GridScenario sc;
  std::string key;
  auto fail = [](const std::string& what) {
    throw std::runtime_error("scenario file: " + what);
  };
  auto read_loc = [&](const std::string& tok) {
    if (tok.size() < 2 || tok[0] != 'l') fail("expected location id, got '" + tok + "'");
    const int id = std::stoi(tok.substr(1));
    if (id < 0 || id >= sc.num_traversable()) fail("location id out of range: " + tok);
    return sc.cell_of_loc[id];
  };

  bool saw_grid = false;
  while (in >> key) {
    if (key == "seed") {
      if (!(in >> sc.seed)) fail("bad seed");
    } else if (key == "variant") {
      std::string v;
      in >> v;
      const auto parsed = variant_by_name(v);
      if (!parsed) fail("unknown variant '" + v + "'");
      sc.variant = *parsed;
    } else if (key == "wrap") {
      std::string w;
      in >> w;
      const auto parsed = wrap_by_name(w);
      if (!parsed) fail("unknown wrap rule '" + w + "'");
      sc.wrap = *parsed;
    } else if (key == "attempts") {
      if (!(in >> sc.attempts)) fail("bad attempts");
    } else if (key == "grid") {
      if (!(in >> sc.rows >> sc.cols) || sc.rows <= 0 || sc.cols <= 0)
        fail("bad grid dimensions");
      sc.traversable.assign(static_cast<size_t>(sc.rows) * sc.cols, 0);
      sc.loc_of_cell.assign(sc.num_cells(), -1);
      std::vector<std::pair<int, int>> id_cells;
      for (int cell = 0; cell < sc.num_cells(); ++cell) {
        std::string tok;
        if (!(in >> tok)) fail("grid cut short");
        if (tok == "#") continue;
        if (tok[0] != 'l') fail("expected 'l<id>' or '#', got '" + tok + "'");
        sc.traversable[cell] = 1;
        const int id = std::stoi(tok.substr(1));
        sc.loc_of_cell[cell] = id;
        id_cells.emplace_back(id, cell);
      }
      std::sort(id_cells.begin(), id_cells.end());
      sc.cell_of_loc.clear();
      for (size_t k = 0; k < id_cells.size(); ++k) {
        if (id_cells[k].first != static_cast<int>(k))
          fail("location ids are not a bijection with traversable cells");
        sc.cell_of_loc.push_back(id_cells[k].second);
      }
      saw_grid = true;
    } else if (key == "cond" || key == "act" || key == "deploy") {
      if (!saw_grid) fail("'" + key + "' must follow the grid block");
      std::string line;
      std::getline(in, line);
      std::istringstream toks(line);
      std::vector<int> cells;
      std::string tok;
      while (toks >> tok) cells.push_back(read_loc(tok));
      std::sort(cells.begin(), cells.end());
      if (key == "deploy") {
        if (cells.size() != 1) fail("deploy wants exactly one location");
        sc.deploy_cell = cells[0];
      } else if (key == "cond") {
        sc.cond_cells = cells;
      } else {
        sc.act_cells = cells;
      }
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!saw_grid) fail("missing grid block");
  return sc;
}

std::vector<GridScenario> experiment_scenarios(uint64_t base_seed) {
  std::vector<GridScenario> out;
  for (int k = 0; k < 6; ++k)
    out.push_back(generate_scenario(base_seed + k, Variant::Adjacent));
  for (int k = 6; k < 12; ++k)
    out.push_back(generate_scenario(base_seed + k, Variant::Directed));
  return out;
}

std::vector<GridScenario> reduced_scenarios(uint64_t base_seed, int per_variant) {
  std::vector<GridScenario> out;
  for (int k = 0; k < per_variant; ++k)
    out.push_back(generate_reduced_scenario(base_seed + k, Variant::Adjacent));
  for (int k = 0; k < per_variant; ++k)
    out.push_back(generate_reduced_scenario(base_seed + per_variant + k, Variant::Directed));
  return out;
}

bool MissionSpec::has_starred() const {
  return std::any_of(parts.begin(), parts.end(),
                     [](const PatternUse& p) { return p.starred; });
}

namespace {

Formula conjoin(const std::vector<PatternUse>& parts, bool ctl, bool skip_starred) {
  std::vector<Formula> kids;
  for (const auto& p : parts) {
    if (skip_starred && p.starred) continue;
    kids.push_back(ctl ? instantiate_ctl(p.id, p.params)
                       : instantiate_ltl(p.id, p.params));
  }
  return f_and(std::move(kids));
}

}  // namespace

Formula MissionSpec::ltl() const { return conjoin(parts, false, false); }
Formula MissionSpec::ctl() const { return conjoin(parts, true, false); }
Formula MissionSpec::relaxed_ltl() const { return conjoin(parts, false, true); }
Formula MissionSpec::relaxed_ctl() const { return conjoin(parts, true, true); }

std::vector<MissionSpec> mission_suite() {
  const Prop l1 = make_prop(PropKind::Location, "l1");
  const Prop l2 = make_prop(PropKind::Location, "l2");
  const Prop l3 = make_prop(PropKind::Location, "l3");
  const Prop l4 = make_prop(PropKind::Location, "l4");
  const Prop cond = make_prop(PropKind::Condition, "cond");
  const Prop act = make_prop(PropKind::Action, "act");

  const PatternParams two = params_locations({l1, l2});
  const PatternParams bound3 = params_counted(l3, 2);
  const PatternParams global3 = params_locations({l3});
  const PatternParams cond3 = params_trigger(l3, cond);
  const PatternParams wait4 = params_trigger(l4, cond);
  const PatternParams react = params_reaction(cond, act);

  auto use = [](PatternId id, PatternParams p, bool starred = false) {
    return PatternUse{id, std::move(p), starred};
  };

  std::vector<MissionSpec> suite;
  auto add = [&](std::vector<PatternUse> parts) {
    MissionSpec m;
    m.name = "M" + std::to_string(suite.size() + 1);
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) m.summary += ", ";
      m.summary += pattern_name(parts[i].id);
      if (parts[i].starred) m.summary += "*";
    }
    m.parts = std::move(parts);
    suite.push_back(std::move(m));
  };

  add({use(PatternId::OrderedPatrolling, two),
       use(PatternId::UpperRestrictedAvoidance, bound3),
       use(PatternId::Wait, wait4)});
  add({use(PatternId::FairVisit, two),
       use(PatternId::ExactRestrictedAvoidance, bound3, true),
       use(PatternId::DelayedReaction, react)});
  add({use(PatternId::StrictOrderedVisit, two),
       use(PatternId::GlobalAvoidance, global3),
       use(PatternId::InstantaneousReaction, react)});
  add({use(PatternId::SequencedVisit, two),
       use(PatternId::FutureAvoidance, cond3),
       use(PatternId::BoundDelay, react, true)});
  add({use(PatternId::OrderedVisit, two),
       use(PatternId::PastAvoidance, cond3),
       use(PatternId::InstantaneousReaction, react)});
  add({use(PatternId::Visit, two),
       use(PatternId::LowerRestrictedAvoidance, bound3),
       use(PatternId::BoundReaction, react)});
  add({use(PatternId::StrictOrderedPatrolling, two),
       use(PatternId::FutureAvoidance, cond3),
       use(PatternId::Wait, wait4)});
  add({use(PatternId::Patrolling, two),
       use(PatternId::LowerRestrictedAvoidance, bound3),
       use(PatternId::InstantaneousReaction, react)});
  add({use(PatternId::FairPatrolling, two),
       use(PatternId::ExactRestrictedAvoidance, bound3, true),
       use(PatternId::DelayedReaction, react)});
  add({use(PatternId::SequencedPatrolling, two),
       use(PatternId::UpperRestrictedAvoidance, bound3),
       use(PatternId::PromptReaction, react, true)});
  return suite;
}

}  // namespace mspec
