#include "gendiv/genealogy.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "gendiv/errors.hpp"

namespace gendiv {
namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint32_t parse_u32(std::string_view field, std::size_t line_no) {
  field = trim(field);
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw InvalidParameter("genealogy log line " + std::to_string(line_no) +
                           ": not an unsigned integer: '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::genesis: return "genesis";
    case OpKind::mutation: return "mutation";
    case OpKind::recombination: return "recombination";
  }
  return "unknown";
}

OpKind parse_op_kind(std::string_view text) {
  text = trim(text);
  if (text == "genesis") return OpKind::genesis;
  if (text == "mutation") return OpKind::mutation;
  if (text == "recombination") return OpKind::recombination;
  throw InvalidParameter("unknown operator kind '" + std::string(text) + "'");
}

NodeId GenealogyGraph::record_birth(std::span<const NodeId> parents, OpKind op,
                                    std::uint32_t generation) {
  if (parents.size() != arity(op)) {
    throw InvalidParameter(std::string(to_string(op)) + " expects " + std::to_string(arity(op)) +
                           " parent(s), got " + std::to_string(parents.size()));
  }
  for (NodeId p : parents) require(p);

  const NodeId id = node_id(nodes_.size());
  nodes_.push_back(Node{op, generation, {parents.begin(), parents.end()}});
  children_.emplace_back();
  for (NodeId p : parents) children_[index(p)].push_back(id);
  return id;
}

void GenealogyGraph::require(NodeId id) const {
  if (!contains(id)) throw UnknownNode("unknown genealogy node " + std::to_string(index(id)));
}

const GenealogyGraph::Node& GenealogyGraph::node(NodeId id) const {
  require(id);
  return nodes_[index(id)];
}

std::span<const NodeId> GenealogyGraph::children(NodeId id) const {
  require(id);
  return children_[index(id)];
}

Distance GenealogyGraph::adist(NodeId ancestor, NodeId descendant) const {
  require(ancestor);
  require(descendant);
  if (ancestor == descendant) return 0U;
  const std::uint32_t lo = index(ancestor);
  const std::uint32_t hi = index(descendant);
  if (lo > hi) return std::nullopt;

  // Nodes with ids below `lo` cannot lie on a path down from `ancestor`.
  std::vector<std::uint32_t> dist(hi - lo + 1, kUnvisited);
  std::vector<std::uint32_t> frontier{hi};
  dist[hi - lo] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const std::uint32_t cur = frontier[head];
    for (NodeId p : nodes_[cur].parents) {
      const std::uint32_t pi = index(p);
      if (pi < lo || dist[pi - lo] != kUnvisited) continue;
      dist[pi - lo] = dist[cur - lo] + 1;
      if (pi == lo) return dist[0];
      frontier.push_back(pi);
    }
  }
  return std::nullopt;
}

AncestryProfile GenealogyGraph::ancestry(NodeId x) const {
  require(x);
  const std::uint32_t root = index(x);
  std::vector<std::uint32_t> dist(root + 1, kUnvisited);
  std::vector<std::uint32_t> order{root};
  dist[root] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::uint32_t cur = order[head];
    for (NodeId p : nodes_[cur].parents) {
      const std::uint32_t pi = index(p);
      if (dist[pi] != kUnvisited) continue;
      dist[pi] = dist[cur] + 1;
      order.push_back(pi);
    }
  }
  std::sort(order.begin(), order.end());

  AncestryProfile profile;
  profile.node = x;
  profile.earliest = x;
  profile.ancestors.reserve(order.size());
  for (std::uint32_t id : order) {
    profile.ancestors.emplace_back(node_id(id), dist[id]);
    // Ascending ids with strict '>' keeps the smallest id among ties.
    if (dist[id] > profile.depth) {
      profile.depth = dist[id];
      profile.earliest = node_id(id);
    }
  }
  if (profile.depth == 0) profile.earliest = x;
  return profile;
}

std::optional<NodeId> GenealogyGraph::latest_common_ancestor(NodeId a, NodeId b) const {
  return gendiv::latest_common_ancestor(ancestry(a), ancestry(b));
}

NodeId GenealogyGraph::earliest_ancestor(NodeId x) const { return ancestry(x).earliest; }

double GenealogyGraph::gdist(NodeId a, NodeId b) const {
  require(a);
  require(b);
  if (a == b) return 0.0;
  return gendiv::gdist(ancestry(a), ancestry(b));
}

Distance GenealogyGraph::edist_oracle(NodeId a, NodeId b) const {
  require(a);
  require(b);
  if (a == b) return 0U;
  std::vector<std::uint32_t> dist(nodes_.size(), kUnvisited);
  std::vector<std::uint32_t> frontier{index(a)};
  dist[index(a)] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const std::uint32_t cur = frontier[head];
    auto visit = [&](NodeId next) {
      const std::uint32_t ni = index(next);
      if (dist[ni] != kUnvisited) return false;
      dist[ni] = dist[cur] + 1;
      frontier.push_back(ni);
      return next == b;
    };
    for (NodeId p : nodes_[cur].parents) {
      if (visit(p)) return dist[index(b)];
    }
    for (NodeId c : children_[cur]) {
      if (visit(c)) return dist[index(b)];
    }
  }
  return std::nullopt;
}

void GenealogyGraph::write_log(std::ostream& out) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    out << i << ',' << n.generation << ',' << to_string(n.op);
    for (NodeId p : n.parents) out << ',' << index(p);
    out << '\n';
  }
}

GenealogyGraph GenealogyGraph::read_log(std::istream& in) {
  GenealogyGraph graph;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = trim(line);
    if (rest.empty()) continue;

    std::vector<std::string_view> fields;
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() < 3) {
      throw InvalidParameter("genealogy log line " + std::to_string(line_no) +
                             ": expected id,generation,op_kind[,parents]");
    }
    const std::uint32_t id = parse_u32(fields[0], line_no);
    if (id != graph.size()) {
      throw InvalidParameter("genealogy log line " + std::to_string(line_no) + ": id " +
                             std::to_string(id) + " out of sequence");
    }
    const std::uint32_t generation = parse_u32(fields[1], line_no);
    const OpKind op = parse_op_kind(fields[2]);
    std::vector<NodeId> parents;
    for (std::size_t f = 3; f < fields.size(); ++f) {
      parents.push_back(node_id(parse_u32(fields[f], line_no)));
    }
    graph.record_birth(parents, op, generation);
  }
  return graph;
}

std::optional<NodeId> latest_common_ancestor(const AncestryProfile& a, const AncestryProfile& b) {
  std::optional<NodeId> best;
  std::uint32_t best_key = kUnvisited;
  auto ia = a.ancestors.begin();
  auto ib = b.ancestors.begin();
  while (ia != a.ancestors.end() && ib != b.ancestors.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      const std::uint32_t key = std::min(ia->second, ib->second);
      if (key < best_key) {
        best_key = key;
        best = ia->first;
      }
      ++ia;
      ++ib;
    }
  }
  return best;
}

double gdist(const AncestryProfile& a, const AncestryProfile& b) {
  if (a.node == b.node) return 0.0;
  const auto lca = latest_common_ancestor(a, b);
  if (!lca) return 1.0;

  auto distance_from = [](const AncestryProfile& p, NodeId anc) {
    const auto it = std::lower_bound(p.ancestors.begin(), p.ancestors.end(), anc,
                                     [](const auto& entry, NodeId id) { return entry.first < id; });
    return it->second;
  };
  const std::uint32_t numerator = std::min(distance_from(a, *lca), distance_from(b, *lca));
  const std::uint32_t denominator = std::max(a.depth, b.depth);
  if (denominator == 0) return 0.0;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

const AncestryProfile& AncestryCache::profile(NodeId x) {
  auto it = profiles_.find(index(x));
  if (it == profiles_.end()) it = profiles_.emplace(index(x), graph_->ancestry(x)).first;
  return it->second;
}

double AncestryCache::gdist(NodeId a, NodeId b) {
  if (a == b) return 0.0;
  const AncestryProfile& pa = profile(a);
  const AncestryProfile& pb = profile(b);
  return gendiv::gdist(pa, pb);
}

void AncestryCache::retain(std::span<const NodeId> keep) {
  std::vector<std::uint32_t> ids;
  ids.reserve(keep.size());
  for (NodeId id : keep) ids.push_back(index(id));
  std::sort(ids.begin(), ids.end());
  std::erase_if(profiles_, [&](const auto& entry) {
    return !std::binary_search(ids.begin(), ids.end(), entry.first);
  });
}

}  // namespace gendiv
