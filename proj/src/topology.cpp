#include "qkdplan/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qkdplan {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

// Length field: positive, finite, at most one decimal digit. Returns tenths
// of a km.
std::int64_t parse_length(const std::string& txt, const std::string& origin, int line) {
  Rational r;
  try {
    r = Rational::from_decimal_string(txt);
  } catch (const std::exception&) {
    fail(origin, line, "bad length '" + txt + "'");
  }
  Rational tenths = r * Rational(10);
  if (!tenths.is_integer())
    fail(origin, line, "length '" + txt + "' has more than one decimal digit");
  if (tenths.num() <= 0) fail(origin, line, "length must be positive");
  return tenths.num();
}

int parse_capacity(const std::string& txt, const std::string& origin, int line,
                   const char* what) {
  try {
    std::size_t pos = 0;
    long v = std::stol(txt, &pos);
    if (pos != txt.size() || v < 0) throw std::invalid_argument(txt);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    fail(origin, line, std::string("bad ") + what + " '" + txt + "'");
  }
}

}  // namespace

Topology::Topology(int node_count, std::vector<Link> links)
    : node_count_(node_count), links_(std::move(links)) {
  if (node_count_ < 0) throw std::invalid_argument("negative node count");
  std::sort(links_.begin(), links_.end(), [](const Link& a, const Link& b) {
    return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
  });
  out_.assign(node_count_ + 1, {});
  in_.assign(node_count_ + 1, {});
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    if (!has_node(l.tail) || !has_node(l.head))
      throw std::runtime_error("link " + std::to_string(l.tail) + "->" +
                               std::to_string(l.head) +
                               " references an undeclared node");
    if (l.tail == l.head)
      throw std::runtime_error("self-loop at node " + std::to_string(l.tail));
    if (l.length_tenth_km <= 0)
      throw std::runtime_error("nonpositive length on link " +
                               std::to_string(l.tail) + "->" +
                               std::to_string(l.head));
    if (l.qkd_capacity < 0 || l.km_capacity < 0)
      throw std::runtime_error("negative capacity on link " +
                               std::to_string(l.tail) + "->" +
                               std::to_string(l.head));
    if (i > 0 && links_[i - 1].tail == l.tail && links_[i - 1].head == l.head)
      throw std::runtime_error("duplicate link " + std::to_string(l.tail) +
                               "->" + std::to_string(l.head));
    out_[l.tail].push_back(static_cast<int>(i));
    in_[l.head].push_back(static_cast<int>(i));
  }
  // out_ is head-sorted by construction (links_ sorted by (tail, head));
  // in_ needs an explicit tail sort.
  for (auto& v : in_)
    std::sort(v.begin(), v.end(),
              [this](int a, int b) { return links_[a].tail < links_[b].tail; });
}

void Topology::check_node(NodeId n) const {
  if (!has_node(n))
    throw std::out_of_range("unknown node " + std::to_string(n));
}

const std::vector<int>& Topology::out_links(NodeId n) const {
  check_node(n);
  return out_[n];
}

const std::vector<int>& Topology::in_links(NodeId n) const {
  check_node(n);
  return in_[n];
}

int Topology::find_link(NodeId tail, NodeId head) const {
  if (!has_node(tail)) return -1;
  for (int idx : out_[tail])
    if (links_[idx].head == head) return idx;
  return -1;
}

Topology parse_topology(std::istream& in, const std::string& origin) {
  int node_count = -1;
  std::vector<Link> links;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv{line};
    auto hash = sv.find('#');
    if (hash != std::string_view::npos) sv = sv.substr(0, hash);
    std::string trimmed{sv};
    std::istringstream ls{trimmed};
    std::string first;
    if (!(ls >> first)) continue;  // blank or comment line
    if (first == "nodes:") {
      if (node_count >= 0) fail(origin, lineno, "duplicate nodes: header");
      if (!(ls >> node_count) || node_count < 0)
        fail(origin, lineno, "bad node count");
      continue;
    }
    if (node_count < 0) fail(origin, lineno, "record before nodes: header");
    Link l;
    std::string tail = first, head, len, qkd, km;
    if (!(ls >> head >> len >> qkd >> km))
      fail(origin, lineno, "expected: tail head length qkd_capacity km_capacity");
    std::string extra;
    if (ls >> extra) fail(origin, lineno, "trailing field '" + extra + "'");
    try {
      l.tail = std::stoi(tail);
      l.head = std::stoi(head);
    } catch (const std::exception&) {
      fail(origin, lineno, "bad node id");
    }
    l.length_tenth_km = parse_length(len, origin, lineno);
    l.qkd_capacity = parse_capacity(qkd, origin, lineno, "qkd capacity");
    l.km_capacity = parse_capacity(km, origin, lineno, "km capacity");
    links.push_back(l);
  }
  if (node_count < 0) fail(origin, lineno, "missing nodes: header");
  try {
    return Topology(node_count, std::move(links));
  } catch (const std::exception& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
}

Topology load_topology(const std::string& path) {
  std::ifstream in{path};
  if (!in) throw std::runtime_error("cannot open topology file " + path);
  return parse_topology(in, path);
}

std::string serialize_topology(const Topology& t) {
  std::ostringstream out;
  out << "nodes: " << t.node_count() << "\n";
  for (const Link& l : t.links()) {
    out << l.tail << " " << l.head << " "
        << Rational(l.length_tenth_km, 10).to_fixed_string(1) << " "
        << l.qkd_capacity << " " << l.km_capacity << "\n";
  }
  return out.str();
}

void save_topology(const Topology& t, const std::string& path) {
  std::ofstream out{path, std::ios::binary};
  if (!out) throw std::runtime_error("cannot write topology file " + path);
  out << serialize_topology(t);
}

std::vector<Link> neighbors_out(const Topology& t, NodeId n) {
  std::vector<Link> result;
  for (int idx : t.out_links(n)) result.push_back(t.links()[idx]);
  return result;
}

}  // namespace qkdplan
