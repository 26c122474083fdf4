#ifndef POLARSOLVE_CIRCUIT_HPP
#define POLARSOLVE_CIRCUIT_HPP

// Division-free arithmetic circuits (straight-line programs over Q).
//
// File format, one statement per line, '#' starts a comment:
//
//   %3 = mul X1 %2        # operands: Xj, %label, or a rational literal a/b
//   %4 = add %3 -1/2
//   out %4                # outputs, in order
//
// Labels are arbitrary non-negative integers but must be defined before use.

#include <polarsolve/multipoly.hpp>
#include <polarsolve/poly_parser.hpp>
#include <polarsolve/rational.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polarsolve {

enum class NodeKind { input, constant, add, sub, mul };

struct Node {
  NodeKind kind = NodeKind::constant;
  std::size_t var = 0;  // input: 0-based variable index
  Rational value;       // constant
  std::size_t lhs = 0;  // add/sub/mul operands, always earlier nodes
  std::size_t rhs = 0;

  bool is_arithmetic() const { return kind == NodeKind::add || kind == NodeKind::sub || kind == NodeKind::mul; }
  friend bool operator==(const Node&, const Node&) = default;
};

struct CircuitMetrics {
  std::size_t size_L = 0;
  std::size_t nonscalar_depth_ell = 0;
  std::size_t nonscalar_size = 0;
  friend bool operator==(const CircuitMetrics&, const CircuitMetrics&) = default;
};

class DegreeCapExceeded : public std::runtime_error {
 public:
  DegreeCapExceeded(std::size_t node, long degree, long cap)
      : std::runtime_error("circuit expansion exceeds degree cap " + std::to_string(cap) + " (node " +
                           std::to_string(node) + " has degree " + std::to_string(degree) + ")") {}
};

/// Topologically ordered DAG. Nodes can only be appended, and every operand
/// index refers to an earlier node, so the order is valid by construction.
class Circuit {
 public:
  explicit Circuit(std::size_t nvars = 0) : nvars_(nvars) {}

  std::size_t nvars() const { return nvars_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::size_t>& outputs() const { return outputs_; }

  std::size_t input(std::size_t var) {
    if (var >= nvars_) throw std::out_of_range("circuit input index out of range");
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].kind == NodeKind::input && nodes_[i].var == var) return i;
    Node n;
    n.kind = NodeKind::input;
    n.var = var;
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::size_t constant(const Rational& c) {
    Node n;
    n.kind = NodeKind::constant;
    n.value = c;
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::size_t op(NodeKind kind, std::size_t lhs, std::size_t rhs) {
    if (kind != NodeKind::add && kind != NodeKind::sub && kind != NodeKind::mul)
      throw std::invalid_argument("op() takes add, sub or mul");
    if (lhs >= nodes_.size() || rhs >= nodes_.size()) throw std::out_of_range("operand refers to a later node");
    Node n;
    n.kind = kind;
    n.lhs = lhs;
    n.rhs = rhs;
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  void add_output(std::size_t node) {
    if (node >= nodes_.size()) throw std::out_of_range("output refers to a missing node");
    outputs_.push_back(node);
  }

  void set_outputs(std::vector<std::size_t> outs) {
    for (auto o : outs)
      if (o >= nodes_.size()) throw std::out_of_range("output refers to a missing node");
    outputs_ = std::move(outs);
  }

  /// True for nodes whose value depends on at least one input.
  std::vector<bool> input_dependence() const {
    std::vector<bool> dep(nodes_.size(), false);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      if (n.kind == NodeKind::input) dep[i] = true;
      else if (n.is_arithmetic()) dep[i] = dep[n.lhs] || dep[n.rhs];
    }
    return dep;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t nvars_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> outputs_;
};

namespace detail {

inline bool parse_circuit_literal(std::string_view tok, Rational& out) {
  std::string_view body = tok;
  if (!body.empty() && body[0] == '-') body.remove_prefix(1);
  if (body.empty() || !std::isdigit(static_cast<unsigned char>(body[0]))) return false;
  out = parse_rational(tok);  // throws std::invalid_argument when malformed
  return true;
}

}  // namespace detail

/// Parses the line format above. `nvars` defaults to the largest Xj used.
inline Circuit parse_circuit(std::string_view text, std::optional<std::size_t> nvars = std::nullopt) {
  struct Stmt {
    std::size_t line;
    std::vector<std::pair<std::string, std::size_t>> toks;  // token, column
  };
  std::vector<Stmt> stmts;
  std::size_t max_var = 0;
  {
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      Stmt st{line_no, {}};
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t b = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        st.toks.emplace_back(std::string(line.substr(b, i - b)), b + 1);
      }
      for (const auto& [tok, col] : st.toks) {
        if (tok.size() > 1 && tok[0] == 'X' &&
            std::all_of(tok.begin() + 1, tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
          std::size_t v = tok.size() > 7 ? 0 : std::stoul(tok.substr(1));
          if (v == 0) throw ParseError("variable index must be at least 1 in '" + tok + "'", st.line, col);
          max_var = std::max(max_var, v);
        }
      }
      if (!st.toks.empty()) stmts.push_back(std::move(st));
      if (end == text.size()) break;
      start = end + 1;
    }
  }
  std::size_t n = nvars.value_or(max_var);
  Circuit c(n);
  std::map<std::string, std::size_t> labels;

  auto resolve = [&](const std::string& tok, std::size_t line, std::size_t col) -> std::size_t {
    if (tok.size() > 1 && tok[0] == '%') {
      auto it = labels.find(tok);
      if (it == labels.end()) throw ParseError("reference to undefined node " + tok + " (forward reference)", line, col);
      return it->second;
    }
    if (tok.size() > 1 && tok[0] == 'X' &&
        std::all_of(tok.begin() + 1, tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      std::size_t v = std::stoul(tok.substr(1));
      if (v > n) throw ParseError("unknown identifier " + tok + " (circuit has " + std::to_string(n) + " inputs)", line, col);
      return c.input(v - 1);
    }
    Rational value;
    bool is_literal = false;
    try {
      is_literal = detail::parse_circuit_literal(tok, value);
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed constant '" + tok + "'", line, col);
    }
    if (!is_literal) throw ParseError("unknown identifier '" + tok + "'", line, col);
    return c.constant(value);
  };

  std::vector<std::size_t> outs;
  for (const auto& st : stmts) {
    const auto& t = st.toks;
    if (t[0].first == "out") {
      if (t.size() != 2) throw ParseError("expected 'out <ref>'", st.line, t[0].second);
      outs.push_back(resolve(t[1].first, st.line, t[1].second));
      continue;
    }
    if (t[0].first.size() < 2 || t[0].first[0] != '%')
      throw ParseError("unknown identifier '" + t[0].first + "'", st.line, t[0].second);
    if (t.size() != 5 || t[1].first != "=")
      throw ParseError("expected '%k = add|sub|mul <ref> <ref>'", st.line, t[0].second);
    const std::string& opname = t[2].first;
    NodeKind kind;
    if (opname == "add") kind = NodeKind::add;
    else if (opname == "sub") kind = NodeKind::sub;
    else if (opname == "mul") kind = NodeKind::mul;
    else if (opname == "div" || opname == "/")
      throw ParseError("division operator is not allowed in a division-free circuit", st.line, t[2].second);
    else
      throw ParseError("unknown operation '" + opname + "'", st.line, t[2].second);
    if (labels.count(t[0].first)) throw ParseError("node " + t[0].first + " defined twice", st.line, t[0].second);
    std::size_t l = resolve(t[3].first, st.line, t[3].second);
    std::size_t r = resolve(t[4].first, st.line, t[4].second);
    labels[t[0].first] = c.op(kind, l, r);
  }
  c.set_outputs(std::move(outs));
  return c;
}

/// Canonical text: arithmetic nodes renumbered %1..%L, constants inline.
inline std::string print_circuit(const Circuit& c) {
  std::vector<std::size_t> label(c.nodes().size(), 0);
  std::size_t next = 0;
  auto ref = [&](std::size_t i) -> std::string {
    const Node& n = c.nodes()[i];
    switch (n.kind) {
      case NodeKind::input: return "X" + std::to_string(n.var + 1);
      case NodeKind::constant: return to_string(n.value);
      default: return "%" + std::to_string(label[i]);
    }
  };
  std::ostringstream out;
  for (std::size_t i = 0; i < c.nodes().size(); ++i) {
    const Node& n = c.nodes()[i];
    if (!n.is_arithmetic()) continue;
    label[i] = ++next;
    const char* name = n.kind == NodeKind::add ? "add" : n.kind == NodeKind::sub ? "sub" : "mul";
    out << "%" << label[i] << " = " << name << " " << ref(n.lhs) << " " << ref(n.rhs) << "\n";
  }
  for (auto o : c.outputs()) out << "out " << ref(o) << "\n";
  return out.str();
}

inline std::vector<Rational> eval_circuit(const Circuit& c, std::span<const Rational> x) {
  if (x.size() != c.nvars()) throw std::invalid_argument("circuit evaluation point has wrong length");
  std::vector<Rational> v(c.nodes().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Node& n = c.nodes()[i];
    switch (n.kind) {
      case NodeKind::input: v[i] = x[n.var]; break;
      case NodeKind::constant: v[i] = n.value; break;
      case NodeKind::add: v[i] = v[n.lhs] + v[n.rhs]; break;
      case NodeKind::sub: v[i] = v[n.lhs] - v[n.rhs]; break;
      case NodeKind::mul: v[i] = v[n.lhs] * v[n.rhs]; break;
    }
  }
  std::vector<Rational> out;
  out.reserve(c.outputs().size());
  for (auto o : c.outputs()) out.push_back(v[o]);
  return out;
}

/// Expands every output to a MultiPoly; throws DegreeCapExceeded as soon as an
/// intermediate node's total degree passes `degree_cap`.
inline std::vector<MultiPoly> expand_circuit(const Circuit& c, long degree_cap) {
  const std::size_t n = c.nvars();
  std::vector<MultiPoly> v;
  v.reserve(c.nodes().size());
  for (std::size_t i = 0; i < c.nodes().size(); ++i) {
    const Node& node = c.nodes()[i];
    switch (node.kind) {
      case NodeKind::input: v.push_back(MultiPoly::variable(n, node.var)); break;
      case NodeKind::constant: v.push_back(MultiPoly::constant(n, node.value)); break;
      case NodeKind::add: v.push_back(v[node.lhs] + v[node.rhs]); break;
      case NodeKind::sub: v.push_back(v[node.lhs] - v[node.rhs]); break;
      case NodeKind::mul: {
        long bound = std::max(v[node.lhs].total_degree(), 0L) + std::max(v[node.rhs].total_degree(), 0L);
        if (bound > degree_cap) {
          // the bound is exact unless a factor is zero
          if (!v[node.lhs].is_zero() && !v[node.rhs].is_zero()) throw DegreeCapExceeded(i, bound, degree_cap);
        }
        v.push_back(v[node.lhs] * v[node.rhs]);
        break;
      }
    }
    if (v.back().total_degree() > degree_cap) throw DegreeCapExceeded(i, v.back().total_degree(), degree_cap);
  }
  std::vector<MultiPoly> out;
  for (auto o : c.outputs()) out.push_back(v[o]);
  return out;
}

/// Reverse-mode (Baur-Strassen) differentiation. The result keeps the original
/// nodes and appends one adjoint sweep per output; its outputs are the
/// partials df_k/dX_j in row-major order (k over outputs, j over inputs).
inline Circuit differentiate_circuit(const Circuit& c) {
  Circuit d = c;
  const auto dep = c.input_dependence();
  const std::size_t base = c.nodes().size();
  std::size_t zero = d.constant(Rational(0));
  std::size_t one = d.constant(Rational(1));
  std::vector<std::size_t> outs;

  for (auto out : c.outputs()) {
    std::vector<std::optional<std::size_t>> adj(base);
    if (dep[out]) adj[out] = one;
    auto contribute = [&](std::size_t target, std::size_t value, bool negative) {
      if (!dep[target]) return;
      if (!adj[target]) {
        adj[target] = negative ? d.op(NodeKind::sub, zero, value) : value;
      } else {
        adj[target] = d.op(negative ? NodeKind::sub : NodeKind::add, *adj[target], value);
      }
    };
    auto times = [&](std::size_t a, std::size_t b) { return a == one ? b : d.op(NodeKind::mul, a, b); };
    for (std::size_t i = out + 1; i-- > 0;) {
      if (!adj[i]) continue;
      const Node& n = c.nodes()[i];
      switch (n.kind) {
        case NodeKind::add:
          contribute(n.lhs, *adj[i], false);
          contribute(n.rhs, *adj[i], false);
          break;
        case NodeKind::sub:
          contribute(n.lhs, *adj[i], false);
          contribute(n.rhs, *adj[i], true);
          break;
        case NodeKind::mul:
          if (dep[n.lhs]) contribute(n.lhs, times(*adj[i], n.rhs), false);
          if (dep[n.rhs]) contribute(n.rhs, times(*adj[i], n.lhs), false);
          break;
        default: break;
      }
    }
    for (std::size_t j = 0; j < c.nvars(); ++j) {
      std::optional<std::size_t> in;
      for (std::size_t i = 0; i < base; ++i)
        if (c.nodes()[i].kind == NodeKind::input && c.nodes()[i].var == j) in = i;
      outs.push_back(in && adj[*in] ? *adj[*in] : zero);
    }
  }
  d.set_outputs(std::move(outs));
  return d;
}

/// L counts add/sub/mul nodes; constants are circuit parameters. The
/// nonscalar depth counts multiplications whose operands both depend on inputs.
inline CircuitMetrics metrics(const Circuit& c) {
  CircuitMetrics m;
  const auto dep = c.input_dependence();
  std::vector<std::size_t> depth(c.nodes().size(), 0);
  for (std::size_t i = 0; i < c.nodes().size(); ++i) {
    const Node& n = c.nodes()[i];
    if (!n.is_arithmetic()) continue;
    ++m.size_L;
    bool essential = n.kind == NodeKind::mul && dep[n.lhs] && dep[n.rhs];
    if (essential) ++m.nonscalar_size;
    depth[i] = std::max(depth[n.lhs], depth[n.rhs]) + (essential ? 1 : 0);
    m.nonscalar_depth_ell = std::max(m.nonscalar_depth_ell, depth[i]);
  }
  return m;
}

}  // namespace polarsolve

#endif  // POLARSOLVE_CIRCUIT_HPP
