#include "exactsos/sdpa.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace exactsos {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Writer {
  std::ostringstream os;
  std::size_t m = 0;
  std::vector<long> blocks;  // negative = diagonal
  std::vector<double> cost;
  // (matno, blk, i, j) -> value, 1-based, i <= j
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, Rational> entries;

  void add(std::size_t mat, std::size_t blk, std::size_t i, std::size_t j, const Rational& v) {
    if (i > j) std::swap(i, j);
    entries[{mat, blk, i, j}] += v;
  }

  std::string str(const std::string& title) {
    os << "\"" << title << "\n";
    os << m << " = mDIM\n" << blocks.size() << " = nBLOCK\n";
    for (std::size_t b = 0; b < blocks.size(); ++b) os << (b ? " " : "") << blocks[b];
    os << " = bLOCKsTRUCT\n{";
    for (std::size_t i = 0; i < cost.size(); ++i) os << (i ? ", " : "") << num(cost[i]);
    os << "}\n";
    for (const auto& [key, v] : entries) {
      if (v == 0) continue;
      const auto& [mat, blk, i, j] = key;
      os << mat << " " << blk << " " << i << " " << j << " " << num(v.get_d()) << "\n";
    }
    return os.str();
  }
};

}  // namespace

std::string export_sdpa(const GramProblem& problem) {
  Writer w;
  w.m = problem.target.size();
  w.blocks = {static_cast<long>(problem.basis.size())};
  for (std::size_t i = 0; i < problem.basis.size(); ++i) w.add(0, 1, i + 1, i + 1, Rational(-1));
  std::size_t row = 0;
  for (const auto& [gamma, fg] : problem.target) {
    ++row;
    w.cost.push_back(fg.get_d());
    auto it = problem.pair_index.find(gamma);
    if (it == problem.pair_index.end()) continue;
    for (const auto& [i, j] : it->second) w.add(row, 1, i + 1, j + 1, Rational(1));
  }
  return w.str("gram problem, " + std::to_string(w.m) + " constraints");
}

std::string export_sdpa(const BlockGramProblem& problem) {
  Writer w;
  w.m = problem.target.size();
  for (const auto& b : problem.blocks) w.blocks.push_back(static_cast<long>(b.basis.size()));
  const bool has_aux = !problem.aux_constraints.empty();
  if (has_aux) w.blocks.push_back(-static_cast<long>(problem.aux_constraints.size()));
  for (std::size_t b = 0; b < problem.blocks.size(); ++b)
    for (std::size_t i = 0; i < problem.blocks[b].basis.size(); ++i) w.add(0, b + 1, i + 1, i + 1, Rational(-1));
  std::map<ExponentVector, std::size_t, GrlexOrder> row_of;
  for (const auto& [gamma, fg] : problem.target) {
    row_of.emplace(gamma, row_of.size() + 1);
    w.cost.push_back(fg.get_d());
  }
  for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
    const auto& pts = problem.blocks[b].basis.points;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i; j < pts.size(); ++j)
        for (const auto& [d, c] : problem.blocks[b].multiplier.terms())
          w.add(row_of.at(pts[i] + pts[j] + d), b + 1, i + 1, j + 1, c);
  }
  if (has_aux) {
    const std::size_t blk = problem.blocks.size() + 1;
    const ExponentVector zero(problem.target.begin()->first.size());
    for (std::size_t a = 0; a < problem.aux_constraints.size(); ++a) {
      w.add(row_of.at(zero), blk, a + 1, a + 1, Rational(1));
      w.add(row_of.at(problem.aux_constraints[a].doubled()), blk, a + 1, a + 1, Rational(-1));
    }
  }
  return w.str("quadratic module problem, " + std::to_string(w.m) + " constraints");
}

namespace {

/// Nested brace lists of numbers; leaves are numbers, inner nodes lists.
struct Node {
  bool leaf = false;
  double value = 0;
  std::vector<Node> items;
};

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  std::size_t find_key(std::string_view key) const {
    std::size_t pos = s_.find(key);
    if (pos == std::string_view::npos) throw SdpaFormatError("sdpa solution: missing '" + std::string(key) + "'");
    pos = s_.find('=', pos);
    if (pos == std::string_view::npos) throw SdpaFormatError("sdpa solution: expected '=' after " + std::string(key));
    return pos + 1;
  }

  double scalar_after(std::string_view key) const {
    std::size_t p = skip_ws(find_key(key));
    double v;
    return parse_number(p, v), v;
  }

  Node list_after(std::string_view key) const {
    std::size_t p = skip_ws(find_key(key));
    if (p >= s_.size() || s_[p] != '{') throw SdpaFormatError("sdpa solution: expected '{' after " + std::string(key));
    return parse_list(p);
  }

 private:
  std::size_t skip_ws(std::size_t p) const {
    while (p < s_.size() && (s_[p] == ' ' || s_[p] == '\t' || s_[p] == '\n' || s_[p] == '\r')) ++p;
    return p;
  }

  std::size_t parse_number(std::size_t p, double& v) const {
    std::size_t end = p;
    while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '-' ||
                               s_[end] == '+' || s_[end] == '.' || s_[end] == 'e' || s_[end] == 'E'))
      ++end;
    const char* b = s_.data() + p;
    if (p < s_.size() && s_[p] == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, s_.data() + end, v);
    if (ec != std::errc() || ptr != s_.data() + end || end == p)
      throw SdpaFormatError("sdpa solution: bad number at offset " + std::to_string(p));
    return end;
  }

  // p points at '{'
  Node parse_list(std::size_t& p) const {
    Node n;
    ++p;
    for (;;) {
      p = skip_ws(p);
      if (p >= s_.size()) throw SdpaFormatError("sdpa solution: unterminated '{'");
      if (s_[p] == '}') {
        ++p;
        return n;
      }
      if (s_[p] == ',') {
        ++p;
        continue;
      }
      if (s_[p] == '{') {
        n.items.push_back(parse_list(p));
      } else {
        Node leaf;
        leaf.leaf = true;
        p = parse_number(p, leaf.value);
        n.items.push_back(leaf);
      }
    }
  }

  std::string_view s_;
};

std::vector<double> as_vector(const Node& n, const char* what) {
  std::vector<double> v;
  for (const auto& it : n.items) {
    if (!it.leaf) throw SdpaFormatError(std::string("sdpa solution: nested list in ") + what);
    v.push_back(it.value);
  }
  return v;
}

std::vector<std::vector<std::vector<double>>> as_blocks(const Node& n, const char* what) {
  std::vector<std::vector<std::vector<double>>> out;
  for (const auto& blk : n.items) {
    if (blk.leaf) throw SdpaFormatError(std::string("sdpa solution: stray number in ") + what);
    const bool diagonal = !blk.items.empty() && blk.items.front().leaf;
    if (diagonal) {
      std::vector<double> d = as_vector(blk, what);
      std::vector<std::vector<double>> m(d.size(), std::vector<double>(d.size(), 0.0));
      for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
      out.push_back(std::move(m));
    } else {
      std::vector<std::vector<double>> m;
      for (const auto& row : blk.items) m.push_back(as_vector(row, what));
      for (const auto& row : m)
        if (row.size() != m.size()) throw SdpaFormatError(std::string("sdpa solution: non-square block in ") + what);
      out.push_back(std::move(m));
    }
  }
  return out;
}

bool is_diagonal(const std::vector<std::vector<double>>& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j && m[i][j] != 0) return false;
  return m.size() > 1;
}

void write_blocks(std::ostringstream& os, const std::vector<std::vector<std::vector<double>>>& blocks) {
  os << "{\n";
  for (const auto& m : blocks) {
    if (is_diagonal(m)) {
      os << "{";
      for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << num(m[i][i]);
      os << "}\n";
      continue;
    }
    os << "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
      os << (i ? "," : "") << "{";
      for (std::size_t j = 0; j < m.size(); ++j) os << (j ? "," : "") << num(m[i][j]);
      os << "}";
    }
    os << "}\n";
  }
  os << "}\n";
}

}  // namespace

SdpaSolution import_solution(std::string_view text) {
  Reader r(text);
  SdpaSolution s;
  s.primal_objective = r.scalar_after("objValPrimal");
  s.dual_objective = r.scalar_after("objValDual");
  s.x = as_vector(r.list_after("xVec"), "xVec");
  s.x_blocks = as_blocks(r.list_after("xMat"), "xMat");
  s.y_blocks = as_blocks(r.list_after("yMat"), "yMat");
  if (s.x_blocks.size() != s.y_blocks.size()) throw SdpaFormatError("sdpa solution: xMat and yMat block counts differ");
  for (std::size_t b = 0; b < s.x_blocks.size(); ++b)
    if (s.x_blocks[b].size() != s.y_blocks[b].size())
      throw SdpaFormatError("sdpa solution: xMat and yMat block " + std::to_string(b + 1) + " sizes differ");
  return s;
}

std::string write_solution(const SdpaSolution& s) {
  std::ostringstream os;
  os << "objValPrimal = " << num(s.primal_objective) << "\n";
  os << "objValDual   = " << num(s.dual_objective) << "\n";
  os << "xVec = \n{";
  for (std::size_t i = 0; i < s.x.size(); ++i) os << (i ? "," : "") << num(s.x[i]);
  os << "}\n";
  os << "xMat = \n";
  write_blocks(os, s.x_blocks);
  os << "yMat = \n";
  write_blocks(os, s.y_blocks);
  return os.str();
}

SdpaSolution to_sdpa_solution(const SolverOutput& out) {
  SdpaSolution s;
  double trace = 0;
  for (const auto& g : out.gram_blocks) {
    std::vector<std::vector<double>> m(g.dim(), std::vector<double>(g.dim()));
    for (std::size_t i = 0; i < g.dim(); ++i) {
      for (std::size_t j = 0; j < g.dim(); ++j) m[i][j] = g(i, j).get_d();
      trace += m[i][i];
    }
    s.y_blocks.push_back(std::move(m));
  }
  if (!out.aux_weights.empty()) {
    std::vector<std::vector<double>> m(out.aux_weights.size(), std::vector<double>(out.aux_weights.size()));
    std::size_t i = 0;
    for (const auto& [a, c] : out.aux_weights) {
      m[i][i] = c.get_d();
      ++i;
    }
    s.y_blocks.push_back(std::move(m));
  }
  for (const auto& y : s.y_blocks)
    s.x_blocks.emplace_back(y.size(), std::vector<double>(y.size(), 0.0));
  s.primal_objective = -trace;
  s.dual_objective = -trace;
  return s;
}

}  // namespace exactsos
