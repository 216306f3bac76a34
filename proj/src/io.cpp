#include "reebforest/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace reebforest::io {

using nlohmann::json;

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value == 0.0 ? 0.0 : value);
  return buffer;
}

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::optional<double> to_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

template <typename F>
auto schema(F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema error: ") + e.what());
  }
}

std::vector<std::string> optional_labels(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("invalid JSON", line, column);
  }
}

Poset poset_from_json(const json& j) {
  return schema([&] {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<OrderPair> covers;
    for (const auto& pair : j.at("covers")) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError("each cover must be a pair [i, j]");
      covers.emplace_back(pair[0].get<Index>(), pair[1].get<Index>());
    }
    return Poset::from_covers(n, covers, optional_labels(j, "labels"));
  });
}

FilteredPoset filtered_poset_from_json(const json& j) {
  return schema([&] { return FilteredPoset(poset_from_json(j), j.at("f").get<std::vector<double>>()); });
}

json to_json(const Poset& poset) {
  json covers = json::array();
  for (auto [a, b] : poset.cover_pairs()) covers.push_back({a, b});
  return {{"n", poset.size()}, {"covers", covers}, {"labels", poset.labels()}};
}

json to_json(const FilteredPoset& fp) {
  auto j = to_json(fp.poset());
  j["f"] = fp.f();
  return j;
}

MetricGraph graph_from_json(const json& j) {
  return schema([&] {
    auto labels = j.at("vertices").get<std::vector<std::string>>();
    std::map<std::string, Index> index;
    for (Index i = 0; i < labels.size(); ++i) index[labels[i]] = i;
    auto lookup = [&](const json& v) {
      const auto name = v.is_string() ? v.get<std::string>() : std::to_string(v.get<long>());
      auto it = index.find(name);
      if (it == index.end()) throw ParseError("edge references unknown vertex '" + name + "'");
      return it->second;
    };
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("each edge must be [u, v, length]");
      edges.push_back({lookup(e[0]), lookup(e[1]), e[2].get<double>()});
    }
    std::optional<Index> base;
    if (j.contains("base") && !j.at("base").is_null()) base = lookup(j.at("base"));
    return MetricGraph(std::move(labels), std::move(edges), base);
  });
}

json to_json(const MetricGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({g.label(e.u), g.label(e.v), e.length});
  json j{{"vertices", g.labels()}, {"edges", edges}};
  if (g.base()) j["base"] = g.label(*g.base());
  return j;
}

MetricGraph graph_from_tsv(const std::string& text) {
  std::vector<std::string> labels;
  std::map<std::string, Index> index;
  auto vertex = [&](const std::string& name) {
    auto [it, inserted] = index.try_emplace(name, labels.size());
    if (inserted) labels.push_back(name);
    return it->second;
  };
  std::vector<Edge> edges;
  std::istringstream in(text);
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) throw ParseError("expected u<TAB>v<TAB>length", line_no, 1);
    if (fields[0].empty()) throw ParseError("empty vertex name", line_no, 1);
    if (fields[1].empty()) throw ParseError("empty vertex name", line_no, 2);
    const auto length = to_number(fields[2]);
    if (!length) throw ParseError("edge length is not a number", line_no, 3);
    edges.push_back({vertex(fields[0]), vertex(fields[1]), *length});
  }
  if (labels.empty()) throw ParseError("edge list is empty");
  return MetricGraph(std::move(labels), std::move(edges));
}

FiniteMetricSpace metric_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(trim(line), ',');
    if (labels.empty()) {
      labels = fields;
      if (!labels.empty() && labels.front().empty()) labels.erase(labels.begin());  // corner cell
      continue;
    }
    std::size_t first = 0;
    if (fields.size() == labels.size() + 1) {
      if (fields[0] != labels[rows.size()])
        throw ParseError("row label '" + fields[0] + "' does not match header", line_no, 1);
      first = 1;
    } else if (fields.size() != labels.size()) {
      throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(labels.size()),
                       line_no, 1);
    }
    std::vector<double> row;
    for (std::size_t k = first; k < fields.size(); ++k) {
      const auto v = to_number(fields[k]);
      if (!v) throw ParseError("'" + fields[k] + "' is not a number", line_no, k + 1);
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (labels.empty()) throw ParseError("distance matrix is empty");
  if (rows.size() != labels.size())
    throw ParseError("matrix has " + std::to_string(rows.size()) + " rows for " +
                     std::to_string(labels.size()) + " labels", line_no, 1);
  DistanceMatrix d(labels.size());
  for (Index i = 0; i < labels.size(); ++i)
    for (Index k = 0; k < labels.size(); ++k) d(i, k) = rows[i][k];
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

FiniteMetricSpace metric_from_json(const json& j) {
  return schema([&] {
    const auto rows = j.at("d").get<std::vector<std::vector<double>>>();
    const std::size_t n = rows.size();
    DistanceMatrix d(n);
    for (Index i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw ParseError("distance matrix is not square");
      for (Index k = 0; k < n; ++k) d(i, k) = rows[i][k];
    }
    return FiniteMetricSpace(optional_labels(j, "labels"), std::move(d));
  });
}

json to_json(const FiniteMetricSpace& space) {
  json rows = json::array();
  for (Index i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (Index k = 0; k < space.size(); ++k) row.push_back(space(i, k));
    rows.push_back(row);
  }
  return {{"labels", space.labels()}, {"d", rows}};
}

std::string to_csv(const FiniteMetricSpace& space) {
  std::string out;
  for (Index i = 0; i < space.size(); ++i) out += (i ? "," : "") + space.label(i);
  out += '\n';
  for (Index i = 0; i < space.size(); ++i) {
    for (Index k = 0; k < space.size(); ++k) out += (k ? "," : "") + format_number(space(i, k));
    out += '\n';
  }
  return out;
}

InputFormat input_format_from_string(const std::string& text) {
  if (text == "auto") return InputFormat::automatic;
  if (text == "graph-json") return InputFormat::graph_json;
  if (text == "edge-tsv") return InputFormat::edge_tsv;
  if (text == "matrix-csv") return InputFormat::matrix_csv;
  if (text == "matrix-json") return InputFormat::matrix_json;
  if (text == "poset-json") return InputFormat::poset_json;
  throw ParseError("unknown input format '" + text + "'");
}

const char* to_string(InputFormat format) {
  switch (format) {
    case InputFormat::automatic: return "auto";
    case InputFormat::graph_json: return "graph-json";
    case InputFormat::edge_tsv: return "edge-tsv";
    case InputFormat::matrix_csv: return "matrix-csv";
    case InputFormat::matrix_json: return "matrix-json";
    case InputFormat::poset_json: return "poset-json";
  }
  return "auto";
}

namespace {

InputFormat sniff_json(const std::string& content) {
  const auto j = parse_json(content);
  if (j.is_object()) {
    if (j.contains("edges")) return InputFormat::graph_json;
    if (j.contains("d")) return InputFormat::matrix_json;
    if (j.contains("covers")) return InputFormat::poset_json;
  }
  throw ParseError("cannot tell which kind of JSON input this is (expected edges, d or covers)");
}

}  // namespace

InputFormat detect_format(const std::filesystem::path& path, const std::string& content) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".tsv") return InputFormat::edge_tsv;
  if (ext == ".csv") return InputFormat::matrix_csv;
  if (ext == ".json") return sniff_json(content);
  const auto start = trim(content);
  if (!start.empty() && start.front() == '{') return sniff_json(content);
  if (content.find('\t') != std::string::npos) return InputFormat::edge_tsv;
  if (content.find(',') != std::string::npos) return InputFormat::matrix_csv;
  throw ParseError("cannot detect input format of " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

Input parse_input(const std::string& content, InputFormat format) {
  switch (format) {
    case InputFormat::graph_json: return graph_from_json(parse_json(content));
    case InputFormat::edge_tsv: return graph_from_tsv(content);
    case InputFormat::matrix_csv: return metric_from_csv(content);
    case InputFormat::matrix_json: return metric_from_json(parse_json(content));
    case InputFormat::poset_json: return filtered_poset_from_json(parse_json(content));
    case InputFormat::automatic: break;
  }
  throw ParseError("input format must be resolved before parsing");
}

Input load_input(const std::filesystem::path& path, InputFormat format) {
  const auto content = read_file(path);
  if (format == InputFormat::automatic) format = detect_format(path, content);
  return parse_input(content, format);
}

namespace {

bool needs_quotes(const std::string& label) {
  if (label.empty()) return false;
  return label.find_first_of(" \t\n()[]':;,") != std::string::npos;
}

std::string newick_label(const std::string& label) {
  if (!needs_quotes(label)) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace

std::string to_newick(const ReebTree& tree) {
  std::vector<std::vector<Index>> children(tree.size());
  for (Index x = 0; x < tree.size(); ++x)
    if (auto p = tree.parent(x)) children[*p].push_back(x);
  std::string out;
  std::function<void(Index)> emit = [&](Index x) {
    if (!children[x].empty()) {
      out += '(';
      for (std::size_t i = 0; i < children[x].size(); ++i) {
        if (i) out += ',';
        emit(children[x][i]);
      }
      out += ')';
    }
    out += newick_label(tree.poset().label(x));
    if (auto p = tree.parent(x)) out += ':' + format_number(tree.f(x) - tree.f(*p));
  };
  emit(tree.root());
  return out + ";";
}

namespace {

class NewickParser {
 public:
  explicit NewickParser(const std::string& text) : text_(text) {}

  NewickNode parse() {
    auto root = subtree();
    skip();
    if (!consume(';')) fail("expected ';'");
    skip();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    auto [line, column] = line_column(text_, pos_);
    throw ParseError("Newick: " + what, line, column);
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '[') {
        const auto close = text_.find(']', pos_);
        if (close == std::string::npos) fail("unterminated comment");
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  bool consume(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string label() {
    skip();
    std::string out;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated quoted label");
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            out += '\'';
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        out += text_[pos_++];
      }
      return out;
    }
    while (pos_ < text_.size() && std::string_view("()[]':;,").find(text_[pos_]) == std::string_view::npos &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      out += text_[pos_++];
    return out;
  }

  NewickNode subtree() {
    NewickNode node;
    if (consume('(')) {
      do {
        node.children.push_back(subtree());
      } while (consume(','));
      if (!consume(')')) fail("expected ')' or ','");
    }
    node.label = label();
    if (consume(':')) {
      skip();
      const auto begin = pos_;
      while (pos_ < text_.size() && std::string_view("0123456789+-.eE").find(text_[pos_]) != std::string_view::npos)
        ++pos_;
      const auto number = to_number(text_.substr(begin, pos_ - begin));
      if (!number) {
        pos_ = begin;
        fail("invalid branch length");
      }
      node.length = *number;
    }
    return node;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

NewickNode parse_newick(const std::string& text) { return NewickParser(text).parse(); }

NewickDistances newick_distances(const NewickNode& root) {
  struct Flat {
    std::optional<Index> parent;
    double height = 0.0;  // distance from the root
    std::size_t depth = 0;
  };
  std::vector<Flat> nodes;
  NewickDistances out;
  std::vector<Index> labeled;
  std::function<void(const NewickNode&, std::optional<Index>)> walk = [&](const NewickNode& n,
                                                                          std::optional<Index> parent) {
    const Index id = nodes.size();
    Flat flat{parent, 0.0, 0};
    if (parent) {
      flat.height = nodes[*parent].height + n.length.value_or(0.0);
      flat.depth = nodes[*parent].depth + 1;
    }
    nodes.push_back(flat);
    if (!n.label.empty()) {
      if (!out.index.emplace(n.label, labeled.size()).second)
        throw ParseError("Newick: duplicate label '" + n.label + "'");
      labeled.push_back(id);
    }
    for (const auto& child : n.children) walk(child, id);
  };
  walk(root, std::nullopt);
  out.d = DistanceMatrix(labeled.size(), 0.0);
  for (Index i = 0; i < labeled.size(); ++i)
    for (Index k = i + 1; k < labeled.size(); ++k) {
      Index a = labeled[i], b = labeled[k];
      while (nodes[a].depth > nodes[b].depth) a = *nodes[a].parent;
      while (nodes[b].depth > nodes[a].depth) b = *nodes[b].parent;
      while (a != b) {
        a = *nodes[a].parent;
        b = *nodes[b].parent;
      }
      const double d = nodes[labeled[i]].height + nodes[labeled[k]].height - 2.0 * nodes[a].height;
      out.d(i, k) = out.d(k, i) = d;
    }
  return out;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string ranked_dot(const std::string& name, const Poset& poset, const std::vector<double>& f) {
  std::string out = "digraph \"" + dot_escape(name) + "\" {\n  rankdir=BT;\n";
  for (Index x = 0; x < poset.size(); ++x)
    out += "  n" + std::to_string(x) + " [label=\"" + dot_escape(poset.label(x)) + "\\nf=" +
           format_number(f[x]) + "\"];\n";
  std::map<double, std::vector<Index>> levels;
  for (Index x = 0; x < poset.size(); ++x) levels[f[x]].push_back(x);
  for (const auto& [level, members] : levels) {
    if (members.size() < 2) continue;
    out += "  { rank=same;";
    for (Index x : members) out += " n" + std::to_string(x) + ";";
    out += " }\n";
  }
  for (auto [a, b] : poset.cover_pairs())
    out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + " [label=\"" +
           format_number(f[b] - f[a]) + "\"];\n";
  return out + "}\n";
}

}  // namespace

std::string covering_graph_dot(const FilteredPoset& fp, const std::string& name) {
  return ranked_dot(name, fp.poset(), fp.f());
}

std::string tree_dot(const ReebTree& tree, const std::string& name) {
  return ranked_dot(name, tree.poset(), tree.reeb().f());
}

}  // namespace reebforest::io
