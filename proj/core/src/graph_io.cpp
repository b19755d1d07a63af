#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "msym/multigraph.hpp"

namespace msym {

using nlohmann::json;

Multigraph parse_graph_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw Error(ErrorKind::ParseError, "expected object with \"vertices\" and \"edges\"");
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  try {
    for (const auto& v : doc.at("vertices")) vertices.push_back(v.get<std::string>());
    for (const auto& e : doc.at("edges"))
      edges.emplace_back(e.at("src").get<std::string>(), e.at("dst").get<std::string>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return Multigraph::build(std::move(vertices), edges);
}

Multigraph parse_graph_text(const std::string& text) {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  auto note = [&](const std::string& v) {
    if (std::find(vertices.begin(), vertices.end(), v) == vertices.end()) vertices.push_back(v);
  };
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string src, dst, extra;
    if (!(fields >> src)) continue;
    if (!(fields >> dst) || (fields >> extra))
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 'src dst'");
    note(src);
    note(dst);
    edges.emplace_back(src, dst);
  }
  return Multigraph::build(std::move(vertices), edges);
}

Multigraph parse_graph(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_graph_json(text);
  return parse_graph_text(text);
}

Multigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string graph_to_json(const Multigraph& g) {
  json doc;
  doc["vertices"] = g.vertices();
  doc["edges"] = json::array();
  for (const auto& e : g.edges())
    doc["edges"].push_back({{"src", g.vertex_name(e.src)}, {"dst", g.vertex_name(e.dst)}});
  return doc.dump();
}

}  // namespace msym
