#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "kurosh/kurosh.hpp"

namespace kurosh {

inline const char* vertex_type_name(VertexType t) {
  switch (t) {
    case VertexType::g_type:
      return "G";
    case VertexType::h_type:
      return "H";
    default:
      return "zero";
  }
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

inline std::string to_dot(const QuotientGraph& g) {
  const auto& grp = g.group();
  std::ostringstream out;
  out << "graph quotient {\n";
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    const auto& v = g.vertices()[i];
    std::string shape = v.type == VertexType::g_type ? "box" : v.type == VertexType::h_type ? "diamond" : "circle";
    if (i == g.base()) shape = "doublecircle";
    std::string label = "v" + std::to_string(i);
    if (v.type != VertexType::zero && !v.stab.is_trivial()) label += "\\n" + dot_escape(v.stab.describe());
    out << "  v" << i << " [shape=" << shape << ", label=\"" << label << "\""
        << (v.core ? "" : ", style=dashed") << "];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  v" << e.side_vertex << " -- v" << e.zero_vertex << " [label=\""
        << dot_escape(grp.format(grp.letter(e.side, e.label))) << "\"";
    if (!e.core)
      out << ", style=dashed";
    else if (e.maxtree)
      out << ", style=bold";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

inline nlohmann::json words_json(const FreeProduct& g, const std::vector<Word>& ws) {
  auto out = nlohmann::json::array();
  for (const auto& w : ws) out.push_back(g.format(w));
  return out;
}

inline nlohmann::json to_json(const QuotientGraph& g) {
  const auto& grp = g.group();
  const auto& sp = g.spanning();
  nlohmann::json j;
  j["generators"] = words_json(grp, g.generators());
  j["base"] = g.base();
  j["vertices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    const auto& v = g.vertices()[i];
    nlohmann::json jv{{"id", i}, {"type", vertex_type_name(v.type)}, {"core", v.core}};
    if (v.type != VertexType::zero) jv["stabilizer"] = v.stab.describe();
    if (sp.vertex_word[i]) jv["lift"] = grp.format(*sp.vertex_word[i]);
    j["vertices"].push_back(jv);
  }
  j["edges"] = nlohmann::json::array();
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    nlohmann::json je{{"id", i},
                      {"side_vertex", e.side_vertex},
                      {"zero_vertex", e.zero_vertex},
                      {"side", e.side == Side::left ? "G" : "H"},
                      {"label", grp.format(grp.letter(e.side, e.label))},
                      {"core", e.core},
                      {"maxtree", e.maxtree}};
    if (sp.edge_word[i]) je["lift"] = grp.format(*sp.edge_word[i]);
    j["edges"].push_back(je);
  }
  auto k = g.kurosh();
  j["kurosh"] = {{"t", k.t}, {"graph_rank", k.graph_rank}, {"total", k.total}};
  j["transversal"] = sp.transversal;
  return j;
}

inline std::string format_cone(const TruncatedCone& c) {
  const auto& grp = c.domain->group();
  std::string s = "+{";
  bool first = true;
  for (const auto& w : c.positives()) {
    s += (first ? "" : ", ") + grp.format(w);
    first = false;
  }
  return s + "}";
}

inline nlohmann::json cone_json(const TruncatedCone& c) {
  const auto& grp = c.domain->group();
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < c.sign.size(); ++i) j[grp.format(c.domain->word(i))] = c.sign[i];
  return j;
}

}  // namespace kurosh
