#include "metriq/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "metriq/error.hpp"

namespace metriq {

using nlohmann::json;

namespace {

const char* domain_name(DomainKind k) {
  switch (k) {
    case DomainKind::Box: return "box";
    case DomainKind::Disc: return "disc";
    case DomainKind::Sphere: return "sphere";
    case DomainKind::Torus: return "torus";
    case DomainKind::None: break;
  }
  return "none";
}

DomainKind domain_kind(const std::string& s) {
  if (s == "box") return DomainKind::Box;
  if (s == "disc") return DomainKind::Disc;
  if (s == "sphere") return DomainKind::Sphere;
  if (s == "torus") return DomainKind::Torus;
  if (s == "none") return DomainKind::None;
  throw Error(ErrorKind::InvalidGraph, "unknown domain '" + s + "'");
}

}  // namespace

json graph_to_json(const MetricGraph& g) {
  json j;
  j["dim"] = g.dim();
  json verts = json::array();
  for (const auto& v : g.vertices()) {
    json pos = json::array();
    for (int a = 0; a < g.dim(); ++a) pos.push_back(v.pos[a]);
    verts.push_back({{"id", v.id}, {"pos", pos}, {"boundary", v.boundary}});
  }
  j["vertices"] = std::move(verts);
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"tail", e.tail}, {"head", e.head}, {"length", e.length}});
  j["edges"] = std::move(edges);
  const auto& d = g.domain();
  if (d.kind != DomainKind::None) {
    json dom{{"kind", domain_name(d.kind)}};
    if (d.kind == DomainKind::Box || d.kind == DomainKind::Torus) {
      dom["lo"] = {d.lo.x(), d.lo.y()};
      dom["hi"] = {d.hi.x(), d.hi.y()};
    } else {
      dom["radius"] = d.radius;
      if (d.kind == DomainKind::Disc) dom["center"] = {d.center.x(), d.center.y()};
    }
    j["domain"] = std::move(dom);
  }
  if (g.allow_disconnected()) j["allow_disconnected"] = true;
  return j;
}

MetricGraph graph_from_json(const json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    if (dim != 2 && dim != 3) throw Error(ErrorKind::InvalidGraph, "dim must be 2 or 3");
    const auto& jv = j.at("vertices");
    std::vector<Vertex> verts(jv.size());
    std::vector<char> filled(jv.size(), 0);
    for (const auto& x : jv) {
      const auto id = x.at("id").get<std::size_t>();
      if (id >= verts.size() || filled[id])
        throw Error(ErrorKind::InvalidGraph, "vertex ids must be unique and contiguous from 0");
      filled[id] = 1;
      const auto& p = x.at("pos");
      if (static_cast<int>(p.size()) != dim)
        throw Error(ErrorKind::InvalidGraph, "vertex " + std::to_string(id) + " has wrong dimension");
      Vertex v;
      v.id = id;
      for (int a = 0; a < dim; ++a) v.pos[a] = p[a].get<double>();
      v.boundary = x.value("boundary", false);
      verts[id] = v;
    }
    Domain dom;
    if (j.contains("domain")) {
      const auto& d = j.at("domain");
      dom.kind = domain_kind(d.at("kind").get<std::string>());
      if (d.contains("lo")) dom.lo = {d["lo"][0].get<double>(), d["lo"][1].get<double>()};
      if (d.contains("hi")) dom.hi = {d["hi"][0].get<double>(), d["hi"][1].get<double>()};
      if (d.contains("center")) dom.center = {d["center"][0].get<double>(), d["center"][1].get<double>()};
      dom.radius = d.value("radius", 1.0);
    }
    std::vector<Edge> edges;
    for (const auto& x : j.at("edges")) {
      Edge e;
      e.tail = x.at("tail").get<std::size_t>();
      e.head = x.at("head").get<std::size_t>();
      if (e.tail >= verts.size() || e.head >= verts.size())
        throw Error(ErrorKind::InvalidGraph, "edge references a missing vertex");
      if (x.contains("length") && !x["length"].is_null()) {
        e.length = x["length"].get<double>();
      } else {
        e.length = (verts[e.head].pos - verts[e.tail].pos).norm();
      }
      edges.push_back(e);
    }
    return MetricGraph(dim, std::move(verts), std::move(edges), dom,
                       j.value("allow_disconnected", false));
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::InvalidGraph, std::string("malformed graph JSON: ") + ex.what());
  }
}

MetricGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::IoError, "cannot parse '" + path + "': " + ex.what());
  }
  return graph_from_json(j);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void save_graph(const MetricGraph& g, const std::string& path) {
  write_text_file(path, graph_to_json(g).dump(1) + "\n");
}

}  // namespace metriq
