#include "poincarekit/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "poincarekit/errors.hpp"
#include "poincarekit/util.hpp"

namespace poincarekit {
namespace io {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open file '" + path + "' for writing");
  return out;
}

struct ParsedVertices {
  std::vector<long long> ids;            // sorted original ids
  std::map<long long, int> index_of;     // original id -> dense index
  Eigen::VectorXd measure;
};

ParsedVertices parse_vertices(const json& j) {
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw InputError("graph JSON needs a 'vertices' array");
  ParsedVertices out;
  std::map<long long, double> by_id;
  for (const auto& v : j["vertices"]) {
    if (!v.contains("id") || !v.contains("measure"))
      throw InputError("graph vertex needs 'id' and 'measure'");
    const long long id = v["id"].get<long long>();
    if (!by_id.emplace(id, v["measure"].get<double>()).second)
      throw InputError("duplicate vertex id " + std::to_string(id));
  }
  out.measure.resize(static_cast<int>(by_id.size()));
  int idx = 0;
  for (const auto& [id, m] : by_id) {
    out.ids.push_back(id);
    out.index_of[id] = idx;
    out.measure[idx] = m;
    ++idx;
  }
  return out;
}

std::vector<std::array<int, 2>> parse_edges(const json& j, const ParsedVertices& verts) {
  if (!j.contains("edges") || !j["edges"].is_array())
    throw InputError("graph JSON needs an 'edges' array");
  std::vector<std::array<int, 2>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw InputError("edge must be a pair [u, v]");
    const long long a = e[0].get<long long>();
    const long long b = e[1].get<long long>();
    const auto ia = verts.index_of.find(a);
    const auto ib = verts.index_of.find(b);
    if (ia == verts.index_of.end() || ib == verts.index_of.end())
      throw InputError("edge references unknown vertex id");
    edges.push_back({ia->second, ib->second});
  }
  return edges;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

bool numeric_cell(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end != s.c_str();
}

} // namespace

MeasuredGraph graph_from_json(const json& j) {
  const ParsedVertices verts = parse_vertices(j);
  const auto raw_edges = parse_edges(j, verts);
  const int n = static_cast<int>(verts.ids.size());

  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(verts.ids[i]);

  // simple-graph substrate: loops rejected, repeated pairs collapsed with a
  // note in the endpoint labels
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : raw_edges) {
    if (e[0] == e[1])
      throw InputError("self-loop in simple graph input (use the quotient format "
                       "for loops)");
    const auto key = std::minmax(e[0], e[1]);
    if (!seen.insert(key).second) {
      for (int endpoint : {key.first, key.second}) {
        if (labels[endpoint].find("+collapsed-edge") == std::string::npos)
          labels[endpoint] += "+collapsed-edge";
      }
      continue;
    }
    edges.emplace_back(e[0], e[1]);
  }
  return MeasuredGraph::from_edges(n, edges, verts.measure, std::move(labels));
}

json graph_to_json(const MeasuredGraph& graph) {
  json j;
  j["schema_version"] = kSchemaVersion;
  json verts = json::array();
  auto vertex_id = [&](int v) -> long long {
    if (graph.has_labels()) {
      const std::string& label = graph.label(v);
      char* end = nullptr;
      const long long id = std::strtoll(label.c_str(), &end, 10);
      if (end != label.c_str() && *end == '\0') return id;
    }
    return v;
  };
  for (int v = 0; v < graph.vertex_count(); ++v)
    verts.push_back({{"id", vertex_id(v)}, {"measure", graph.measure_vector()[v]}});
  j["vertices"] = std::move(verts);
  json edges = json::array();
  for (int v = 0; v < graph.vertex_count(); ++v)
    for (int w : graph.neighbors(v))
      if (v < w) edges.push_back({vertex_id(v), vertex_id(w)});
  j["edges"] = std::move(edges);
  return j;
}

MeasuredGraph read_graph_json(const std::string& path) {
  return graph_from_json(read_json_file(path));
}

void write_graph_json(const MeasuredGraph& graph, const std::string& path) {
  write_json_file(graph_to_json(graph), path);
}

MeasuredGraph read_graph_csv(const std::string& edges_path,
                             const std::string& measures_path) {
  std::map<long long, double> measures;
  {
    auto in = open_in(measures_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto cells = split_csv_line(line);
      if (cells.size() != 2) throw InputError("measure CSV needs 'id,measure' rows");
      if (!numeric_cell(cells[0])) continue; // header
      measures[std::stoll(cells[0])] = std::stod(cells[1]);
    }
  }
  if (measures.empty()) throw InputError("measure CSV has no rows");
  std::map<long long, int> index_of;
  Eigen::VectorXd measure(static_cast<int>(measures.size()));
  std::vector<std::string> labels;
  int idx = 0;
  for (const auto& [id, m] : measures) {
    index_of[id] = idx;
    measure[idx] = m;
    labels.push_back(std::to_string(id));
    ++idx;
  }
  std::vector<std::pair<int, int>> edges;
  {
    auto in = open_in(edges_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto cells = split_csv_line(line);
      if (cells.size() != 2) throw InputError("edge CSV needs 'u,v' rows");
      if (!numeric_cell(cells[0])) continue; // header
      const auto a = index_of.find(std::stoll(cells[0]));
      const auto b = index_of.find(std::stoll(cells[1]));
      if (a == index_of.end() || b == index_of.end())
        throw InputError("edge CSV references unknown vertex id");
      edges.emplace_back(a->second, b->second);
    }
  }
  return MeasuredGraph::from_edges(static_cast<int>(measures.size()), edges, measure,
                                   std::move(labels));
}

covering::MultiGraph multigraph_from_json(const json& j) {
  const ParsedVertices verts = parse_vertices(j);
  const auto edges = parse_edges(j, verts);
  return covering::MultiGraph(static_cast<int>(verts.ids.size()), edges, verts.measure);
}

covering::MultiGraph read_multigraph_json(const std::string& path) {
  return multigraph_from_json(read_json_file(path));
}

groups::GroupModel group_from_json(const json& j) {
  if (!j.contains("kind")) throw InputError("group JSON needs a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "free") return groups::GroupModel::free_group(j.at("rank").get<int>());
  if (kind == "free_abelian")
    return groups::GroupModel::free_abelian(j.at("rank").get<int>());
  if (kind == "matrix") {
    const auto& gens = j.at("generators");
    if (!gens.is_array() || gens.empty())
      throw InputError("matrix group needs a nonempty 'generators' array");
    const int dim = static_cast<int>(gens[0].size());
    std::vector<std::vector<mpz_class>> mats;
    for (const auto& g : gens) {
      if (static_cast<int>(g.size()) != dim)
        throw InputError("matrix generator rows are inconsistent");
      std::vector<mpz_class> m;
      for (const auto& row : g) {
        if (static_cast<int>(row.size()) != dim)
          throw InputError("matrix generator is not square");
        for (const auto& entry : row) m.emplace_back(entry.get<long>());
      }
      mats.push_back(std::move(m));
    }
    return groups::GroupModel::matrix_group(dim, std::move(mats));
  }
  if (kind == "product") {
    std::vector<groups::GroupModel> factors;
    for (const auto& f : j.at("factors")) factors.push_back(group_from_json(f));
    return groups::GroupModel::direct_product(std::move(factors));
  }
  throw InputError("unknown group kind '" + kind + "'");
}

groups::GroupModel read_group_json(const std::string& path) {
  return group_from_json(read_json_file(path));
}

json profile_to_json(const GrowthProfile& profile) {
  json j;
  j["radii"] = profile.radii();
  j["values"] = profile.values();
  j["mode"] = to_string(profile.mode());
  j["saturated"] = profile.saturated();
  return j;
}

GrowthProfile profile_from_json(const json& j, GrowthMode default_mode) {
  GrowthMode mode = default_mode;
  if (j.contains("mode")) mode = growth_mode_from_string(j["mode"].get<std::string>());
  const bool saturated = j.value("saturated", false);
  return GrowthProfile(j.at("radii").get<std::vector<double>>(),
                       j.at("values").get<std::vector<double>>(), mode,
                       /*require_monotone=*/true, saturated);
}

void write_profile_csv(const GrowthProfile& profile, const std::string& path) {
  auto out = open_out(path);
  out << "radius,value\n";
  for (std::size_t i = 0; i < profile.size(); ++i)
    out << format_double(profile.radii()[i]) << ',' << format_double(profile.values()[i])
        << '\n';
}

GrowthProfile read_profile_csv(const std::string& path, GrowthMode mode) {
  auto in = open_in(path);
  std::vector<double> radii, values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) throw InputError("profile CSV needs 'radius,value' rows");
    if (!numeric_cell(cells[0])) continue; // header
    radii.push_back(std::stod(cells[0]));
    values.push_back(std::stod(cells[1]));
  }
  return GrowthProfile(std::move(radii), std::move(values), mode);
}

namespace {

poincare::GrowthInput growth_input_from_json(const json& j, GrowthMode default_mode) {
  if (j.contains("power")) {
    const auto& p = j["power"];
    return poincare::GrowthInput::power(p.at("coef").get<double>(),
                                        p.at("exponent").get<double>());
  }
  return poincare::GrowthInput::table(profile_from_json(j, default_mode));
}

} // namespace

poincare::BoundSpec bound_spec_from_json(const json& j) {
  poincare::BoundSpec spec;
  spec.kind = poincare::bound_kind_from_string(j.at("kind").get<std::string>());
  const json params = j.value("params", json::object());
  auto scalar = [&](const char* name, double& slot) {
    if (params.contains(name)) slot = params[name].get<double>();
  };
  scalar("C", spec.C);
  scalar("L", spec.L);
  scalar("c", spec.c);
  scalar("C0", spec.C0);
  scalar("delta", spec.delta);
  scalar("H", spec.H);
  scalar("D", spec.D);
  scalar("V0", spec.V0);
  scalar("nur", spec.nur);
  scalar("r0", spec.r0);
  if (params.contains("f"))
    spec.f = growth_input_from_json(params["f"],
                                    spec.kind == poincare::BoundKind::GraphLowerVertex
                                        ? GrowthMode::Absolute
                                        : GrowthMode::VertexRatio);
  if (params.contains("V"))
    spec.V = growth_input_from_json(params["V"], GrowthMode::Absolute);
  if (params.contains("FGamma"))
    spec.FGamma = growth_input_from_json(params["FGamma"], GrowthMode::Absolute);
  return spec;
}

poincare::BoundSpec read_bound_spec_json(const std::string& path) {
  return bound_spec_from_json(read_json_file(path));
}

json net_to_json(const discretize::Net& net) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["epsilon"] = net.epsilon;
  j["centers"] = net.centers;
  j["quotient"] = graph_to_json(net.quotient);
  json assignment = json::object();
  for (int v = 0; v < net.host.vertex_count(); ++v) {
    json covers = json::array();
    for (int ci : net.assignment[v]) covers.push_back(net.centers[ci]);
    assignment[std::to_string(v)] = std::move(covers);
  }
  j["assignment"] = std::move(assignment);
  return j;
}

void write_net_json(const discretize::Net& net, const std::string& path) {
  write_json_file(net_to_json(net), path);
}

json poincare_reports_to_json(const std::vector<poincare::PoincareReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json item;
    item["center"] = r.center;
    item["R"] = r.R;
    item["sigma"] = r.sigma;
    item["lambda"] = r.lambda;
    item["empirical"] = r.empirical;
    if (r.optimal)
      item["optimal"] = *r.optimal;
    else
      item["optimal"] = nullptr;
    item["bound"] = r.bound;
    item["ratio"] = r.ratio;
    item["flags"] = r.flags;
    item["violation"] = r.violation;
    arr.push_back(std::move(item));
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["reports"] = std::move(arr);
  return j;
}

void write_poincare_reports_csv(const std::vector<poincare::PoincareReport>& reports,
                                const std::string& path) {
  auto out = open_out(path);
  out << "center,R,sigma,empirical,optimal,bound,ratio,flags\n";
  for (const auto& r : reports) {
    std::string flags;
    for (std::size_t i = 0; i < r.flags.size(); ++i) {
      if (i) flags += ';';
      flags += r.flags[i];
    }
    out << r.center << ',' << format_double(r.R) << ',' << format_double(r.sigma) << ','
        << format_double(r.empirical) << ','
        << (r.optimal ? format_double(*r.optimal) : std::string()) << ','
        << format_double(r.bound) << ',' << format_double(r.ratio) << ',' << flags
        << '\n';
  }
}

void write_check_rows_csv(const std::vector<discretize::TransferRow>& rows,
                          const std::string& path) {
  auto out = open_out(path);
  out << "name,R,lhs,rhs,ratio,flag\n";
  for (const auto& r : rows)
    out << r.name << ',' << format_double(r.R) << ',' << format_double(r.lhs) << ','
        << format_double(r.rhs) << ',' << format_double(r.ratio) << ',' << r.flag
        << '\n';
}

void write_cover_report_csv(const covering::VolumeComparisonReport& report,
                            const std::string& path) {
  auto out = open_out(path);
  out << "R,lhs,rhs,ratio\n";
  for (const auto& r : report.rows)
    out << format_double(r.R) << ',' << format_double(r.lhs) << ','
        << format_double(r.rhs) << ',' << format_double(r.ratio) << '\n';
}

void write_text_file(const std::string& path, const std::string& contents) {
  auto out = open_out(path);
  out << contents;
}

json read_json_file(const std::string& path) {
  auto in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const json& j, const std::string& path) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

} // namespace io
} // namespace poincarekit
