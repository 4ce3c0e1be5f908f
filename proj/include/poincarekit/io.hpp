#ifndef POINCAREKIT_IO_HPP
#define POINCAREKIT_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "poincarekit/covering.hpp"
#include "poincarekit/discretize.hpp"
#include "poincarekit/groups.hpp"
#include "poincarekit/growth_profile.hpp"
#include "poincarekit/measured_graph.hpp"
#include "poincarekit/poincare.hpp"

namespace poincarekit {
namespace io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// {"vertices":[{"id":int,"measure":float}],"edges":[[int,int],...]}
MeasuredGraph graph_from_json(const json& j);
json graph_to_json(const MeasuredGraph& graph);
MeasuredGraph read_graph_json(const std::string& path);
void write_graph_json(const MeasuredGraph& graph, const std::string& path);

// CSV edge list "u,v" per line plus CSV measure file "id,measure" per line.
MeasuredGraph read_graph_csv(const std::string& edges_path,
                             const std::string& measures_path);

// Same JSON format, loops and repeated pairs allowed.
covering::MultiGraph multigraph_from_json(const json& j);
covering::MultiGraph read_multigraph_json(const std::string& path);

// {"kind":"free","rank":2} | {"kind":"free_abelian","rank":n}
// | {"kind":"matrix","generators":[[[int]]]} | {"kind":"product","factors":[...]}
groups::GroupModel group_from_json(const json& j);
groups::GroupModel read_group_json(const std::string& path);

json profile_to_json(const GrowthProfile& profile);
GrowthProfile profile_from_json(const json& j, GrowthMode default_mode);
void write_profile_csv(const GrowthProfile& profile, const std::string& path);
GrowthProfile read_profile_csv(const std::string& path, GrowthMode mode);

// {"kind":...,"params":{...}} with growth slots as {"radii":[],"values":[]}
// or {"power":{"coef":..,"exponent":..}}
poincare::BoundSpec bound_spec_from_json(const json& j);
poincare::BoundSpec read_bound_spec_json(const std::string& path);

json net_to_json(const discretize::Net& net);
void write_net_json(const discretize::Net& net, const std::string& path);

json poincare_reports_to_json(const std::vector<poincare::PoincareReport>& reports);
void write_poincare_reports_csv(const std::vector<poincare::PoincareReport>& reports,
                                const std::string& path);

// name,R,lhs,rhs,ratio,flag
void write_check_rows_csv(const std::vector<discretize::TransferRow>& rows,
                          const std::string& path);
// R,lhs,rhs,ratio
void write_cover_report_csv(const covering::VolumeComparisonReport& report,
                            const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);
json read_json_file(const std::string& path);
void write_json_file(const json& j, const std::string& path);

} // namespace io
} // namespace poincarekit

#endif
