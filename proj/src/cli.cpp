#include "poincarekit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include "poincarekit/covering.hpp"
#include "poincarekit/discretize.hpp"
#include "poincarekit/errors.hpp"
#include "poincarekit/groups.hpp"
#include "poincarekit/io.hpp"
#include "poincarekit/mmgraph.hpp"
#include "poincarekit/pipeline.hpp"
#include "poincarekit/poincare.hpp"
#include "poincarekit/util.hpp"

namespace poincarekit {
namespace cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 2;
constexpr int kExitInput = 3;
constexpr int kExitResource = 4;

MeasuredGraph load_graph(const std::string& arg) {
  // shorthands: grid:RxC, path:N, cycle:N, complete:N; otherwise a JSON file
  const auto colon = arg.find(':');
  if (colon != std::string::npos) {
    const std::string kind = arg.substr(0, colon);
    const std::string params = arg.substr(colon + 1);
    if (kind == "grid") {
      const auto x = params.find('x');
      if (x == std::string::npos) throw InputError("grid shorthand is grid:RxC");
      return make_grid(std::stoi(params.substr(0, x)), std::stoi(params.substr(x + 1)));
    }
    if (kind == "path") return make_path(std::stoi(params));
    if (kind == "cycle") return make_cycle(std::stoi(params));
    if (kind == "complete") return make_complete(std::stoi(params));
    throw InputError("unknown graph shorthand '" + kind + "'");
  }
  return io::read_graph_json(arg);
}

groups::GroupModel load_group(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon != std::string::npos) {
    const std::string kind = arg.substr(0, colon);
    const int rank = std::stoi(arg.substr(colon + 1));
    if (kind == "free") return groups::GroupModel::free_group(rank);
    if (kind == "free_abelian" || kind == "abelian")
      return groups::GroupModel::free_abelian(rank);
    throw InputError("unknown group shorthand '" + kind + "' (use free:k, "
                     "free_abelian:n, or a JSON file)");
  }
  return io::read_group_json(arg);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    const auto dots = cell.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(cell.substr(0, dots));
      const int hi = std::stoi(cell.substr(dots + 2));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(std::stod(cell));
    }
  }
  if (out.empty()) throw InputError("empty numeric list '" + s + "'");
  return out;
}

// exact host growth table covering [0.5, needed] in half-integer steps,
// clamped to the diameter (the table then saturates, which stays exact)
GrowthProfile host_profile(const MeasuredGraph& host, double needed) {
  const int diameter = graph_diameter(host);
  const double top = std::min(needed, diameter + 0.5);
  return growth_function(host, half_integer_radii(std::max(top, 1.0)),
                         GrowthMode::HalfBallRatio);
}

struct CommonOutput {
  std::string output;
  std::string format = "json";
};

void add_output_flags(CLI::App* cmd, CommonOutput& out) {
  cmd->add_option("--output,-o", out.output, "report file path");
  cmd->add_option("--format", out.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"poincarekit: growth, discretization, and Poincare-constant toolkit "
               "for finite measured graphs"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap")
      ->envname("POINCAREKIT_THREADS");

  std::int64_t max_vertices = 1'000'000;
  std::int64_t max_quadruples = 10'000'000;
  app.add_option("--max-vertices", max_vertices, "vertex budget for enumerations");
  app.add_option("--max-quadruples", max_quadruples, "quadruple budget for delta");

  // ball
  auto* ball_cmd = app.add_subcommand("ball", "closed ball of a measured graph");
  std::string ball_graph;
  int ball_center = 0;
  double ball_R = 0;
  CommonOutput ball_out;
  ball_cmd->add_option("--graph", ball_graph)->required();
  ball_cmd->add_option("--center", ball_center)->required();
  ball_cmd->add_option("--R", ball_R)->required();
  add_output_flags(ball_cmd, ball_out);

  // growth
  auto* growth_cmd = app.add_subcommand("growth", "growth profile of a graph or group");
  std::string growth_graph, growth_group, growth_radii, growth_mode = "vertex-ratio";
  int growth_rmax = -1;
  CommonOutput growth_out;
  growth_cmd->add_option("--graph", growth_graph);
  growth_cmd->add_option("--group", growth_group);
  growth_cmd->add_option("--radii", growth_radii, "comma list, .. ranges allowed");
  growth_cmd->add_option("--rmax", growth_rmax);
  growth_cmd->add_option("--mode", growth_mode)
      ->check(CLI::IsMember({"vertex-ratio", "half-ball-ratio", "absolute"}));
  add_output_flags(growth_cmd, growth_out);

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "windowed log-slope of a profile");
  std::string entropy_profile, entropy_window;
  CommonOutput entropy_out;
  entropy_cmd->add_option("--profile", entropy_profile, "profile CSV")->required();
  entropy_cmd->add_option("--window", entropy_window, "lo,hi")->required();
  add_output_flags(entropy_cmd, entropy_out);

  // delta
  auto* delta_cmd = app.add_subcommand("delta", "four-point Gromov delta");
  std::string delta_graph, delta_sample = "all";
  std::uint64_t delta_seed = 0;
  bool delta_seed_set = false;
  CommonOutput delta_out;
  delta_cmd->add_option("--graph", delta_graph)->required();
  delta_cmd->add_option("--sample", delta_sample, "'all' or a quadruple count");
  delta_cmd->add_option("--seed", delta_seed)->each([&](const std::string&) {
    delta_seed_set = true;
  });
  add_output_flags(delta_cmd, delta_out);

  // systole
  auto* systole_cmd = app.add_subcommand("systole", "pointwise displacement minimum");
  std::string systole_group;
  int systole_sample_radius = 0, systole_gamma_radius = 3;
  CommonOutput systole_out;
  systole_cmd->add_option("--group", systole_group)->required();
  systole_cmd->add_option("--sample-radius", systole_sample_radius)->required();
  systole_cmd->add_option("--gamma-radius", systole_gamma_radius);
  add_output_flags(systole_cmd, systole_out);

  // net
  auto* net_cmd = app.add_subcommand("net", "epsilon-net of a host graph plus checks");
  std::string net_host, net_volume_R, net_report;
  double net_epsilon = 1.0;
  double net_L = 1.0;
  bool net_check_multiplicity = false, net_check_qi = false;
  CommonOutput net_out;
  net_cmd->add_option("--host", net_host)->required();
  net_cmd->add_option("--epsilon", net_epsilon)->required();
  net_cmd->add_flag("--check-multiplicity", net_check_multiplicity);
  net_cmd->add_option("--L", net_L, "dilation for the multiplicity check");
  net_cmd->add_flag("--check-qi", net_check_qi);
  net_cmd->add_option("--check-volume", net_volume_R, "R list for volume transfer");
  net_cmd->add_option("--report", net_report, "check rows CSV path");
  add_output_flags(net_cmd, net_out);

  // cover
  auto* cover_cmd = app.add_subcommand("cover", "universal cover ball of a quotient");
  std::string cover_quotient, cover_volume_R;
  int cover_R = 0, cover_deck = -1;
  CommonOutput cover_out;
  cover_cmd->add_option("--quotient", cover_quotient)->required();
  cover_cmd->add_option("--R", cover_R)->required();
  cover_cmd->add_option("--deck", cover_deck, "tabulate deck growth up to this radius");
  cover_cmd->add_option("--check-volume", cover_volume_R, "R list");
  add_output_flags(cover_cmd, cover_out);

  // constant
  auto* const_cmd = app.add_subcommand("constant", "empirical/optimal Poincare constant");
  std::string const_graph, const_families;
  int const_center = 0;
  double const_R = 1, const_sigma = 2, const_lambda = 1;
  int const_trials = 32;
  std::uint64_t const_seed = 0;
  bool const_optimal = false;
  CommonOutput const_out;
  const_cmd->add_option("--graph", const_graph)->required();
  const_cmd->add_option("--center", const_center)->required();
  const_cmd->add_option("--R", const_R)->required();
  const_cmd->add_option("--sigma", const_sigma)->required();
  const_cmd->add_option("--lambda", const_lambda);
  const_cmd->add_option("--families", const_families, "comma list of family names");
  const_cmd->add_option("--trials", const_trials);
  const_cmd->add_option("--seed", const_seed)->required();
  const_cmd->add_flag("--optimal", const_optimal, "also compute the sigma=2 optimum");
  add_output_flags(const_cmd, const_out);

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "evaluate one explicit bound formula");
  std::string bound_kind, bound_f, bound_V, bound_FGamma, bound_spec_file;
  double bound_sigma = 1, bound_R = 0;
  bool bound_override = false;
  poincare::BoundSpec bspec;
  CommonOutput bound_out;
  bound_cmd->add_option("--kind", bound_kind);
  bound_cmd->add_option("--spec", bound_spec_file, "BoundSpec JSON file");
  bound_cmd->add_option("--sigma", bound_sigma)->required();
  bound_cmd->add_option("--R", bound_R)->required();
  bound_cmd->add_option("--C", bspec.C);
  bound_cmd->add_option("--L", bspec.L);
  bound_cmd->add_option("--c", bspec.c);
  bound_cmd->add_option("--C0", bspec.C0);
  bound_cmd->add_option("--delta", bspec.delta);
  bound_cmd->add_option("--H", bspec.H);
  bound_cmd->add_option("--D", bspec.D);
  bound_cmd->add_option("--V0", bspec.V0);
  bound_cmd->add_option("--nur", bspec.nur);
  bound_cmd->add_option("--r0", bspec.r0);
  bound_cmd->add_option("--f", bound_f, "growth profile CSV");
  bound_cmd->add_option("--V", bound_V, "volume profile CSV");
  bound_cmd->add_option("--FGamma", bound_FGamma, "orbit growth CSV");
  bound_cmd->add_flag("--allow-out-of-regime", bound_override);
  add_output_flags(bound_cmd, bound_out);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "bound verification suites");
  std::string verify_bound, verify_suite = "random", verify_graph, verify_spec_file;
  std::string verify_sigmas = "1,2,3", verify_R, verify_centers = "all";
  int verify_n = 300, verify_nmax = 150, verify_u = 10, verify_trials = 32;
  std::uint64_t verify_seed = 0;
  bool verify_override = false;
  CommonOutput verify_out;
  verify_cmd->add_option("--bound", verify_bound)->required();
  verify_cmd->add_option("--suite", verify_suite)
      ->check(CLI::IsMember({"random", "instances"}));
  verify_cmd->add_option("--n", verify_n, "random suite: number of graphs");
  verify_cmd->add_option("--nmax", verify_nmax, "random suite: max vertices");
  verify_cmd->add_option("--u-per-graph", verify_u);
  verify_cmd->add_option("--sigma", verify_sigmas, "comma list");
  verify_cmd->add_option("--seed", verify_seed)->required();
  verify_cmd->add_option("--graph", verify_graph, "instances suite: graph");
  verify_cmd->add_option("--spec", verify_spec_file, "instances suite: BoundSpec JSON");
  verify_cmd->add_option("--R", verify_R, "instances suite: radius list");
  verify_cmd->add_option("--centers", verify_centers, "'all' or id list");
  verify_cmd->add_option("--trials", verify_trials);
  verify_cmd->add_flag("--allow-out-of-regime", verify_override);
  add_output_flags(verify_cmd, verify_out);

  // pipeline
  auto* pipe_cmd = app.add_subcommand("pipeline", "epsilon = 1 proof-chain reproduction");
  std::string pipe_host, pipe_sigmas = "1", pipe_R, pipe_centers;
  double pipe_r0 = 1, pipe_L = 1;
  int pipe_trials = 16, pipe_u = 20;
  std::uint64_t pipe_seed = 0;
  CommonOutput pipe_out;
  pipe_cmd->add_option("--host", pipe_host)->required();
  pipe_cmd->add_option("--sigma", pipe_sigmas, "comma list");
  pipe_cmd->add_option("--r0", pipe_r0);
  pipe_cmd->add_option("--L", pipe_L);
  pipe_cmd->add_option("--seed", pipe_seed)->required();
  pipe_cmd->add_option("--trials", pipe_trials);
  pipe_cmd->add_option("--u-count", pipe_u, "random u for the gradient cells");
  pipe_cmd->add_option("--R", pipe_R, "report radii list");
  pipe_cmd->add_option("--centers", pipe_centers, "center id list");
  add_output_flags(pipe_cmd, pipe_out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  if (threads > 0) set_thread_cap(threads);

  // ---- dispatch ----
  if (*ball_cmd) {
    const MeasuredGraph g = load_graph(ball_graph);
    const auto members = ball(g, ball_center, ball_R);
    double mass = 0;
    for (int v : members) mass += g.measure_vector()[v];
    std::cout << "ball center=" << ball_center << " R=" << format_double(ball_R)
              << " size=" << members.size() << " measure=" << format_double(mass)
              << "\n";
    if (!ball_out.output.empty()) {
      if (ball_out.format == "csv") {
        std::string text = "vertex,measure\n";
        for (int v : members)
          text += std::to_string(v) + "," + format_double(g.measure_vector()[v]) + "\n";
        io::write_text_file(ball_out.output, text);
      } else {
        io::json j;
        j["schema_version"] = io::kSchemaVersion;
        j["center"] = ball_center;
        j["R"] = ball_R;
        j["vertices"] = members;
        j["measure"] = mass;
        io::write_json_file(j, ball_out.output);
      }
    }
    return kExitOk;
  }

  if (*growth_cmd) {
    std::optional<GrowthProfile> profile;
    if (!growth_group.empty()) {
      if (growth_rmax < 0) throw InputError("growth --group needs --rmax");
      profile = groups::growth_series(load_group(growth_group), growth_rmax,
                                      groups::MeasureRule::counting(), max_vertices);
    } else if (!growth_graph.empty()) {
      const MeasuredGraph g = load_graph(growth_graph);
      std::vector<double> radii;
      if (!growth_radii.empty())
        radii = parse_list(growth_radii);
      else if (growth_rmax >= 0)
        radii = integer_radii(growth_rmax);
      else
        throw InputError("growth --graph needs --radii or --rmax");
      profile = growth_function(g, radii, growth_mode_from_string(growth_mode));
    } else {
      throw InputError("growth needs --graph or --group");
    }
    for (std::size_t i = 0; i < profile->size(); ++i)
      std::cout << "growth R=" << format_double(profile->radii()[i])
                << " value=" << format_double(profile->values()[i]) << "\n";
    if (!growth_out.output.empty()) {
      if (growth_out.format == "csv")
        io::write_profile_csv(*profile, growth_out.output);
      else {
        io::json j = io::profile_to_json(*profile);
        j["schema_version"] = io::kSchemaVersion;
        io::write_json_file(j, growth_out.output);
      }
    }
    return kExitOk;
  }

  if (*entropy_cmd) {
    const auto window = parse_list(entropy_window);
    if (window.size() != 2) throw InputError("--window needs lo,hi");
    const GrowthProfile profile =
        io::read_profile_csv(entropy_profile, GrowthMode::Absolute);
    const auto est = groups::entropy_estimate(profile, window[0], window[1]);
    std::cout << "entropy slope=" << format_double(est.slope)
              << " residual=" << format_double(est.residual) << " points=" << est.points
              << "\n";
    if (!entropy_out.output.empty()) {
      io::json j;
      j["schema_version"] = io::kSchemaVersion;
      j["slope"] = est.slope;
      j["residual"] = est.residual;
      j["points"] = est.points;
      io::write_json_file(j, entropy_out.output);
    }
    return kExitOk;
  }

  if (*delta_cmd) {
    const MeasuredGraph g = load_graph(delta_graph);
    groups::DeltaOptions opts;
    opts.max_quadruples = max_quadruples;
    if (delta_sample == "all") {
      opts.exhaustive = true;
    } else {
      if (!delta_seed_set)
        throw InputError("delta --sample N needs --seed (randomized command)");
      opts.exhaustive = false;
      opts.sample_count = std::stoll(delta_sample);
      opts.seed = delta_seed;
    }
    const double delta = groups::hyperbolicity_delta(g, opts);
    std::cout << "delta value=" << format_double(delta)
              << " mode=" << (opts.exhaustive ? "exact" : "sampled") << "\n";
    if (!delta_out.output.empty()) {
      io::json j;
      j["schema_version"] = io::kSchemaVersion;
      j["delta"] = delta;
      j["exact"] = opts.exhaustive;
      io::write_json_file(j, delta_out.output);
    }
    return kExitOk;
  }

  if (*systole_cmd) {
    const auto est = groups::systole_estimate(load_group(systole_group),
                                              systole_sample_radius, systole_gamma_radius,
                                              max_vertices);
    std::cout << "systole global=" << est.global << " samples=" << est.pointwise.size()
              << " flag=" << est.flag << "\n";
    if (!systole_out.output.empty()) {
      io::json j;
      j["schema_version"] = io::kSchemaVersion;
      j["global"] = est.global;
      j["sample_radius"] = est.sample_radius;
      j["gamma_radius"] = est.gamma_radius;
      j["flag"] = est.flag;
      io::json pw = io::json::array();
      for (std::size_t i = 0; i < est.pointwise.size(); ++i)
        pw.push_back({{"element", est.sample_keys[i]}, {"systole", est.pointwise[i]}});
      j["pointwise"] = std::move(pw);
      io::write_json_file(j, systole_out.output);
    }
    return kExitOk;
  }

  if (*net_cmd) {
    const MeasuredGraph host = load_graph(net_host);
    const discretize::Net net = discretize::build_net(host, net_epsilon);
    std::cout << "net epsilon=" << format_double(net.epsilon)
              << " centers=" << net.centers.size() << "\n";
    bool violation = false;
    std::vector<discretize::TransferRow> rows;
    double needed = 6.0 * net.epsilon + 0.5;
    if (net_check_multiplicity) needed = std::max(needed, 3.0 * net_L * net.epsilon + 0.5);
    std::vector<double> volume_R;
    if (!net_volume_R.empty()) {
      volume_R = parse_list(net_volume_R);
      for (double R : volume_R) needed = std::max(needed, 2.0 * R + 1.0);
    }
    const GrowthProfile f = host_profile(host, needed);
    if (net_check_multiplicity) {
      const auto rep = discretize::covering_multiplicity(net, net_L, f);
      std::cout << "net multiplicity=" << rep.multiplicity
                << " bound=" << format_double(rep.bound) << "\n";
      rows.push_back({"multiplicity", net_L, static_cast<double>(rep.multiplicity),
                      rep.bound, rep.multiplicity / rep.bound, ""});
    }
    if (net_check_qi) {
      const auto rep = discretize::qi_distortion_check(net, f);
      violation = violation || rep.any_violation;
      std::cout << "net qi worst_lower=" << format_double(rep.worst_lower)
                << " worst_upper=" << format_double(rep.worst_upper)
                << " pairs=" << rep.pairs_checked << "\n";
      rows.push_back({"qi-lower", 0, rep.worst_lower, 1.0, rep.worst_lower, ""});
      rows.push_back({"qi-upper", 0, rep.worst_upper, 1.0, rep.worst_upper, ""});
    }
    if (!volume_R.empty()) {
      const auto rep = discretize::volume_transfer_check(net, volume_R, f);
      violation = violation || rep.any_violation;
      for (const auto& row : rep.rows) {
        std::cout << "net " << row.name << " R=" << format_double(row.R)
                  << " ratio=" << format_double(row.ratio)
                  << (row.flag.empty() ? "" : " flag=" + row.flag) << "\n";
        rows.push_back(row);
      }
    }
    if (!net_report.empty()) io::write_check_rows_csv(rows, net_report);
    if (!net_out.output.empty()) io::write_net_json(net, net_out.output);
    return violation ? kExitViolation : kExitOk;
  }

  if (*cover_cmd) {
    const covering::MultiGraph quotient = io::read_multigraph_json(cover_quotient);
    int expansion = cover_R;
    std::vector<double> volume_R;
    if (!cover_volume_R.empty()) {
      volume_R = parse_list(cover_volume_R);
      const double top = *std::max_element(volume_R.begin(), volume_R.end());
      expansion = std::max(expansion,
                           static_cast<int>(top) + quotient.diameter());
    }
    if (cover_deck >= 0) expansion = std::max(expansion, cover_deck);
    const covering::CoverBall cover =
        covering::universal_cover_ball(quotient, 0, expansion, max_vertices);
    std::cout << "cover radius=" << cover.radius() << " vertices=" << cover.vertex_count()
              << " girth=" << quotient.girth() << "\n";
    io::json j;
    j["schema_version"] = io::kSchemaVersion;
    j["radius"] = cover.radius();
    j["vertices"] = cover.vertex_count();
    j["quotient_girth"] = quotient.girth();
    if (cover_deck >= 0) {
      const GrowthProfile deck = covering::deck_growth(cover, cover_deck);
      for (std::size_t i = 0; i < deck.size(); ++i)
        std::cout << "deck R=" << format_double(deck.radii()[i])
                  << " F=" << format_double(deck.values()[i]) << "\n";
      j["deck_growth"] = io::profile_to_json(deck);
    }
    bool violation = false;
    if (!volume_R.empty()) {
      std::vector<int> Rs;
      for (double R : volume_R) Rs.push_back(static_cast<int>(R));
      const auto rep = covering::volume_comparison_check(cover, Rs);
      violation = rep.any_violation;
      for (const auto& row : rep.rows)
        std::cout << "cover volume R=" << format_double(row.R)
                  << " ratio=" << format_double(row.ratio) << "\n";
      if (!cover_out.output.empty() && cover_out.format == "csv")
        io::write_cover_report_csv(rep, cover_out.output);
      io::json rows = io::json::array();
      for (const auto& row : rep.rows)
        rows.push_back({{"R", row.R},
                        {"lhs", row.lhs},
                        {"rhs", row.rhs},
                        {"ratio", row.ratio},
                        {"centers", row.centers_checked}});
      j["volume_comparison"] = std::move(rows);
      j["V0"] = rep.V0;
      j["D"] = rep.D;
    }
    if (!cover_out.output.empty() && cover_out.format == "json")
      io::write_json_file(j, cover_out.output);
    return violation ? kExitViolation : kExitOk;
  }

  if (*const_cmd) {
    const MeasuredGraph g = load_graph(const_graph);
    poincare::PoincareInstance inst{const_center, const_R, const_sigma, const_lambda};
    poincare::EmpiricalOptions opts;
    opts.trials = const_trials;
    opts.seed = const_seed;
    if (!const_families.empty()) {
      opts.families.clear();
      std::stringstream ss(const_families);
      std::string name;
      while (std::getline(ss, name, ','))
        opts.families.push_back(poincare::family_from_string(name));
    }
    const auto emp = poincare::empirical_constant(g, inst, opts);
    std::cout << "constant empirical=" << format_double(emp.value)
              << " family=" << emp.family << "\n";
    io::json j;
    j["schema_version"] = io::kSchemaVersion;
    j["empirical"] = emp.value;
    j["family"] = emp.family;
    if (const_optimal || const_sigma == 2.0) {
      if (const_sigma != 2.0)
        throw InputError("--optimal needs sigma = 2");
      const auto opt = poincare::optimal_constant_sigma2(g, inst);
      std::cout << "constant optimal=" << format_double(opt.value)
                << " residual=" << format_double(opt.residual) << "\n";
      j["optimal"] = opt.value;
      j["residual"] = opt.residual;
    }
    if (!const_out.output.empty()) io::write_json_file(j, const_out.output);
    return kExitOk;
  }

  if (*bound_cmd) {
    poincare::BoundSpec spec;
    if (!bound_spec_file.empty()) {
      spec = io::read_bound_spec_json(bound_spec_file);
    } else {
      if (bound_kind.empty()) throw InputError("bound needs --kind or --spec");
      spec = bspec;
      spec.kind = poincare::bound_kind_from_string(bound_kind);
    }
    if (!bound_f.empty())
      spec.f = poincare::GrowthInput::table(io::read_profile_csv(
          bound_f, spec.kind == poincare::BoundKind::GraphLowerVertex
                       ? GrowthMode::Absolute
                       : GrowthMode::VertexRatio));
    if (!bound_V.empty())
      spec.V = poincare::GrowthInput::table(
          io::read_profile_csv(bound_V, GrowthMode::Absolute));
    if (!bound_FGamma.empty())
      spec.FGamma = poincare::GrowthInput::table(
          io::read_profile_csv(bound_FGamma, GrowthMode::Absolute));
    const auto eval = poincare::bound_evaluate(spec, bound_R, bound_sigma, bound_override);
    std::cout << "bound kind=" << poincare::to_string(spec.kind)
              << " R=" << format_double(bound_R) << " sigma=" << format_double(bound_sigma)
              << " value=" << format_double(eval.value)
              << (eval.out_of_regime ? " flag=out-of-regime" : "") << "\n";
    for (const auto& [name, value] : eval.derived)
      std::cout << "bound derived " << name << "=" << format_double(value) << "\n";
    if (!bound_out.output.empty()) {
      io::json j;
      j["schema_version"] = io::kSchemaVersion;
      j["kind"] = poincare::to_string(spec.kind);
      j["R"] = bound_R;
      j["sigma"] = bound_sigma;
      j["value"] = eval.value;
      j["prefactor"] = eval.prefactor;
      j["valid_R_min"] = eval.valid_R_min;
      j["out_of_regime"] = eval.out_of_regime;
      j["derived"] = eval.derived;
      io::write_json_file(j, bound_out.output);
    }
    return kExitOk;
  }

  if (*verify_cmd) {
    const auto kind = poincare::bound_kind_from_string(verify_bound);
    if (verify_suite == "random") {
      poincare::RandomSuiteOptions opts;
      opts.graphs = verify_n;
      opts.max_vertices = verify_nmax;
      opts.u_per_graph = verify_u;
      opts.seed = verify_seed;
      opts.sigmas = parse_list(verify_sigmas);
      const auto result = poincare::random_theorem_suite(kind, opts);
      std::cout << "verify bound=" << verify_bound << " cells=" << result.cells_checked
                << " violations=" << result.violations
                << " worst=" << format_double(result.worst_ratio) << "\n";
      if (!verify_out.output.empty()) {
        io::json j;
        j["schema_version"] = io::kSchemaVersion;
        j["bound"] = verify_bound;
        j["cells"] = result.cells_checked;
        j["violations"] = result.violations;
        j["worst_ratio"] = result.worst_ratio;
        io::write_json_file(j, verify_out.output);
      }
      return result.violations == 0 ? kExitOk : kExitViolation;
    }
    // instances suite
    if (verify_graph.empty() || verify_spec_file.empty() || verify_R.empty())
      throw InputError("verify --suite instances needs --graph, --spec, and --R");
    const MeasuredGraph g = load_graph(verify_graph);
    const poincare::BoundSpec spec = io::read_bound_spec_json(verify_spec_file);
    std::vector<int> centers;
    if (verify_centers == "all") {
      for (int v = 0; v < g.vertex_count(); ++v) centers.push_back(v);
    } else {
      for (double c : parse_list(verify_centers)) centers.push_back(static_cast<int>(c));
    }
    std::vector<poincare::PoincareInstance> instances;
    for (double sigma : parse_list(verify_sigmas))
      for (double R : parse_list(verify_R))
        for (int c : centers) instances.push_back({c, R, sigma, 1.0});
    poincare::EmpiricalOptions opts;
    opts.trials = verify_trials;
    opts.seed = verify_seed;
    const auto result = poincare::verify_bounds(g, instances, spec, opts, verify_override);
    for (const auto& r : result.reports)
      std::cout << "verify center=" << r.center << " R=" << format_double(r.R)
                << " sigma=" << format_double(r.sigma)
                << " ratio=" << format_double(r.ratio)
                << (r.violation ? " VIOLATION" : "") << "\n";
    if (!verify_out.output.empty()) {
      if (verify_out.format == "csv")
        io::write_poincare_reports_csv(result.reports, verify_out.output);
      else
        io::write_json_file(io::poincare_reports_to_json(result.reports),
                            verify_out.output);
    }
    return result.any_violation ? kExitViolation : kExitOk;
  }

  if (*pipe_cmd) {
    const MeasuredGraph host = load_graph(pipe_host);
    pipeline::PipelineConfig config;
    config.sigmas = parse_list(pipe_sigmas);
    config.r0 = pipe_r0;
    config.L = pipe_L;
    config.seed = pipe_seed;
    config.trials = pipe_trials;
    config.lemma35_u_count = pipe_u;
    if (!pipe_R.empty()) config.report_R = parse_list(pipe_R);
    if (!pipe_centers.empty())
      for (double c : parse_list(pipe_centers)) config.centers.push_back(static_cast<int>(c));

    pipeline::PipelineReport report;
    std::string failure;
    try {
      pipeline::run_pipeline(host, config, report);
    } catch (const std::exception& e) {
      failure = e.what(); // partial report still written below
    }

    io::json j;
    j["schema_version"] = io::kSchemaVersion;
    j["epsilon"] = report.epsilon;
    j["host_vertices"] = report.host_vertices;
    j["host_diameter"] = report.host_diameter;
    j["f_3_5"] = report.f_3_5;
    j["f_7_5"] = report.f_7_5;
    j["lambda"] = report.lambda;
    j["valid_R_min"] = report.valid_R_min;
    j["regime_reachable"] = report.regime_reachable;
    j["regime_flag"] = report.regime_flag;
    io::json cloc = io::json::array();
    for (const auto& [sigma, c] : report.C_loc)
      cloc.push_back({{"sigma", sigma}, {"C_loc", c}});
    j["C_loc"] = std::move(cloc);
    io::json c0 = io::json::array();
    for (const auto& [sigma, c] : report.C0)
      c0.push_back({{"sigma", sigma}, {"C0", c}});
    j["C0"] = std::move(c0);
    if (report.multiplicity)
      j["multiplicity"] = {{"value", report.multiplicity->multiplicity},
                           {"bound", report.multiplicity->bound}};
    if (report.qi)
      j["qi"] = {{"worst_lower", report.qi->worst_lower},
                 {"worst_upper", report.qi->worst_upper},
                 {"pairs", report.qi->pairs_checked},
                 {"violations", report.qi->violations.size()}};
    if (report.transfer) {
      io::json rows = io::json::array();
      for (const auto& row : report.transfer->rows)
        rows.push_back({{"name", row.name},
                        {"R", row.R},
                        {"lhs", row.lhs},
                        {"rhs", row.rhs},
                        {"ratio", row.ratio},
                        {"flag", row.flag}});
      j["volume_transfer"] = std::move(rows);
    }
    io::json lemma = io::json::array();
    for (const auto& cell : report.lemma35)
      lemma.push_back({{"center", cell.center},
                       {"R", cell.R},
                       {"sigma", cell.sigma},
                       {"ratio", cell.check.ratio},
                       {"truncated", cell.check.truncated},
                       {"violation", cell.check.violation}});
    j["lemma35"] = std::move(lemma);
    j["ratios"] = io::poincare_reports_to_json(report.ratios)["reports"];
    j["any_violation"] = report.any_violation;
    j["complete"] = report.complete;
    if (!failure.empty()) j["aborted"] = failure;
    if (!pipe_out.output.empty()) io::write_json_file(j, pipe_out.output);

    std::cout << "pipeline lambda=" << format_double(report.lambda)
              << " valid_R_min=" << format_double(report.valid_R_min)
              << " reachable=" << (report.regime_reachable ? "yes" : "no")
              << " cells=" << report.lemma35.size() << " ratios=" << report.ratios.size()
              << (report.any_violation ? " VIOLATION" : "") << "\n";
    if (!failure.empty()) throw InputError("pipeline aborted: " + failure);
    return report.any_violation ? kExitViolation : kExitOk;
  }

  return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

} // namespace cli
} // namespace poincarekit
