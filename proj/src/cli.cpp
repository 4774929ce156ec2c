#include "fenceforge/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "fenceforge/distance.hpp"
#include "fenceforge/dubins.hpp"
#include "fenceforge/errors.hpp"
#include "fenceforge/fence.hpp"
#include "fenceforge/grid_oracle.hpp"
#include "fenceforge/io.hpp"
#include "fenceforge/offset.hpp"
#include "fenceforge/render.hpp"
#include "fenceforge/scene.hpp"

namespace fenceforge {

using nlohmann::json;

namespace {

constexpr std::size_t kCheckSamples = 1000;
constexpr std::uint64_t kCheckSeed = 20240607;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

Scene load_valid(const std::string& path) {
  Scene scene = load_scene(path);
  const ValidationReport rep = validate(scene);
  for (const CheckResult& c : rep.checks)
    if (!c.passed) throw AssumptionViolation(fmt::format("scene check '{}' failed: {}", c.name, c.detail));
  return scene;
}

json check_entry(const std::string& name, bool passed, double metric, double limit) {
  return {{"name", name}, {"passed", passed}, {"metric", metric}, {"limit", limit}};
}

json run_checks(const Scene& scene, bool* all_ok) {
  const Perimeter P = extract_perimeter(scene);
  const double diam = scene.diameter();
  const double tol = scene.tol();
  json checks = json::array();
  *all_ok = true;
  auto add = [&](json entry) {
    if (!entry["passed"].get<bool>()) *all_ok = false;
    checks.push_back(std::move(entry));
  };

  const std::vector<Vec2> samples = sample_exterior(scene, P, kCheckSamples, kCheckSeed);
  const RegionSet regions = scene.regions();
  double residual = 0.0;
  std::size_t bijection_failures = 0;
  for (const Vec2& r : samples) {
    residual = std::max(residual, std::abs(P.chain.distance_to(r) - (distance_value(regions, r) - P.d0)));
    try {
      project_correspondence(scene, P, r);
    } catch (const ConsistencyFailure&) {
      ++bijection_failures;
    }
  }
  add(check_entry("distance_identity", residual <= 1e-9 * diam, residual, 1e-9 * diam));
  add(check_entry("projection_bijection", bijection_failures == 0, static_cast<double>(bijection_failures), 0.0));

  double worst_curv = -INFINITY, worst_kink = -INFINITY;
  for (std::size_t i = 0; i < P.chain.size(); ++i) {
    worst_curv = std::max(worst_curv, P.chain[i].curvature());
    const Segment& next = P.chain[(i + 1) % P.chain.size()];
    worst_kink = std::max(worst_kink, cross(P.chain[i].end_tangent(), next.start_tangent()));
  }
  add(check_entry("perimeter_curvature", worst_curv <= (1.0 / P.d0) * (1.0 + 1e-9), worst_curv, 1.0 / P.d0));
  add(check_entry("perimeter_no_left_kinks", worst_kink <= 1e-9, worst_kink, 1e-9));

  const double R = scene.params.r_fence;
  const std::vector<Fence> fences = build_all_fences(scene, P, R);
  std::size_t loop_issues = 0;
  std::vector<CurveChain> fence_chains;
  for (const Fence& f : fences) {
    loop_issues += validate_loop(f.contact_path, R, scene.params.r_op).violations.size();
    fence_chains.push_back(f.contact_path);
  }
  add(check_entry("fence_loops", loop_issues == 0, static_cast<double>(loop_issues), 0.0));

  const GridOracle grid = build_grid_oracle(scene);
  const double h = grid.pitch;
  const double hp = hausdorff(grid.boundary_points(grid.exterior), {P.chain}, h / 4.0);
  add(check_entry("oracle_perimeter", hp <= 2.0 * h, hp, 2.0 * h));
  const double hf = hausdorff(grid.boundary_points(grid.opening(R)), fence_chains, h / 4.0);
  add(check_entry("oracle_fence", hf <= 2.0 * h, hf, 2.0 * h));
  (void)tol;
  return checks;
}

int guarded(std::ostream& out, std::ostream& err, const std::function<int()>& body) {
  auto report = [&](const char* type, const std::exception& e, int code) {
    out << dump_json({{"error", {{"type", type}, {"message", e.what()}}}});
    err << "fenceforge: " << e.what() << "\n";
    return code;
  };
  try {
    return body();
  } catch (const SceneError& e) {
    return report("scene", e, kExitAssumption);
  } catch (const EmptyErosion& e) {
    return report("empty_erosion", e, kExitAssumption);
  } catch (const AssumptionViolation& e) {
    return report("assumption", e, kExitAssumption);
  } catch (const ConsistencyFailure& e) {
    return report("consistency", e, kExitConsistency);
  } catch (const std::exception& e) {
    return report("internal", e, kExitConsistency);
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fenceforge: perimeter, fence and tracking toolkit for planar obstacle scenes"};
  app.require_subcommand(1);
  std::string scene_path, out_path, svg_path_opt;
  bool list = false;
  std::optional<double> test_d, fence_r;
  double horizon = 0.0, pitch = 0.0;

  auto* validate_cmd = app.add_subcommand("validate", "check the scene assumptions");
  validate_cmd->add_option("scene", scene_path)->required();

  auto* bizarre_cmd = app.add_subcommand("bizarre", "enumerate or test bizarre distances");
  bizarre_cmd->add_option("scene", scene_path)->required();
  bizarre_cmd->add_flag("--list", list, "list every candidate");
  bizarre_cmd->add_option("--test", test_d, "test one distance");

  auto* perimeter_cmd = app.add_subcommand("perimeter", "extract the outer perimeter");
  perimeter_cmd->add_option("scene", scene_path)->required();
  perimeter_cmd->add_option("-o", out_path);
  perimeter_cmd->add_option("--svg", svg_path_opt);

  auto* fence_cmd = app.add_subcommand("fence", "erosion, fences and the initial fence");
  fence_cmd->add_option("scene", scene_path)->required();
  fence_cmd->add_option("--R", fence_r, "fence radius (default: the scene's)");
  fence_cmd->add_option("-o", out_path);
  fence_cmd->add_option("--svg", svg_path_opt);

  auto* simulate_cmd = app.add_subcommand("simulate", "track the initial fence");
  simulate_cmd->add_option("scene", scene_path)->required();
  simulate_cmd->add_option("--horizon", horizon)->required();
  simulate_cmd->add_option("-o", out_path);
  simulate_cmd->add_option("--svg", svg_path_opt);

  auto* oracle_cmd = app.add_subcommand("oracle", "dump the grid distance field");
  oracle_cmd->add_option("scene", scene_path)->required();
  oracle_cmd->add_option("--pitch", pitch, "cell size (default: diameter / 512)");
  oracle_cmd->add_option("-o", out_path)->required();

  auto* check_cmd = app.add_subcommand("check", "run the cross-check suite");
  check_cmd->add_option("scene", scene_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fenceforge: " << e.what() << "\n";
    return kExitAssumption;
  }

  return guarded(out, err, [&]() -> int {
    if (validate_cmd->parsed()) {
      const ValidationReport rep = validate(load_scene(scene_path));
      out << dump_json(validation_to_json(rep));
      return rep.ok() ? kExitOk : kExitAssumption;
    }
    if (bizarre_cmd->parsed()) {
      const Scene scene = load_scene(scene_path);
      BizarreReport rep = enumerate_bizarre(scene);
      if (test_d) {
        rep.tested = {*test_d};
        rep.verdicts = {is_bizarre(scene, *test_d)};
      }
      json j = bizarre_to_json(rep);
      if (!list && test_d) j.erase("enumeration");
      out << dump_json(j);
      return kExitOk;
    }
    if (perimeter_cmd->parsed()) {
      const Scene scene = load_valid(scene_path);
      const Perimeter P = extract_perimeter(scene);
      const std::string text = dump_json(perimeter_to_json(P));
      if (out_path.empty()) {
        out << text;
      } else {
        write_file(out_path, text);
      }
      if (!svg_path_opt.empty()) {
        RenderArtifacts art;
        art.scene = &scene;
        art.perimeter = &P;
        write_file(svg_path_opt, render_svg({}, art));
      }
      return kExitOk;
    }
    if (fence_cmd->parsed()) {
      const Scene scene = load_valid(scene_path);
      const double R = fence_r.value_or(scene.params.r_fence);
      const Perimeter P = extract_perimeter(scene);
      const ErosionSet erosion = compute_erosion(scene, P, R);
      std::vector<Fence> fences;
      for (std::size_t k = 0; k < erosion.components.size(); ++k)
        fences.push_back(build_fence(scene, P, erosion, k));
      json j = {{"R", R}, {"erosion", erosion_to_json(erosion)}};
      json fj = json::array();
      for (const Fence& f : fences) fj.push_back(fence_to_json(f));
      j["fences"] = fj;
      try {
        j["initial"] = select_initial_fence(scene, fences);
      } catch (const AssumptionViolation& e) {
        j["initial"] = nullptr;
        j["initial_error"] = e.what();
      }
      const std::string text = dump_json(j);
      if (out_path.empty()) {
        out << text;
      } else {
        write_file(out_path, text);
      }
      if (!svg_path_opt.empty()) {
        RenderArtifacts art;
        art.scene = &scene;
        art.perimeter = &P;
        art.erosion = &erosion;
        for (const Fence& f : fences) art.fences.push_back(&f);
        write_file(svg_path_opt, render_svg({}, art));
      }
      return kExitOk;
    }
    if (simulate_cmd->parsed()) {
      const Scene scene = load_valid(scene_path);
      const Perimeter P = extract_perimeter(scene);
      const ClearanceResult clear = check_initial_clearance(scene, P);
      if (!clear.ok) throw AssumptionViolation("initial clearance fails: " + clear.reason);
      const Fence fence = initial_fence(scene, P, scene.params.r_fence);
      const Trajectory tr = track_fence(scene, fence.contact_path, horizon);
      SecurityOptions so;
      so.family = WitnessFamily::FenceNormal;
      so.fence = &fence.contact_path;
      so.from = tr.converged ? tr.converged_index : tr.states.size();
      const SecurityReport sec = verify_secure(scene, P, tr, so);
      if (!out_path.empty()) write_file(out_path, trajectory_csv(tr, sec));
      out << dump_json(trajectory_summary(tr, sec));
      if (!svg_path_opt.empty()) {
        RenderArtifacts art;
        art.scene = &scene;
        art.perimeter = &P;
        art.fences = {&fence};
        art.trajectory = &tr;
        write_file(svg_path_opt, render_svg({}, art));
      }
      return kExitOk;
    }
    if (oracle_cmd->parsed()) {
      const Scene scene = load_valid(scene_path);
      const GridOracle grid =
          pitch > 0.0 ? build_grid_oracle(scene, pitch, scene.config.cell_budget) : build_grid_oracle(scene);
      write_file(out_path, oracle_pgm(grid));
      const std::string header = oracle_header_json(grid);
      write_file(out_path + ".json", header);
      out << header;
      return kExitOk;
    }
    if (check_cmd->parsed()) {
      const Scene scene = load_valid(scene_path);
      bool ok = false;
      const json checks = run_checks(scene, &ok);
      out << dump_json({{"ok", ok}, {"checks", checks}});
      return ok ? kExitOk : kExitConsistency;
    }
    return kExitAssumption;
  });
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace fenceforge
