#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "floorsp/errors.hpp"
#include "floorsp/ingest.hpp"
#include "floorsp/metrics.hpp"
#include "floorsp/oracle.hpp"
#include "floorsp/pipeline.hpp"
#include "floorsp/plan_io.hpp"
#include "svg.hpp"

namespace floorsp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SynthArgs {
  std::uint64_t seed = 0;
  int rooms = 4;
  int resolution = 256;
  double non_manhattan = 0.0;
  NoiseSpec noise;
  fs::path out;
};

struct ReconstructArgs {
  fs::path in;
  fs::path out;
  int rounds = 2;
  Weights weights;
  float nms_threshold = 0.5f;
};

struct EvalArgs {
  fs::path pred;
  fs::path gt;
  fs::path csv;
};

struct RenderArgs {
  fs::path plan;
  fs::path svg;
  fs::path underlay;
  int scale = 3;
};

struct IngestArgs {
  fs::path cloud;
  fs::path out;
  int resolution = 256;
};

std::string fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  SynthOptions o;
  o.seed = a.seed;
  o.rooms = a.rooms;
  o.grid = a.resolution;
  o.non_manhattan_fraction = a.non_manhattan;
  const GroundTruthPlan plan = synth_plan(o);
  LikelihoodBundle bundle = render_bundle(plan);
  PerturbReport report;
  if (!a.noise.is_zero()) bundle = perturb(bundle, a.noise, a.seed, &report);

  fs::create_directories(a.out);
  save_plan(plan, a.out / "plan.json");
  save_bundle(bundle, a.out);
  out << "synth: " << plan.rooms.size() << " rooms, " << plan.width << "x" << plan.height << " -> "
      << a.out.string() << "\n";
  if (!a.noise.is_zero()) {
    out << "noise: dropped " << report.dropped_corners << " corners, added " << report.spurious_corners
        << ", flipped " << report.flipped_mask_pixels << " mask pixels\n";
  }
  return 0;
}

json breakdown_json(const EnergyBreakdown& e) {
  return {{"data_corner", e.data_corner},
          {"data_edge", e.data_edge},
          {"data_interior", e.data_interior},
          {"consistency_corner", e.consistency_corner},
          {"consistency_edge", e.consistency_edge},
          {"model", e.model},
          {"total", e.total()}};
}

int cmd_reconstruct(const ReconstructArgs& a, std::ostream& out) {
  const LikelihoodBundle maps = load_bundle(a.in);
  ReconstructOptions o;
  o.weights = a.weights;
  o.descent.rounds = a.rounds;
  o.descent.solver.nms_threshold = a.nms_threshold;
  const Reconstruction r = reconstruct(maps, o);

  fs::create_directories(a.out);
  save_floorplan(r.floorplan, a.out / "floorplan.json");

  std::string csv =
      "step,kind,round,room,data_corner,data_edge,data_interior,consistency_corner,consistency_edge,model,total\n";
  for (std::size_t i = 0; i < r.descent.trace.size(); ++i) {
    const TraceEntry& t = r.descent.trace[i];
    const EnergyBreakdown& e = t.energy;
    csv += std::to_string(i) + "," + (t.kind == TraceEntry::Kind::kStep ? "step" : "round") + "," +
           std::to_string(t.round) + "," + std::to_string(t.room) + "," + fixed(e.data_corner) + "," +
           fixed(e.data_edge) + "," + fixed(e.data_interior) + "," + fixed(e.consistency_corner) + "," +
           fixed(e.consistency_edge) + "," + fixed(e.model) + "," + fixed(e.total()) + "\n";
  }
  write_text_file(a.out / "energy_trace.csv", csv);

  json diag;
  json frames = json::array();
  for (const auto& f : r.descent.global_frames) frames.push_back(f.theta);
  diag["global_frames"] = frames;
  diag["steps"] = json::array();
  for (const RoomDiagnostic& d : r.descent.diagnostics) {
    json s = {{"round", d.round},
              {"room", d.room},
              {"fallback", std::string(to_string(d.fallback))},
              {"frames", d.frames},
              {"corners", d.corners},
              {"path_weight", d.path_weight},
              {"start_edge_weight", d.start_edge_weight}};
    if (d.start_edge) {
      s["start_edge"] = {{"a", {d.start_edge->a.x, d.start_edge->a.y}},
                         {"b", {d.start_edge->b.x, d.start_edge->b.y}},
                         {"score", d.start_edge->score}};
    } else {
      s["start_edge"] = nullptr;
    }
    diag["steps"].push_back(s);
  }
  if (!r.descent.trace.empty()) diag["final_energy"] = breakdown_json(r.descent.trace.back().energy);
  write_text_file(a.out / "diagnostics.json", diag.dump(1) + "\n");

  std::size_t fallbacks = 0;
  for (const RoomDiagnostic& d : r.descent.diagnostics) fallbacks += d.fallback != Fallback::kNone;
  out << "reconstruct: " << r.floorplan.rooms.size() << " rooms, " << r.floorplan.graph.vertices.size()
      << " vertices, " << r.floorplan.graph.edges.size() << " edges";
  if (!r.descent.trace.empty()) out << ", energy " << fixed(r.descent.trace.back().energy.total());
  out << ", " << fallbacks << " fallback steps\n";
  return 0;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const MetricsTable t = evaluate(load_floorplan(a.pred), load_floorplan(a.gt));
  out << format_table(t);
  if (!a.csv.empty()) write_text_file(a.csv, format_csv(t));
  return 0;
}

int cmd_render(const RenderArgs& a, std::ostream& out) {
  SvgOptions o;
  o.scale = a.scale;
  if (!a.underlay.empty()) {
    const fs::path grid = fs::is_directory(a.underlay) ? a.underlay / "edge.grd" : a.underlay;
    o.underlay = load_grid(grid);
  }
  write_text_file(a.svg, render_svg(load_floorplan(a.plan), o));
  out << "render: " << a.svg.string() << "\n";
  return 0;
}

int cmd_ingest(const IngestArgs& a, std::ostream& out) {
  const auto points = load_point_cloud(a.cloud);
  const DensityNormalMap map = project_point_cloud(points, a.resolution);
  fs::create_directories(a.out);
  save_density_normal_map(map, a.out / "density_normal.grd");
  out << "ingest: " << points.size() << " points -> " << (a.out / "density_normal.grd").string() << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Room-wise floorplan reconstruction from likelihood maps", "floorsp"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic plan and its likelihood maps");
  s->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  s->add_option("--rooms", synth.rooms, "Number of rooms")->check(CLI::Range(1, 16))->capture_default_str();
  s->add_option("--resolution", synth.resolution, "Grid size in pixels")->check(CLI::Range(64, 4096))
      ->capture_default_str();
  s->add_option("--non-manhattan", synth.non_manhattan, "Share of rotated rooms")->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  s->add_option("--jitter", synth.noise.jitter_sigma, "Gaussian noise sigma on likelihood maps")
      ->check(CLI::NonNegativeNumber);
  s->add_option("--corner-drop", synth.noise.corner_drop, "Corner dropout probability")->check(CLI::Range(0.0, 1.0));
  s->add_option("--corner-spurious", synth.noise.corner_spurious, "Spurious corner rate per pixel")
      ->check(CLI::Range(0.0, 1.0));
  s->add_option("--mask-flip", synth.noise.mask_flip, "Segment boundary flip probability")
      ->check(CLI::Range(0.0, 1.0));
  s->add_option("--out", synth.out, "Output directory")->required();

  ReconstructArgs rec;
  auto* r = app.add_subcommand("reconstruct", "Reconstruct a floorplan from likelihood maps");
  r->add_option("--in", rec.in, "Directory with corner/edge/direction grids and segment masks")->required();
  r->add_option("--out", rec.out, "Output directory")->required();
  r->add_option("--rounds", rec.rounds, "Coordinate descent rounds")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r->add_option("--lambda1", rec.weights.corner, "Corner likelihood weight")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r->add_option("--lambda2", rec.weights.edge, "Edge likelihood weight")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r->add_option("--lambda3", rec.weights.interior, "Edge inside segment penalty")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r->add_option("--lambda4", rec.weights.corner_consistency, "Corner consistency weight")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  r->add_option("--lambda5", rec.weights.edge_consistency, "Edge consistency weight")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r->add_option("--lambda6", rec.weights.complexity, "Per-corner complexity weight")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r->add_option("--nms-threshold", rec.nms_threshold, "Corner peak threshold")->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Score a floorplan against ground truth");
  e->add_option("pred", ev.pred, "Predicted floorplan JSON")->required();
  e->add_option("gt", ev.gt, "Ground truth floorplan JSON")->required();
  e->add_option("--csv", ev.csv, "Also write the table as CSV");

  RenderArgs ren;
  auto* v = app.add_subcommand("render", "Draw a floorplan as SVG");
  v->add_option("plan", ren.plan, "Floorplan JSON")->required();
  v->add_option("svg", ren.svg, "Output SVG")->required();
  v->add_option("--underlay", ren.underlay, "Grid file or synth directory (edge.grd) drawn underneath");
  v->add_option("--scale", ren.scale, "Output pixels per grid pixel")->check(CLI::Range(1, 32))
      ->capture_default_str();

  IngestArgs ing;
  auto* i = app.add_subcommand("ingest", "Project a point cloud to a density/normal map");
  i->add_option("cloud", ing.cloud, "Point cloud text file (x y z nx ny nz per line)")->required();
  i->add_option("--out", ing.out, "Output directory")->required();
  i->add_option("--resolution", ing.resolution, "Grid size in pixels")->check(CLI::Range(16, 4096))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err);
  }

  try {
    if (*s) return cmd_synth(synth, out);
    if (*r) return cmd_reconstruct(rec, out);
    if (*e) return cmd_eval(ev, out);
    if (*v) return cmd_render(ren, out);
    if (*i) return cmd_ingest(ing, out);
  } catch (const FormatError& ex) {
    err << "FormatError: " << ex.what() << "\n";
    return 2;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace floorsp::cli
