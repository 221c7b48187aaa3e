#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "floorsp/descent.hpp"
#include "floorsp/merge.hpp"
#include "floorsp/metrics.hpp"
#include "floorsp/oracle.hpp"
#include "floorsp/pipeline.hpp"
#include "floorsp/plan_io.hpp"
#include "floorsp/room_solver.hpp"
#include "oracles.hpp"

using namespace floorsp;
namespace fs = std::filesystem;
namespace ft = floorsp::testing;

namespace {

constexpr double kEnergyTolerance = 1e-9;
constexpr double kCornerFloor = 0.95;
constexpr double kSceneSeconds256 = 300.0;
constexpr double kSceneSeconds128 = 60.0;
constexpr int kConsistencyWins = 18;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LikelihoodBundle blank_maps(int w, int h, int rooms) {
  LikelihoodBundle b;
  b.corner = Grid2D(w, h, 0.0f);
  b.edge = Grid2D(w, h, 0.0f);
  b.direction.assign(kDirectionBins, Grid2D(w, h, 0.0f));
  b.segments.assign(rooms, BinaryMask(w, h, 0));
  return b;
}

// 1 ---------------------------------------------------------------------------

Verdict oracle_round_trip() {
  int room_perfect = 0;
  double worst_corner = 1.0, slowest = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto plan = synth_plan(ft::scene_options(i, 256));
    const auto t0 = std::chrono::steady_clock::now();
    const auto rec = reconstruct(render_bundle(plan));
    slowest = std::max(slowest, seconds_since(t0));
    const auto t = evaluate(rec.floorplan, floorplan_from_plan(plan));
    room_perfect += t.room.precision == 1.0 && t.room.recall == 1.0;
    worst_corner = std::min({worst_corner, t.corner.precision, t.corner.recall});
  }
  const auto small = synth_plan(ft::scene_options(6, 128));
  const auto t0 = std::chrono::steady_clock::now();
  reconstruct(render_bundle(small));
  const double small_time = seconds_since(t0);
  return {room_perfect == 20 && worst_corner >= kCornerFloor && slowest <= kSceneSeconds256 &&
              small_time <= kSceneSeconds128,
          format("room P=R=1 on %d/20, worst corner P/R %.3f, slowest 256^2 scene %.2f s, 128^2 scene %.2f s",
                 room_perfect, worst_corner, slowest, small_time)};
}

// 2 ---------------------------------------------------------------------------

Verdict shortest_path_optimality() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<float> noise(0.0f, 0.45f), edge_noise(0.0f, 1.0f);
  int checked = 0, agree = 0, attempts = 0;
  double worst = 0.0;
  while (checked < 50 && attempts < 1000) {
    ++attempts;
    const int w = std::uniform_int_distribution<int>(6, 8)(rng);
    const int h = std::uniform_int_distribution<int>(6, 8)(rng);
    const int x0 = std::uniform_int_distribution<int>(0, w - 5)(rng);
    const int y0 = std::uniform_int_distribution<int>(0, h - 5)(rng);
    const int x1 = std::uniform_int_distribution<int>(x0 + 4, w - 1)(rng);
    const int y1 = std::uniform_int_distribution<int>(y0 + 4, h - 1)(rng);

    auto maps = blank_maps(w, h, 1);
    const Loop truth = ft::rect_loop(x0, y0, x1, y1);
    for (auto& v : maps.corner.values()) v = noise(rng);
    for (const Pixel c : truth.corners) maps.corner[c] = 1.0f;
    for (auto& v : maps.edge.values()) v = edge_noise(rng);
    maps.segments[0] = fill_polygon(truth.corners, w, h);
    for (const int bin : {0, 9, 18, 27})
      for (auto& v : maps.direction[bin].values()) v = 1.0f;

    const EnergyModel energy(maps, Weights{});
    const DirectionIntegral directions(maps.direction);
    const std::vector<std::optional<Loop>> loops{std::nullopt};
    const std::vector<std::vector<int>> frames{{}};
    RoomProblem p;
    p.room = 0;
    p.energy = &energy;
    p.loops = loops;
    p.frames = frames;
    p.directions = &directions;
    p.global_frames = extract_global_frames(maps.direction);
    const RoomSolution sol = solve_room(p);
    if (sol.fallback != Fallback::kNone || sol.alphabet.frames.size() != 1) continue;

    const EdgeCostModel costs(energy, {});
    const auto cut = make_start_line(sol.start_edge->a, sol.start_edge->b, maps.segments[0], sol.box);
    const Loop one[] = {sol.loop};
    const double solver_energy = energy.total_energy(std::span<const Loop>(one)).total();
    const ft::ReferenceCosts ref(maps, Weights{}, {});
    const auto brute = ft::brute_force_axis_loop(ref, energy, sol.box, sol.start_edge->a, sol.start_edge->b,
                                                 cut->inner, cut->outer, costs.loop_weight(sol.loop) + 1e-6);
    ++checked;
    if (!brute) continue;
    const double d = std::abs(brute->energy - solver_energy);
    worst = std::max(worst, d);
    agree += d < kEnergyTolerance;
  }
  return {checked == 50 && agree == 50,
          format("%d/%d instances match exhaustive minimum, max |dE| %.3g", agree, checked, worst)};
}

// 3 ---------------------------------------------------------------------------

// Staircase loop standing on the edge a -> b (a left of b, walls rising to smaller y).
Loop histogram_loop(std::mt19937& rng, Pixel a, Pixel b, int max_height) {
  std::vector<int> cuts{a.x, b.x};
  const int extra = std::uniform_int_distribution<int>(0, std::min(3, b.x - a.x - 1))(rng);
  while (static_cast<int>(cuts.size()) < 2 + extra) {
    const int c = std::uniform_int_distribution<int>(a.x + 1, b.x - 1)(rng);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> top;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    int y;
    do {
      y = a.y - std::uniform_int_distribution<int>(1, max_height)(rng);
    } while (!top.empty() && y == top.back());
    top.push_back(y);
  }
  Loop l;
  l.corners.push_back(a);
  for (std::size_t j = 0; j < top.size(); ++j) {
    l.corners.push_back({cuts[j], top[j]});
    l.corners.push_back({cuts[j + 1], top[j]});
  }
  l.corners.push_back(b);
  l.corners = remove_straight_corners(l).corners;
  return l;
}

Verdict reduction_consistency() {
  std::mt19937 rng(77);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::bernoulli_distribution bit(0.15);
  int constant = 0;
  double worst = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const int n = 24;
    auto maps = blank_maps(n, n, 2);
    for (auto& v : maps.corner.values()) v = u(rng);
    for (auto& v : maps.edge.values()) v = u(rng);
    for (auto& s : maps.segments)
      for (auto& v : s.values()) v = bit(rng);
    std::uniform_int_distribution<int> c(1, n - 2);
    std::vector<Loop> others;
    for (int k = 0; k < 2; ++k) {
      int ax = c(rng), bx = c(rng), ay = c(rng), by = c(rng);
      if (ax == bx) bx = ax < n - 2 ? ax + 1 : ax - 1;
      if (ay == by) by = ay < n - 2 ? ay + 1 : ay - 1;
      others.push_back(ft::rect_loop(std::min(ax, bx), std::min(ay, by), std::max(ax, bx), std::max(ay, by)));
    }
    const Pixel a{std::uniform_int_distribution<int>(1, 8)(rng), std::uniform_int_distribution<int>(12, 22)(rng)};
    const Pixel b{a.x + std::uniform_int_distribution<int>(4, 12)(rng), a.y};

    const EnergyModel energy(maps, Weights{});
    std::vector<const Loop*> ptrs;
    for (const Loop& l : others) ptrs.push_back(&l);
    const EdgeCostModel costs(energy, ptrs);
    const double base = energy.total_energy(std::span<const Loop>(others)).total();

    bool ok = true;
    for (int k = 0; k < 10; ++k) {
      const Loop l = histogram_loop(rng, a, b, a.y - 1);
      std::vector<Loop> all = others;
      all.push_back(l);
      // loop_weight sums the path a -> ... -> b and the start edge b -> a.
      const double d = energy.total_energy(std::span<const Loop>(all)).total() - costs.loop_weight(l);
      worst = std::max(worst, std::abs(d - base));
      ok &= std::abs(d - base) < kEnergyTolerance;
    }
    constant += ok;
  }
  return {constant == 50, format("%d/50 instances constant over 10 loops, max deviation %.3g", constant, worst)};
}

// 4 ---------------------------------------------------------------------------

std::set<Pixel> band_pixels(const Loop& l, const std::vector<Pixel>& sorted_band) {
  std::set<Pixel> out;
  for (const Pixel p : loop_edge_pixels(l))
    if (std::binary_search(sorted_band.begin(), sorted_band.end(), p)) out.insert(p);
  return out;
}

Verdict consistency_behaviour() {
  int wins = 0, coincide = 0;
  for (int i = 0; i < 20; ++i) {
    const auto f = ft::two_room_fixture(i);
    const auto maps = render_bundle(f.plan);
    const EnergyModel model(maps, Weights{});
    Weights loose;
    loose.corner_consistency = 0.0;
    loose.edge_consistency = 0.0;
    const EnergyModel loose_model(maps, loose);

    const auto with = run_descent(model, DescentOptions{}).state.solved_loops();
    const auto without = run_descent(loose_model, DescentOptions{}).state.solved_loops();
    wins += model.total_energy(with).consistency() < model.total_energy(without).consistency();

    if (with.size() != 2) continue;
    auto band = ft::segment_band(f.shared_a, f.shared_b, 4.0, 8.0, maps.corner.width(), maps.corner.height());
    std::sort(band.begin(), band.end());
    const auto pa = band_pixels(with[0], band), pb = band_pixels(with[1], band);
    coincide += !pa.empty() && pa == pb;
  }
  return {wins >= kConsistencyWins && coincide == 20,
          format("E_consis lower than the lambda4=lambda5=0 solution on %d/20, shared wall coincides on %d/20", wins,
                 coincide)};
}

// 5 ---------------------------------------------------------------------------

Verdict round_two_repair() {
  double e1 = 0.0, e2 = 0.0;
  int overlaps1 = 0, overlaps2 = 0;
  const int scenes = 20;
  for (int i = 0; i < scenes; ++i) {
    const auto plan = synth_plan(ft::scene_options(i, 256));
    NoiseSpec noise;
    noise.corner_drop = 0.1;
    const auto maps = perturb(render_bundle(plan), noise, static_cast<std::uint64_t>(100 + i));
    const EnergyModel energy(maps, Weights{});
    const auto one = run_descent(energy, DescentOptions{1, {}});
    const auto two = run_descent(energy, DescentOptions{2, {}});
    const auto rounds = round_entries(two.trace);
    e1 += rounds.at(0).energy.total();
    e2 += rounds.at(1).energy.total();
    overlaps1 += ft::overlapping_pairs(one.state.solved_loops(), plan.width, plan.height);
    overlaps2 += ft::overlapping_pairs(two.state.solved_loops(), plan.width, plan.height);
  }
  e1 /= scenes;
  e2 /= scenes;
  return {e2 <= e1 + kEnergyTolerance && overlaps2 <= overlaps1,
          format("mean energy round 1 %.4f, round 2 %.4f; overlapping pairs %d -> %d", e1, e2, overlaps1, overlaps2)};
}

// 6 ---------------------------------------------------------------------------

Verdict merge_thresholds() {
  std::string detail;
  bool ok = true;
  for (const int gap : {2, 4, 5, 6, 8}) {
    const std::vector<Loop> in{ft::rect_loop(0, 0, 30, 30), ft::rect_loop(30 + gap, 0, 60 + gap, 30)};
    const auto out = snap_parallel_groups(in);
    const bool snapped = out[0].corners[1].x == out[1].corners[0].x;
    ok &= snapped == (gap <= 5);
    detail += format("wall %d:%s ", gap, snapped ? "snap" : "keep");
  }
  for (const int gap : {1, 2, 3, 4}) {
    const Loop in[] = {ft::rect_loop(0, 0, 20, 20), ft::rect_loop(20 + gap, 0, 40, 20)};
    const bool merged = merge_corners(in).graph.vertices.size() == 6;
    ok &= merged == (gap <= 3);
    detail += format("corner %d:%s ", gap, merged ? "merge" : "keep");
  }
  detail.pop_back();
  return {ok, detail};
}

// 7 ---------------------------------------------------------------------------

bool perfect(const MetricsTable& t) {
  for (const PRResult& r : {t.corner, t.edge, t.room, t.room_plus_plus})
    if (r.precision != 1.0 || r.recall != 1.0) return false;
  return true;
}

Floorplan plan_of(const std::vector<Loop>& loops) {
  Floorplan f;
  for (std::size_t i = 0; i < loops.size(); ++i) f.rooms.push_back({static_cast<int>(i), loops[i]});
  f.graph = build_graph(loops);
  return f;
}

Verdict metrics_self_consistency() {
  int fixtures = 0, perfect_count = 0;
  for (int i = 0; i < 20; ++i) {
    for (const auto& plan : {synth_plan(ft::scene_options(i, 256)), ft::two_room_fixture(i).plan}) {
      const auto f = floorplan_from_plan(plan);
      ++fixtures;
      perfect_count += perfect(evaluate(f, f));
    }
  }
  const std::vector<Loop> gt{ft::rect_loop(0, 0, 40, 40), ft::rect_loop(40, 0, 80, 40), ft::rect_loop(80, 0, 120, 40)};
  const std::vector<Loop> pred{ft::rect_loop(0, 0, 40, 40), ft::rect_loop(50, 10, 60, 20),
                               ft::rect_loop(80, 0, 120, 40)};
  const auto t = evaluate(plan_of(pred), plan_of(gt));
  const bool cascade = t.room.matched == 2 && t.room_plus_plus.matched == 0;
  return {perfect_count == fixtures && cascade,
          format("perfect on %d/%d fixtures; cascade: room %zu/3, room++ %zu/3", perfect_count, fixtures,
                 t.room.matched, t.room_plus_plus.matched)};
}

// 8 ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

#ifdef FLOORSP_CLI_PATH
int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string("\"") + FLOORSP_CLI_PATH + "\" " + args + " >\"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Runs every command twice into parallel trees and compares all outputs.
Verdict cli_determinism() {
  const fs::path root = fs::temp_directory_path() / "floorsp_acceptance_cli";
  fs::remove_all(root);
  std::vector<std::string> differing;
  int commands = 0;
  bool all_ok = true;
  for (const char* run : {"a", "b"}) {
    const fs::path d = root / run;
    fs::create_directories(d);
    {
      std::ofstream cloud(d / "cloud.txt");
      for (int i = 0; i < 400; ++i)
        cloud << (i % 25) * 0.3 << " " << (i / 25) * 0.45 << " " << (i % 7) * 0.1 << " 0 0.6 0.8\n";
    }
    const std::string D = d.string();
    const std::vector<std::string> cmds{
        "synth --seed 7 --rooms 4 --resolution 128 --out " + D + "/clean",
        "synth --seed 7 --rooms 4 --resolution 128 --jitter 0.05 --corner-drop 0.1 --mask-flip 0.05 --out " + D +
            "/noisy",
        "reconstruct --in " + D + "/clean --out " + D + "/rec",
        "reconstruct --in " + D + "/noisy --out " + D + "/rec_noisy --rounds 1 --lambda6 1.5",
        "eval " + D + "/rec/floorplan.json " + D + "/clean/plan.json --csv " + D + "/eval.csv",
        "render " + D + "/rec/floorplan.json " + D + "/plan.svg --underlay " + D + "/clean",
        "ingest " + D + "/cloud.txt --resolution 64 --out " + D + "/ingest",
    };
    commands = static_cast<int>(cmds.size());
    for (std::size_t k = 0; k < cmds.size(); ++k)
      all_ok &= run_cli(cmds[k], d / ("stdout_" + std::to_string(k) + ".txt")) == 0;
  }
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const fs::path rel = fs::relative(entry.path(), root / "a");
    // stdout mentions the output directory, which differs between the two runs.
    std::string x = slurp(entry.path()), y = slurp(root / "b" / rel);
    if (rel.string().rfind("stdout_", 0) == 0) {
      auto strip = [](std::string s, const std::string& dir) {
        for (std::size_t p; (p = s.find(dir)) != std::string::npos;) s.erase(p, dir.size());
        return s;
      };
      x = strip(x, (root / "a").string());
      y = strip(y, (root / "b").string());
    }
    if (x != y) differing.push_back(rel.string());
  }
  std::string detail = format("%d commands x 2 runs, %zu files compared, %zu differ", commands, files,
                              differing.size());
  for (const auto& d : differing) detail += " " + d;
  if (!all_ok) detail += " (a command exited nonzero)";
  return {all_ok && differing.empty() && files > 0, detail};
}
#else
Verdict cli_determinism() { return {false, "floorsp CLI was not built"}; }
#endif

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"oracle round-trip", oracle_round_trip},
      {"shortest-path optimality", shortest_path_optimality},
      {"reduction consistency", reduction_consistency},
      {"consistency term", consistency_behaviour},
      {"round-2 repair", round_two_repair},
      {"merge thresholds", merge_thresholds},
      {"metrics self-consistency", metrics_self_consistency},
      {"determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s  %zu. %-26s %s  [%.1f s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
