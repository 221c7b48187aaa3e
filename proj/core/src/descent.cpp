#include "floorsp/descent.hpp"

#include <algorithm>
#include <numeric>

#include "floorsp/errors.hpp"

namespace floorsp {

std::vector<Loop> FloorplanState::solved_loops() const {
  std::vector<Loop> out;
  for (const auto& l : loops) {
    if (l) out.push_back(*l);
  }
  return out;
}

std::vector<int> order_rooms(const std::vector<BinaryMask>& segments) {
  std::vector<std::size_t> area(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) area[i] = count_set(segments[i]);
  std::vector<int> order(segments.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return area[a] < area[b]; });
  return order;
}

DescentResult run_descent(const EnergyModel& energy, const DescentOptions& options,
                          std::optional<FloorplanState> initial) {
  const LikelihoodBundle& maps = energy.maps();
  if (maps.segments.empty()) throw EmptyMask();
  const std::size_t n = maps.segments.size();

  DescentResult result;
  result.state = initial.value_or(FloorplanState{});
  result.state.loops.resize(n);
  result.state.frames.resize(n);
  result.global_frames = extract_global_frames(maps.direction);
  const DirectionIntegral integral(maps.direction);
  const std::vector<int> order = order_rooms(maps.segments);

  for (int round = 1; round <= options.rounds; ++round) {
    for (const int room : order) {
      RoomDiagnostic diag;
      diag.round = round;
      diag.room = room;
      if (count_set(maps.segments[room]) == 0) {
        // Nothing to wrap: the room stays absent.
        result.state.loops[room].reset();
        result.state.frames[room].clear();
        diag.fallback = Fallback::kSmallSegment;
      } else {
        RoomProblem problem;
        problem.room = room;
        problem.energy = &energy;
        problem.loops = result.state.loops;
        problem.frames = result.state.frames;
        problem.directions = &integral;
        problem.global_frames = result.global_frames;
        problem.options = options.solver;
        RoomSolution s = solve_room(problem);

        diag.fallback = s.fallback;
        diag.start_edge = s.start_edge;
        diag.path_weight = s.path_weight;
        diag.start_edge_weight = s.start_edge_weight;
        diag.frames = s.alphabet.frames;
        diag.corners = s.loop.size();
        result.state.frames[room] = s.alphabet.frames;
        result.state.loops[room] = std::move(s.loop);
      }
      result.diagnostics.push_back(std::move(diag));
      result.trace.push_back({TraceEntry::Kind::kStep, round, room, energy.total_energy(result.state.loops)});
    }
    result.trace.push_back({TraceEntry::Kind::kRound, round, -1, energy.total_energy(result.state.loops)});
  }
  return result;
}

std::vector<TraceEntry> round_entries(const std::vector<TraceEntry>& trace) {
  std::vector<TraceEntry> out;
  std::copy_if(trace.begin(), trace.end(), std::back_inserter(out),
               [](const TraceEntry& e) { return e.kind == TraceEntry::Kind::kRound; });
  return out;
}

}  // namespace floorsp
