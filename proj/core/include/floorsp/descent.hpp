#ifndef FLOORSP_DESCENT_HPP
#define FLOORSP_DESCENT_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "floorsp/dominant_dirs.hpp"
#include "floorsp/energy.hpp"
#include "floorsp/room_solver.hpp"

namespace floorsp {

/// Current loops by room (empty until a room is first solved) plus the
/// frames each loop was built with.
struct FloorplanState {
  std::vector<std::optional<Loop>> loops;
  std::vector<std::vector<int>> frames;

  std::vector<Loop> solved_loops() const;
};

struct TraceEntry {
  enum class Kind { kStep, kRound };
  Kind kind = Kind::kStep;
  int round = 0;  // 1-based
  int room = -1;  // room solved in this step; -1 for round entries
  EnergyBreakdown energy;
};

struct RoomDiagnostic {
  int round = 0;
  int room = 0;
  Fallback fallback = Fallback::kNone;
  std::optional<StartEdge> start_edge;
  double path_weight = 0.0;
  double start_edge_weight = 0.0;
  std::vector<int> frames;
  std::size_t corners = 0;
};

struct DescentOptions {
  int rounds = 2;
  SolverOptions solver;
};

struct DescentResult {
  FloorplanState state;
  std::vector<TraceEntry> trace;
  std::vector<RoomDiagnostic> diagnostics;
  std::array<ManhattanFrame, kFrameCount> global_frames{};
};

/// Room indices by ascending segment pixel count, ties by index.
std::vector<int> order_rooms(const std::vector<BinaryMask>& segments);

/// Room-wise coordinate descent starting from `initial` (empty state when
/// omitted). Each step re-solves one room against the current other loops;
/// energies in the trace are recomputed from scratch.
DescentResult run_descent(const EnergyModel& energy, const DescentOptions& options,
                          std::optional<FloorplanState> initial = std::nullopt);

/// Only the per-round entries of a trace.
std::vector<TraceEntry> round_entries(const std::vector<TraceEntry>& trace);

}  // namespace floorsp

#endif  // FLOORSP_DESCENT_HPP
