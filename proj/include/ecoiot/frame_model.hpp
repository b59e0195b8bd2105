#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecoiot {

// Mandatory NB-IoT downlink signals plus the unoccupied state.
enum class SignalType { Npss, Nsss, Npbch, Nrs, Free };

inline constexpr std::array<SignalType, 5> kSignalTypes = {
    SignalType::Npss, SignalType::Nsss, SignalType::Npbch, SignalType::Nrs,
    SignalType::Free};

inline constexpr std::size_t signal_index(SignalType s) {
  return static_cast<std::size_t>(s);
}

std::string_view signal_token(SignalType s);  // "NPSS", "NSSS", ...
std::optional<SignalType> signal_from_token(std::string_view token);

// One radio frame is 10 subframes of 1 ms, each modeled as 14 uniform
// symbols. The mandatory downlink pattern repeats every 2 frames (NSSS
// alternates), so the window length must stay even.
struct FrameConfig {
  int frames = 2;
  int subframes_per_frame = 10;
  int symbols_per_subframe = 14;
  double symbol_duration = 1e-3 / 14.0;  // seconds

  int symbols_per_frame() const { return subframes_per_frame * symbols_per_subframe; }
  int total_symbols() const { return frames * symbols_per_frame(); }
  double hyperperiod() const { return total_symbols() * symbol_duration; }

  void validate() const;
};

// Per-symbol occupancy over one hyperperiod, flat and frame-major.
class FrameGrid {
 public:
  static FrameGrid all_free(const FrameConfig& config);
  static FrameGrid from_cells(const FrameConfig& config, std::vector<SignalType> cells);

  const FrameConfig& config() const { return config_; }
  int size() const { return static_cast<int>(cells_.size()); }
  SignalType at(int flat_index) const;
  SignalType cell(int frame, int subframe, int symbol) const;
  const std::vector<SignalType>& cells() const { return cells_; }

 private:
  FrameGrid(FrameConfig config, std::vector<SignalType> cells);

  FrameConfig config_;
  std::vector<SignalType> cells_;
};

struct OccupancyShares {
  std::array<double, 5> shares{};  // indexed by signal_index()

  double share(SignalType s) const { return shares[signal_index(s)]; }
  double signalling_total() const { return 1.0 - share(SignalType::Free); }
};

// Maximal run of Free symbols under cyclic adjacency; the steady-state
// grid repeats, so a run may wrap past the hyperperiod end.
struct FreeInterval {
  int start = 0;          // flat symbol index
  int length = 0;         // symbols
  double duration = 0.0;  // seconds
};

FrameGrid build_grid(const FrameConfig& config);
std::array<std::int64_t, 5> signal_counts(const FrameGrid& grid);
OccupancyShares occupancy_shares(const FrameGrid& grid);
std::vector<FreeInterval> free_intervals(const FrameGrid& grid);

// One row per symbol: frame,subframe,symbol,signal.
void write_grid_csv(const FrameGrid& grid, std::ostream& out);

// One character per symbol, one row per frame, '|' between subframes.
std::string render_grid_ascii(const FrameGrid& grid);

}  // namespace ecoiot
