#include "ecoiot/frame_model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include "ecoiot/errors.hpp"

namespace ecoiot {

namespace {

constexpr std::array<std::string_view, 5> kTokens = {"NPSS", "NSSS", "NPBCH",
                                                     "NRS", "FREE"};

constexpr std::array<char, 5> kAsciiChars = {'P', 'S', 'B', 'R', '.'};

}  // namespace

std::string_view signal_token(SignalType s) { return kTokens[signal_index(s)]; }

std::optional<SignalType> signal_from_token(std::string_view token) {
  for (const SignalType s : kSignalTypes) {
    if (kTokens[signal_index(s)] == token) return s;
  }
  return std::nullopt;
}

void FrameConfig::validate() const {
  if (frames < 2 || frames % 2 != 0) {
    throw ValidationError("FrameConfig: frames must be even and >= 2, got " +
                          std::to_string(frames));
  }
  if (subframes_per_frame != 10) {
    throw ValidationError("FrameConfig: subframes_per_frame must be 10, got " +
                          std::to_string(subframes_per_frame));
  }
  if (symbols_per_subframe != 14) {
    throw ValidationError("FrameConfig: symbols_per_subframe must be 14, got " +
                          std::to_string(symbols_per_subframe));
  }
  if (!(symbol_duration > 0.0) || !std::isfinite(symbol_duration)) {
    throw ValidationError("FrameConfig: symbol_duration must be finite and > 0");
  }
}

FrameGrid::FrameGrid(FrameConfig config, std::vector<SignalType> cells)
    : config_(config), cells_(std::move(cells)) {}

FrameGrid FrameGrid::all_free(const FrameConfig& config) {
  config.validate();
  return FrameGrid(config, std::vector<SignalType>(
                               static_cast<std::size_t>(config.total_symbols()),
                               SignalType::Free));
}

FrameGrid FrameGrid::from_cells(const FrameConfig& config,
                                std::vector<SignalType> cells) {
  config.validate();
  if (cells.size() != static_cast<std::size_t>(config.total_symbols())) {
    throw ValidationError("FrameGrid: cell count " + std::to_string(cells.size()) +
                          " does not match config total " +
                          std::to_string(config.total_symbols()));
  }
  return FrameGrid(config, std::move(cells));
}

SignalType FrameGrid::at(int flat_index) const {
  if (flat_index < 0 || flat_index >= size()) {
    throw ValidationError("FrameGrid: symbol index out of range");
  }
  return cells_[static_cast<std::size_t>(flat_index)];
}

SignalType FrameGrid::cell(int frame, int subframe, int symbol) const {
  if (frame < 0 || frame >= config_.frames || subframe < 0 ||
      subframe >= config_.subframes_per_frame || symbol < 0 ||
      symbol >= config_.symbols_per_subframe) {
    throw ValidationError("FrameGrid: cell index out of range");
  }
  const int flat = (frame * config_.subframes_per_frame + subframe) *
                       config_.symbols_per_subframe +
                   symbol;
  return cells_[static_cast<std::size_t>(flat)];
}

// Mandatory downlink allocation, guard-band / stand-alone deployment:
//   NPBCH  subframe 0, symbols 3..13, every frame
//   NPSS   subframe 5, symbols 3..13, every frame
//   NSSS   subframe 9, symbols 3..13, even frames only
//   NRS    symbols {5,6,12,13} of subframes {1,2,3,4,6,7,8}, plus
//          subframe 9 of odd frames (where NSSS is absent)
FrameGrid build_grid(const FrameConfig& config) {
  config.validate();
  std::vector<SignalType> cells(static_cast<std::size_t>(config.total_symbols()),
                                SignalType::Free);
  const auto put = [&](int frame, int subframe, int symbol, SignalType s) {
    const int flat = (frame * config.subframes_per_frame + subframe) *
                         config.symbols_per_subframe +
                     symbol;
    cells[static_cast<std::size_t>(flat)] = s;
  };
  static constexpr int kNrsSymbols[] = {5, 6, 12, 13};
  for (int f = 0; f < config.frames; ++f) {
    for (int sym = 3; sym <= 13; ++sym) put(f, 0, sym, SignalType::Npbch);
    for (int sym = 3; sym <= 13; ++sym) put(f, 5, sym, SignalType::Npss);
    if (f % 2 == 0) {
      for (int sym = 3; sym <= 13; ++sym) put(f, 9, sym, SignalType::Nsss);
    }
    for (const int sf : {1, 2, 3, 4, 6, 7, 8}) {
      for (const int sym : kNrsSymbols) put(f, sf, sym, SignalType::Nrs);
    }
    if (f % 2 == 1) {
      for (const int sym : kNrsSymbols) put(f, 9, sym, SignalType::Nrs);
    }
  }
  return FrameGrid::from_cells(config, std::move(cells));
}

std::array<std::int64_t, 5> signal_counts(const FrameGrid& grid) {
  std::array<std::int64_t, 5> counts{};
  for (const SignalType s : grid.cells()) ++counts[signal_index(s)];
  return counts;
}

OccupancyShares occupancy_shares(const FrameGrid& grid) {
  const auto counts = signal_counts(grid);
  const double total = static_cast<double>(grid.size());
  OccupancyShares shares;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    shares.shares[i] = static_cast<double>(counts[i]) / total;
  }
  return shares;
}

std::vector<FreeInterval> free_intervals(const FrameGrid& grid) {
  const int n = grid.size();
  const double tau = grid.config().symbol_duration;

  int anchor = -1;
  for (int i = 0; i < n; ++i) {
    if (grid.at(i) != SignalType::Free) {
      anchor = i;
      break;
    }
  }
  if (anchor < 0) {
    return {FreeInterval{0, n, n * tau}};
  }

  // Scanning one full cycle from a non-free symbol; the final open run, if
  // any, wraps through the hyperperiod boundary back to the anchor.
  std::vector<FreeInterval> out;
  int run_start = -1;
  int run_length = 0;
  const auto close_run = [&] {
    if (run_length > 0) {
      out.push_back(FreeInterval{run_start, run_length, run_length * tau});
    }
    run_start = -1;
    run_length = 0;
  };
  for (int k = 0; k < n; ++k) {
    const int i = (anchor + k) % n;
    if (grid.at(i) == SignalType::Free) {
      if (run_length == 0) run_start = i;
      ++run_length;
    } else {
      close_run();
    }
  }
  close_run();

  std::sort(out.begin(), out.end(),
            [](const FreeInterval& a, const FreeInterval& b) { return a.start < b.start; });
  return out;
}

void write_grid_csv(const FrameGrid& grid, std::ostream& out) {
  out << "frame,subframe,symbol,signal\n";
  const FrameConfig& c = grid.config();
  for (int f = 0; f < c.frames; ++f) {
    for (int sf = 0; sf < c.subframes_per_frame; ++sf) {
      for (int sym = 0; sym < c.symbols_per_subframe; ++sym) {
        out << f << ',' << sf << ',' << sym << ','
            << signal_token(grid.cell(f, sf, sym)) << '\n';
      }
    }
  }
}

std::string render_grid_ascii(const FrameGrid& grid) {
  const FrameConfig& c = grid.config();
  std::string out = "P NPSS  S NSSS  B NPBCH  R NRS  . free\n";
  for (int f = 0; f < c.frames; ++f) {
    out += 'f';
    out += std::to_string(f);
    out += " |";
    for (int sf = 0; sf < c.subframes_per_frame; ++sf) {
      for (int sym = 0; sym < c.symbols_per_subframe; ++sym) {
        out += kAsciiChars[signal_index(grid.cell(f, sf, sym))];
      }
      out += '|';
    }
    out += '\n';
  }
  return out;
}

}  // namespace ecoiot
