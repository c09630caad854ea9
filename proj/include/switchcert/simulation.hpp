#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "switchcert/matrix_family.hpp"

namespace switchcert {

/// Piecewise-constant mode schedule. Modes are 1-based; durations must be
/// strictly positive (at least kMinDuration, so that degenerate segments are
/// rejected at construction).
struct SwitchingSignal {
  struct Segment {
    int mode = 1;
    double duration = 0.0;
  };
  static constexpr double kMinDuration = 1e-12;

  SwitchingSignal() = default;
  explicit SwitchingSignal(std::vector<Segment> segs, int mode_count = 0);

  std::vector<Segment> segments;
  double total_time = 0.0;
};

/// Sampled state path. finite_escape marks trajectories whose norm crossed
/// the divergence threshold; escape_time then brackets the crossing.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> norms;
  std::vector<int> modes;  // active mode per sample, 1-based
  SwitchingSignal signal;
  bool finite_escape = false;
  double escape_time = std::numeric_limits<double>::quiet_NaN();
};

/// Piecewise matrix-exponential propagation: the state after each segment is
/// exactly e^{A_p tau} applied to the segment's initial state; interior
/// samples are uniform within each segment.
Trajectory simulate_exact(const MatrixFamily& family, const SwitchingSignal& signal,
                          const Eigen::VectorXd& x0, int samples_per_segment = 8);

/// i.i.d. uniform durations in [dwell.first, dwell.second] and uniform mode
/// draws; the last segment is truncated to land on the horizon. Deterministic
/// per seed.
SwitchingSignal random_signal(int mode_count, double horizon,
                              std::pair<double, double> dwell_range, std::uint64_t seed);

struct GuesOptions {
  int trials = 100;
  double horizon = 20.0;
  std::uint64_t seed = 0;
  std::pair<double, double> dwell_range{0.1, 1.0};
  int samples_per_segment = 8;
  double growth_threshold = 1e6;
  int bins = 100;
};

/// Exponential-envelope fit |x(t)| <= c e^{-lambda t} |x(0)| over random
/// switching trials, or a growth witness if some trajectory crosses the
/// threshold. The slope comes from least squares on per-bin log-norm maxima;
/// c is then lifted so the bound holds across every sample.
struct GuesEstimate {
  double c = 1.0;
  double lambda = 0.0;
  std::optional<Trajectory> witness;
};

GuesEstimate estimate_gues(const MatrixFamily& family, const GuesOptions& options = {});

/// Worst-case planar switching: in each conic sector between the collinearity
/// lines det[A1 x | A2 x] = 0, follow the mode that grows the radius fastest
/// per unit of angular advance, switching exactly on the lines.
struct WorstCasePlanarResult {
  Trajectory trajectory;
  double contraction_per_rotation = 0.0;  // norm ratio over the last full rotation
  std::vector<double> rotation_ratios;
};

WorstCasePlanarResult worst_case_planar(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2,
                                        const Eigen::Vector2d& x0, int rotations);

/// || e^{tA1} e^{sA2} - e^{tA1 + sA2 + (ts/2)[A1,A2]} ||_F; vanishes (to
/// roundoff) exactly when the pair is second-order nilpotent.
double bch2_check(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2, double t, double s);

/// CSV with columns t, x_1..x_n, norm, active_mode.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);
void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

}  // namespace switchcert
