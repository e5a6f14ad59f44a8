#pragma once

// Countable maximum-entropy problems
//   min sum_n u_n (ln u_n - 1)  subject to linear moment constraints,
// their Gibbs minimizers and epsilon-optimal finite witnesses.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gibbs/conjugate.hpp"
#include "gibbs/series.hpp"

namespace gibbs {

enum class FitStatus { InteriorUnique, BoundarySingleton, PlateauNonAttained, Infeasible };

std::string_view to_string(FitStatus s) noexcept;

/// One materialized weight. `triple` is set for BoxTriple sequences.
struct Weight {
  Index index = 0;
  std::optional<std::array<int, 3>> triple;
  double value = 0.0;
};

struct FitOptions : EvalOptions {
  /// Cap on the materialized prefix of an infinite-support law.
  Index max_weights = 100000;
};

struct Moment {
  double value = 0.0;
  /// Certified width: the true moment lies in [value - tail_bound, value + tail_bound].
  double tail_bound = 0.0;
};

struct GibbsFit {
  FitStatus status = FitStatus::Infeasible;
  std::string reason;
  /// Normalization multiplier x (two-constraint problems only).
  std::optional<double> dual_x;
  /// Energy multiplier y; weights are u_n = exp(x + sigma_n y).
  std::optional<double> dual_y;
  std::vector<Weight> weights;
  /// Upper bound on the total mass of weights beyond the materialized prefix.
  double tail_mass_bound = 0.0;
  Moment mass;    // sum u_n
  Moment energy;  // sum sigma_n u_n
  /// sum u_n (ln u_n - 1); for PlateauNonAttained the (non-attained) infimum.
  ExtReal entropy = ExtReal::pos_inf();
  /// False when the dual solve stopped at the near-boundary cap.
  bool converged = true;
};

/// min { sum u_n (ln u_n - 1) : sum sigma_n u_n = u }.
GibbsFit min_entropy_moment(const SigmaSequence& seq, double u, double tol, const FitOptions& opts = {});

/// min { sum u_n (ln u_n - 1) : sum u_n = u, sum sigma_n u_n = v }.
GibbsFit fit_gibbs(const SigmaSequence& seq, double u, double v, double tol, const FitOptions& opts = {});

/// One member of the plateau witness family: prefix u_k = e^{-sigma_k alpha}
/// for k <= n and window u_k = e^{-sigma_k lambda} for n < k <= n + q, with
/// the last window weight adjusted so that sum sigma_k u_k = u exactly.
struct PlateauWindow {
  Index n = 0;
  Index q = 0;
  double lambda = 0.0;
  double last_weight = 0.0;
  double entropy = 0.0;
  /// entropy - f*(u)
  double gap = 0.0;
  /// |sum sigma_k u_k - u| before the last-weight adjustment.
  double moment_adjustment = 0.0;
  int newton_iterations = 0;
};

/// Builds the window (n, q). Requires gamma < inf, u > gamma and sigma_{n+1} >= u.
/// `lambda_start` warm-starts Newton from the left (any value below the root).
PlateauWindow plateau_window(const SigmaSequence& seq, double u, Index n, Index q, double lambda_start = 0.0,
                             const EvalOptions& opts = {});

struct PlateauWitness {
  double u = 0.0;
  double target = 0.0;  // f*(u)
  bool exact = false;   // u = gamma: the exact minimizer e^{-sigma_n alpha}
  PlateauWindow window;
  /// Materialized weights (prefix then window) when n + q <= max_weights.
  std::vector<Weight> weights;
  double gap = 0.0;
};

/// Thrown when no witness within eps fits in the term budget.
class WitnessNotReached : public std::runtime_error {
 public:
  WitnessNotReached(const std::string& what, double best_gap)
      : std::runtime_error(what), best_gap_(best_gap) {}
  double best_gap() const noexcept { return best_gap_; }

 private:
  double best_gap_;
};

/// Finite-support weights with sum sigma_n u_n = u and entropy <= f*(u) + eps.
/// The window start is the smallest n with sigma_{n+1} >= u; the window
/// length doubles until the gap is below eps or n + q exceeds max_terms.
PlateauWitness plateau_witness(const SigmaSequence& seq, double u, double eps, const FitOptions& opts = {});

/// Weights of a plateau window, prefix then window.
std::vector<Weight> materialize(const SigmaSequence& seq, const PlateauWindow& w);

/// Ratio q = (1 + 2u - sqrt(4u + 1)) / (2u) of the minimizer (q^n) of
/// min { sum g_n (ln g_n - 1) : sum n g_n = u }.
double alternating_ratio(double u);

struct AlternatingAttainment {
  double q = 0.0;
  bool convergent = false;
  /// sum (-1)^n varsigma_n q^n when convergent.
  std::optional<double> v_bar;
  double tail_bound = 0.0;
  Index terms = 0;
  std::string rule;
};

AlternatingAttainment alternating_attainment(double u, const VarsigmaSequence& vs, double tol);

struct AlternatingWitness {
  std::vector<Weight> weights;
  double entropy = 0.0;
  double target = 0.0;  // f*(u) for sigma_n = n
  double gap = 0.0;
  Index prefix_end = 0;
  Index m = 0;
  /// Relative residuals of sum n g_n = u and sum (-1)^n varsigma_n g_n = v.
  double u_residual = 0.0;
  double v_residual = 0.0;
};

/// Prefix q^k, k <= nbar, followed by the two-term correction at (m, m+1)
/// that restores both moments. u = v = 0 gives the empty witness.
/// Throws Infeasible for u = 0 != v and WitnessNotReached past max_terms.
AlternatingWitness alternating_witness(double u, double v, double eps, const VarsigmaSequence& vs,
                                       Index max_terms = default_max_terms());

}  // namespace gibbs
