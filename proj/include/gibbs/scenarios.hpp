#pragma once

// Canned instances: the domain table of the log families, the alternating
// gradient family and the particle-in-a-box model.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gibbs/conjugate.hpp"
#include "gibbs/entropy.hpp"
#include "gibbs/oracle.hpp"

namespace gibbs {

/// Box spectrum kappa (k^2 + l^2 + m^2), k, l, m >= 1, and h(x, y) = e^x f_box(y).
struct BoxModel {
  double kappa = 1.0;

  SigmaSequence flattened() const { return SigmaSequence::box(kappa); }
  /// h(x, y) = e^x (sum_k e^{kappa y k^2})^3, y < 0.
  double h(double x, double y) const;
  /// (e^x g^3, 3 kappa e^x g^2 g') with g, g' at kappa y.
  std::pair<double, double> grad_h(double x, double y) const;
};

/// Numerical evidence for convergence or divergence of one series.
struct Certificate {
  std::string quantity;  // "f" or "f'"
  double y = 0.0;
  bool converges = false;
  /// Convergent: certified value and tail width. Divergent: partial sum to M
  /// and the closed-form lower bound that grows without limit.
  double value = 0.0;
  double width = 0.0;
  Index M = 0;
  double bound = 0.0;
  std::string bound_form;
  /// partial sum >= bound (divergent) or width <= requested (convergent).
  bool consistent = false;
};

struct Example1Row {
  std::string family;
  std::string theta_range;
  std::string sequence;
  std::string domain;
  std::string boundary_slope;
  BoundaryClass expected = BoundaryClass::OpenBoundary;
  BoundaryClass computed = BoundaryClass::OpenBoundary;
  std::optional<double> gamma;
  std::optional<double> f_at_boundary;
  std::vector<Certificate> certificates;
  bool matches = false;
};

/// Five rows: sigma_n = n^theta, and ln[n (ln n)^theta] for theta <= 1,
/// theta in (1, 2], theta > 2, and ln ln n.
std::vector<Example1Row> example1_table(const EvalOptions& opts = {});

struct Example2Row {
  double x = 0.0;
  std::string varsigma;
  Index N = 0;
  AlternatingGradient result;
  /// max |partial - reference| over both components, when a reference exists.
  std::optional<double> gap;
};

std::vector<Example2Row> example2_table();

struct BoxReport {
  double u = 0.0;
  double v = 0.0;
  double kappa = 1.0;
  /// "outside" (+inf), "origin-ray" (u = 0), "degenerate-ray" (v = 3 kappa u > 0), "interior".
  std::string region;
  ConjugateValue h_star;
  GibbsFit fit;
  /// Dual point with grad h(x, y) = (u, v), interior only.
  std::optional<std::pair<double, double>> dual;
  std::optional<std::pair<double, double>> grad_at_dual;
  /// max relative error of grad h(dual) against (u, v).
  double roundtrip_error = 0.0;
  /// True when the solution set S(u, v) is empty though h*(u, v) is finite.
  bool empty_solution_set = false;
};

BoxReport box_report(double u, double v, double kappa = 1.0, double tol = 1e-12, const FitOptions& opts = {});

std::vector<BoxReport> box_table(double kappa = 1.0);

}  // namespace gibbs
