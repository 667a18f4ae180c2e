#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gmoduli/expr.hpp"

namespace gmoduli {

using ScalarField = std::function<double(std::span<const double>)>;

/// Anchor matrix rho^{mu A}(X) and structure functions f^{AB}_C(X) of a
/// Lie algebroid in a chart, both supplied as evaluable fields. f must be
/// antisymmetric in its upper pair at every point.
struct AlgebroidData {
  int dim_m = 0;
  int rank_e = 0;
  std::vector<ScalarField> rho;  // [mu * rank_e + A]
  std::vector<ScalarField> f;    // [(A * rank_e + B) * rank_e + C]

  double rho_at(std::span<const double> x, int mu, int A) const {
    return rho[static_cast<size_t>(mu * rank_e + A)](x);
  }
  double f_at(std::span<const double> x, int A, int B, int C) const {
    return f[static_cast<size_t>((A * rank_e + B) * rank_e + C)](x);
  }
};

/// Antisymmetric bivector alpha^{mu nu}(X).
struct PoissonData {
  int dim_m = 0;
  std::vector<ScalarField> alpha;  // [mu * dim_m + nu]
  double at(std::span<const double> x, int mu, int nu) const {
    return alpha[static_cast<size_t>(mu * dim_m + nu)](x);
  }
};

AlgebroidData algebroid_from_exprs(int dim_m, int rank_e,
                                   const std::vector<std::vector<std::string>>& rho,
                                   const std::vector<std::vector<std::vector<std::string>>>& f);
PoissonData poisson_from_exprs(int dim_m, const std::vector<std::vector<std::string>>& alpha);

// Stock examples used across the test and CLI surface.
AlgebroidData tangent_algebroid(int n);                     // rho = id, f = 0
AlgebroidData lie_algebra_algebroid(const std::vector<double>& f_const, int rank_e,
                                    int dim_m = 1);         // rho = 0, constant f
std::vector<double> so3_structure_constants();              // f^{AB}_C = eps_{ABC}
std::vector<double> so3_structure_constants_flipped();      // f^{12}_3 negated
PoissonData so3_lie_poisson();                              // alpha^{mu nu} = eps^{mu nu lam} x_lam
/// The so(3) Lie-Poisson anchor paired with the sign-flipped structure
/// functions; fails the consistency equations.
AlgebroidData so3_lie_poisson_algebroid_broken();

/// Cotangent algebroid of a Poisson structure: rank = dim, anchor
/// rho^{mu A}(X) = alpha^{A mu}(X) (the slot order that makes the anchor a
/// bracket morphism), f^{AB}_C = d_C alpha^{AB} by central differences.
AlgebroidData poisson_to_algebroid(const PoissonData& p, double h = 1e-4);

struct SamplePlan {
  int count = 100;
  unsigned seed = 12345;
  double radius = 1.0;
};
/// Deterministic uniform samples in the ball of the given radius.
std::vector<std::vector<double>> sample_ball(int dim, const SamplePlan& plan);

struct AxiomReport {
  double max_anchor_residual = 0;     // anchor/bracket compatibility
  double max_structure_residual = 0;  // antisymmetrized structure equation
  double max_residual() const;
  bool pass(double tol) const { return max_residual() <= tol; }
};

/// Residuals of the two consistency equations of (rho, f) at the samples,
/// derivatives by central differences with step h.
/// The antisymmetrization over three upper indices is the full signed
/// average over all six permutations.
AxiomReport check_axioms(const AlgebroidData& a,
                         const std::vector<std::vector<double>>& samples, double h,
                         int threads = 1);

/// Max abs of the cyclic Jacobi expression of alpha at the samples.
double poisson_jacobi_residual(const PoissonData& p,
                               const std::vector<std::vector<double>>& samples, double h,
                               int threads = 1);

/// Fiberwise-linear Poisson tensor on R^{dim_m + rank_e} in coordinates
/// (X, lambda): {lam_A, lam_B} = f^{AB}_C(X) lam_C, {lam_A, X^mu} =
/// rho^{mu A}(X), {X, X} = 0.
PoissonData dual_poisson(const AlgebroidData& a);

struct Grid2 {
  int n1 = 0, n2 = 0;
  double h = 0;
  double o1 = 0, o2 = 0;
  int nodes() const { return n1 * n2; }
  int node(int i, int j) const { return i * n2 + j; }
  double u1(int i) const { return o1 + h * i; }
  double u2(int j) const { return o2 + h * j; }
};

/// Sampled bundle map on a chart grid: base map X and the fiber 1-form
/// components j_{A alpha}, alpha in {1,2}.
struct MorphismField {
  Grid2 grid;
  int dim_m = 0;
  int rank_e = 0;
  std::vector<double> x;  // [node * dim_m + mu]
  std::vector<double> j;  // [(node * rank_e + A) * 2 + alpha]

  double x_at(int node, int mu) const { return x[static_cast<size_t>(node * dim_m + mu)]; }
  double j_at(int node, int A, int alpha) const {
    return j[static_cast<size_t>((node * rank_e + A) * 2 + alpha)];
  }
};

/// Samples closed-form component expressions in the chart variables u1,u2.
MorphismField sample_morphism_field(const Grid2& grid, int dim_m, int rank_e,
                                    const std::vector<std::string>& x_exprs,
                                    const std::vector<std::vector<std::string>>& j_exprs);

std::vector<double> sample_gauge_parameter(const Grid2& grid, int rank_e,
                                           const std::vector<std::string>& beta_exprs);

struct MorphismResidual {
  double max_flatness = 0;  // dj + f j j equation
  double max_anchor = 0;    // dX - rho j equation
  std::vector<double> node_flatness;  // per interior node max
  std::vector<double> node_anchor;
  double max_residual() const { return max_flatness > max_anchor ? max_flatness : max_anchor; }
  bool pass(double tol) const { return max_residual() <= tol; }
};

/// Central-difference residuals of the two morphism equations on interior
/// grid nodes. Throws when the grid has no interior.
MorphismResidual morphism_residual(const AlgebroidData& a, const MorphismField& m);

/// m + epsilon * (delta X, delta j) for the gauge parameter beta
/// (node-sampled, [node * rank_e + A]): delta j_A = -d beta_A - f^{BC}_A j_B
/// beta_C, delta X^mu = -rho^{mu A} beta_A. d beta uses central differences
/// inside, second-order one-sided stencils on the boundary.
MorphismField infinitesimal_gauge(const AlgebroidData& a, const MorphismField& m,
                                  const std::vector<double>& beta, double epsilon);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

/// Coordinate and fiber-basis split defining a candidate subalgebroid
/// chart: transverse coordinates vanish on the submanifold, sub_basis spans
/// the subbundle.
struct SubalgebroidChart {
  std::vector<int> transverse_coords;
  std::vector<int> tangent_coords;
  std::vector<int> sub_basis;
  std::vector<int> complement_basis;
};

struct SubalgebroidReport {
  double max_anchor = 0;     // rho^{hat-mu a} on the submanifold
  double max_structure = 0;  // f^{ab}_n on the submanifold
  double max_residual() const { return max_anchor > max_structure ? max_anchor : max_structure; }
  bool pass(double tol) const { return max_residual() <= tol; }
};

/// Evaluates the two restriction conditions at points of the submanifold;
/// `tangent_samples` lists values for the tangent coordinates only,
/// transverse coordinates are set to zero.
SubalgebroidReport subalgebroid_check(const AlgebroidData& a, const SubalgebroidChart& chart,
                                      const std::vector<std::vector<double>>& tangent_samples);

}  // namespace gmoduli
