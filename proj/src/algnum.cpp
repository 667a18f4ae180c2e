#include "gmoduli/algnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "gmoduli/parallel.hpp"

namespace gmoduli {

namespace {

ScalarField field_from_expr(const std::string& text, const std::vector<std::string>& vars) {
  Expr e = Expr::parse(text, vars);
  return [e](std::span<const double> x) { return e.eval(x); };
}

ScalarField constant_field(double v) {
  return [v](std::span<const double>) { return v; };
}

/// max that treats NaN as +infinity, so evaluation failures fail checks
/// instead of vanishing (NaN compares false against everything).
void accumulate_max(double& acc, double value) {
  if (std::isnan(value)) value = std::numeric_limits<double>::infinity();
  if (value > acc) acc = value;
}

int eps3(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  // parity of the permutation (a b c) of (0 1 2)
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace

double AxiomReport::max_residual() const {
  return max_anchor_residual > max_structure_residual ? max_anchor_residual
                                                      : max_structure_residual;
}

AlgebroidData algebroid_from_exprs(int dim_m, int rank_e,
                                   const std::vector<std::vector<std::string>>& rho,
                                   const std::vector<std::vector<std::vector<std::string>>>& f) {
  if (static_cast<int>(rho.size()) != dim_m)
    throw std::invalid_argument("algebroid: rho must have dim_M rows");
  if (static_cast<int>(f.size()) != rank_e)
    throw std::invalid_argument("algebroid: f must have rank_E slabs");
  std::vector<std::string> vars = coordinate_names("x", dim_m);
  AlgebroidData a;
  a.dim_m = dim_m;
  a.rank_e = rank_e;
  a.rho.resize(static_cast<size_t>(dim_m * rank_e));
  a.f.resize(static_cast<size_t>(rank_e * rank_e * rank_e));
  for (int mu = 0; mu < dim_m; ++mu) {
    if (static_cast<int>(rho[static_cast<size_t>(mu)].size()) != rank_e)
      throw std::invalid_argument("algebroid: rho rows must have rank_E entries");
    for (int A = 0; A < rank_e; ++A)
      a.rho[static_cast<size_t>(mu * rank_e + A)] =
          field_from_expr(rho[static_cast<size_t>(mu)][static_cast<size_t>(A)], vars);
  }
  for (int A = 0; A < rank_e; ++A) {
    if (static_cast<int>(f[static_cast<size_t>(A)].size()) != rank_e)
      throw std::invalid_argument("algebroid: f slabs must be rank_E x rank_E");
    for (int B = 0; B < rank_e; ++B) {
      if (static_cast<int>(f[static_cast<size_t>(A)][static_cast<size_t>(B)].size()) != rank_e)
        throw std::invalid_argument("algebroid: f rows must have rank_E entries");
      for (int C = 0; C < rank_e; ++C)
        a.f[static_cast<size_t>((A * rank_e + B) * rank_e + C)] = field_from_expr(
            f[static_cast<size_t>(A)][static_cast<size_t>(B)][static_cast<size_t>(C)], vars);
    }
  }
  return a;
}

PoissonData poisson_from_exprs(int dim_m, const std::vector<std::vector<std::string>>& alpha) {
  if (static_cast<int>(alpha.size()) != dim_m)
    throw std::invalid_argument("poisson: alpha must have dim_M rows");
  std::vector<std::string> vars = coordinate_names("x", dim_m);
  PoissonData p;
  p.dim_m = dim_m;
  p.alpha.resize(static_cast<size_t>(dim_m * dim_m));
  for (int mu = 0; mu < dim_m; ++mu) {
    if (static_cast<int>(alpha[static_cast<size_t>(mu)].size()) != dim_m)
      throw std::invalid_argument("poisson: alpha is not square");
    for (int nu = 0; nu < dim_m; ++nu)
      p.alpha[static_cast<size_t>(mu * dim_m + nu)] =
          field_from_expr(alpha[static_cast<size_t>(mu)][static_cast<size_t>(nu)], vars);
  }
  return p;
}

AlgebroidData tangent_algebroid(int n) {
  AlgebroidData a;
  a.dim_m = n;
  a.rank_e = n;
  a.rho.resize(static_cast<size_t>(n * n));
  a.f.assign(static_cast<size_t>(n * n * n), constant_field(0.0));
  for (int mu = 0; mu < n; ++mu)
    for (int A = 0; A < n; ++A)
      a.rho[static_cast<size_t>(mu * n + A)] = constant_field(mu == A ? 1.0 : 0.0);
  return a;
}

AlgebroidData lie_algebra_algebroid(const std::vector<double>& f_const, int rank_e, int dim_m) {
  if (static_cast<int>(f_const.size()) != rank_e * rank_e * rank_e)
    throw std::invalid_argument("lie_algebra_algebroid: structure-constant size mismatch");
  AlgebroidData a;
  a.dim_m = dim_m;
  a.rank_e = rank_e;
  a.rho.assign(static_cast<size_t>(dim_m * rank_e), constant_field(0.0));
  a.f.resize(f_const.size());
  for (size_t i = 0; i < f_const.size(); ++i) a.f[i] = constant_field(f_const[i]);
  return a;
}

std::vector<double> so3_structure_constants() {
  std::vector<double> f(27, 0.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) f[static_cast<size_t>((a * 3 + b) * 3 + c)] = eps3(a, b, c);
  return f;
}

std::vector<double> so3_structure_constants_flipped() {
  std::vector<double> f = so3_structure_constants();
  f[static_cast<size_t>((0 * 3 + 1) * 3 + 2)] = -1.0;  // f^{12}_3
  f[static_cast<size_t>((1 * 3 + 0) * 3 + 2)] = 1.0;   // keeps the upper pair antisymmetric
  return f;
}

PoissonData so3_lie_poisson() {
  PoissonData p;
  p.dim_m = 3;
  p.alpha.resize(9);
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) {
      p.alpha[static_cast<size_t>(mu * 3 + nu)] = [mu, nu](std::span<const double> x) {
        double v = 0;
        for (int lam = 0; lam < 3; ++lam) v += eps3(mu, nu, lam) * x[static_cast<size_t>(lam)];
        return v;
      };
    }
  return p;
}

AlgebroidData so3_lie_poisson_algebroid_broken() {
  AlgebroidData good = poisson_to_algebroid(so3_lie_poisson());
  std::vector<double> flipped = so3_structure_constants_flipped();
  AlgebroidData a;
  a.dim_m = 3;
  a.rank_e = 3;
  a.rho = good.rho;
  a.f.resize(flipped.size());
  for (size_t i = 0; i < flipped.size(); ++i) a.f[i] = constant_field(flipped[i]);
  return a;
}

AlgebroidData poisson_to_algebroid(const PoissonData& p, double h) {
  const int n = p.dim_m;
  AlgebroidData a;
  a.dim_m = n;
  a.rank_e = n;
  a.rho.resize(static_cast<size_t>(n * n));
  a.f.resize(static_cast<size_t>(n * n * n));
  for (int mu = 0; mu < n; ++mu)
    for (int A = 0; A < n; ++A) {
      // rho^{mu A} = alpha^{A mu}: contraction in the first slot, so that
      // the anchor intertwines the brackets.
      a.rho[static_cast<size_t>(mu * n + A)] = [p, mu, A](std::span<const double> x) {
        return p.at(x, A, mu);
      };
    }
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C) {
        a.f[static_cast<size_t>((A * n + B) * n + C)] = [p, A, B, C,
                                                         h](std::span<const double> x) {
          std::vector<double> plus(x.begin(), x.end()), minus(x.begin(), x.end());
          plus[static_cast<size_t>(C)] += h;
          minus[static_cast<size_t>(C)] -= h;
          return (p.at(plus, A, B) - p.at(minus, A, B)) / (2 * h);
        };
      }
  return a;
}

std::vector<std::vector<double>> sample_ball(int dim, const SamplePlan& plan) {
  std::mt19937 rng(plan.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> samples;
  samples.reserve(static_cast<size_t>(plan.count));
  for (int s = 0; s < plan.count; ++s) {
    std::vector<double> x(static_cast<size_t>(dim));
    double norm2 = 0;
    for (double& xi : x) {
      xi = gauss(rng);
      norm2 += xi * xi;
    }
    double norm = std::sqrt(norm2);
    double r = plan.radius * std::pow(unit(rng), 1.0 / dim);
    for (double& xi : x) xi = (norm > 0 ? xi / norm : 0.0) * r;
    samples.push_back(std::move(x));
  }
  return samples;
}

namespace {

/// Full signed antisymmetrization of T over its three arguments, averaged
/// over the six permutations.
template <typename T3>
double antisym3(const T3& t, int i, int j, int k) {
  return (t(i, j, k) - t(j, i, k) + t(j, k, i) - t(k, j, i) + t(k, i, j) - t(i, k, j)) / 6.0;
}

struct AlgebroidPointData {
  std::vector<double> rho0;                 // [mu][A]
  std::vector<double> f0;                   // [A][B][C]
  std::vector<std::vector<double>> drho;    // per nu
  std::vector<std::vector<double>> df;      // per mu
};

AlgebroidPointData evaluate_with_derivatives(const AlgebroidData& a,
                                             const std::vector<double>& x, double h) {
  const int m = a.dim_m, r = a.rank_e;
  AlgebroidPointData d;
  d.rho0.resize(static_cast<size_t>(m * r));
  d.f0.resize(static_cast<size_t>(r * r * r));
  for (int mu = 0; mu < m; ++mu)
    for (int A = 0; A < r; ++A) d.rho0[static_cast<size_t>(mu * r + A)] = a.rho_at(x, mu, A);
  for (int A = 0; A < r; ++A)
    for (int B = 0; B < r; ++B)
      for (int C = 0; C < r; ++C)
        d.f0[static_cast<size_t>((A * r + B) * r + C)] = a.f_at(x, A, B, C);

  d.drho.assign(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(m * r)));
  d.df.assign(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(r * r * r)));
  std::vector<double> plus = x, minus = x;
  for (int nu = 0; nu < m; ++nu) {
    plus[static_cast<size_t>(nu)] = x[static_cast<size_t>(nu)] + h;
    minus[static_cast<size_t>(nu)] = x[static_cast<size_t>(nu)] - h;
    for (int mu = 0; mu < m; ++mu)
      for (int A = 0; A < r; ++A)
        d.drho[static_cast<size_t>(nu)][static_cast<size_t>(mu * r + A)] =
            (a.rho_at(plus, mu, A) - a.rho_at(minus, mu, A)) / (2 * h);
    for (int A = 0; A < r; ++A)
      for (int B = 0; B < r; ++B)
        for (int C = 0; C < r; ++C)
          d.df[static_cast<size_t>(nu)][static_cast<size_t>((A * r + B) * r + C)] =
              (a.f_at(plus, A, B, C) - a.f_at(minus, A, B, C)) / (2 * h);
    plus[static_cast<size_t>(nu)] = x[static_cast<size_t>(nu)];
    minus[static_cast<size_t>(nu)] = x[static_cast<size_t>(nu)];
  }
  return d;
}

}  // namespace

AxiomReport check_axioms(const AlgebroidData& a, const std::vector<std::vector<double>>& samples,
                         double h, int threads) {
  const int m = a.dim_m, r = a.rank_e;
  std::vector<AxiomReport> per_sample(samples.size());

  run_tasks(static_cast<int>(samples.size()), threads, [&](int si) {
    const std::vector<double>& x = samples[static_cast<size_t>(si)];
    AlgebroidPointData d = evaluate_with_derivatives(a, x, h);
    auto rho0 = [&d, r](int mu, int A) { return d.rho0[static_cast<size_t>(mu * r + A)]; };
    auto f0 = [&d, r](int A, int B, int C) {
      return d.f0[static_cast<size_t>((A * r + B) * r + C)];
    };
    auto drho = [&d, r](int nu, int mu, int A) {
      return d.drho[static_cast<size_t>(nu)][static_cast<size_t>(mu * r + A)];
    };
    auto df = [&d, r](int mu, int A, int B, int C) {
      return d.df[static_cast<size_t>(mu)][static_cast<size_t>((A * r + B) * r + C)];
    };

    AxiomReport& rep = per_sample[static_cast<size_t>(si)];
    // rho^{nu A} d_nu rho^{mu B} - rho^{nu B} d_nu rho^{mu A} = f^{AB}_C rho^{mu C}
    for (int A = 0; A < r; ++A)
      for (int B = 0; B < r; ++B)
        for (int mu = 0; mu < m; ++mu) {
          double lhs = 0;
          for (int nu = 0; nu < m; ++nu)
            lhs += rho0(nu, A) * drho(nu, mu, B) - rho0(nu, B) * drho(nu, mu, A);
          double rhs = 0;
          for (int C = 0; C < r; ++C) rhs += f0(A, B, C) * rho0(mu, C);
          accumulate_max(rep.max_anchor_residual, std::fabs(lhs - rhs));
        }

    // rho^{mu [D} d_mu f^{AB]}_C + f^{[AB}_L f^{D]L}_C = 0
    for (int C = 0; C < r; ++C) {
      auto term1 = [&](int D, int A, int B) {
        double v = 0;
        for (int mu = 0; mu < m; ++mu) v += rho0(mu, D) * df(mu, A, B, C);
        return v;
      };
      auto term2 = [&](int A, int B, int D) {
        double v = 0;
        for (int L = 0; L < r; ++L) v += f0(A, B, L) * f0(D, L, C);
        return v;
      };
      for (int A = 0; A < r; ++A)
        for (int B = 0; B < r; ++B)
          for (int D = 0; D < r; ++D) {
            double res = antisym3(term1, D, A, B) + antisym3(term2, A, B, D);
            accumulate_max(rep.max_structure_residual, std::fabs(res));
          }
    }
  });

  AxiomReport total;
  for (const AxiomReport& rep : per_sample) {
    total.max_anchor_residual = std::max(total.max_anchor_residual, rep.max_anchor_residual);
    total.max_structure_residual =
        std::max(total.max_structure_residual, rep.max_structure_residual);
  }
  return total;
}

double poisson_jacobi_residual(const PoissonData& p,
                               const std::vector<std::vector<double>>& samples, double h,
                               int threads) {
  const int n = p.dim_m;
  std::vector<double> per_sample(samples.size(), 0.0);
  run_tasks(static_cast<int>(samples.size()), threads, [&](int si) {
    const std::vector<double>& x = samples[static_cast<size_t>(si)];
    std::vector<double> pi0(static_cast<size_t>(n * n));
    std::vector<std::vector<double>> dpi(static_cast<size_t>(n),
                                         std::vector<double>(static_cast<size_t>(n * n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pi0[static_cast<size_t>(i * n + j)] = p.at(x, i, j);
    std::vector<double> plus = x, minus = x;
    for (int l = 0; l < n; ++l) {
      plus[static_cast<size_t>(l)] = x[static_cast<size_t>(l)] + h;
      minus[static_cast<size_t>(l)] = x[static_cast<size_t>(l)] - h;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dpi[static_cast<size_t>(l)][static_cast<size_t>(i * n + j)] =
              (p.at(plus, i, j) - p.at(minus, i, j)) / (2 * h);
      plus[static_cast<size_t>(l)] = x[static_cast<size_t>(l)];
      minus[static_cast<size_t>(l)] = x[static_cast<size_t>(l)];
    }
    double worst = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          double jac = 0;
          for (int l = 0; l < n; ++l) {
            jac += pi0[static_cast<size_t>(l * n + i)] *
                       dpi[static_cast<size_t>(l)][static_cast<size_t>(j * n + k)] +
                   pi0[static_cast<size_t>(l * n + j)] *
                       dpi[static_cast<size_t>(l)][static_cast<size_t>(k * n + i)] +
                   pi0[static_cast<size_t>(l * n + k)] *
                       dpi[static_cast<size_t>(l)][static_cast<size_t>(i * n + j)];
          }
          accumulate_max(worst, std::fabs(jac));
        }
    per_sample[static_cast<size_t>(si)] = worst;
  });
  double max = 0;
  for (double v : per_sample) max = std::max(max, v);
  return max;
}

PoissonData dual_poisson(const AlgebroidData& a) {
  const int m = a.dim_m, r = a.rank_e, n = m + r;
  PoissonData p;
  p.dim_m = n;
  p.alpha.resize(static_cast<size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      p.alpha[static_cast<size_t>(i * n + j)] = [a, i, j, m](std::span<const double> xl) {
        std::span<const double> x = xl.subspan(0, static_cast<size_t>(a.dim_m));
        bool i_base = i < m, j_base = j < m;
        if (i_base && j_base) return 0.0;
        if (!i_base && !j_base) {
          int A = i - m, B = j - m;
          double v = 0;
          for (int C = 0; C < a.rank_e; ++C)
            v += a.f_at(x, A, B, C) * xl[static_cast<size_t>(m + C)];
          return v;
        }
        if (!i_base && j_base) return a.rho_at(x, j, i - m);   // {lam_A, X^mu}
        return -a.rho_at(x, i, j - m);                         // {X^mu, lam_A}
      };
    }
  return p;
}

MorphismField sample_morphism_field(const Grid2& grid, int dim_m, int rank_e,
                                    const std::vector<std::string>& x_exprs,
                                    const std::vector<std::vector<std::string>>& j_exprs) {
  if (static_cast<int>(x_exprs.size()) != dim_m)
    throw std::invalid_argument("morphism field: X needs one expression per base coordinate");
  if (static_cast<int>(j_exprs.size()) != rank_e)
    throw std::invalid_argument("morphism field: j needs one row per fiber index");
  std::vector<std::string> vars = {"u1", "u2"};
  std::vector<Expr> xf, jf;
  for (const auto& s : x_exprs) xf.push_back(Expr::parse(s, vars));
  for (const auto& row : j_exprs) {
    if (row.size() != 2)
      throw std::invalid_argument("morphism field: j rows must have two components");
    jf.push_back(Expr::parse(row[0], vars));
    jf.push_back(Expr::parse(row[1], vars));
  }

  MorphismField f;
  f.grid = grid;
  f.dim_m = dim_m;
  f.rank_e = rank_e;
  f.x.resize(static_cast<size_t>(grid.nodes() * dim_m));
  f.j.resize(static_cast<size_t>(grid.nodes() * rank_e * 2));
  for (int i = 0; i < grid.n1; ++i)
    for (int jj = 0; jj < grid.n2; ++jj) {
      double u[2] = {grid.u1(i), grid.u2(jj)};
      int node = grid.node(i, jj);
      for (int mu = 0; mu < dim_m; ++mu)
        f.x[static_cast<size_t>(node * dim_m + mu)] = xf[static_cast<size_t>(mu)].eval(u);
      for (int A = 0; A < rank_e; ++A)
        for (int alpha = 0; alpha < 2; ++alpha)
          f.j[static_cast<size_t>((node * rank_e + A) * 2 + alpha)] =
              jf[static_cast<size_t>(A * 2 + alpha)].eval(u);
    }
  return f;
}

std::vector<double> sample_gauge_parameter(const Grid2& grid, int rank_e,
                                           const std::vector<std::string>& beta_exprs) {
  if (static_cast<int>(beta_exprs.size()) != rank_e)
    throw std::invalid_argument("gauge parameter: one expression per fiber index");
  std::vector<std::string> vars = {"u1", "u2"};
  std::vector<Expr> bf;
  bf.reserve(beta_exprs.size());
  for (const auto& s : beta_exprs) bf.push_back(Expr::parse(s, vars));
  std::vector<double> beta(static_cast<size_t>(grid.nodes() * rank_e));
  for (int i = 0; i < grid.n1; ++i)
    for (int jj = 0; jj < grid.n2; ++jj) {
      double u[2] = {grid.u1(i), grid.u2(jj)};
      for (int A = 0; A < rank_e; ++A)
        beta[static_cast<size_t>(grid.node(i, jj) * rank_e + A)] =
            bf[static_cast<size_t>(A)].eval(u);
    }
  return beta;
}

MorphismResidual morphism_residual(const AlgebroidData& a, const MorphismField& m) {
  const Grid2& grid = m.grid;
  if (grid.n1 < 3 || grid.n2 < 3)
    throw std::invalid_argument("morphism_residual: grid has no interior nodes");
  if (a.dim_m != m.dim_m || a.rank_e != m.rank_e)
    throw std::invalid_argument("morphism_residual: field/algebroid shape mismatch");

  MorphismResidual out;
  out.node_flatness.assign(static_cast<size_t>(grid.nodes()), 0.0);
  out.node_anchor.assign(static_cast<size_t>(grid.nodes()), 0.0);
  const double inv2h = 1.0 / (2 * grid.h);

  std::vector<double> x_here(static_cast<size_t>(a.dim_m));
  for (int i = 1; i + 1 < grid.n1; ++i)
    for (int jj = 1; jj + 1 < grid.n2; ++jj) {
      int node = grid.node(i, jj);
      int east = grid.node(i + 1, jj), west = grid.node(i - 1, jj);
      int north = grid.node(i, jj + 1), south = grid.node(i, jj - 1);
      for (int mu = 0; mu < a.dim_m; ++mu) x_here[static_cast<size_t>(mu)] = m.x_at(node, mu);

      double worst_flat = 0;
      for (int A = 0; A < a.rank_e; ++A) {
        double d1_j2 = (m.j_at(east, A, 1) - m.j_at(west, A, 1)) * inv2h;
        double d2_j1 = (m.j_at(north, A, 0) - m.j_at(south, A, 0)) * inv2h;
        double quad = 0;
        for (int B = 0; B < a.rank_e; ++B)
          for (int C = 0; C < a.rank_e; ++C)
            quad += a.f_at(x_here, B, C, A) * m.j_at(node, B, 0) * m.j_at(node, C, 1);
        accumulate_max(worst_flat, std::fabs(d1_j2 - d2_j1 + quad));
      }
      double worst_anchor = 0;
      for (int mu = 0; mu < a.dim_m; ++mu) {
        double d1_x = (m.x_at(east, mu) - m.x_at(west, mu)) * inv2h;
        double d2_x = (m.x_at(north, mu) - m.x_at(south, mu)) * inv2h;
        double r1 = 0, r2 = 0;
        for (int A = 0; A < a.rank_e; ++A) {
          r1 += a.rho_at(x_here, mu, A) * m.j_at(node, A, 0);
          r2 += a.rho_at(x_here, mu, A) * m.j_at(node, A, 1);
        }
        accumulate_max(worst_anchor, std::fabs(d1_x - r1));
        accumulate_max(worst_anchor, std::fabs(d2_x - r2));
      }
      out.node_flatness[static_cast<size_t>(node)] = worst_flat;
      out.node_anchor[static_cast<size_t>(node)] = worst_anchor;
      out.max_flatness = std::max(out.max_flatness, worst_flat);
      out.max_anchor = std::max(out.max_anchor, worst_anchor);
    }
  return out;
}

MorphismField infinitesimal_gauge(const AlgebroidData& a, const MorphismField& m,
                                  const std::vector<double>& beta, double epsilon) {
  const Grid2& grid = m.grid;
  if (static_cast<int>(beta.size()) != grid.nodes() * a.rank_e)
    throw std::invalid_argument("infinitesimal_gauge: beta shape mismatch");
  if (grid.n1 < 3 || grid.n2 < 3)
    throw std::invalid_argument("infinitesimal_gauge: grid too small for derivatives");

  MorphismField out = m;
  std::vector<double> x_here(static_cast<size_t>(a.dim_m));
  for (int i = 0; i < grid.n1; ++i)
    for (int jj = 0; jj < grid.n2; ++jj) {
      int node = grid.node(i, jj);
      for (int mu = 0; mu < a.dim_m; ++mu) x_here[static_cast<size_t>(mu)] = m.x_at(node, mu);

      for (int mu = 0; mu < a.dim_m; ++mu) {
        double delta = 0;
        for (int A = 0; A < a.rank_e; ++A)
          delta -= a.rho_at(x_here, mu, A) * beta[static_cast<size_t>(node * a.rank_e + A)];
        out.x[static_cast<size_t>(node * a.dim_m + mu)] += epsilon * delta;
      }
      for (int A = 0; A < a.rank_e; ++A) {
        for (int alpha = 0; alpha < 2; ++alpha) {
          // d beta_A: central inside, second-order one-sided on the border
          auto beta_at = [&](int ii, int jp) {
            return beta[static_cast<size_t>(grid.node(ii, jp) * a.rank_e + A)];
          };
          int n = alpha == 0 ? grid.n1 : grid.n2;
          int pos = alpha == 0 ? i : jj;
          double inv2h = 1.0 / (2 * grid.h);
          auto val = [&](int p) { return alpha == 0 ? beta_at(p, jj) : beta_at(i, p); };
          double dbeta;
          if (pos > 0 && pos + 1 < n)
            dbeta = (val(pos + 1) - val(pos - 1)) * inv2h;
          else if (pos == 0)
            dbeta = (-3 * val(0) + 4 * val(1) - val(2)) * inv2h;
          else
            dbeta = (3 * val(n - 1) - 4 * val(n - 2) + val(n - 3)) * inv2h;
          double delta = -dbeta;
          for (int B = 0; B < a.rank_e; ++B)
            for (int C = 0; C < a.rank_e; ++C)
              delta -= a.f_at(x_here, B, C, A) * m.j_at(node, B, alpha) *
                       beta[static_cast<size_t>(node * a.rank_e + C)];
          out.j[static_cast<size_t>((node * a.rank_e + A) * 2 + alpha)] += epsilon * delta;
        }
      }
    }
  return out;
}

double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need matching lists of length >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0 || ys[i] <= 0)
      throw std::invalid_argument("fit_loglog_slope: values must be positive");
    double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SubalgebroidReport subalgebroid_check(const AlgebroidData& a, const SubalgebroidChart& chart,
                                      const std::vector<std::vector<double>>& tangent_samples) {
  std::vector<char> coord_seen(static_cast<size_t>(a.dim_m), 0);
  for (int c : chart.transverse_coords) coord_seen[static_cast<size_t>(c)] += 1;
  for (int c : chart.tangent_coords) coord_seen[static_cast<size_t>(c)] += 1;
  for (char s : coord_seen)
    if (s != 1)
      throw std::invalid_argument("subalgebroid_check: coordinate split is not a partition");
  std::vector<char> basis_seen(static_cast<size_t>(a.rank_e), 0);
  for (int b : chart.sub_basis) basis_seen[static_cast<size_t>(b)] += 1;
  for (int b : chart.complement_basis) basis_seen[static_cast<size_t>(b)] += 1;
  for (char s : basis_seen)
    if (s != 1)
      throw std::invalid_argument("subalgebroid_check: fiber split is not a partition");

  SubalgebroidReport rep;
  std::vector<double> x(static_cast<size_t>(a.dim_m), 0.0);
  for (const auto& tangent : tangent_samples) {
    if (tangent.size() != chart.tangent_coords.size())
      throw std::invalid_argument("subalgebroid_check: sample size != tangent coordinates");
    std::fill(x.begin(), x.end(), 0.0);
    for (size_t i = 0; i < tangent.size(); ++i)
      x[static_cast<size_t>(chart.tangent_coords[i])] = tangent[i];
    for (int mu_hat : chart.transverse_coords)
      for (int sa : chart.sub_basis)
        rep.max_anchor = std::max(rep.max_anchor, std::fabs(a.rho_at(x, mu_hat, sa)));
    for (int sa : chart.sub_basis)
      for (int sb : chart.sub_basis)
        for (int nn : chart.complement_basis)
          rep.max_structure = std::max(rep.max_structure, std::fabs(a.f_at(x, sa, sb, nn)));
  }
  if (tangent_samples.empty()) {
    // constant data can still be probed at the origin
    for (int mu_hat : chart.transverse_coords)
      for (int sa : chart.sub_basis)
        rep.max_anchor = std::max(rep.max_anchor, std::fabs(a.rho_at(x, mu_hat, sa)));
    for (int sa : chart.sub_basis)
      for (int sb : chart.sub_basis)
        for (int nn : chart.complement_basis)
          rep.max_structure = std::max(rep.max_structure, std::fabs(a.f_at(x, sa, sb, nn)));
  }
  return rep;
}

}  // namespace gmoduli
