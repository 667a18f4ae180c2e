// Command-line front end: wires JSON inputs to the library operations and
// writes machine-readable reports.
//
// Exit codes: 0 = pass, 1 = a verification failed (axioms, flatness,
// moduli mismatch, residual above tolerance), 2 = input error. A report
// file is written for exits 0 and 1.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmoduli/io.hpp"
#include "gmoduli/moduli.hpp"
#include "gmoduli/report.hpp"

namespace {

using namespace gmoduli;

int default_threads() {
  const char* env = std::getenv("GMODULI_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

struct Common {
  std::string out = "report.json";
  int threads = default_threads();
  long long limit = 100'000'000;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--out", common.out, "report file path");
  cmd->add_option("--threads", common.threads, "worker thread count");
  cmd->add_option("--limit", common.limit, "enumeration size guard");
}

/// Reports embed the inputs that determine the result; execution knobs
/// (thread count, output path) stay out so reruns are byte-identical.
Json envelope(const std::string& command, Json config, bool pass, Json result) {
  Json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["config"] = std::move(config);
  j["status"] = pass ? "pass" : "fail";
  j["result"] = std::move(result);
  return j;
}

int finish(const Common& common, const std::string& command, Json config, bool pass,
           Json result, const std::string& summary) {
  write_json_file(common.out, envelope(command, std::move(config), pass, std::move(result)));
  std::cout << command << ": " << summary << "\n";
  return pass ? 0 : 1;
}

struct SampleArgs {
  double h = 1e-4;
  double tol = 1e-6;
  int points = 100;
  unsigned seed = 12345;
  double radius = 1.0;
};

void add_sample_args(CLI::App* cmd, SampleArgs& args) {
  cmd->add_option("--step", args.h, "finite-difference step");
  cmd->add_option("--tol", args.tol, "pass tolerance");
  cmd->add_option("--points", args.points, "sample count");
  cmd->add_option("--seed", args.seed, "sample RNG seed");
  cmd->add_option("--radius", args.radius, "sample ball radius");
}

Json sample_config(const SampleArgs& args) {
  Json j;
  j["h"] = args.h;
  j["tol"] = args.tol;
  j["points"] = args.points;
  j["seed"] = args.seed;
  j["radius"] = args.radius;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moduli of groupoid-valued flat fields on surfaces, "
               "with numerical Lie-algebroid verification"};
  app.require_subcommand(1);

  auto* cmd_validate = app.add_subcommand("validate", "check groupoid tables");
  Common validate_common;
  std::string validate_groupoid;
  cmd_validate->add_option("--groupoid", validate_groupoid, "groupoid file")->required();
  add_common(cmd_validate, validate_common);

  auto* cmd_leaves = app.add_subcommand("leaves", "connectivity classes of objects");
  Common leaves_common;
  std::string leaves_groupoid;
  cmd_leaves->add_option("--groupoid", leaves_groupoid, "groupoid file")->required();
  add_common(cmd_leaves, leaves_common);

  auto* cmd_isotropy = app.add_subcommand("isotropy", "isotropy group at an object");
  Common isotropy_common;
  std::string isotropy_groupoid;
  int isotropy_object = 0;
  cmd_isotropy->add_option("--groupoid", isotropy_groupoid, "groupoid file")->required();
  cmd_isotropy->add_option("--object", isotropy_object, "object index")->required();
  add_common(cmd_isotropy, isotropy_common);

  auto* cmd_bisections = app.add_subcommand("bisections", "enumerate the bisection group");
  Common bisections_common;
  std::string bisections_groupoid;
  cmd_bisections->add_option("--groupoid", bisections_groupoid, "groupoid file")->required();
  add_common(cmd_bisections, bisections_common);

  auto* cmd_mc = app.add_subcommand("moduli-closed", "closed-surface moduli per leaf");
  Common mc_common;
  std::string mc_groupoid;
  int mc_genus = 1;
  cmd_mc->add_option("--groupoid", mc_groupoid, "groupoid file")->required();
  cmd_mc->add_option("--genus", mc_genus, "surface genus")->required();
  add_common(cmd_mc, mc_common);

  auto* cmd_mo = app.add_subcommand("moduli-open", "one-boundary moduli per subgroupoid leaf");
  Common mo_common;
  std::string mo_groupoid, mo_sub;
  int mo_genus = 1;
  cmd_mo->add_option("--groupoid", mo_groupoid, "groupoid file")->required();
  cmd_mo->add_option("--sub", mo_sub, "boundary subgroupoid file")->required();
  cmd_mo->add_option("--genus", mo_genus, "surface genus")->required();
  add_common(cmd_mo, mo_common);

  auto* cmd_mi = app.add_subcommand("moduli-interval", "double-coset classes of the square");
  Common mi_common;
  std::string mi_groupoid, mi_sub0, mi_sub1;
  cmd_mi->add_option("--groupoid", mi_groupoid, "groupoid file")->required();
  cmd_mi->add_option("--sub0", mi_sub0, "side-0 subgroupoid file")->required();
  cmd_mi->add_option("--sub1", mi_sub1, "side-1 subgroupoid file")->required();
  add_common(cmd_mi, mi_common);

  auto* cmd_le = app.add_subcommand("lattice-enumerate", "enumerate flat fields on a surface");
  Common le_common;
  std::string le_groupoid, le_surface;
  bool le_gauge_fixed = false, le_orbits = false;
  cmd_le->add_option("--groupoid", le_groupoid, "groupoid file")->required();
  cmd_le->add_option("--surface", le_surface, "surface file")->required();
  cmd_le->add_flag("--gauge-fixed", le_gauge_fixed, "pin spanning-tree edges to identities");
  cmd_le->add_flag("--orbits", le_orbits, "also compute gauge orbits");
  add_common(cmd_le, le_common);

  auto* cmd_compare = app.add_subcommand(
      "compare", "gauge orbits against holonomy moduli, with the class bijection");
  Common compare_common;
  std::string compare_groupoid, compare_surface, compare_sub;
  cmd_compare->add_option("--groupoid", compare_groupoid, "groupoid file")->required();
  cmd_compare->add_option("--surface", compare_surface, "surface file")->required();
  cmd_compare->add_option("--sub", compare_sub, "boundary subgroupoid file (bordered case)");
  add_common(cmd_compare, compare_common);

  auto* cmd_ac = app.add_subcommand("algebroid-check", "consistency equations of (rho, f)");
  Common ac_common;
  std::string ac_in;
  SampleArgs ac_args;
  cmd_ac->add_option("--in", ac_in, "algebroid file")->required();
  add_sample_args(cmd_ac, ac_args);
  add_common(cmd_ac, ac_common);

  auto* cmd_pc = app.add_subcommand("poisson-check", "Jacobi identity of a Poisson tensor");
  Common pc_common;
  std::string pc_in;
  SampleArgs pc_args;
  cmd_pc->add_option("--in", pc_in, "poisson file")->required();
  add_sample_args(cmd_pc, pc_args);
  add_common(cmd_pc, pc_common);

  auto* cmd_dp = app.add_subcommand("dual-poisson",
                                    "fiberwise-linear Poisson tensor of an algebroid");
  Common dp_common;
  std::string dp_in;
  SampleArgs dp_args;
  cmd_dp->add_option("--in", dp_in, "algebroid file")->required();
  add_sample_args(cmd_dp, dp_args);
  add_common(cmd_dp, dp_common);

  auto* cmd_mr = app.add_subcommand("morphism-residual", "bundle-map equation residuals");
  Common mr_common;
  std::string mr_algebroid, mr_field;
  double mr_tol = 1e-6;
  cmd_mr->add_option("--algebroid", mr_algebroid, "algebroid file")->required();
  cmd_mr->add_option("--field", mr_field, "morphism field file")->required();
  cmd_mr->add_option("--tol", mr_tol, "pass tolerance");
  add_common(cmd_mr, mr_common);

  auto* cmd_go = app.add_subcommand("gauge-order",
                                    "residual growth order under gauge deformation");
  Common go_common;
  std::string go_algebroid, go_field, go_beta;
  std::vector<double> go_eps = {0.1, 0.2, 0.4};
  double go_min = 1.8, go_max = 2.2;
  cmd_go->add_option("--algebroid", go_algebroid, "algebroid file")->required();
  cmd_go->add_option("--field", go_field, "morphism field file")->required();
  cmd_go->add_option("--beta", go_beta, "gauge parameter file")->required();
  cmd_go->add_option("--eps", go_eps, "deformation sizes");
  cmd_go->add_option("--min-slope", go_min, "lower slope bound");
  cmd_go->add_option("--max-slope", go_max, "upper slope bound");
  add_common(cmd_go, go_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_validate) {
      Json input = load_json_file(validate_groupoid);
      GroupoidData data = parse_groupoid_data(input);
      ValidationReport rep = validate(data);
      Json config;
      config["groupoid"] = validate_groupoid;
      return finish(validate_common, "validate", config, rep.ok(), to_json(rep),
                    rep.ok() ? "pass" : "fail\n" + rep.summary());
    }

    if (*cmd_leaves) {
      FiniteGroupoid g = parse_groupoid(load_json_file(leaves_groupoid));
      Partition part = leaves(g);
      Json config;
      config["groupoid"] = leaves_groupoid;
      return finish(leaves_common, "leaves", config, true, to_json(part),
                    std::to_string(part.classes.size()) + " leaves");
    }

    if (*cmd_isotropy) {
      FiniteGroupoid g = parse_groupoid(load_json_file(isotropy_groupoid));
      if (isotropy_object < 0 || isotropy_object >= g.objects())
        throw InputError("object index out of range");
      IsotropyGroup iso = isotropy_group(g, isotropy_object);
      Json result;
      result["object"] = isotropy_object;
      result["order"] = iso.arrow_ids.size();
      result["arrows"] = iso.arrow_ids;
      result["group"] = groupoid_to_json(iso.group.data());
      Json config;
      config["groupoid"] = isotropy_groupoid;
      config["object"] = isotropy_object;
      return finish(isotropy_common, "isotropy", config, true, result,
                    "order " + std::to_string(iso.arrow_ids.size()));
    }

    if (*cmd_bisections) {
      FiniteGroupoid g = parse_groupoid(load_json_file(bisections_groupoid));
      std::vector<Bisection> all = bisections(g, bisections_common.limit);
      Json list = Json::array();
      for (const auto& b : all) list.push_back(b.sigma);
      Json result;
      result["count"] = all.size();
      result["bisections"] = list;
      Json config;
      config["groupoid"] = bisections_groupoid;
      config["limit"] = bisections_common.limit;
      return finish(bisections_common, "bisections", config, true, result,
                    std::to_string(all.size()) + " bisections");
    }

    if (*cmd_mc) {
      FiniteGroupoid g = parse_groupoid(load_json_file(mc_groupoid));
      ModuliOptions opts{mc_common.limit, mc_common.threads};
      auto moduli = moduli_closed(g, mc_genus, opts);
      long long classes = 0;
      for (const auto& lm : moduli) classes += static_cast<long long>(lm.classes.size());
      Json config;
      config["groupoid"] = mc_groupoid;
      config["genus"] = mc_genus;
      config["limit"] = mc_common.limit;
      return finish(mc_common, "moduli-closed", config, true, to_json(moduli),
                    std::to_string(classes) + " classes over " +
                        std::to_string(moduli.size()) + " leaves");
    }

    if (*cmd_mo) {
      FiniteGroupoid g = parse_groupoid(load_json_file(mo_groupoid));
      Subgroupoid sub = parse_subgroupoid(load_json_file(mo_sub), g);
      ModuliOptions opts{mo_common.limit, mo_common.threads};
      auto moduli = moduli_open(g, mo_genus, sub, opts);
      long long classes = 0;
      for (const auto& lm : moduli) classes += static_cast<long long>(lm.classes.size());
      Json config;
      config["groupoid"] = mo_groupoid;
      config["sub"] = mo_sub;
      config["genus"] = mo_genus;
      config["limit"] = mo_common.limit;
      return finish(mo_common, "moduli-open", config, true, to_json(moduli),
                    std::to_string(classes) + " classes over " +
                        std::to_string(moduli.size()) + " boundary leaves");
    }

    if (*cmd_mi) {
      FiniteGroupoid g = parse_groupoid(load_json_file(mi_groupoid));
      Subgroupoid sub0 = parse_subgroupoid(load_json_file(mi_sub0), g);
      Subgroupoid sub1 = parse_subgroupoid(load_json_file(mi_sub1), g);
      auto classes = moduli_interval(g, sub0, sub1);
      Json config;
      config["groupoid"] = mi_groupoid;
      config["sub0"] = mi_sub0;
      config["sub1"] = mi_sub1;
      return finish(mi_common, "moduli-interval", config, true, to_json(classes),
                    std::to_string(classes.size()) + " classes");
    }

    if (*cmd_le) {
      FiniteGroupoid g = parse_groupoid(load_json_file(le_groupoid));
      CWSurface c = parse_surface(load_json_file(le_surface));
      EnumerateOptions opts;
      opts.limit = le_common.limit;
      opts.threads = le_common.threads;
      opts.gauge_fixed = le_gauge_fixed;
      std::vector<LatticeMorphism> fields = enumerate_flat(c, g, opts);
      Json result;
      result["field_count"] = fields.size();
      result["fields"] = fields_to_json(fields);
      if (le_orbits) {
        if (le_gauge_fixed)
          throw InputError("--orbits needs the full field list, not --gauge-fixed");
        auto orbits = gauge_orbits(c, g, fields);
        result["orbits"] = orbits_to_json(orbits);
      }
      Json config;
      config["groupoid"] = le_groupoid;
      config["surface"] = le_surface;
      config["gauge_fixed"] = le_gauge_fixed;
      config["limit"] = le_common.limit;
      return finish(le_common, "lattice-enumerate", config, true, result,
                    std::to_string(fields.size()) + " flat fields");
    }

    if (*cmd_compare) {
      FiniteGroupoid g = parse_groupoid(load_json_file(compare_groupoid));
      CWSurface c = parse_surface(load_json_file(compare_surface));
      CompareOptions opts{compare_common.limit, compare_common.threads};
      CompareReport rep;
      if (compare_sub.empty()) {
        rep = compare_lattice_vs_holonomy(c, g, opts);
      } else {
        Subgroupoid sub = parse_subgroupoid(load_json_file(compare_sub), g);
        rep = compare_open(c, g, sub, opts);
      }
      Json config;
      config["groupoid"] = compare_groupoid;
      config["surface"] = compare_surface;
      if (!compare_sub.empty()) config["sub"] = compare_sub;
      config["limit"] = compare_common.limit;
      std::string summary = rep.ok
                                ? "match, " + std::to_string(rep.bijection.size()) + " classes"
                                : "MISMATCH: " + rep.failure;
      return finish(compare_common, "compare", config, rep.ok, to_json(rep), summary);
    }

    if (*cmd_ac) {
      AlgebroidData a = parse_algebroid(load_json_file(ac_in));
      auto samples = sample_ball(a.dim_m, {ac_args.points, ac_args.seed, ac_args.radius});
      AxiomReport rep = check_axioms(a, samples, ac_args.h, ac_common.threads);
      Json config = sample_config(ac_args);
      config["in"] = ac_in;
      char buf[64];
      std::snprintf(buf, sizeof buf, "max residual %.3e", rep.max_residual());
      return finish(ac_common, "algebroid-check", config, rep.pass(ac_args.tol),
                    to_json(rep, ac_args.tol), buf);
    }

    if (*cmd_pc) {
      PoissonData p = parse_poisson(load_json_file(pc_in));
      auto samples = sample_ball(p.dim_m, {pc_args.points, pc_args.seed, pc_args.radius});
      double residual = poisson_jacobi_residual(p, samples, pc_args.h, pc_common.threads);
      Json result;
      result["status"] = residual <= pc_args.tol ? "pass" : "fail";
      result["tolerance"] = pc_args.tol;
      result["max_jacobi_residual"] = residual;
      Json config = sample_config(pc_args);
      config["in"] = pc_in;
      char buf[64];
      std::snprintf(buf, sizeof buf, "Jacobi residual %.3e", residual);
      return finish(pc_common, "poisson-check", config, residual <= pc_args.tol, result, buf);
    }

    if (*cmd_dp) {
      AlgebroidData a = parse_algebroid(load_json_file(dp_in));
      PoissonData dual = dual_poisson(a);
      auto samples = sample_ball(dual.dim_m, {dp_args.points, dp_args.seed, dp_args.radius});
      double residual = poisson_jacobi_residual(dual, samples, dp_args.h, dp_common.threads);
      Json result;
      result["status"] = residual <= dp_args.tol ? "pass" : "fail";
      result["tolerance"] = dp_args.tol;
      result["dual_dimension"] = dual.dim_m;
      result["max_jacobi_residual"] = residual;
      Json config = sample_config(dp_args);
      config["in"] = dp_in;
      char buf[64];
      std::snprintf(buf, sizeof buf, "Jacobi residual %.3e", residual);
      return finish(dp_common, "dual-poisson", config, residual <= dp_args.tol, result, buf);
    }

    if (*cmd_mr) {
      AlgebroidData a = parse_algebroid(load_json_file(mr_algebroid));
      MorphismField field = parse_morphism_field(load_json_file(mr_field));
      MorphismResidual res = morphism_residual(a, field);
      Json config;
      config["algebroid"] = mr_algebroid;
      config["field"] = mr_field;
      config["tol"] = mr_tol;
      char buf[80];
      std::snprintf(buf, sizeof buf, "flatness %.3e, anchor %.3e", res.max_flatness,
                    res.max_anchor);
      return finish(mr_common, "morphism-residual", config, res.pass(mr_tol),
                    to_json(res, mr_tol), buf);
    }

    if (*cmd_go) {
      AlgebroidData a = parse_algebroid(load_json_file(go_algebroid));
      MorphismField field = parse_morphism_field(load_json_file(go_field));
      std::vector<double> beta =
          parse_gauge_parameter(load_json_file(go_beta), field.grid, a.rank_e);
      MorphismResidual base = morphism_residual(a, field);
      std::vector<double> growth;
      Json rows = Json::array();
      for (double eps : go_eps) {
        MorphismField deformed = infinitesimal_gauge(a, field, beta, eps);
        MorphismResidual res = morphism_residual(a, deformed);
        growth.push_back(res.max_residual() - base.max_residual());
        Json row;
        row["epsilon"] = eps;
        row["residual"] = res.max_residual();
        row["growth"] = growth.back();
        rows.push_back(row);
      }
      double slope = fit_loglog_slope(go_eps, growth);
      bool pass = slope >= go_min && slope <= go_max;
      Json result;
      result["status"] = pass ? "pass" : "fail";
      result["base_residual"] = base.max_residual();
      result["steps"] = rows;
      result["fitted_slope"] = slope;
      result["slope_window"] = Json::array({go_min, go_max});
      Json config;
      config["algebroid"] = go_algebroid;
      config["field"] = go_field;
      config["beta"] = go_beta;
      config["eps"] = go_eps;
      char buf[64];
      std::snprintf(buf, sizeof buf, "fitted slope %.3f", slope);
      return finish(go_common, "gauge-order", config, pass, result, buf);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
