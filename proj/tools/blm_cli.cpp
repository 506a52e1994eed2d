// Command-line front end: parse a JSON model spec, dispatch to the library,
// emit machine-readable results (JSON reports, CSV tables).
//
// Exit codes: 0 pass/success, 1 check failure or validation rejection
// (JSON report on stdout), 2 usage or parse error (message on stderr).

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "blm/dependence.hpp"
#include "blm/model_spec.hpp"
#include "blm/moments.hpp"
#include "blm/numeric.hpp"
#include "blm/orders.hpp"
#include "blm/simulate.hpp"

namespace {

using blm::Model;
using ojson = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 12345;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BLM_DEFAULT_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return kDefaultSeed;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

ojson report_json(const blm::GridReport& r) {
  return ojson{{"check", r.check},
               {"verdict", r.passed ? "pass" : "fail"},
               {"worst_value", r.worst_value},
               {"witness", r.witness},
               {"configurations_tested", r.configurations_tested}};
}

ojson verdict_json(const blm::OrderVerdict& v) {
  return ojson{{"relation", blm::to_string(v.relation)},
               {"holds", blm::to_string(v.holds)},
               {"margin", v.margin},
               {"witness", v.witness},
               {"points_checked", v.points_checked},
               {"note", v.note}};
}

ojson validation_json(const std::string& family,
                      const blm::ValidationReport& report) {
  ojson checks = ojson::array();
  for (const auto& c : report.checks) {
    checks.push_back(ojson{{"name", c.name},
                           {"passed", c.passed},
                           {"margin", c.margin},
                           {"worst_x", c.worst_x}});
  }
  return ojson{
      {"family", family}, {"passed", report.passed}, {"checks", checks}};
}

// evaluation grid for a model; BLM grids come from theta, GMO grids from the
// decay of the margins
blm::Grid model_grid(const Model& model, int n) {
  if (model.is_blm()) return blm::default_grid(model.blm().theta(), n);
  const auto& g = model.gmo();
  auto axis_for = [n](const std::function<double(double)>& sbar) {
    double hi = 1.0;
    while (sbar(hi) > 3.3546e-4 && hi < 1e12) hi *= 2.0;  // exp(-8)
    const double upper = blm::num::solve_monotone(sbar, 3.3546e-4, 0.0, hi,
                                                  1e-9 * hi);
    return blm::num::geomspace(upper / 160.0, upper, n);
  };
  blm::Grid grid;
  grid.xs = axis_for([&g](double x) { return g.margin_x_survival(x); });
  grid.ys = axis_for([&g](double y) { return g.margin_y_survival(y); });
  return grid;
}

struct CheckOptions {
  std::string spec_path;
  std::string kind;
  int grid_n = 20;
  double tol = -1.0;  // negative = per-kind default
  int order = 4;
  int trials = 200;
  bool permissive = false;
};

int run_check(const CheckOptions& opt) {
  const auto mode = opt.permissive ? blm::ValidationMode::permissive
                                   : blm::ValidationMode::strict;
  const Model model = blm::load_model_file(opt.spec_path, mode);
  const blm::Grid grid = model_grid(model, opt.grid_n);
  // finite-difference-backed checks default to a looser tolerance
  const double tol =
      opt.tol >= 0.0 ? opt.tol : (opt.kind == "theorem7" ? 1e-6 : 1e-9);

  if (opt.kind == "ifra") {
    const std::vector<double> alphas{0.1, 0.25, 0.5, 0.75, 0.9};
    const blm::OrderVerdict v = blm::bivariate_ifra_check(
        model.blm(), alphas, grid, blm::Relation::ifra, tol);
    std::cout << verdict_json(v).dump(2) << "\n";
    return v.holds == blm::Holds::yes ? 0 : 1;
  }

  blm::GridReport report;
  if (opt.kind == "tp2" || opt.kind == "rr2" || opt.kind == "tp_order") {
    const blm::Kernel kernel = model.is_blm()
                                   ? blm::survival_kernel(model.blm())
                                   : blm::survival_kernel(model.gmo());
    if (opt.kind == "tp2") {
      report = blm::tp2_check(kernel, grid, tol);
    } else if (opt.kind == "rr2") {
      report = blm::rr2_check(kernel, grid, tol);
    } else {
      report = blm::tp_order_check(kernel, grid, opt.order, tol,
                                   opt.trials);
    }
  } else if (opt.kind == "pqd") {
    report = model.is_blm() ? blm::pqd_check(model.blm(), grid, tol)
                            : blm::pqd_check(model.gmo(), grid, tol);
  } else if (opt.kind == "theorem6") {
    report = blm::theorem6_condition(model.blm(), grid, tol);
  } else if (opt.kind == "theorem7") {
    report = blm::theorem7_density_condition(model.blm(), grid.xs, tol);
  } else {
    throw blm::SpecError("unknown check kind '" + opt.kind + "'");
  }
  std::cout << report_json(report).dump(2) << "\n";
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "blm: construction, evaluation, sampling and dependence diagnostics "
      "for bivariate lack-of-memory distributions"};
  app.require_subcommand(1);

  std::string spec_path, spec_path2;
  double x = 0.0, y = 0.0, s = 0.0, t = 0.0, tol = 1e-9;
  int i = 1, j = 1, grid_n = 20;
  std::uint64_t n_samples = 1000, seed = default_seed(), stream = 0;
  bool permissive = false;
  std::string kind = "lst", relation = "uo", system = "series",
              sampler = "auto";

  int rc = 0;
  std::function<void()> action;

  bool strict_flag = false;
  auto* validate = app.add_subcommand("validate", "run the validity checks");
  validate->add_option("spec", spec_path)->required();
  validate->add_flag("--permissive", permissive,
                     "return the report instead of rejecting");
  validate->add_flag("--strict", strict_flag,
                     "reject on any failed check (default)");
  validate->callback([&] {
    blm::ValidationReport report;
    std::string family;
    try {
      const Model model = blm::load_model_file(
          spec_path, permissive ? blm::ValidationMode::permissive
                                : blm::ValidationMode::strict);
      family = model.family;
      if (model.is_blm()) report = model.blm().validation();
    } catch (const blm::ValidationError& e) {
      std::cout << validation_json("custom", e.report()).dump(2) << "\n";
      rc = 1;
      return;
    }
    std::cout << validation_json(family, report).dump(2) << "\n";
    rc = report.passed ? 0 : 1;
  });

  auto* eval = app.add_subcommand("eval", "evaluate the survival function");
  eval->add_option("spec", spec_path)->required();
  eval->add_option("--x", x)->required();
  eval->add_option("--y", y)->required();
  eval->callback([&] {
    const Model model = blm::load_model_file(spec_path);
    const double v = model.is_blm() ? model.blm().survival(x, y)
                                    : model.gmo().survival(x, y);
    std::printf("%.6e\n", v);
  });

  auto* density = app.add_subcommand("density", "evaluate the joint density");
  density->add_option("spec", spec_path)->required();
  density->add_option("--x", x)->required();
  density->add_option("--y", y)->required();
  density->callback([&] {
    const Model model = blm::load_model_file(spec_path);
    std::printf("%.6e\n", model.blm().density(x, y));
  });

  auto* moments = app.add_subcommand(
      "moments", "product moment: closed form vs quadrature oracle");
  moments->add_option("spec", spec_path)->required();
  moments->add_option("--i", i)->required();
  moments->add_option("--j", j)->required();
  moments->callback([&] {
    const Model model = blm::load_model_file(spec_path);
    const double closed = blm::product_moment(model.blm(), {i, j});
    const double oracle = blm::quadrature_oracle(
        model.blm(), blm::OracleKind::lemma3_moment, i, j);
    std::cout << "i,j,closed_form,oracle,abs_diff\n"
              << i << "," << j << "," << sci(closed) << "," << sci(oracle)
              << "," << sci(std::abs(closed - oracle)) << "\n";
  });

  auto* transform = app.add_subcommand(
      "transform", "joint transform: closed form vs quadrature oracle");
  transform->add_option("spec", spec_path)->required();
  transform->add_option("--s", s)->required();
  transform->add_option("--t", t)->required();
  transform->add_option("--kind", kind)
      ->check(CLI::IsMember({"lst", "mgf"}))
      ->capture_default_str();
  transform->callback([&] {
    const Model model = blm::load_model_file(spec_path);
    const bool is_lst = (kind == "lst");
    const double closed = is_lst ? blm::lst(model.blm(), {s, t})
                                 : blm::mgf(model.blm(), {s, t});
    const double oracle = blm::quadrature_oracle(
        model.blm(),
        is_lst ? blm::OracleKind::lemma1_lst : blm::OracleKind::lemma2_mgf, s,
        t);
    std::cout << "s,t,closed_form,oracle,abs_diff\n"
              << sci(s) << "," << sci(t) << "," << sci(closed) << ","
              << sci(oracle) << "," << sci(std::abs(closed - oracle)) << "\n";
  });

  auto* sample = app.add_subcommand("sample", "draw paired lifetimes (CSV)");
  sample->add_option("spec", spec_path)->required();
  sample->add_option("--n", n_samples)->required();
  sample->add_option("--seed", seed,
                     "RNG seed (default from BLM_DEFAULT_SEED env var, else "
                     "12345)");
  sample->add_option("--stream", stream, "substream id for parallel batches");
  sample->add_option("--sampler", sampler)
      ->check(CLI::IsMember({"auto", "shock", "universal"}))
      ->capture_default_str();
  sample->callback([&] {
    const Model model = blm::load_model_file(spec_path);
    blm::RngStream rng(seed, stream);
    blm::SampleBatch batch;
    std::string choice = sampler;
    if (choice == "auto") {
      choice =
          (model.family == "mo" || model.family == "gmo") ? "shock"
                                                          : "universal";
    }
    if (choice == "shock") {
      if (model.family == "mo") {
        batch = blm::sample_mo(*model.mo, n_samples, rng);
      } else if (model.family == "gmo") {
        batch = blm::sample_gmo(model.gmo(), n_samples, rng);
      } else {
        throw blm::SpecError(
            "shock sampler is only available for mo and gmo families");
      }
    } else {
      batch = blm::sample_blm(model.blm(), n_samples, rng);
    }
    std::printf("# sampler=%s family=%s seed=%" PRIu64 " stream=%" PRIu64
                " n=%zu\n",
                batch.sampler_id.c_str(), model.family.c_str(), batch.seed,
                batch.stream, batch.n());
    std::printf("x,y\n");
    for (const auto& p : batch.pairs) {
      std::printf("%.8e,%.8e\n", p.first, p.second);
    }
  });

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "grid-based dependence check");
  check->add_option("spec", check_opt.spec_path)->required();
  check->add_option("--kind", check_opt.kind)
      ->required()
      ->check(CLI::IsMember(
          {"tp2", "rr2", "tp_order", "pqd", "theorem6", "theorem7", "ifra"}));
  check->add_option("--grid", check_opt.grid_n, "points per axis");
  check->add_option("--tol", check_opt.tol);
  check->add_option("--order", check_opt.order, "r for tp_order");
  check->add_option("--trials", check_opt.trials,
                    "random configurations per order");
  check->add_flag("--permissive", check_opt.permissive,
                  "build the model without rejecting invalid parameters");
  check->callback([&] { rc = run_check(check_opt); });

  auto* compare =
      app.add_subcommand("compare", "stochastic-order comparison of two "
                                    "models");
  compare->add_option("spec1", spec_path)->required();
  compare->add_option("spec2", spec_path2)->required();
  compare->add_option("--relation", relation)
      ->check(CLI::IsMember({"st", "hr", "rh", "lr", "uo", "concordance",
                             "lt", "slepian"}))
      ->capture_default_str();
  compare->add_option("--grid", grid_n, "points per axis");
  compare->add_option("--tol", tol);
  compare->callback([&] {
    const Model m1 = blm::load_model_file(spec_path);
    const Model m2 = blm::load_model_file(spec_path2);
    const blm::Grid grid = model_grid(m1, grid_n);
    if (relation == "st" || relation == "hr" || relation == "rh" ||
        relation == "lr") {
      // margin-wise comparison of the two models
      const blm::Relation rel = relation == "st"   ? blm::Relation::st
                                : relation == "hr" ? blm::Relation::hr
                                : relation == "rh" ? blm::Relation::rh
                                                   : blm::Relation::lr;
      const auto vx = blm::univariate_order(
          m1.blm().margin_x(), m2.blm().margin_x(), rel, grid.xs, tol);
      const auto vy = blm::univariate_order(
          m1.blm().margin_y(), m2.blm().margin_y(), rel, grid.ys, tol);
      std::cout << ojson{{"x", verdict_json(vx)}, {"y", verdict_json(vy)}}
                       .dump(2)
                << "\n";
      rc = (vx.holds == blm::Holds::yes && vy.holds == blm::Holds::yes) ? 0
                                                                        : 1;
      return;
    }
    blm::OrderVerdict v;
    if (relation == "slepian") {
      v = blm::slepian_check(m1.blm(), m2.blm(), grid, tol);
    } else {
      const blm::Relation rel = relation == "uo" ? blm::Relation::uo
                                : relation == "concordance"
                                    ? blm::Relation::concordance
                                    : blm::Relation::lt;
      v = blm::compare_blm(m1.blm(), m2.blm(), rel, grid, tol);
    }
    std::cout << verdict_json(v).dump(2) << "\n";
    rc = (v.holds == blm::Holds::yes) ? 0 : 1;
  });

  auto* mttf = app.add_subcommand("mttf", "mean time to failure");
  mttf->add_option("spec", spec_path)->required();
  mttf->add_option("--system", system)
      ->required()
      ->check(CLI::IsMember({"series", "parallel"}));
  mttf->callback([&] {
    const Model model = blm::load_model_file(spec_path);
    const auto kind = system == "series" ? blm::SystemKind::series
                                         : blm::SystemKind::parallel;
    std::printf("%.6e\n", blm::mttf(model.blm(), kind));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const blm::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const blm::ValidationError& e) {
    std::cout << ojson{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << ojson{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  }
  return rc;
}
