// Command-line front end: exact curve distances, cover lifts/projections,
// antichains, geodesic profiles, and the seeded experiment sweeps, with
// CSV/JSON/SVG emission. Run `curvecov --help` for the command list.
// Slopes are written p/q (use `--` before negative slopes).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvecov/annular.hpp"
#include "curvecov/antichain.hpp"
#include "curvecov/covers.hpp"
#include "curvecov/experiments.hpp"
#include "curvecov/farey.hpp"
#include "curvecov/report.hpp"
#include "curvecov/retraction.hpp"
#include "curvecov/slope.hpp"
#include "curvecov/teich.hpp"

using namespace curvecov;

namespace {

struct GlobalOpts {
  std::string model = "torus";
  std::string format = "csv";
  std::string out;
  std::string config_path;
  uint64_t seed = 1;
};

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SurfaceModel parse_model(const std::string& name) {
  if (name == "torus") return SurfaceModel::TorusFarey;
  if (name == "pillowcase") return SurfaceModel::SphereOrbifold2222;
  throw std::invalid_argument("unknown model '" + name +
                              "' (expected torus or pillowcase)");
}

/// Base config for sweep subcommands: the --config file if given, CLI
/// overrides on top.
ExperimentConfig sweep_config(const GlobalOpts& g, const CLI::App* sub,
                              int64_t count, int64_t bound, int64_t T,
                              double epsilon, double min_len,
                              const std::string& cover_text) {
  ExperimentConfig cfg;
  if (!g.config_path.empty()) cfg = parse_config(slurp_file(g.config_path));
  cfg.model = parse_model(g.model);
  auto passed = [&](const char* name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (passed("--seed") || g.config_path.empty()) cfg.seed = g.seed;
  if (passed("--count")) cfg.sample_count = count;
  if (passed("--bound")) cfg.slope_size_bound = bound;
  if (passed("--threshold")) cfg.T = T;
  if (passed("--epsilon")) cfg.epsilon = epsilon;
  if (passed("--min-len")) cfg.min_len = min_len;
  if (passed("--cover")) {
    if (cover_text == "pillowcase") {
      cfg.pillowcase_cover = true;
      cfg.cover.reset();
    } else {
      cfg.cover = parse_cover(cover_text);
      cfg.pillowcase_cover = false;
    }
  }
  validate_config(cfg);
  return cfg;
}

void write_or_print(const GlobalOpts& g, const std::string& rendered) {
  if (g.out.empty()) {
    std::cout << rendered;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open '" + g.out + "' for writing");
  out << rendered;
  if (!out) throw std::runtime_error("write to '" + g.out + "' failed");
}

std::string fmt(double v) { return detail::fmt_double(v); }

// ---------------------------------------------------------------------------
// geodesic profile
// ---------------------------------------------------------------------------

struct ProfileRow {
  double t;
  double systole_value;
  Slope realizer;
  std::vector<Slope> thin;  // curves whose thin window contains t
};

std::vector<ProfileRow> profile_rows(const GeodesicSegment& g, double epsilon,
                                     double step) {
  std::vector<ThinInterval> windows = thin_intervals(g, epsilon);
  std::vector<ProfileRow> rows;
  int64_t steps =
      std::max<int64_t>(1, static_cast<int64_t>(std::ceil(g.length() / step)));
  for (int64_t i = 0; i <= steps; ++i) {
    double t =
        g.t_lo + (g.t_hi - g.t_lo) * static_cast<double>(i) /
                     static_cast<double>(steps);
    SystoleResult sys = systole(g.at(t));
    ProfileRow row{t, sys.value, sys.realizers.front(), {}};
    for (const ThinInterval& w : windows)
      if (w.t_enter <= t && t <= w.t_exit) row.thin.push_back(w.curve);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_profile_csv(const std::vector<ProfileRow>& rows) {
  std::string out = "t,systole,realizer,thin\n";
  for (const ProfileRow& r : rows) {
    out += fmt(r.t) + "," + fmt(r.systole_value) + "," + r.realizer.str() +
           ",";
    for (size_t i = 0; i < r.thin.size(); ++i) {
      if (i) out += ";";
      out += r.thin[i].str();
    }
    out += "\n";
  }
  return out;
}

std::string coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

/// Strip chart: systole against arclength, thin windows shaded.
std::string render_profile_svg(const GeodesicSegment& g,
                               const std::vector<ProfileRow>& rows,
                               double epsilon) {
  const double width = 640, height = 220, ml = 56, mr = 16, mt = 16, mb = 40;
  double max_y = epsilon;
  for (const ProfileRow& r : rows) max_y = std::max(max_y, r.systole_value);
  auto sx = [&](double t) {
    return ml + (width - ml - mr) * (t - g.t_lo) / (g.t_hi - g.t_lo);
  };
  auto sy = [&](double v) {
    return height - mb - (height - mt - mb) * v / max_y;
  };
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(width) +
       "\" height=\"" + coord(height) + "\" viewBox=\"0 0 " + coord(width) +
       " " + coord(height) + "\">\n";
  s += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const ThinInterval& w : thin_intervals(g, epsilon)) {
    double x0 = sx(w.t_enter), x1 = sx(w.t_exit);
    s += "  <rect x=\"" + coord(x0) + "\" y=\"" + coord(mt) + "\" width=\"" +
         coord(x1 - x0) + "\" height=\"" + coord(height - mt - mb) +
         "\" fill=\"#fde2e2\"><title>" + w.curve.str() +
         "</title></rect>\n";
  }
  // epsilon rule
  s += "  <line x1=\"" + coord(ml) + "\" y1=\"" + coord(sy(epsilon)) +
       "\" x2=\"" + coord(width - mr) + "\" y2=\"" + coord(sy(epsilon)) +
       "\" stroke=\"#c44\" stroke-dasharray=\"4 3\"/>\n";
  s += "  <polyline fill=\"none\" stroke=\"steelblue\" points=\"";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i) s += " ";
    s += coord(sx(rows[i].t)) + "," + coord(sy(rows[i].systole_value));
  }
  s += "\"/>\n";
  s += "  <line x1=\"" + coord(ml) + "\" y1=\"" + coord(height - mb) +
       "\" x2=\"" + coord(width - mr) + "\" y2=\"" + coord(height - mb) +
       "\" stroke=\"black\"/>\n";
  s += "  <line x1=\"" + coord(ml) + "\" y1=\"" + coord(mt) + "\" x2=\"" +
       coord(ml) + "\" y2=\"" + coord(height - mb) +
       "\" stroke=\"black\"/>\n";
  s += "  <text x=\"" + coord((ml + width - mr) / 2) + "\" y=\"" +
       coord(height - 10) +
       "\" text-anchor=\"middle\" font-size=\"12\">t</text>\n";
  s += "  <text x=\"14\" y=\"" + coord((mt + height - mb) / 2) +
       "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 " +
       coord((mt + height - mb) / 2) + ")\">systole</text>\n";
  s += "  <text x=\"" + coord(width - mr) + "\" y=\"" +
       coord(height - mb + 14) + "\" text-anchor=\"end\" font-size=\"10\">" +
       g.a.str() + " to " + g.b.str() + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact curve-complex distances, covers, and geodesic experiments on "
      "the torus, pillowcase, and annulus"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--model", g.model, "surface model: torus or pillowcase")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format: csv, json, or svg")
      ->capture_default_str();
  app.add_option("--out", g.out, "write the report to this file");
  app.add_option("--seed", g.seed, "RNG seed for sweeps")
      ->capture_default_str();
  app.add_option("--config", g.config_path,
                 "experiment config file (key = value lines)");

  // ---- dist ----
  std::string arg_a, arg_b;
  CLI::App* dist = app.add_subcommand("dist", "graph distance between slopes");
  dist->add_option("a", arg_a, "first slope p/q")->required();
  dist->add_option("b", arg_b, "second slope p/q")->required();

  // ---- lift / project ----
  std::string cover_text;
  CLI::App* lift =
      app.add_subcommand("lift", "lift a base curve through a cover");
  lift->add_option("--cover", cover_text,
                   "cover basis [[a,c],[b,d]] or 'pillowcase'")
      ->required();
  lift->add_option("a", arg_a, "base slope p/q")->required();

  CLI::App* project =
      app.add_subcommand("project", "project a cover curve to the base");
  project->add_option("--cover", cover_text, "cover basis [[a,c],[b,d]]")
      ->required();
  project->add_option("a", arg_a, "cover slope p/q")->required();

  // ---- antichain ----
  int64_t opt_T = 4;
  CLI::App* anti = app.add_subcommand(
      "antichain", "slopes with annular projection distance >= T");
  anti->add_option("a", arg_a, "first slope p/q")->required();
  anti->add_option("b", arg_b, "second slope p/q")->required();
  anti->add_option("-T,--threshold", opt_T, "projection threshold")
      ->capture_default_str();

  // ---- profile ----
  double opt_eps = 0.5, opt_len = 0.5, opt_step = 0.1;
  CLI::App* profile = app.add_subcommand(
      "profile", "systole and thin windows along a geodesic");
  profile->add_option("a", arg_a, "first slope p/q")->required();
  profile->add_option("b", arg_b, "second slope p/q")->required();
  profile->add_option("--epsilon", opt_eps, "thinness cutoff")
      ->capture_default_str();
  profile->add_option("--step", opt_step, "sampling step in arclength")
      ->capture_default_str();

  // ---- sweep subcommands ----
  int64_t opt_count = 100, opt_bound = 100;
  auto add_sweep_opts = [&](CLI::App* sub, bool with_cover,
                            bool with_estimate) {
    sub->add_option("--count", opt_count, "number of sampled pairs");
    sub->add_option("--bound", opt_bound, "slope size bound for sampling");
    sub->add_option("--seed", g.seed, "RNG seed");
    if (with_cover)
      sub->add_option("--cover", cover_text,
                      "cover basis [[a,c],[b,d]] or 'pillowcase'");
    if (with_estimate) {
      sub->add_option("-T,--threshold", opt_T, "antichain threshold");
      sub->add_option("--epsilon", opt_eps, "thinness cutoff");
      sub->add_option("--min-len", opt_len, "thick interval length floor");
    }
  };
  CLI::App* estimate = app.add_subcommand(
      "estimate", "two-sided distance estimate sweep with train/test fit");
  add_sweep_opts(estimate, false, true);
  CLI::App* coverqi = app.add_subcommand(
      "cover-qi", "base vs lifted distance quasi-isometry fit");
  add_sweep_opts(coverqi, true, false);
  CLI::App* bgi = app.add_subcommand(
      "bgi", "bounded geodesic image fit with deletion-search certificates");
  add_sweep_opts(bgi, false, false);
  CLI::App* backtrack = app.add_subcommand(
      "backtrack", "shadow reverse-triangle-inequality fit");
  add_sweep_opts(backtrack, false, false);

  // ---- retraction-check ----
  std::string opt_center = "0/1";
  int64_t opt_radius = 3, opt_ball_bound = 50;
  bool opt_chord = false;
  CLI::App* retr = app.add_subcommand(
      "retraction-check", "verify a graph retraction preserves distances");
  retr->add_option("--center", opt_center, "ball center slope")
      ->capture_default_str();
  retr->add_option("--radius", opt_radius, "ball radius")
      ->capture_default_str();
  retr->add_option("--bound", opt_ball_bound, "slope box for the ball")
      ->capture_default_str();
  retr->add_flag("--chord", opt_chord,
                 "add a shortcut chord upstairs (must be rejected)");

  CLI11_PARSE(app, argc, argv);

  try {
    ReportFormat format = parse_format(g.format);
    parse_model(g.model);  // validate the token early

    if (dist->parsed()) {
      std::cout << farey_distance(parse_slope(arg_a), parse_slope(arg_b))
                << "\n";
    } else if (lift->parsed()) {
      Slope a = parse_slope(arg_a);
      if (cover_text == "pillowcase") {
        std::cout << orbifold_lift(a).str() << "\n";
      } else {
        LiftResult res = lift_curve(parse_cover(cover_text), a);
        std::cout << res.lifted.str() << "\n";
        std::cout << "wrap = " << res.wrap.str() << "\n";
        std::cout << "components = " << res.components.str() << "\n";
      }
    } else if (project->parsed()) {
      auto [base, mult] = project_curve(parse_cover(cover_text),
                                        parse_slope(arg_a));
      std::cout << base.str() << "\n";
      std::cout << "multiplicity = " << mult.str() << "\n";
    } else if (anti->parsed()) {
      Antichain ch =
          antichain_of_maxima(parse_slope(arg_a), parse_slope(arg_b), opt_T);
      for (const Slope& m : ch.members) std::cout << m.str() << "\n";
    } else if (profile->parsed()) {
      GeodesicSegment seg =
          geodesic_between(parse_slope(arg_a), parse_slope(arg_b));
      std::vector<ProfileRow> rows = profile_rows(seg, opt_eps, opt_step);
      if (format == ReportFormat::Svg)
        write_or_print(g, render_profile_svg(seg, rows, opt_eps));
      else if (format == ReportFormat::Csv)
        write_or_print(g, render_profile_csv(rows));
      else
        throw std::invalid_argument("profile supports csv or svg output");
    } else if (estimate->parsed()) {
      ExperimentConfig cfg = sweep_config(g, estimate, opt_count, opt_bound,
                                          opt_T, opt_eps, opt_len, "");
      EstimateSweep sweep = run_estimate_sweep(cfg);
      std::cerr << "pairs = " << sweep.reports.size()
                << "\nfitted_K = " << fmt(sweep.fitted_K)
                << "\nheldout_violations = " << sweep.heldout_violations
                << "\n";
      if (format == ReportFormat::Csv)
        write_or_print(g, render_csv(sweep.reports));
      else if (format == ReportFormat::Json)
        write_or_print(g, render_json(sweep.reports));
      else
        write_or_print(g, render_svg(sweep.reports));
    } else if (coverqi->parsed()) {
      ExperimentConfig cfg = sweep_config(g, coverqi, opt_count, opt_bound,
                                          opt_T, opt_eps, opt_len, cover_text);
      if (!cfg.cover && !cfg.pillowcase_cover)
        throw std::invalid_argument("cover-qi needs --cover");
      QIFitReport rep = run_cover_qi(cfg);
      std::cerr << "fitted_Q = " << fmt(rep.fitted_Q)
                << "\nupper_factor = " << fmt(rep.upper_factor)
                << "\nviolations = " << rep.violations << "\n";
      if (format == ReportFormat::Json)
        write_or_print(g, render_json(rep));
      else
        write_or_print(g, render_csv(rep));
    } else if (bgi->parsed()) {
      ExperimentConfig cfg = sweep_config(g, bgi, opt_count, opt_bound, opt_T,
                                          opt_eps, opt_len, "");
      BgiReport rep = run_bgi_test(cfg);
      std::cout << "fitted_M = " << rep.fitted_M
                << "\naxes_checked = " << rep.axes_checked
                << "\nskipped = " << rep.skipped
                << "\npass = " << (rep.pass ? "true" : "false") << "\n";
    } else if (backtrack->parsed()) {
      ExperimentConfig cfg = sweep_config(g, backtrack, opt_count, opt_bound,
                                          opt_T, opt_eps, opt_len, "");
      BacktrackReport rep = run_backtrack_test(cfg);
      std::cout << "fitted_B = " << rep.fitted_B
                << "\ntriples = " << rep.triples
                << "\npass = " << (rep.pass ? "true" : "false") << "\n";
    } else if (retr->parsed()) {
      BallGraph ball =
          farey_ball(parse_slope(opt_center), opt_radius, opt_ball_bound);
      FiniteGraphMapCheck check =
          opt_chord ? make_chord_check(ball) : make_identity_check(ball);
      RetractionVerdict v = check_retraction(check);
      std::cout << "vertices = " << ball.vertices.size() << "\n"
                << "simplicial_pi = " << (v.simplicial_pi ? "true" : "false")
                << "\n"
                << "simplicial_p = " << (v.simplicial_p ? "true" : "false")
                << "\n"
                << "isometric = " << (v.isometric ? "true" : "false") << "\n";
      if (v.counterexample) {
        const RetractionCounterexample& ce = *v.counterexample;
        std::cout << "counterexample: " << ball.vertices[size_t(ce.a)].str()
                  << " vs " << ball.vertices[size_t(ce.b)].str()
                  << " (distance " << ce.dist_g << " downstairs, "
                  << ce.dist_h << " upstairs)\n";
      }
      std::cout << "passed = " << (v.passed() ? "true" : "false") << "\n";
      if (!v.passed()) return 1;  // scriptable verdict
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
