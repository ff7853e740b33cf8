#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nullwave/builtins.hpp"
#include "nullwave/cli.hpp"
#include "nullwave/error.hpp"
#include "nullwave/parallel.hpp"

namespace nullwave::cli {

using ojson = nlohmann::ordered_json;

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  if (s.empty()) return "";
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ojson jnum(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }
ojson jcplx(cplx c) { return ojson::array({c.real(), c.imag()}); }
ojson jvec(const MinkVec& x) { return ojson::array({x.t, x.x1, x.x2, x.x3}); }

ojson stats_json(const std::vector<std::string>& names, const std::vector<ColumnStats>& stats) {
  ojson out = ojson::object();
  for (std::size_t i = 0; i < names.size(); ++i) {
    out[names[i]] = {{"max", stats[i].count ? jnum(stats[i].max) : ojson(nullptr)},
                     {"mean", stats[i].count ? jnum(stats[i].mean) : ojson(nullptr)},
                     {"count", stats[i].count}};
  }
  return out;
}

double det_tol_of(const RunConfig& cfg) {
  if (cfg.det_tol > 0.0) return cfg.det_tol;
  return cfg.scheme.kind == SchemeKind::Analytic ? 1e-9 : 1e-6;
}

// Generated solution: field plus the raw solver so the chart data can be reported.
struct Solver {
  ScalarField field;
  std::function<void(GeneratedPoint&)> solve;
};

Solver solver_of(const InputSpec& in) {
  Solver s;
  const bool kerr = in.kind == InputKind::Kerr ||
                    (in.kind == InputKind::Builtin && in.builtin == "kerr-basic");
  const bool surface = in.kind == InputKind::Surface ||
                       (in.kind == InputKind::Builtin && in.builtin == "surface-basic");
  if (kerr) {
    const MeromorphicTriple T = in.kind == InputKind::Kerr ? in.triple : kerr_basic_triple();
    const Box dom = in.domain.value_or(in.kind == InputKind::Kerr ? Box{} : kerr_basic_domain());
    const int branch = in.branch;
    s.field = kerr_field(T, dom, branch, in.kind == InputKind::Kerr ? "kerr" : in.builtin);
    s.solve = [T, branch](GeneratedPoint& p) {
      const KerrRoot r = kerr_solve(T, p.x, std::nullopt, branch);
      p.z = r.z;
      p.root = r.branch;
    };
  } else if (surface) {
    const TwistorSurface S =
        in.kind == InputKind::Surface ? polynomial_surface(in.slots) : surface_basic();
    const Box dom =
        in.domain.value_or(in.kind == InputKind::Surface ? Box{} : surface_basic_domain());
    const auto seed = in.seed;
    s.field = surface_field(S, dom, seed, in.kind == InputKind::Surface ? "surface" : in.builtin);
    s.solve = [S, seed](GeneratedPoint& p) {
      const IncidenceSolution r = solve_incidence(S, p.x, seed);
      p.z = r.z;
      p.w = r.w;
      p.root = r.seed_index;
    };
  } else {
    s.field = field_of(in);
    const ScalarField f = s.field;
    s.solve = [f](GeneratedPoint& p) { p.z = f.evaluate(p.x); };
  }
  return s;
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Parse, "cannot open output file '" + cfg.out_path + "'");
  f << text;
}

}  // namespace

std::string verify_csv(const Theorem2Report& r) {
  const auto& cols = ResidualReport::residual_columns();
  std::string s = "t,x1,x2,x3,status";
  for (const auto& c : cols) s += "," + c;
  s += ",coincident,note\n";
  for (const auto& rec : r.residuals.records) {
    s += num(rec.x.t) + "," + num(rec.x.x1) + "," + num(rec.x.x2) + "," + num(rec.x.x3) + ",";
    s += to_string(rec.status);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      s += "," + num(ResidualReport::column_value(rec, i));
    }
    s += "," + (rec.coincident < 0 ? std::string() : std::to_string(rec.coincident));
    s += "," + quoted(rec.note) + "\n";
  }
  return s;
}

std::string verify_json(const Theorem2Report& r) {
  const auto& cols = ResidualReport::residual_columns();
  ojson j;
  j["schema"] = 1;
  j["command"] = "verify";
  j["label"] = r.residuals.label;
  j["verdict"] = {{"pass", r.verdict()},
                  {"null_solution", r.null_solution},
                  {"xi_branch_sfr", r.xi_branch_sfr()},
                  {"eta_branch_sfr", r.eta_branch_sfr()},
                  {"max_semiconformality", jnum(r.max_semiconformality)},
                  {"max_wave", jnum(r.max_wave)},
                  {"xi_branch_max", jnum(r.xi_branch_max)},
                  {"eta_branch_max", jnum(r.eta_branch_max)},
                  {"max_kernel_residual", jnum(r.max_kernel_residual)},
                  {"coincident_points", r.coincident_points},
                  {"zero_gradient_points", r.zero_gradient_points.size()},
                  {"failed_points", r.failed_points},
                  {"sfr_tol", r.sfr_tol}};
  j["columns"] = cols;
  ojson pts = ojson::array();
  for (const auto& rec : r.residuals.records) {
    ojson p;
    p["x"] = jvec(rec.x);
    p["status"] = to_string(rec.status);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      p[cols[i]] = jnum(ResidualReport::column_value(rec, i));
    }
    p["coincident"] = rec.coincident < 0 ? ojson(nullptr) : ojson(rec.coincident == 1);
    p["note"] = rec.note;
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  j["aggregate"] = stats_json(cols, r.residuals.aggregate());
  return j.dump(2) + "\n";
}

GenerateResult generate(const RunConfig& cfg) {
  const Solver solver = solver_of(cfg.input);
  const double det_tol = det_tol_of(cfg);
  GenerateResult res;
  res.label = solver.field.label;
  const auto pts = grid_of(cfg, solver.field).points();
  res.points.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    GeneratedPoint& p = res.points[i];
    p.x = pts[i];
    try {
      solver.solve(p);
      p.grad = field_gradient(solver.field, p.x, cfg.scheme);
      p.semiconformality = std::abs(gradient_matrix(p.grad).det());
      p.wave = std::abs(wave_residual(solver.field, p.x, cfg.scheme));
      p.pass = p.semiconformality <= det_tol && p.wave <= cfg.wave_tol;
    } catch (const Error& e) {
      p.singular = true;
      p.note = e.what();
    }
  });
  for (const auto& p : res.points) {
    if (p.singular) continue;
    ++res.regular;
    if (p.pass) ++res.passed;
  }
  return res;
}

std::string generate_csv(const GenerateResult& g) {
  std::string s =
      "t,x1,x2,x3,status,root,z_re,z_im,w_re,w_im,dt_re,dt_im,dx1_re,dx1_im,dx2_re,dx2_im,"
      "dx3_re,dx3_im,semiconformality,wave,pass,note\n";
  for (const auto& p : g.points) {
    s += num(p.x.t) + "," + num(p.x.x1) + "," + num(p.x.x2) + "," + num(p.x.x3) + ",";
    if (p.singular) {
      s += "singular,,,,,,,,,,,,,,,,," + quoted(p.note) + "\n";
      continue;
    }
    s += "ok," + std::to_string(p.root) + "," + num(p.z.real()) + "," + num(p.z.imag()) + ",";
    s += p.w ? num(p.w->real()) + "," + num(p.w->imag()) : std::string(",");
    for (const auto& c : p.grad) s += "," + num(c.real()) + "," + num(c.imag());
    s += "," + num(p.semiconformality) + "," + num(p.wave) + "," + (p.pass ? "1" : "0") + ",\n";
  }
  return s;
}

std::string generate_json(const GenerateResult& g) {
  ojson j;
  j["schema"] = 1;
  j["command"] = "generate";
  j["label"] = g.label;
  j["verdict"] = {{"pass", g.verdict()}, {"regular_points", g.regular}, {"passed_points", g.passed}};
  ojson pts = ojson::array();
  ColumnStats det_stats;
  ColumnStats wave_stats;
  for (const auto& p : g.points) {
    ojson o;
    o["x"] = jvec(p.x);
    o["status"] = p.singular ? "singular" : "ok";
    if (p.singular) {
      o["note"] = p.note;
      pts.push_back(std::move(o));
      continue;
    }
    o["root"] = p.root;
    o["z"] = jcplx(p.z);
    o["w"] = p.w ? jcplx(*p.w) : ojson(nullptr);
    ojson grad = ojson::array();
    for (const auto& c : p.grad) grad.push_back(jcplx(c));
    o["grad"] = std::move(grad);
    o["semiconformality"] = jnum(p.semiconformality);
    o["wave"] = jnum(p.wave);
    o["pass"] = p.pass;
    pts.push_back(std::move(o));
    for (auto [stats, v] : {std::pair{&det_stats, p.semiconformality}, std::pair{&wave_stats, p.wave}}) {
      stats->max = std::max(stats->max, v);
      stats->mean += v;
      ++stats->count;
    }
  }
  for (auto* st : {&det_stats, &wave_stats})
    if (st->count) st->mean /= static_cast<double>(st->count);
  j["points"] = std::move(pts);
  j["aggregate"] = stats_json({"semiconformality", "wave"}, {det_stats, wave_stats});
  return j.dump(2) + "\n";
}

std::string classify_json(const BranchClassification& c, const MinkVec& x, const MinkVec& v) {
  ojson j;
  j["schema"] = 1;
  j["command"] = "classify";
  j["point"] = jvec(x);
  j["direction"] = jvec(v);
  j["branch"] = to_string(c.branch);
  j["kernel_residual"] = jnum(c.kernel_residual);
  j["xi_wedge"] = jnum(c.xi_wedge);
  j["eta_wedge"] = jnum(c.eta_wedge);
  j["alpha"] = jcplx(c.alpha);
  j["beta"] = jcplx(c.beta);
  j["lambda"] = jnum(c.decomposition.lambda);
  j["rho"] = ojson::array({jcplx(c.decomposition.rho.c0), jcplx(c.decomposition.rho.c1)});
  return j.dump(2) + "\n";
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ScalarField f = field_of(cfg.input);
  Theorem2Options opts;
  opts.scheme = cfg.scheme;
  opts.det_tol = cfg.det_tol;
  opts.wave_tol = cfg.wave_tol;
  opts.sfr_tol = cfg.sfr_tol;
  const Theorem2Report r = verify_theorem2(f, grid_of(cfg, f), opts);
  write_output(cfg, cfg.format == Format::Json ? verify_json(r) : verify_csv(r), out);

  char line[256];
  std::snprintf(line, sizeof line,
                "verify %s: null_solution=%s max_det=%.3g max_wave=%.3g xi_sfr=%.3g eta_sfr=%.3g "
                "failed=%zu\n",
                f.label.c_str(), r.null_solution ? "yes" : "no", r.max_semiconformality,
                r.max_wave, r.xi_branch_max, r.eta_branch_max, r.failed_points);
  err << line;
  if (r.failed_points > 0) return kNumericFailure;
  return r.verdict() ? kPass : kVerdictFailure;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.point || !cfg.direction) {
    throw Error(ErrorKind::Parse, "classify needs \"point\" and \"direction\"");
  }
  const ScalarField f = field_of(cfg.input);
  ClassifyOptions opts;
  opts.scheme = cfg.scheme;
  try {
    const BranchClassification c = classify_kernel_direction(f, *cfg.point, *cfg.direction, opts);
    write_output(cfg, classify_json(c, *cfg.point, *cfg.direction), out);
    err << "classify " << f.label << ": " << to_string(c.branch) << "\n";
    return kPass;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotNull) throw;
    ojson j;
    j["schema"] = 1;
    j["command"] = "classify";
    j["point"] = jvec(*cfg.point);
    j["direction"] = jvec(*cfg.direction);
    j["error"] = to_string(e.kind());
    write_output(cfg, j.dump(2) + "\n", out);
    err << "classify " << f.label << ": " << e.what() << "\n";
    return kVerdictFailure;
  }
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GenerateResult g = generate(cfg);
  write_output(cfg, cfg.format == Format::Json ? generate_json(g) : generate_csv(g), out);
  err << "generate " << g.label << ": " << g.passed << "/" << g.regular << " regular points pass, "
      << g.points.size() - g.regular << " singular\n";
  if (g.regular == 0) return kNumericFailure;
  return g.verdict() ? kPass : kVerdictFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Null solutions of the wave equation: verification, classification, generation"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // -h would clash with --h

  std::string config_path;
  std::string out_path;
  std::string format;
  double h = 0.0;
  double tol = 0.0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config")->required();
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--h", h, "difference step")->check(CLI::PositiveNumber);
    sub->add_option("--tol", tol, "tolerance for every verdict")->check(CLI::PositiveNumber);
  };
  auto* verify = app.add_subcommand("verify", "null-solution and shear-free checks on a grid");
  auto* classify = app.add_subcommand("classify", "branch of a null kernel direction");
  auto* gen = app.add_subcommand("generate", "sample a kerr or twistor-surface solution");
  add_common(verify);
  add_common(classify);
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot read config '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    RunConfig cfg = parse_config(buf.str());
    cfg.out_path = out_path;
    if (!format.empty()) cfg.format = format == "json" ? Format::Json : Format::Csv;
    if (h > 0.0) cfg.scheme.h = h;
    if (tol > 0.0) cfg.det_tol = cfg.wave_tol = cfg.sfr_tol = tol;

    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg, out, err);
    }
    if (classify->parsed()) {
      cfg.command = "classify";
      return cmd_classify(cfg, out, err);
    }
    cfg.command = "generate";
    return cmd_generate(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Parse ? kParseError : kNumericFailure;
  }
}

}  // namespace nullwave::cli
