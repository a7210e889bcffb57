#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "matclass/io.hpp"
#include "matclass/json_report.hpp"

namespace matclass::cli {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUndefined = 2;
constexpr int kExitInput = 3;
constexpr int kExitCap = 4;

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return kExitPass;
    case Verdict::fail:
      return kExitFail;
    default:
      return kExitUndefined;
  }
}

struct GlobalOpts {
  ToleranceConfig tol;
  int jobs = 1;
  std::string format = "text";
  std::string output;
};

// MATCLASS_TOLERANCES="zero=1e-12,real=1e-9,rel=1e-8" seeds the defaults;
// command-line flags still override.
void apply_env_tolerances(ToleranceConfig& tol) {
  const char* env = std::getenv("MATCLASS_TOLERANCES");
  if (!env) return;
  std::string_view sv(env);
  while (!sv.empty()) {
    const size_t comma = sv.find(',');
    const std::string_view item = sv.substr(0, comma);
    sv = comma == std::string_view::npos ? std::string_view{} : sv.substr(comma + 1);
    if (item.empty()) continue;
    const size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw InputError("MATCLASS_TOLERANCES items must look like key=value");
    const std::string_view key = item.substr(0, eq);
    const double value = std::strtod(std::string(item.substr(eq + 1)).c_str(), nullptr);
    if (key == "zero")
      tol.tol_zero = value;
    else if (key == "real")
      tol.tol_real = value;
    else if (key == "rel")
      tol.tol_rel = value;
    else
      throw InputError("MATCLASS_TOLERANCES keys are zero, real, rel");
  }
  tol.validate();
}

void emit(const GlobalOpts& g, const std::string& payload, std::ostream& out) {
  if (g.output.empty())
    out << payload;
  else
    write_file(g.output, payload);
}

RunManifest make_manifest(const GlobalOpts& g, std::string command,
                          std::vector<std::string> inputs,
                          std::optional<std::uint64_t> seed = std::nullopt) {
  RunManifest m;
  m.command = std::move(command);
  m.inputs = std::move(inputs);
  m.tolerances = g.tol;
  m.seed = seed;
  m.format = g.format;
  m.jobs = g.jobs;
  return m;
}

MatrixFormat matrix_format_from(const std::string& s) {
  if (s == "auto") return MatrixFormat::auto_detect;
  if (s == "json") return MatrixFormat::json;
  if (s == "text") return MatrixFormat::text;
  throw InputError("matrix format must be auto, json or text");
}

std::string minor_table_text(const MinorTable& t) {
  std::ostringstream os;
  os.precision(12);
  os << "n = " << t.n << "\n";
  for (std::uint64_t mask = 0; mask < t.minors.size(); ++mask) {
    const auto mem = IndexSet(mask, t.n).members();
    os << mask << " {";
    for (size_t i = 0; i < mem.size(); ++i) os << (i ? "," : "") << mem[i];
    os << "} = " << t.minors[mask] << "\n";
  }
  os << "c =";
  for (double v : t.c) os << " " << v;
  os << "\n";
  return os.str();
}

// Composite verdict + the binding single report for the named certifier.
std::pair<ClassReport, std::string> run_single_check(const std::string& name, const Matrix& a,
                                                     const ToleranceConfig& tol, int jobs) {
  if (name == "p") return {p_matrix_check(principal_minor_table(a, MinorMode::floating, jobs), tol), "p"};
  if (name == "gkk" || name == "strict-gkk") {
    const bool strict = name == "strict-gkk";
    ClassReport p = p_matrix_check(principal_minor_table(a, MinorMode::floating, jobs), tol);
    if (p.verdict != Verdict::pass) return {p, name + " (P part)"};
    return {dispersal_sign_check(a, 1, strict, tol), name};
  }
  if (name == "sign-sym") return {dispersal_sign_check(a, a.order(), false, tol), name};
  if (name == "omega") return {omega_tau_check(a, tol).omega, name};
  if (name == "tau") return {omega_tau_check(a, tol).tau, name};
  if (name == "stable") return {stability_check(eigenvalues(a, tol), tol), name};
  if (name == "varga") {
    const Spectrum s = eigenvalues(a, tol);
    return {varga_cone_check(s, min_real_eigenvalue(s, tol), a.order(), tol), name};
  }
  if (name == "hf")
    return {hadamard_fischer_check(principal_minor_table(a, MinorMode::floating, jobs), tol), name};
  if (name == "newton")
    return {newton_check(principal_minor_table(a, MinorMode::floating, jobs).c, tol), name};
  if (name == "m")
    return {m_matrix_check(a, principal_minor_table(a, MinorMode::floating, jobs), tol), name};
  throw InputError("unknown check: " + name +
                   " (expected p|gkk|strict-gkk|sign-sym|omega|tau|stable|varga|hf|newton|m)");
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  GlobalOpts g;

  CLI::App app{"matclass: matrix class certification and counterexample search"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));
  app.add_option("--tol-zero", g.tol.tol_zero, "absolute zero threshold");
  app.add_option("--tol-real", g.tol.tol_real, "eigenvalue realness threshold");
  app.add_option("--tol-rel", g.tol.tol_rel, "relative comparison slack");
  app.add_option("--jobs", g.jobs, "worker bound (never affects results)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", g.output, "write the report to a file instead of stdout");

  // classify
  std::string cls_file, cls_informat = "auto";
  auto* cls = app.add_subcommand("classify", "full class membership report");
  cls->add_option("matrix", cls_file, "matrix file")->required();
  cls->add_option("--input-format", cls_informat, "auto|json|text");

  // minors
  std::string min_file, min_mode = "float", min_informat = "auto";
  auto* min = app.add_subcommand("minors", "emit the principal minor table");
  min->add_option("matrix", min_file)->required();
  min->add_option("--mode", min_mode, "float|exact")->check(CLI::IsMember({"float", "exact"}));
  min->add_option("--input-format", min_informat, "auto|json|text");

  // check
  std::string chk_name, chk_file;
  auto* chk = app.add_subcommand("check", "run one certifier");
  chk->add_option("name", chk_name, "p|gkk|strict-gkk|sign-sym|omega|tau|stable|varga|hf|newton|m")
      ->required();
  chk->add_option("matrix", chk_file)->required();

  // dispersal
  std::string dsp_file;
  int dsp_d = 0;
  bool dsp_strict = false, dsp_profile = false;
  auto* dsp = app.add_subcommand("dispersal", "sign products at bounded dispersal");
  dsp->add_option("matrix", dsp_file)->required();
  auto* dsp_d_opt = dsp->add_option("--d", dsp_d, "check products at dispersal 1..d");
  dsp->add_flag("--strict", dsp_strict, "require strictly positive products");
  dsp->add_flag("--profile", dsp_profile, "per-d margins for d = 1..n plus stability");

  // search
  std::string sr_class, sr_objective;
  SearchConfig sr_cfg;
  auto* sr = app.add_subcommand("search", "extremal search inside a class");
  sr->add_option("--class", sr_class, "p|gkk|strict-gkk|sign-sym|omega|tau|gkk-tau|m|hpd|real-spectrum")
      ->required();
  sr->add_option("--objective", sr_objective, "stability|varga|newton|strict-gkk|hf")->required();
  sr->add_option("--n", sr_cfg.n, "matrix order")->required();
  sr->add_option("--seed", sr_cfg.seed, "64-bit seed");
  sr->add_option("--iters", sr_cfg.iterations, "iterations per restart");
  sr->add_option("--restarts", sr_cfg.restarts, "independent restarts");
  sr->add_option("--step-init", sr_cfg.step_init, "initial perturbation step");
  sr->add_option("--step-decay", sr_cfg.step_decay, "per-iteration step decay");
  sr->add_option("--budget", sr_cfg.membership_budget, "proposals per starting member");

  // approx-strict
  std::string ap_file;
  double ap_eps = 0.1;
  bool ap_tau = false;
  SearchConfig ap_cfg;
  auto* ap = app.add_subcommand("approx-strict", "search the eps-ball for a strict GKK matrix");
  ap->add_option("matrix", ap_file)->required();
  ap->add_option("--eps", ap_eps, "max-entry radius")->required();
  ap->add_flag("--tau", ap_tau, "require tau as well");
  ap->add_option("--seed", ap_cfg.seed);
  ap->add_option("--iters", ap_cfg.iterations);
  ap->add_option("--restarts", ap_cfg.restarts);
  ap->add_option("--step-init", ap_cfg.step_init);
  ap->add_option("--step-decay", ap_cfg.step_decay);

  // assign
  std::string as_targets;
  FitConfig as_fit;
  auto* as = app.add_subcommand("assign", "HF feasibility and least-squares minor fit");
  as->add_option("--targets", as_targets, "target minor table (JSON)")->required();
  as->add_option("--seed", as_fit.seed);
  as->add_option("--starts", as_fit.starts);
  as->add_option("--max-iters", as_fit.max_iterations);

  // interlace
  std::string il_p, il_q, il_method = "all";
  auto* il = app.add_subcommand("interlace", "interlacing of two real polynomials");
  il->add_option("--p", il_p, "polynomial JSON {\"coeffs\": [...]}")->required();
  il->add_option("--q", il_q, "polynomial JSON, degree deg(p)-1")->required();
  il->add_option("--method", il_method, "roots|hb|hurwitz|all")
      ->check(CLI::IsMember({"roots", "hb", "hurwitz", "all"}));

  try {
    apply_env_tolerances(g.tol);
    app.parse(argc, argv);
    g.tol.validate();

    if (*cls) {
      const Matrix a = load_matrix(cls_file, matrix_format_from(cls_informat));
      const ClassifyReport rep = classify(a, g.tol, g.jobs);
      const RunManifest m = make_manifest(g, "classify", {cls_file});
      emit(g, g.format == "json" ? to_json(rep, &m) : to_text(rep), out);
      return kExitPass;
    }

    if (*min) {
      const Matrix a = load_matrix(min_file, matrix_format_from(min_informat));
      if (a.order() > MinorTable::warn_order)
        err << "note: order " << a.order() << " builds " << (1ull << a.order())
            << " minors; this may take a while\n";
      const MinorTable t = principal_minor_table(
          a, min_mode == "exact" ? MinorMode::exact : MinorMode::floating, g.jobs);
      emit(g, g.format == "json" ? to_json(t) : minor_table_text(t), out);
      return kExitPass;
    }

    if (*chk) {
      const Matrix a = load_matrix(chk_file);
      const auto [rep, label] = run_single_check(chk_name, a, g.tol, g.jobs);
      const RunManifest m = make_manifest(g, "check " + chk_name, {chk_file});
      emit(g, g.format == "json" ? check_report_to_json(rep, label, &m) : to_text(rep, label), out);
      return verdict_exit(rep.verdict);
    }

    if (*dsp) {
      const Matrix a = load_matrix(dsp_file);
      if (dsp_profile) {
        const DispersalProfile prof = dispersal_profile(a, g.tol);
        const RunManifest m = make_manifest(g, "dispersal --profile", {dsp_file});
        emit(g, g.format == "json" ? to_json(prof, &m) : to_text(prof), out);
        return kExitPass;
      }
      if (dsp_d_opt->count() == 0) throw InputError("dispersal needs --d or --profile");
      const ClassReport rep = dispersal_sign_check(a, dsp_d, dsp_strict, g.tol);
      const std::string label = "dispersal d<=" + std::to_string(dsp_d) +
                                (dsp_strict ? " strict" : "");
      const RunManifest m = make_manifest(g, "dispersal", {dsp_file});
      emit(g, g.format == "json" ? check_report_to_json(rep, label, &m) : to_text(rep, label), out);
      return verdict_exit(rep.verdict);
    }

    if (*sr) {
      sr_cfg.tol = g.tol;
      sr_cfg.jobs = g.jobs;
      const SearchResult res = extremal_search(matrix_class_from_string(sr_class),
                                               objective_from_string(sr_objective), sr_cfg);
      const RunManifest m = make_manifest(g, "search", {}, sr_cfg.seed);
      emit(g, g.format == "json" ? to_json(res, &m) : to_text(res), out);
      return res.best_objective < -g.tol.tol_zero ? kExitFail : kExitPass;
    }

    if (*ap) {
      ap_cfg.tol = g.tol;
      ap_cfg.jobs = g.jobs;
      const Matrix a = load_matrix(ap_file);
      const StrictGkkApproximation res = approximate_by_strict_gkk(a, ap_eps, ap_cfg, ap_tau);
      const RunManifest m = make_manifest(g, "approx-strict", {ap_file}, ap_cfg.seed);
      emit(g, g.format == "json" ? to_json(res, &m) : to_text(res), out);
      return res.found ? kExitPass : kExitFail;
    }

    if (*as) {
      const TargetMinorTable t = load_target_minors(as_targets);
      const ClassReport feas = hf_feasibility(t, g.tol);
      const AssignmentResult res = fit_matrix_to_minors(t, as_fit, g.tol);
      const RunManifest m = make_manifest(g, "assign", {as_targets}, as_fit.seed);
      emit(g, g.format == "json" ? to_json(res, feas, &m) : to_text(res, feas), out);
      return res.converged ? kExitPass : kExitFail;
    }

    if (*il) {
      const RealPolynomial p = load_polynomial(il_p);
      const RealPolynomial q = load_polynomial(il_q);
      const RunManifest m = make_manifest(g, "interlace", {il_p, il_q});
      if (il_method == "all") {
        std::vector<InterlaceReport> reps;
        reps.push_back(interlace_check_roots(p, q, g.tol));
        reps.push_back(hermite_biehler_same_side(p, q, g.tol));
        reps.push_back(hurwitz_interlace(p, q, g.tol));
        emit(g, g.format == "json" ? to_json(reps, &m) : to_text(reps), out);
        const bool any_undefined = std::any_of(reps.begin(), reps.end(), [](const auto& r) {
          return r.verdict == Verdict::undefined;
        });
        if (any_undefined) return kExitUndefined;
        const bool agree = reps[1].verdict == reps[0].verdict && reps[2].verdict == reps[0].verdict;
        if (!agree) {
          err << "warning: methods disagree\n";
          return kExitUndefined;
        }
        return verdict_exit(reps[0].verdict);
      }
      InterlaceReport rep;
      if (il_method == "roots")
        rep = interlace_check_roots(p, q, g.tol);
      else if (il_method == "hb")
        rep = hermite_biehler_same_side(p, q, g.tol);
      else
        rep = hurwitz_interlace(p, q, g.tol);
      emit(g, g.format == "json" ? to_json(rep, &m) : to_text(rep), out);
      return verdict_exit(rep.verdict);
    }

    throw InputError("no subcommand selected");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapError& e) {
    err << "cap error: " << e.what() << "\n";
    return kExitCap;
  } catch (const BudgetError& e) {
    err << "budget error: " << e.what() << "\n";
    return kExitCap;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << "\n";
    return kExitUndefined;
  }
}

}  // namespace matclass::cli
