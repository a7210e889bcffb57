#include "matclass/json_report.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "matclass/io.hpp"

namespace matclass {

namespace {

using ojson = nlohmann::ordered_json;

ojson number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ojson subset_json(const IndexSet& s) {
  ojson j;
  j["mask"] = s.mask;
  j["members"] = s.members();
  return j;
}

ojson witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  ojson j;
  std::visit(
      [&](const auto& ww) {
        using T = std::decay_t<decltype(ww)>;
        if constexpr (std::is_same_v<T, SubsetWitness>) {
          j["kind"] = "subset";
          j["alpha"] = subset_json(ww.alpha);
        } else if constexpr (std::is_same_v<T, PairWitness>) {
          j["kind"] = "pair";
          j["alpha"] = subset_json(ww.alpha);
          j["beta"] = subset_json(ww.beta);
        } else if constexpr (std::is_same_v<T, EigenvalueWitness>) {
          j["kind"] = "eigenvalue";
          j["re"] = number(ww.value.real());
          j["im"] = number(ww.value.imag());
        } else if constexpr (std::is_same_v<T, IndexWitness>) {
          j["kind"] = "index";
          j["j"] = ww.j;
        } else {
          j["kind"] = "entry";
          j["i"] = ww.i;
          j["j"] = ww.j;
        }
      },
      *w);
  return j;
}

ojson report_json(const ClassReport& r) {
  ojson j;
  j["verdict"] = to_string(r.verdict);
  j["margin"] = number(r.margin);
  j["scale"] = number(r.scale);
  j["marginal"] = r.marginal;
  j["checked_count"] = r.checked_count;
  j["witness"] = witness_json(r.witness);
  return j;
}

ojson tolerances_json(const ToleranceConfig& cfg) {
  ojson j;
  j["tol_zero"] = cfg.tol_zero;
  j["tol_real"] = cfg.tol_real;
  j["tol_rel"] = cfg.tol_rel;
  return j;
}

ojson manifest_json(const RunManifest& m) {
  ojson j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["tolerances"] = tolerances_json(m.tolerances);
  j["seed"] = m.seed ? ojson(*m.seed) : ojson(nullptr);
  j["format"] = m.format;
  j["jobs"] = m.jobs;
  j["artifact_version"] = kArtifactVersion;
  return j;
}

ojson matrix_json(const Matrix& a) {
  ojson j;
  j["n"] = a.order();
  ojson rows = ojson::array();
  for (int i = 0; i < a.order(); ++i) {
    ojson row = ojson::array();
    for (int c = 0; c < a.order(); ++c) row.push_back(a(i, c));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

ojson spectrum_json(const Spectrum& s) {
  ojson out = ojson::array();
  for (const auto& v : s.values) out.push_back(ojson::array({v.real(), v.imag()}));
  return out;
}

ojson header(std::string_view kind, const RunManifest* manifest) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  if (manifest) j["manifest"] = manifest_json(*manifest);
  return j;
}

ojson classify_json(const ClassifyReport& r) {
  ojson j;
  j["n"] = r.n;
  j["tolerances"] = tolerances_json(r.tolerances);
  ojson labels;
  labels["P"] = to_string(r.labels.p);
  labels["GKK"] = to_string(r.labels.gkk);
  labels["strict_GKK"] = to_string(r.labels.strict_gkk);
  labels["sign_symmetric"] = to_string(r.labels.sign_symmetric);
  labels["omega"] = to_string(r.labels.omega);
  labels["tau"] = to_string(r.labels.tau);
  labels["GKK_tau"] = to_string(r.labels.gkk_tau);
  labels["M"] = to_string(r.labels.m_matrix);
  labels["stable"] = to_string(r.labels.stable);
  labels["varga"] = to_string(r.labels.varga);
  labels["HF"] = to_string(r.labels.hf);
  labels["newton"] = to_string(r.labels.newton);
  j["labels"] = std::move(labels);
  ojson checks;
  checks["p"] = report_json(r.checks.p);
  checks["gkk"] = report_json(r.checks.gkk);
  checks["strict_gkk"] = report_json(r.checks.strict_gkk);
  checks["sign_symmetric"] = report_json(r.checks.sign_symmetric);
  checks["omega"] = report_json(r.checks.omega);
  checks["tau"] = report_json(r.checks.tau);
  checks["stable"] = report_json(r.checks.stable);
  checks["varga"] = report_json(r.checks.varga);
  checks["hf"] = report_json(r.checks.hf);
  checks["newton"] = report_json(r.checks.newton);
  checks["m_matrix"] = report_json(r.checks.m_matrix);
  j["checks"] = std::move(checks);
  j["spectrum"] = spectrum_json(r.spectrum);
  j["l"] = number(r.l.value());
  j["c"] = r.table.c;
  if (r.n <= 12) {
    ojson minors = ojson::object();
    for (std::uint64_t mask = 0; mask < r.table.minors.size(); ++mask)
      minors[std::to_string(mask)] = r.table.minors[mask];
    j["minors"] = std::move(minors);
  }
  return j;
}

ojson search_config_json(const SearchConfig& cfg) {
  ojson j;
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["iterations"] = cfg.iterations;
  j["step_init"] = cfg.step_init;
  j["step_decay"] = cfg.step_decay;
  j["restarts"] = cfg.restarts;
  j["membership_budget"] = cfg.membership_budget;
  return j;
}

ojson search_json(const SearchResult& r) {
  ojson j;
  j["class"] = to_string(r.matrix_class);
  j["objective"] = to_string(r.objective);
  j["seed"] = r.config.seed;
  j["config"] = search_config_json(r.config);
  j["best_matrix"] = matrix_json(r.best);
  j["best_objective"] = number(r.best_objective);
  j["winning_restart"] = r.winning_restart;
  j["accepted_moves"] = r.accepted_moves;
  j["in_class_evaluations"] = r.in_class_evaluations;
  ojson trace = ojson::array();
  for (const auto& [it, v] : r.trace) trace.push_back(ojson::array({it, number(v)}));
  j["trace"] = std::move(trace);
  j["audit"] = classify_json(r.audit);
  return j;
}

ojson interlace_json(const InterlaceReport& r) {
  ojson j;
  j["verdict"] = to_string(r.verdict);
  j["method"] = to_string(r.method);
  j["side"] = to_string(r.side);
  j["detail"] = r.detail;
  auto roots = [](const std::vector<std::complex<double>>& v) {
    ojson out = ojson::array();
    for (const auto& z : v) out.push_back(ojson::array({z.real(), z.imag()}));
    return out;
  };
  if (!r.p_roots.empty()) j["p_roots"] = roots(r.p_roots);
  if (!r.q_roots.empty()) j["q_roots"] = roots(r.q_roots);
  if (!r.hb_roots.empty()) j["hb_roots"] = roots(r.hb_roots);
  if (!r.hurwitz_minors.empty()) {
    ojson m = ojson::array();
    for (double v : r.hurwitz_minors) m.push_back(number(v));
    j["hurwitz_minors"] = std::move(m);
  }
  return j;
}

std::string dump(ojson j) { return j.dump(2) + "\n"; }

const char* verdict_mark(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "FAIL";
    default:
      return "undefined";
  }
}

std::string witness_text(const std::optional<Witness>& w) {
  if (!w) return "-";
  std::ostringstream os;
  std::visit(
      [&](const auto& ww) {
        using T = std::decay_t<decltype(ww)>;
        if constexpr (std::is_same_v<T, SubsetWitness>) {
          os << "subset {";
          const auto mem = ww.alpha.members();
          for (size_t i = 0; i < mem.size(); ++i) os << (i ? "," : "") << mem[i];
          os << "}";
        } else if constexpr (std::is_same_v<T, PairWitness>) {
          auto put = [&os](const IndexSet& s) {
            os << "{";
            const auto mem = s.members();
            for (size_t i = 0; i < mem.size(); ++i) os << (i ? "," : "") << mem[i];
            os << "}";
          };
          os << "pair ";
          put(ww.alpha);
          os << ",";
          put(ww.beta);
        } else if constexpr (std::is_same_v<T, EigenvalueWitness>) {
          os << "eigenvalue " << ww.value.real();
          if (ww.value.imag() != 0.0) os << (ww.value.imag() > 0 ? "+" : "") << ww.value.imag() << "i";
        } else if constexpr (std::is_same_v<T, IndexWitness>) {
          os << "index j=" << ww.j;
        } else {
          os << "entry (" << ww.i << "," << ww.j << ")";
        }
      },
      *w);
  return os.str();
}

}  // namespace

std::string to_json(const ClassReport& r, int indent) {
  return report_json(r).dump(indent) + "\n";
}

std::string check_report_to_json(const ClassReport& r, std::string_view name,
                                 const RunManifest* manifest) {
  ojson j = header("check", manifest);
  j["check"] = name;
  j["report"] = report_json(r);
  return dump(std::move(j));
}

std::string to_json(const ClassifyReport& r, const RunManifest* manifest) {
  ojson j = header("classify", manifest);
  j.update(classify_json(r));
  return dump(std::move(j));
}

std::string to_json(const SearchResult& r, const RunManifest* manifest) {
  ojson j = header("search", manifest);
  j.update(search_json(r));
  return dump(std::move(j));
}

std::string to_json(const StrictGkkApproximation& r, const RunManifest* manifest) {
  ojson j = header("approx-strict", manifest);
  j["found"] = r.found;
  j["distance"] = number(r.distance);
  j["strictness_margin"] = number(r.strictness_margin);
  j.update(search_json(r.search));
  return dump(std::move(j));
}

std::string to_json(const DispersalProfile& r, const RunManifest* manifest) {
  ojson j = header("dispersal-profile", manifest);
  ojson per = ojson::array();
  for (const auto& e : r.per_d) {
    ojson item;
    item["d"] = e.d;
    item["check"] = report_json(e.check);
    per.push_back(std::move(item));
  }
  j["per_d"] = std::move(per);
  j["max_passing_d"] = r.max_passing_d;
  j["stability"] = report_json(r.stability);
  return dump(std::move(j));
}

std::string to_json(const InterlaceReport& r, const RunManifest* manifest) {
  ojson j = header("interlace", manifest);
  j.update(interlace_json(r));
  return dump(std::move(j));
}

std::string to_json(const std::vector<InterlaceReport>& r, const RunManifest* manifest) {
  ojson j = header("interlace-sequence", manifest);
  ojson seq = ojson::array();
  for (const auto& rep : r) seq.push_back(interlace_json(rep));
  j["reports"] = std::move(seq);
  return dump(std::move(j));
}

std::string to_json(const AssignmentResult& r, const ClassReport& feasibility,
                    const RunManifest* manifest) {
  ojson j = header("assign", manifest);
  j["hf_feasibility"] = report_json(feasibility);
  j["matrix"] = matrix_json(r.matrix);
  j["residual"] = number(r.residual);
  j["converged"] = r.converged;
  j["starts_used"] = r.starts_used;
  j["tol_fit"] = number(r.tol_fit);
  return dump(std::move(j));
}

std::string to_text(const ClassReport& r, std::string_view name) {
  std::ostringstream os;
  os.precision(12);
  os << name << ": " << verdict_mark(r.verdict) << "  margin=" << r.margin
     << (r.marginal ? "  [marginal]" : "") << "  checked=" << r.checked_count
     << "  witness=" << witness_text(r.witness) << "\n";
  return os.str();
}

std::string to_text(const ClassifyReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "order " << r.n << "\n";
  os << "labels:";
  auto put = [&os](const char* name, Verdict v) { os << "  " << name << "=" << to_string(v); };
  put("P", r.labels.p);
  put("GKK", r.labels.gkk);
  put("strict-GKK", r.labels.strict_gkk);
  put("sign-sym", r.labels.sign_symmetric);
  put("omega", r.labels.omega);
  put("tau", r.labels.tau);
  os << "\n       ";
  put("GKK-tau", r.labels.gkk_tau);
  put("M", r.labels.m_matrix);
  put("stable", r.labels.stable);
  put("varga", r.labels.varga);
  put("HF", r.labels.hf);
  put("newton", r.labels.newton);
  os << "\n";
  os << to_text(r.checks.p, "p");
  os << to_text(r.checks.gkk, "gkk");
  os << to_text(r.checks.strict_gkk, "strict-gkk");
  os << to_text(r.checks.sign_symmetric, "sign-sym");
  os << to_text(r.checks.omega, "omega");
  os << to_text(r.checks.tau, "tau");
  os << to_text(r.checks.stable, "stable");
  os << to_text(r.checks.varga, "varga");
  os << to_text(r.checks.hf, "hf");
  os << to_text(r.checks.newton, "newton");
  os << to_text(r.checks.m_matrix, "m");
  os << "l = " << (r.l.is_finite() ? std::to_string(r.l.value()) : "inf") << "\n";
  os << "spectrum:";
  for (const auto& v : r.spectrum.values) {
    os << " (" << v.real();
    if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    os << ")";
  }
  os << "\n";
  return os.str();
}

std::string to_text(const SearchResult& r) {
  std::ostringstream os;
  os.precision(12);
  os << "search class=" << to_string(r.matrix_class) << " objective=" << to_string(r.objective)
     << " n=" << r.config.n << " seed=" << r.config.seed << "\n";
  os << "best objective = " << r.best_objective << " (restart " << r.winning_restart << ", "
     << r.accepted_moves << " accepted / " << r.in_class_evaluations << " evaluated)\n";
  os << "best matrix:\n" << to_text(r.best);
  os << "audit:\n" << to_text(r.audit);
  return os.str();
}

std::string to_text(const StrictGkkApproximation& r) {
  std::ostringstream os;
  os.precision(12);
  os << (r.found ? "found" : "not found") << "  distance=" << r.distance
     << "  strictness_margin=" << r.strictness_margin << "\n";
  os << to_text(r.search);
  return os.str();
}

std::string to_text(const DispersalProfile& r) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& e : r.per_d)
    os << "d<=" << e.d << ": " << verdict_mark(e.check.verdict) << "  margin=" << e.check.margin
       << "  checked=" << e.check.checked_count << "\n";
  os << "max passing d = " << r.max_passing_d << "\n";
  os << to_text(r.stability, "stability");
  return os.str();
}

std::string to_text(const InterlaceReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << to_string(r.method) << ": " << verdict_mark(r.verdict) << "  side=" << to_string(r.side)
     << "  " << r.detail << "\n";
  return os.str();
}

std::string to_text(const std::vector<InterlaceReport>& r) {
  std::string out;
  for (size_t i = 0; i < r.size(); ++i)
    out += "j=" + std::to_string(i + 1) + "  " + to_text(r[i]);
  return out;
}

std::string to_text(const AssignmentResult& r, const ClassReport& feasibility) {
  std::ostringstream os;
  os.precision(12);
  os << to_text(feasibility, "hf-feasibility");
  os << (r.converged ? "converged" : "not converged") << "  residual=" << r.residual
     << "  tol_fit=" << r.tol_fit << "  starts_used=" << r.starts_used << "\n";
  os << "matrix:\n" << to_text(r.matrix);
  return os.str();
}

}  // namespace matclass
