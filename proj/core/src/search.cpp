#include "matclass/search.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "det_kernel.hpp"
#include "matclass/rng.hpp"

namespace matclass {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lazily computed per-candidate artifacts shared between the membership
// predicate and the objective.
struct Eval {
  const Matrix& a;
  const ToleranceConfig& cfg;
  std::optional<Spectrum> spec;
  std::optional<MinorTable> tab;

  const Spectrum& spectrum() {
    if (!spec) spec = eigenvalues(a, cfg);
    return *spec;
  }
  const MinorTable& table() {
    if (!tab) tab = principal_minor_table(a);
    return *tab;
  }
};

// Every nonempty principal minor > tol_zero, streaming with early exit.
bool quick_p(const Matrix& a, const ToleranceConfig& cfg) {
  const int n = a.order();
  if (n > MinorTable::order_cap) throw CapError("P predicate capped at order 20");
  for (int i = 0; i < n; ++i)
    if (a(i, i) <= cfg.tol_zero) return false;
  const std::uint64_t size = std::uint64_t{1} << n;
  double buf[MinorTable::order_cap * MinorTable::order_cap];
  for (std::uint64_t mask = 3; mask < size; ++mask) {
    const int k = std::popcount(mask);
    if (k < 2) continue;
    const int kk = detail::gather(a, mask, mask, buf);
    const double d = kk == 2 ? buf[0] * buf[3] - buf[1] * buf[2] : detail::det_in_place(buf, kk);
    if (d <= cfg.tol_zero) return false;
  }
  return true;
}

double pair_scale(double base, int k) {
  double s = 1.0;
  for (int i = 0; i < k; ++i) s *= base * base;
  return s;
}

// All products over dispersal 1..d pass the (non)strict threshold; early exit.
bool quick_products(const Matrix& a, int d, bool strict, const ToleranceConfig& cfg) {
  const int n = a.order();
  const double base = 1.0 + a.max_abs();
  double buf[MinorTable::order_cap * MinorTable::order_cap];
  bool ok = true;
  for (int dd = 1; dd <= d && ok; ++dd) {
    for_each_dispersal_pair(n, dd, DispersalMode::exact, [&](const DispersalPair& p) {
      const int k = detail::gather(a, p.alpha.mask, p.beta.mask, buf);
      const double m1 =
          k == 1 ? buf[0]
                 : (k == 2 ? buf[0] * buf[3] - buf[1] * buf[2] : detail::det_in_place(buf, k));
      detail::gather(a, p.beta.mask, p.alpha.mask, buf);
      const double m2 =
          k == 1 ? buf[0]
                 : (k == 2 ? buf[0] * buf[3] - buf[1] * buf[2] : detail::det_in_place(buf, k));
      const double norm = m1 * m2 / pair_scale(base, k);
      if (strict ? norm <= cfg.tol_zero : norm < -cfg.tol_zero) {
        ok = false;
        return false;
      }
      return true;
    });
  }
  return ok;
}

// Omega (and optionally tau) predicate with early exit; reuses the cached
// full spectrum.
bool quick_omega_tau(Eval& e, bool need_tau) {
  const Matrix& a = e.a;
  const ToleranceConfig& cfg = e.cfg;
  const int n = a.order();
  if (n > 16) throw CapError("omega/tau predicate capped at order 16");

  const double l_full = min_real_eigenvalue(e.spectrum(), cfg).value();
  if (l_full == kInf) return false;
  if (need_tau && l_full < -cfg.tol_zero) return false;

  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<double> l(size, kInf);
  l[size - 1] = l_full;
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    const int k = std::popcount(mask);
    if (k == 1) {
      l[mask] = a(std::countr_zero(mask), std::countr_zero(mask));
      continue;
    }
    if (mask != size - 1) {
      const Spectrum s = eigenvalues(principal_submatrix(a, IndexSet(mask, n)), cfg);
      l[mask] = min_real_eigenvalue(s, cfg).value();
      if (l[mask] == kInf) return false;
    }
    for (std::uint64_t rest = mask; rest;) {
      const std::uint64_t bit = rest & (~rest + 1);
      rest &= rest - 1;
      if (l[mask ^ bit] - l[mask] < -cfg.tol_zero) return false;
    }
  }
  return true;
}

bool in_class_eval(Eval& e, MatrixClass c) {
  const ToleranceConfig& cfg = e.cfg;
  switch (c) {
    case MatrixClass::p:
      return quick_p(e.a, cfg);
    case MatrixClass::gkk:
      return quick_p(e.a, cfg) && quick_products(e.a, 1, false, cfg);
    case MatrixClass::strict_gkk:
      return quick_p(e.a, cfg) && quick_products(e.a, 1, true, cfg);
    case MatrixClass::sign_symmetric:
      return quick_p(e.a, cfg) && quick_products(e.a, e.a.order(), false, cfg);
    case MatrixClass::omega:
      return quick_omega_tau(e, false);
    case MatrixClass::tau:
      return quick_omega_tau(e, true);
    case MatrixClass::gkk_tau:
      return quick_p(e.a, cfg) && quick_products(e.a, 1, false, cfg) && quick_omega_tau(e, true);
    case MatrixClass::m_matrix: {
      const int n = e.a.order();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && e.a(i, j) > cfg.tol_zero) return false;
      return quick_p(e.a, cfg);
    }
    case MatrixClass::hpd: {
      if (!e.a.is_symmetric(cfg.tol_zero * (1.0 + e.a.max_abs()))) return false;
      double least = kInf;
      for (const auto& v : e.spectrum().values) least = std::min(least, v.real());
      return least > cfg.tol_zero;
    }
    case MatrixClass::real_spectrum: {
      for (const auto& v : e.spectrum().values)
        if (std::abs(v.imag()) > cfg.tol_real * (1.0 + std::abs(v))) return false;
      return true;
    }
  }
  return false;
}

double objective_eval(Eval& e, Objective o) {
  const ToleranceConfig& cfg = e.cfg;
  switch (o) {
    case Objective::min_stability_margin:
      return stability_check(e.spectrum(), cfg).margin;
    case Objective::min_varga_margin: {
      const ExtendedReal l = min_real_eigenvalue(e.spectrum(), cfg);
      const ClassReport r = varga_cone_check(e.spectrum(), l, e.a.order(), cfg);
      return r.verdict == Verdict::undefined ? kInf : r.margin;
    }
    case Objective::min_newton_margin:
      return newton_check(e.table().c, cfg).margin;
    case Objective::min_strict_gkk_margin:
      return dispersal_sign_check(e.a, 1, true, cfg).margin;
    case Objective::min_hf_margin:
      return hadamard_fischer_check(e.table(), cfg).margin;
  }
  return kInf;
}

Matrix random_gaussian(int n, CounterRng& rng, double scale) {
  Matrix g(n);
  for (double& v : g.entries()) v = scale * rng.normal();
  return g;
}

Matrix spd_base(int n, CounterRng& rng) {
  const Matrix w = random_gaussian(n, rng, 1.0);
  Matrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += w(i, k) * w(j, k);
      a(i, j) = acc / n;
    }
  const double ridge = 0.05 + 0.15 * rng.uniform();
  for (int i = 0; i < n; ++i) a(i, i) += ridge;
  return a;
}

void add_asymmetric_noise(Matrix& a, CounterRng& rng, double kappa) {
  const int n = a.order();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = kappa * rng.normal();
      a(i, j) += d;
      a(j, i) -= d;
    }
}

}  // namespace

std::string_view to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::p:
      return "p";
    case MatrixClass::gkk:
      return "gkk";
    case MatrixClass::strict_gkk:
      return "strict-gkk";
    case MatrixClass::sign_symmetric:
      return "sign-sym";
    case MatrixClass::omega:
      return "omega";
    case MatrixClass::tau:
      return "tau";
    case MatrixClass::gkk_tau:
      return "gkk-tau";
    case MatrixClass::m_matrix:
      return "m";
    case MatrixClass::hpd:
      return "hpd";
    default:
      return "real-spectrum";
  }
}

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::min_stability_margin:
      return "stability";
    case Objective::min_varga_margin:
      return "varga";
    case Objective::min_newton_margin:
      return "newton";
    case Objective::min_strict_gkk_margin:
      return "strict-gkk";
    default:
      return "hf";
  }
}

MatrixClass matrix_class_from_string(std::string_view s) {
  if (s == "p") return MatrixClass::p;
  if (s == "gkk") return MatrixClass::gkk;
  if (s == "strict-gkk") return MatrixClass::strict_gkk;
  if (s == "sign-sym") return MatrixClass::sign_symmetric;
  if (s == "omega") return MatrixClass::omega;
  if (s == "tau") return MatrixClass::tau;
  if (s == "gkk-tau") return MatrixClass::gkk_tau;
  if (s == "m") return MatrixClass::m_matrix;
  if (s == "hpd") return MatrixClass::hpd;
  if (s == "real-spectrum") return MatrixClass::real_spectrum;
  throw InputError("unknown matrix class: " + std::string(s));
}

Objective objective_from_string(std::string_view s) {
  if (s == "stability") return Objective::min_stability_margin;
  if (s == "varga") return Objective::min_varga_margin;
  if (s == "newton") return Objective::min_newton_margin;
  if (s == "strict-gkk") return Objective::min_strict_gkk_margin;
  if (s == "hf") return Objective::min_hf_margin;
  throw InputError("unknown objective: " + std::string(s));
}

void SearchConfig::validate() const {
  tol.validate();
  if (n < 1) throw InputError("search order must be >= 1");
  if (iterations < 1) throw InputError("iterations must be >= 1");
  if (restarts < 1) throw InputError("restarts must be >= 1");
  if (!(step_init > 0.0) || !(step_decay > 0.0) || step_decay > 1.0)
    throw InputError("step schedule must satisfy step_init > 0, 0 < step_decay <= 1");
  if (membership_budget < 1) throw InputError("membership budget must be >= 1");
}

bool in_class(const Matrix& a, MatrixClass c, const ToleranceConfig& cfg) {
  cfg.validate();
  Eval e{a, cfg, std::nullopt, std::nullopt};
  return in_class_eval(e, c);
}

Matrix random_matrix_in_class(MatrixClass c, int n, std::uint64_t seed, long budget,
                              const ToleranceConfig& cfg) {
  cfg.validate();
  if (n < 1) throw InputError("order must be >= 1");
  if (budget < 1) throw InputError("budget must be >= 1");
  CounterRng rng(seed, 0x5eedu);

  for (long attempt = 0; attempt < budget; ++attempt) {
    Matrix a(n);
    switch (c) {
      case MatrixClass::hpd:
        a = spd_base(n, rng);
        break;
      case MatrixClass::m_matrix: {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j) a(i, j) = -std::abs(0.4 * rng.normal());
        for (int i = 0; i < n; ++i) {
          double row = 0.0;
          for (int j = 0; j < n; ++j)
            if (j != i) row += -a(i, j);
          a(i, i) = row + 0.1 + rng.uniform();
        }
        break;
      }
      case MatrixClass::real_spectrum: {
        // S D S^-1 with a well-conditioned similarity
        Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) s(i, j) += 0.35 * rng.normal() / std::sqrt(n);
        Eigen::VectorXd d(n);
        for (int i = 0; i < n; ++i) d(i) = rng.uniform(-2.0, 2.0);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(s);
        if (std::abs(lu.determinant()) < 1e-3) continue;
        const Eigen::MatrixXd m = s * d.asDiagonal() * lu.inverse();
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
        break;
      }
      case MatrixClass::p: {
        for (double& v : a.entries()) v = rng.uniform(-1.0, 1.0);
        const double ridge = 0.2 + 2.8 * rng.uniform();
        for (int i = 0; i < n; ++i) a(i, i) += ridge;
        break;
      }
      case MatrixClass::omega:
      case MatrixClass::tau: {
        const Matrix g = random_gaussian(n, rng, 1.0 / std::sqrt(n));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (g(i, j) + g(j, i));
        add_asymmetric_noise(a, rng, 0.15 * rng.uniform());
        if (c == MatrixClass::tau) {
          // shift up so l(A) lands at a nonnegative value; omega is
          // shift-invariant
          Eval pre{a, cfg, std::nullopt, std::nullopt};
          const double l = min_real_eigenvalue(pre.spectrum(), cfg).value();
          if (l == kInf) break;
          a = a.shifted(std::max(0.0, -l) + 0.2 * rng.uniform());
        }
        break;
      }
      default: {  // gkk, strict_gkk, sign_symmetric, gkk_tau
        a = spd_base(n, rng);
        add_asymmetric_noise(a, rng, 0.1 * rng.uniform());
        break;
      }
    }
    Eval e{a, cfg, std::nullopt, std::nullopt};
    if (in_class_eval(e, c)) return a;
  }
  throw BudgetError("no class member found within the sampling budget");
}

namespace {

struct ChainOutcome {
  bool started = false;
  Matrix best;
  double best_objective = kInf;
  long accepted = 0;
  long evaluated = 0;
  std::vector<std::pair<long, double>> trace;
};

ChainOutcome run_chain(MatrixClass c, Objective obj, const SearchConfig& cfg, int restart) {
  ChainOutcome out;
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(restart) + 1);
  Matrix cur(cfg.n);
  try {
    cur = random_matrix_in_class(c, cfg.n, rng.next_u64(), cfg.membership_budget, cfg.tol);
  } catch (const BudgetError&) {
    return out;
  }
  out.started = true;

  Eval e0{cur, cfg.tol, std::nullopt, std::nullopt};
  double cur_obj = objective_eval(e0, obj);
  out.best = cur;
  out.best_objective = cur_obj;

  const long stride = std::max<long>(1, cfg.iterations / 128);
  out.trace.emplace_back(0, out.best_objective);
  double step = cfg.step_init;
  Matrix cand(cfg.n);
  for (long it = 1; it <= cfg.iterations; ++it) {
    cand = cur;
    for (double& v : cand.entries()) v += step * rng.normal();
    ++out.evaluated;
    Eval e{cand, cfg.tol, std::nullopt, std::nullopt};
    if (in_class_eval(e, c)) {
      const double o = objective_eval(e, obj);
      if (o < cur_obj) {
        cur = cand;
        cur_obj = o;
        ++out.accepted;
        if (o < out.best_objective) {
          out.best_objective = o;
          out.best = cur;
        }
      }
    }
    if (it % stride == 0) out.trace.emplace_back(it, out.best_objective);
    step *= cfg.step_decay;
  }
  if (out.trace.back().first != cfg.iterations)
    out.trace.emplace_back(cfg.iterations, out.best_objective);
  return out;
}

std::vector<ChainOutcome> run_chains(MatrixClass c, Objective obj, const SearchConfig& cfg) {
  std::vector<ChainOutcome> outcomes(static_cast<size_t>(cfg.restarts));
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (int r = 0; r < cfg.restarts; ++r) outcomes[static_cast<size_t>(r)] = run_chain(c, obj, cfg, r);
    return outcomes;
  }
  // Chains are fully independent; any scheduling yields the same outcomes.
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < std::min(jobs, cfg.restarts); ++w) {
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < cfg.restarts; r = next.fetch_add(1))
        outcomes[static_cast<size_t>(r)] = run_chain(c, obj, cfg, r);
    });
  }
  for (auto& th : pool) th.join();
  return outcomes;
}

}  // namespace

SearchResult extremal_search(MatrixClass c, Objective obj, const SearchConfig& cfg) {
  cfg.validate();
  const std::vector<ChainOutcome> outcomes = run_chains(c, obj, cfg);

  int winner = -1;
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& o = outcomes[static_cast<size_t>(r)];
    if (!o.started) continue;
    if (winner < 0 || o.best_objective < outcomes[static_cast<size_t>(winner)].best_objective)
      winner = r;
  }
  if (winner < 0) throw BudgetError("no restart found a starting member");

  const ChainOutcome& w = outcomes[static_cast<size_t>(winner)];
  SearchResult res;
  res.matrix_class = c;
  res.objective = obj;
  res.config = cfg;
  res.best = w.best;
  res.best_objective = w.best_objective;
  res.winning_restart = winner;
  res.trace = w.trace;
  for (const auto& o : outcomes) {
    res.accepted_moves += o.accepted;
    res.in_class_evaluations += o.evaluated;
  }
  res.audit = classify(res.best, cfg.tol);
  return res;
}

StrictGkkApproximation approximate_by_strict_gkk(const Matrix& a, double epsilon,
                                                 const SearchConfig& cfg, bool require_tau) {
  cfg.validate();
  if (!(epsilon >= 0.0)) throw InputError("epsilon must be nonnegative");
  const int n = a.order();
  const ToleranceConfig& tol = cfg.tol;

  // Feasibility margin to maximize: the least of the P margin, the
  // normalized strict product margin, and (optionally) the tau slacks.
  const auto phi = [&](const Matrix& x) -> double {
    double value = kInf;
    const MinorTable t = principal_minor_table(x);
    ClassReport p = p_matrix_check(t, tol);
    value = std::min(value, p.margin);
    const double base = 1.0 + x.max_abs();
    double worst = kInf;
    for_each_dispersal_pair(n, 1, DispersalMode::exact, [&](const DispersalPair& pr) {
      const double prod = minor(x, pr.alpha, pr.beta) * minor(x, pr.beta, pr.alpha);
      worst = std::min(worst, prod / pair_scale(base, pr.alpha.size()));
      return true;
    });
    value = std::min(value, worst);
    if (require_tau) {
      Eval e{x, tol, std::nullopt, std::nullopt};
      if (!quick_omega_tau(e, false)) return -kInf;
      value = std::min(value, min_real_eigenvalue(e.spectrum(), tol).value());
    }
    return value;
  };
  const auto is_found = [&](const Matrix& x) {
    return in_class(x, MatrixClass::strict_gkk, tol) &&
           (!require_tau || in_class(x, MatrixClass::tau, tol));
  };

  // Already inside the target set: the approximation distance is 0.
  if (is_found(a)) {
    StrictGkkApproximation out;
    out.search.matrix_class = MatrixClass::strict_gkk;
    out.search.objective = Objective::min_strict_gkk_margin;
    out.search.config = cfg;
    out.search.best = a;
    out.search.best_objective = -phi(a);
    out.search.in_class_evaluations = 1;
    out.search.trace.emplace_back(0, out.search.best_objective);
    out.search.audit = classify(a, tol);
    out.found = true;
    out.distance = 0.0;
    out.strictness_margin = dispersal_sign_check(a, 1, true, tol).margin;
    return out;
  }

  const double phi_start = phi(a);
  Matrix best = a;
  double best_phi = phi_start;
  int winner = 0;
  long accepted = 0;
  long evaluated = 1;
  std::vector<std::vector<std::pair<long, double>>> traces(static_cast<size_t>(cfg.restarts));

  for (int r = 0; r < cfg.restarts; ++r) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(r) + 1);
    Matrix cur = a;
    double cur_phi = phi_start;
    double local_best = phi_start;
    auto& trace = traces[static_cast<size_t>(r)];
    const long stride = std::max<long>(1, cfg.iterations / 128);
    trace.emplace_back(0, -local_best);
    double step = std::min(cfg.step_init, epsilon > 0.0 ? 0.5 * epsilon : cfg.step_init);
    Matrix cand(n);
    for (long it = 1; it <= cfg.iterations; ++it) {
      cand = cur;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = cand(i, j) + step * rng.normal();
          v = std::clamp(v, a(i, j) - epsilon, a(i, j) + epsilon);
          cand(i, j) = v;
        }
      ++evaluated;
      const double cand_phi = phi(cand);
      if (cand_phi > cur_phi) {
        cur = cand;
        cur_phi = cand_phi;
        ++accepted;
        local_best = std::max(local_best, cand_phi);
        if (cand_phi > best_phi) {
          best_phi = cand_phi;
          best = cur;
          winner = r;
        }
      }
      if (it % stride == 0) trace.emplace_back(it, -local_best);
      step *= cfg.step_decay;
    }
  }

  StrictGkkApproximation out;
  out.search.matrix_class = MatrixClass::strict_gkk;
  out.search.objective = Objective::min_strict_gkk_margin;
  out.search.config = cfg;
  out.search.best = best;
  out.search.best_objective = -best_phi;
  out.search.winning_restart = winner;
  out.search.accepted_moves = accepted;
  out.search.in_class_evaluations = evaluated;
  out.search.trace = std::move(traces[static_cast<size_t>(winner)]);
  out.search.audit = classify(best, tol);
  out.found = is_found(best);
  out.distance = max_entry_distance(a, best);
  out.strictness_margin = dispersal_sign_check(best, 1, true, tol).margin;
  return out;
}

DispersalProfile dispersal_profile(const Matrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  const int n = a.order();
  std::uint64_t total = 0;
  for (int dd = 1; dd <= n; ++dd) total += count_dispersal_pairs(n, dd, DispersalMode::exact);
  if (total > 100'000'000ull) throw CapError("dispersal profile enumeration infeasible at this order");

  DispersalProfile prof;
  const double base = 1.0 + a.max_abs();
  double running_min_norm = kInf;
  double running_raw = kInf;
  double running_scale = 1.0;
  std::optional<DispersalPair> running_arg;
  long running_count = 0;

  for (int dd = 1; dd <= n; ++dd) {
    for_each_dispersal_pair(n, dd, DispersalMode::exact, [&](const DispersalPair& p) {
      const double prod = minor(a, p.alpha, p.beta) * minor(a, p.beta, p.alpha);
      const double norm = prod / pair_scale(base, p.alpha.size());
      if (norm < running_min_norm) {
        running_min_norm = norm;
        running_raw = prod;
        running_scale = pair_scale(base, p.alpha.size());
        running_arg = p;
      }
      ++running_count;
      return true;
    });
    ClassReport r;
    r.checked_count = running_count;
    if (running_count == 0) {
      r.margin = kInf;
      r.verdict = Verdict::pass;
    } else {
      r.margin = running_raw;
      r.scale = running_scale;
      if (running_arg) r.witness = PairWitness{running_arg->alpha, running_arg->beta};
      r.verdict = running_min_norm >= -cfg.tol_zero ? Verdict::pass : Verdict::fail;
      r.marginal = std::abs(running_min_norm) <= cfg.marginal_band();
    }
    if (r.verdict == Verdict::pass) prof.max_passing_d = dd;
    prof.per_d.push_back({dd, std::move(r)});
  }
  prof.stability = stability_check(eigenvalues(a, cfg), cfg);
  return prof;
}

}  // namespace matclass
