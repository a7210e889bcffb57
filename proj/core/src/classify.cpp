#include "matclass/classify.hpp"

#include <cmath>
#include <numbers>

#include "det_kernel.hpp"

namespace matclass {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::undefined || b == Verdict::undefined) return Verdict::undefined;
  return Verdict::pass;
}

// Product of the two opposite minors of an unordered pair, no heap traffic.
double pair_product(const Matrix& a, const DispersalPair& p) {
  double buf[MinorTable::order_cap * MinorTable::order_cap];
  const int k = detail::gather(a, p.alpha.mask, p.beta.mask, buf);
  double m1, m2;
  if (k == 1) {
    m1 = buf[0];
  } else if (k == 2) {
    m1 = buf[0] * buf[3] - buf[1] * buf[2];
  } else {
    m1 = detail::det_in_place(buf, k);
  }
  detail::gather(a, p.beta.mask, p.alpha.mask, buf);
  if (k == 1) {
    m2 = buf[0];
  } else if (k == 2) {
    m2 = buf[0] * buf[3] - buf[1] * buf[2];
  } else {
    m2 = detail::det_in_place(buf, k);
  }
  return m1 * m2;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    default:
      return "undefined";
  }
}

ClassReport p_matrix_check(const MinorTable& t, const ToleranceConfig& cfg) {
  cfg.validate();
  ClassReport r;
  double best = kInf;
  std::uint64_t arg = 0;
  for (std::uint64_t mask = 1; mask < t.minors.size(); ++mask) {
    if (t.minors[mask] < best) {
      best = t.minors[mask];
      arg = mask;
    }
  }
  r.margin = best;
  r.checked_count = static_cast<long>(t.minors.size()) - 1;
  r.witness = SubsetWitness{IndexSet(arg, t.n)};
  r.verdict = best > cfg.tol_zero ? Verdict::pass : Verdict::fail;
  r.marginal = std::abs(best) <= cfg.marginal_band();
  return r;
}

ClassReport dispersal_sign_check(const Matrix& a, int d, bool strict, const ToleranceConfig& cfg) {
  cfg.validate();
  const int n = a.order();
  if (d < 1 || d > n) throw InputError("dispersal parameter must be in 1..n");
  std::uint64_t pair_count = 0;
  for (int dd = 1; dd <= d; ++dd) pair_count += count_dispersal_pairs(n, dd, DispersalMode::exact);
  if (pair_count > 100'000'000ull)
    throw CapError("dispersal pair enumeration infeasible at this order");

  // Dimensional slack: a size-k product is degree 2k in the entries.
  const double base = 1.0 + a.max_abs();
  double scale_by_size[MinorTable::order_cap + 1];
  scale_by_size[0] = 1.0;
  for (int k = 1; k <= std::min(n, MinorTable::order_cap); ++k)
    scale_by_size[k] = scale_by_size[k - 1] * base * base;

  ClassReport r;
  double min_norm = kInf;
  double raw_at_min = kInf;
  double scale_at_min = 1.0;
  std::optional<DispersalPair> arg;
  long count = 0;
  for (int dd = 1; dd <= d; ++dd) {
    for_each_dispersal_pair(n, dd, DispersalMode::exact, [&](const DispersalPair& p) {
      const double prod = pair_product(a, p);
      const double norm = prod / scale_by_size[p.alpha.size()];
      if (norm < min_norm) {
        min_norm = norm;
        raw_at_min = prod;
        scale_at_min = scale_by_size[p.alpha.size()];
        arg = p;
      }
      ++count;
      return true;
    });
  }

  r.checked_count = count;
  if (count == 0) {  // vacuous (e.g. n = 1)
    r.margin = kInf;
    r.verdict = Verdict::pass;
    return r;
  }
  r.margin = raw_at_min;
  r.scale = scale_at_min;
  if (arg) r.witness = PairWitness{arg->alpha, arg->beta};
  r.verdict = (strict ? min_norm > cfg.tol_zero : min_norm >= -cfg.tol_zero) ? Verdict::pass
                                                                             : Verdict::fail;
  r.marginal = std::abs(min_norm) <= cfg.marginal_band();
  return r;
}

OmegaProfile omega_tau_check(const Matrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  const int n = a.order();
  if (n > 16) throw CapError("omega/tau profile capped at order 16 (2^n eigenvalue solves)");

  OmegaProfile prof;
  prof.n = n;
  const std::uint64_t size = std::uint64_t{1} << n;
  prof.l_values.assign(size, kInf);

  for (std::uint64_t mask = 1; mask < size; ++mask) {
    if (std::popcount(mask) == 1) {
      const int i = std::countr_zero(mask);
      prof.l_values[mask] = a(i, i);
      continue;
    }
    const Spectrum s = eigenvalues(principal_submatrix(a, IndexSet(mask, n)), cfg);
    prof.l_values[mask] = min_real_eigenvalue(s, cfg).value();
  }

  ClassReport& om = prof.omega;
  om.checked_count = static_cast<long>(size) - 1;
  std::uint64_t infinite_mask = 0;
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    if (prof.l_values[mask] == kInf) {
      infinite_mask = mask;
      break;
    }
  }
  if (infinite_mask) {
    om.verdict = Verdict::fail;
    om.margin = -kInf;
    om.witness = SubsetWitness{IndexSet(infinite_mask, n)};
  } else {
    // Covering pairs close the partial order transitively.
    double best = kInf;
    std::uint64_t arg_a = 0, arg_b = 0;
    for (std::uint64_t mask = 1; mask < size; ++mask) {
      if (std::popcount(mask) < 2) continue;
      for (std::uint64_t rest = mask; rest;) {
        const std::uint64_t bit = rest & (~rest + 1);
        rest &= rest - 1;
        const std::uint64_t sub = mask ^ bit;
        const double slack = prof.l_values[sub] - prof.l_values[mask];
        ++om.checked_count;
        if (slack < best) {
          best = slack;
          arg_a = mask;
          arg_b = sub;
        }
      }
    }
    om.margin = best;
    if (arg_a) om.witness = PairWitness{IndexSet(arg_a, n), IndexSet(arg_b, n)};
    om.verdict = best >= -cfg.tol_zero ? Verdict::pass : Verdict::fail;
    om.marginal = std::abs(best) <= cfg.marginal_band();
  }

  ClassReport& tau = prof.tau;
  const double l_full = prof.l_values[size - 1];
  tau.checked_count = om.checked_count + 1;
  if (om.verdict == Verdict::fail) {
    tau.verdict = Verdict::fail;
    tau.margin = std::min(om.margin, l_full);
    tau.witness = om.witness;
    tau.marginal = om.marginal;
  } else {
    tau.margin = std::min(om.margin, l_full);
    tau.verdict = l_full >= -cfg.tol_zero ? Verdict::pass : Verdict::fail;
    if (l_full < om.margin) {
      tau.witness = EigenvalueWitness{{l_full, 0.0}};
      tau.marginal = std::abs(l_full) <= cfg.marginal_band();
    } else {
      tau.witness = om.witness;
      tau.marginal = om.marginal;
    }
  }
  return prof;
}

ClassReport stability_check(const Spectrum& s, const ToleranceConfig& cfg) {
  cfg.validate();
  ClassReport r;
  double best = kInf;
  std::optional<std::complex<double>> arg;
  for (const auto& v : s.values) {
    if (v.real() < best) {
      best = v.real();
      arg = v;
    }
  }
  r.margin = best;
  r.checked_count = s.order();
  if (arg) r.witness = EigenvalueWitness{*arg};
  r.verdict = best > cfg.tol_zero ? Verdict::pass : Verdict::fail;
  r.marginal = std::abs(best) <= cfg.marginal_band();
  return r;
}

ClassReport varga_cone_check(const Spectrum& s, ExtendedReal l, int n, const ToleranceConfig& cfg) {
  cfg.validate();
  if (n < 1) throw InputError("cone aperture needs n >= 1");
  ClassReport r;
  r.checked_count = s.order();
  if (!l.is_finite()) {
    // The cone has no vertex; report rather than guess.
    r.verdict = Verdict::undefined;
    r.margin = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const double theta_max = std::numbers::pi / 2.0 - std::numbers::pi / n;
  const double vertex_tol = cfg.tol_zero * (1.0 + std::abs(l.value()));
  double best = kInf;
  std::optional<std::complex<double>> arg;
  for (const auto& v : s.values) {
    const std::complex<double> w = v - l.value();
    if (std::abs(w) <= vertex_tol) continue;  // at the vertex: inside by definition
    const double slack = theta_max - std::abs(std::atan2(w.imag(), w.real()));
    if (slack < best) {
      best = slack;
      arg = v;
    }
  }
  r.margin = best;
  if (arg) r.witness = EigenvalueWitness{*arg};
  r.verdict = best >= -cfg.tol_zero ? Verdict::pass : Verdict::fail;
  r.marginal = best != kInf && std::abs(best) <= cfg.marginal_band();
  return r;
}

ClassReport hadamard_fischer_check(const MinorTable& t, const ToleranceConfig& cfg) {
  cfg.validate();
  ClassReport r;
  const std::uint64_t size = std::uint64_t{1} << t.n;
  double min_norm = kInf;
  double raw_at_min = kInf;
  double scale_at_min = 1.0;
  std::uint64_t arg_a = 0, arg_b = 0;
  long count = 0;
  for (std::uint64_t a = 1; a + 1 < size; ++a) {
    for (std::uint64_t b = a + 1; b < size; ++b) {
      if ((a & ~b) == 0 || (b & ~a) == 0) continue;  // nested: equality always
      const double lhs = t.minors[a] * t.minors[b];
      const double rhs = t.minors[a | b] * t.minors[a & b];
      const double diff = lhs - rhs;
      const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      const double norm = diff / scale;
      if (norm < min_norm) {
        min_norm = norm;
        raw_at_min = diff;
        scale_at_min = scale;
        arg_a = a;
        arg_b = b;
      }
      ++count;
    }
  }
  r.checked_count = count;
  if (count == 0) {
    r.margin = kInf;
    r.verdict = Verdict::pass;
    return r;
  }
  r.margin = raw_at_min;
  r.scale = scale_at_min;
  r.witness = PairWitness{IndexSet(arg_a, t.n), IndexSet(arg_b, t.n)};
  r.verdict = min_norm >= -cfg.tol_zero ? Verdict::pass : Verdict::fail;
  r.marginal = std::abs(min_norm) <= cfg.marginal_band();
  return r;
}

ClassReport newton_check(std::span<const double> c, const ToleranceConfig& cfg) {
  cfg.validate();
  if (c.empty() || std::abs(c[0] - 1.0) > 1e-9) throw InputError("newton check requires c_0 = 1");
  const int n = static_cast<int>(c.size()) - 1;
  ClassReport r;
  double min_norm = kInf;
  double raw_at_min = kInf;
  double scale_at_min = 1.0;
  int arg = 0;
  for (int j = 1; j <= n - 1; ++j) {
    const double lhs = c[j] * c[j];
    const double rhs = c[j - 1] * c[j + 1];
    const double diff = lhs - rhs;
    const double scale = std::max({1.0, lhs, std::abs(rhs)});
    const double norm = diff / scale;
    if (norm < min_norm) {
      min_norm = norm;
      raw_at_min = diff;
      scale_at_min = scale;
      arg = j;
    }
    ++r.checked_count;
  }
  if (r.checked_count == 0) {
    r.margin = kInf;
    r.verdict = Verdict::pass;
    return r;
  }
  r.margin = raw_at_min;
  r.scale = scale_at_min;
  r.witness = IndexWitness{arg};
  r.verdict = min_norm >= -cfg.tol_zero ? Verdict::pass : Verdict::fail;
  r.marginal = std::abs(min_norm) <= cfg.marginal_band();
  return r;
}

ClassReport m_matrix_check(const Matrix& a, const MinorTable& t, const ToleranceConfig& cfg) {
  cfg.validate();
  const int n = a.order();
  ClassReport p = p_matrix_check(t, cfg);
  ClassReport r;
  double off_slack = kInf;  // slack of a_ij <= 0 is -a_ij
  int wi = 0, wj = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      ++r.checked_count;
      if (-a(i, j) < off_slack) {
        off_slack = -a(i, j);
        wi = i + 1;
        wj = j + 1;
      }
    }
  }
  r.checked_count += p.checked_count;
  const bool z_ok = off_slack == kInf || off_slack >= -cfg.tol_zero;
  const bool p_ok = p.verdict == Verdict::pass;
  r.verdict = (z_ok && p_ok) ? Verdict::pass : Verdict::fail;
  if (!z_ok) {
    r.margin = off_slack;
    r.witness = EntryWitness{wi, wj};
    r.marginal = std::abs(off_slack) <= cfg.marginal_band();
  } else {
    r.margin = off_slack == kInf ? p.margin : std::min(off_slack, p.margin);
    r.witness = (off_slack != kInf && off_slack < p.margin)
                    ? Witness{EntryWitness{wi, wj}}
                    : (p.witness ? *p.witness : Witness{EntryWitness{wi, wj}});
    r.marginal = p.marginal || (off_slack != kInf && std::abs(off_slack) <= cfg.marginal_band());
    if (!p_ok) {
      r.margin = p.margin;
      r.witness = p.witness;
      r.marginal = p.marginal;
    }
  }
  return r;
}

ClassifyReport classify(const Matrix& a, const ToleranceConfig& cfg, int jobs) {
  cfg.validate();
  const int n = a.order();
  if (n > 16) throw CapError("classify capped at order 16 (omega profile)");

  ClassifyReport rep;
  rep.n = n;
  rep.tolerances = cfg;
  rep.table = principal_minor_table(a, MinorMode::floating, jobs);
  rep.spectrum = eigenvalues(a, cfg);
  rep.l = min_real_eigenvalue(rep.spectrum, cfg);

  rep.checks.p = p_matrix_check(rep.table, cfg);
  rep.checks.gkk = dispersal_sign_check(a, 1, false, cfg);
  rep.checks.strict_gkk = dispersal_sign_check(a, 1, true, cfg);
  rep.checks.sign_symmetric = dispersal_sign_check(a, n, false, cfg);
  OmegaProfile prof = omega_tau_check(a, cfg);
  rep.checks.omega = prof.omega;
  rep.checks.tau = prof.tau;
  rep.checks.stable = stability_check(rep.spectrum, cfg);
  rep.checks.varga = varga_cone_check(rep.spectrum, rep.l, n, cfg);
  rep.checks.hf = hadamard_fischer_check(rep.table, cfg);
  rep.checks.newton = newton_check(rep.table.c, cfg);
  rep.checks.m_matrix = m_matrix_check(a, rep.table, cfg);

  ClassifyLabels& lb = rep.labels;
  lb.p = rep.checks.p.verdict;
  lb.gkk = verdict_and(lb.p, rep.checks.gkk.verdict);
  lb.strict_gkk = verdict_and(lb.p, rep.checks.strict_gkk.verdict);
  lb.sign_symmetric = rep.checks.sign_symmetric.verdict;
  lb.omega = rep.checks.omega.verdict;
  lb.tau = rep.checks.tau.verdict;
  lb.gkk_tau = verdict_and(lb.gkk, lb.tau);
  lb.m_matrix = rep.checks.m_matrix.verdict;
  lb.stable = rep.checks.stable.verdict;
  lb.varga = rep.checks.varga.verdict;
  lb.hf = rep.checks.hf.verdict;
  lb.newton = rep.checks.newton.verdict;
  return rep;
}

}  // namespace matclass
