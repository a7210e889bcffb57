#include "matclass/interlacing.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "det_kernel.hpp"
#include "matclass/errors.hpp"

namespace matclass {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::complex<double>> companion_roots_real(const std::vector<double>& monic) {
  const int m = static_cast<int>(monic.size()) - 1;
  std::vector<std::complex<double>> roots;
  if (m < 1) return roots;
  if (m == 1) {
    roots.emplace_back(-monic[1], 0.0);
    return roots;
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) c(i, m - 1) = -monic[static_cast<size_t>(m - i)];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("root iteration did not converge");
  roots.resize(m);
  for (int i = 0; i < m; ++i) roots[static_cast<size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

std::vector<std::complex<double>> companion_roots_complex(
    const std::vector<std::complex<double>>& monic) {
  const int m = static_cast<int>(monic.size()) - 1;
  std::vector<std::complex<double>> roots;
  if (m < 1) return roots;
  if (m == 1) {
    roots.push_back(-monic[1]);
    return roots;
  }
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) c(i, m - 1) = -monic[static_cast<size_t>(m - i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("root iteration did not converge");
  roots.resize(m);
  for (int i = 0; i < m; ++i) roots[static_cast<size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

void require_degrees(const RealPolynomial& p, const RealPolynomial& q) {
  if (q.degree() != p.degree() - 1)
    throw InputError("interlacing requires deg q = deg p - 1");
  if (p.degree() < 1) throw InputError("p must have degree >= 1");
}

// A root of multiplicity k is computed as a cluster of radius ~eps^(1/k):
// ladder of (radius, size) pairs that are consistent with a multiple root.
constexpr std::pair<double, int> kClusterLadder[] = {
    {1e-7, 2}, {1e-5, 3}, {1e-3, 4}, {2e-2, 5}};

// True when the computed roots contain a cluster consistent with a multiple
// (or shared) root: strictness is then undecidable at working precision.
bool cluster_degenerate(const std::vector<std::complex<double>>& roots) {
  for (const auto& [radius, size] : kClusterLadder) {
    for (const auto& center : roots) {
      const double r = radius * (1.0 + std::abs(center));
      int count = 0;
      for (const auto& z : roots)
        if (std::abs(z - center) <= r) ++count;
      if (count >= size) return true;
    }
  }
  return false;
}

// True when some cluster of computed roots touches the real axis at a
// radius consistent with a multiple axis root.
bool axis_degenerate(const std::vector<std::complex<double>>& roots, double tol_real) {
  for (const auto& z : roots)
    if (std::abs(z.imag()) <= std::max(1e-7, tol_real) * (1.0 + std::abs(z))) return true;
  for (const auto& [radius, size] : kClusterLadder) {
    for (const auto& zc : roots) {
      const std::complex<double> center(zc.real(), 0.0);
      const double r = radius * (1.0 + std::abs(center));
      if (std::abs(zc.imag()) > r) continue;
      int count = 0;
      for (const auto& z : roots)
        if (std::abs(z - center) <= r) ++count;
      if (count >= size) return true;
    }
  }
  return false;
}

// -1: clearly below the axis, +1: clearly above, 0: within tolerance of it.
int axis_side(const std::complex<double>& z, double tol_real) {
  const double band = tol_real * (1.0 + std::abs(z));
  if (std::abs(z.imag()) <= band) return 0;
  return z.imag() > 0 ? 1 : -1;
}

struct HurwitzOutcome {
  Verdict verdict = Verdict::undefined;  // pass: stable, fail: clearly not, undefined: degenerate
  std::vector<double> minors;
};

// LU determinant that also reports the smallest pivot relative to the
// block magnitude; a tiny ratio means the minor's sign is not trustworthy.
double det_tracking_pivots(std::vector<double> block, int k, double* min_ratio) {
  double max_abs = 0.0;
  for (double v : block) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) {
    *min_ratio = 0.0;
    return 0.0;
  }
  double det = 1.0;
  *min_ratio = kInf;
  for (int col = 0; col < k; ++col) {
    int piv = col;
    double best = std::abs(block[static_cast<size_t>(col) * k + col]);
    for (int r = col + 1; r < k; ++r) {
      const double v = std::abs(block[static_cast<size_t>(r) * k + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    *min_ratio = std::min(*min_ratio, best / max_abs);
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < k; ++j)
        std::swap(block[static_cast<size_t>(piv) * k + j], block[static_cast<size_t>(col) * k + j]);
      det = -det;
    }
    const double d = block[static_cast<size_t>(col) * k + col];
    det *= d;
    for (int r = col + 1; r < k; ++r) {
      const double f = block[static_cast<size_t>(r) * k + col] / d;
      if (f == 0.0) continue;
      for (int j = col + 1; j < k; ++j)
        block[static_cast<size_t>(r) * k + j] -= f * block[static_cast<size_t>(col) * k + j];
    }
  }
  return det;
}

// Classical Hurwitz criterion on a real polynomial, descending coefficients,
// positive leading coefficient. The variable is rescaled so the root
// magnitudes balance before the minors are taken; minors whose elimination
// hits a negligible pivot are degenerate, never decided.
HurwitzOutcome hurwitz_stable(const std::vector<double>& desc, const ToleranceConfig& cfg) {
  const int m = static_cast<int>(desc.size()) - 1;
  HurwitzOutcome out;
  if (m == 0) {
    out.verdict = Verdict::pass;
    return out;
  }
  std::vector<double> a(desc);
  const double lead = a[0];
  for (double& v : a) v /= lead;
  const double tail = std::abs(a[static_cast<size_t>(m)]);
  double s = tail > 0.0 ? std::pow(tail, 1.0 / m) : 1.0;
  s = std::clamp(s, 1e-6, 1e6);
  double sp = 1.0;
  for (int k = 0; k <= m; ++k) {
    a[static_cast<size_t>(k)] /= sp;  // z -> s z, then renormalize monic
    sp *= s;
  }

  auto coeff = [&](int k) -> double { return (k < 0 || k > m) ? 0.0 : a[static_cast<size_t>(k)]; };
  std::vector<double> h(static_cast<size_t>(m) * m, 0.0);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      h[static_cast<size_t>(i - 1) * m + (j - 1)] = coeff(2 * j - i);

  out.minors.resize(static_cast<size_t>(m));
  bool any_degenerate = false;
  bool any_negative = false;
  const double ratio_floor = 100.0 * cfg.tol_zero;
  for (int k = 1; k <= m; ++k) {
    std::vector<double> block(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        block[static_cast<size_t>(i) * k + j] = h[static_cast<size_t>(i) * m + j];
    double ratio = 0.0;
    const double det = det_tracking_pivots(std::move(block), k, &ratio);
    out.minors[static_cast<size_t>(k - 1)] = det;
    if (ratio <= ratio_floor)
      any_degenerate = true;
    else if (det < 0.0)
      any_negative = true;
  }
  if (any_degenerate)
    out.verdict = Verdict::undefined;
  else if (any_negative)
    out.verdict = Verdict::fail;
  else
    out.verdict = Verdict::pass;
  return out;
}

// Coefficients of w(z) = p(iz) + i q(iz), ascending in z:
// w_j = i^j (p_j + i q_j) with p_j, q_j the ascending real coefficients.
std::vector<std::complex<double>> w_coeffs(const RealPolynomial& p, const RealPolynomial& q) {
  const int m = p.degree();
  std::vector<std::complex<double>> w(static_cast<size_t>(m) + 1);
  const std::complex<double> i_unit(0.0, 1.0);
  std::complex<double> ipow(1.0, 0.0);
  for (int j = 0; j <= m; ++j) {
    const double pj = p.coeffs[static_cast<size_t>(m - j)];
    const double qj = j <= q.degree() ? q.coeffs[static_cast<size_t>(q.degree() - j)] : 0.0;
    w[static_cast<size_t>(j)] = ipow * (pj + i_unit * qj);
    ipow *= i_unit;
  }
  return w;
}

// Real polynomial w * conj_w, descending coefficients. Its Hurwitz stability
// equals w's: conj_w's roots are the conjugates of w's, same real parts.
std::vector<double> doubled_real_poly(const std::vector<std::complex<double>>& w) {
  const int m = static_cast<int>(w.size()) - 1;
  std::vector<double> f(static_cast<size_t>(2 * m) + 1, 0.0);
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= m; ++b)
      f[static_cast<size_t>(a + b)] += (w[static_cast<size_t>(a)] * std::conj(w[static_cast<size_t>(b)])).real();
  // descending
  std::reverse(f.begin(), f.end());
  // normalize positive leading coefficient (it is |w_m|^2 > 0)
  return f;
}

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> raw) : coeffs(std::move(raw)) {
  size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead] == 0.0) ++lead;
  if (lead == coeffs.size()) throw InputError("zero polynomial");
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  for (double v : coeffs)
    if (!std::isfinite(v)) throw InputError("polynomial coefficients must be finite");
  const double l = coeffs[0];
  if (l != 1.0)
    for (double& v : coeffs) v /= l;
}

double RealPolynomial::eval(double x) const {
  double acc = 0.0;
  for (double v : coeffs) acc = acc * x + v;
  return acc;
}

std::string_view to_string(InterlaceMethod m) {
  switch (m) {
    case InterlaceMethod::roots_direct:
      return "roots-direct";
    case InterlaceMethod::hermite_biehler:
      return "hermite-biehler";
    default:
      return "hurwitz";
  }
}

std::string_view to_string(Side s) {
  switch (s) {
    case Side::upper:
      return "upper";
    case Side::lower:
      return "lower";
    case Side::mixed:
      return "mixed";
    default:
      return "unknown";
  }
}

InterlaceReport interlace_check_roots(const RealPolynomial& p, const RealPolynomial& q,
                                      const ToleranceConfig& cfg) {
  cfg.validate();
  require_degrees(p, q);
  InterlaceReport rep;
  rep.method = InterlaceMethod::roots_direct;
  rep.p_roots = companion_roots_real(p.coeffs);
  rep.q_roots = companion_roots_real(q.coeffs);

  // Multiple roots within p or q, or roots shared across them, are
  // strictness boundaries: reported, never adjudicated.
  std::vector<std::complex<double>> joint = rep.p_roots;
  joint.insert(joint.end(), rep.q_roots.begin(), rep.q_roots.end());
  if (cluster_degenerate(joint)) {
    rep.verdict = Verdict::undefined;
    rep.detail = "multiple or shared roots at working precision";
    return rep;
  }

  const double fuzzy = std::max(1e-7, 10.0 * cfg.tol_real);
  bool ambiguous = false;
  bool nonreal = false;
  std::vector<double> x, y;
  auto sort_real = [&](const std::vector<std::complex<double>>& roots, std::vector<double>& out) {
    for (const auto& r : roots) {
      const double scale = 1.0 + std::abs(r);
      if (std::abs(r.imag()) <= cfg.tol_real * scale)
        out.push_back(r.real());
      else if (std::abs(r.imag()) <= fuzzy * scale)
        ambiguous = true;
      else
        nonreal = true;
    }
    std::sort(out.begin(), out.end());
  };
  sort_real(rep.p_roots, x);
  sort_real(rep.q_roots, y);

  if (ambiguous && !nonreal) {
    rep.verdict = Verdict::undefined;
    rep.detail = "a root's realness is tolerance-ambiguous";
    return rep;
  }
  if (nonreal) {
    rep.verdict = Verdict::fail;
    rep.detail = "not all roots are real";
    return rep;
  }

  // Strict interlacing x_1 < y_1 < x_2 < ... ; gaps within the separation
  // band (same sqrt(eps) splitting scale) are degenerate, never a pass.
  const auto sep = [&](double a, double b) {
    const double band =
        std::max(fuzzy, 1e3 * cfg.tol_zero) * (1.0 + std::max(std::abs(a), std::abs(b)));
    const double gap = b - a;
    if (gap > band) return 1;
    if (gap < -band) return -1;
    return 0;
  };
  bool degenerate = false;
  bool violated = false;
  for (size_t i = 0; i + 1 < x.size(); ++i) {
    const int s = sep(x[i], x[i + 1]);
    if (s == 0) degenerate = true;
  }
  for (size_t i = 0; i + 1 < y.size(); ++i) {
    const int s = sep(y[i], y[i + 1]);
    if (s == 0) degenerate = true;
  }
  for (size_t i = 0; i < y.size(); ++i) {
    const int lo = sep(x[i], y[i]);
    const int hi = sep(y[i], x[i + 1]);
    if (lo == 0 || hi == 0) degenerate = true;
    if (lo < 0 || hi < 0) violated = true;
  }
  if (violated) {
    rep.verdict = Verdict::fail;
    rep.detail = "roots are real but do not interlace";
  } else if (degenerate) {
    rep.verdict = Verdict::undefined;
    rep.detail = "shared or nearly shared roots";
  } else {
    rep.verdict = Verdict::pass;
    rep.detail = "roots are real and strictly interlace";
  }
  return rep;
}

InterlaceReport hermite_biehler_same_side(const RealPolynomial& p, const RealPolynomial& q,
                                          const ToleranceConfig& cfg) {
  cfg.validate();
  require_degrees(p, q);
  InterlaceReport rep;
  rep.method = InterlaceMethod::hermite_biehler;

  const int m = p.degree();
  std::vector<std::complex<double>> r(static_cast<size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    const double pk = p.coeffs[static_cast<size_t>(k)];
    const int qi = k - 1;  // q is one degree lower: aligns coefficient degrees
    const double qk = (qi >= 0 && qi <= q.degree()) ? q.coeffs[static_cast<size_t>(qi)] : 0.0;
    r[static_cast<size_t>(k)] = {pk, qk};
  }
  rep.hb_roots = companion_roots_complex(r);

  if (axis_degenerate(rep.hb_roots, cfg.tol_real)) {
    rep.verdict = Verdict::undefined;
    rep.side = Side::unknown;
    rep.detail = "a root lies within tolerance of the real axis";
    return rep;
  }
  int pos = 0, neg = 0, axis = 0;
  for (const auto& z : rep.hb_roots) {
    const int s = axis_side(z, cfg.tol_real);
    if (s > 0)
      ++pos;
    else if (s < 0)
      ++neg;
    else
      ++axis;
  }
  if (axis > 0) {
    rep.verdict = Verdict::undefined;
    rep.side = Side::unknown;
    rep.detail = "a root lies within tolerance of the real axis";
  } else if (pos > 0 && neg > 0) {
    rep.verdict = Verdict::fail;
    rep.side = Side::mixed;
    rep.detail = "roots on both sides of the real axis";
  } else {
    rep.verdict = Verdict::pass;
    rep.side = pos > 0 ? Side::upper : Side::lower;
    rep.detail = "all roots strictly on one side of the real axis";
  }
  return rep;
}

InterlaceReport hurwitz_interlace(const RealPolynomial& p, const RealPolynomial& q,
                                  const ToleranceConfig& cfg) {
  cfg.validate();
  require_degrees(p, q);
  InterlaceReport rep;
  rep.method = InterlaceMethod::hurwitz;

  const std::vector<std::complex<double>> w = w_coeffs(p, q);
  // w stable <=> all roots of p+iq below the axis; w(-z) stable <=> above.
  std::vector<std::complex<double>> w_neg = w;
  for (size_t j = 1; j < w_neg.size(); j += 2) w_neg[j] = -w_neg[j];

  const HurwitzOutcome lower = hurwitz_stable(doubled_real_poly(w), cfg);
  const HurwitzOutcome upper = hurwitz_stable(doubled_real_poly(w_neg), cfg);

  std::ostringstream detail;
  detail << "lower-minors " << to_string(lower.verdict) << ", upper-minors "
         << to_string(upper.verdict);
  rep.detail = detail.str();

  if (lower.verdict == Verdict::pass) {
    rep.verdict = Verdict::pass;
    rep.side = Side::lower;
    rep.hurwitz_minors = lower.minors;
  } else if (upper.verdict == Verdict::pass) {
    rep.verdict = Verdict::pass;
    rep.side = Side::upper;
    rep.hurwitz_minors = upper.minors;
  } else if (lower.verdict == Verdict::fail && upper.verdict == Verdict::fail) {
    rep.verdict = Verdict::fail;
    rep.side = Side::mixed;
    rep.hurwitz_minors = lower.minors;
  } else {
    rep.verdict = Verdict::undefined;
    rep.side = Side::unknown;
    rep.hurwitz_minors = lower.verdict == Verdict::undefined ? lower.minors : upper.minors;
  }
  return rep;
}

std::vector<InterlaceReport> leading_submatrix_interlacing(const MinorTable& t,
                                                           const ToleranceConfig& cfg) {
  cfg.validate();
  if (t.n < 2) throw InputError("leading-submatrix interlacing needs order >= 2");
  std::vector<InterlaceReport> out;
  out.reserve(static_cast<size_t>(t.n) - 1);
  for (int j = 1; j <= t.n - 1; ++j) {
    const IndexSet small = IndexSet((std::uint64_t{1} << j) - 1, t.n);
    const IndexSet large = IndexSet((std::uint64_t{1} << (j + 1)) - 1, t.n);
    const RealPolynomial q(char_poly_from_table(t, small));
    const RealPolynomial p(char_poly_from_table(t, large));
    out.push_back(interlace_check_roots(p, q, cfg));
  }
  return out;
}

}  // namespace matclass
