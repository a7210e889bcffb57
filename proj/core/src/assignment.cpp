#include "matclass/assignment.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "det_kernel.hpp"
#include "matclass/rng.hpp"

namespace matclass {

namespace {

constexpr int kFitCap = 6;

double det_of(const std::vector<double>& buf, int k) {
  if (k == 0) return 1.0;
  if (k == 1) return buf[0];
  if (k == 2) return buf[0] * buf[3] - buf[1] * buf[2];
  std::vector<double> copy = buf;
  return detail::det_in_place(copy.data(), k);
}

// Signed cofactor of position (r, c) in the k x k buffer.
double cofactor(const std::vector<double>& b, int k, int r, int c) {
  if (k == 1) return 1.0;
  std::vector<double> sub(static_cast<size_t>(k - 1) * (k - 1));
  int si = 0;
  for (int i = 0; i < k; ++i) {
    if (i == r) continue;
    for (int j = 0; j < k; ++j) {
      if (j == c) continue;
      sub[static_cast<size_t>(si++)] = b[static_cast<size_t>(i) * k + j];
    }
  }
  const double m = det_of(sub, k - 1);
  return ((r + c) % 2 == 0) ? m : -m;
}

struct ResidualData {
  Eigen::VectorXd r;   // 2^n - 1 deviations, mask order
  Eigen::MatrixXd jt;  // n^2 x (2^n - 1), transposed Jacobian
};

void residual_and_jacobian(const Matrix& a, const TargetMinorTable& t, bool want_jacobian,
                           ResidualData& out) {
  const int n = a.order();
  const std::uint64_t size = std::uint64_t{1} << n;
  out.r.resize(static_cast<Eigen::Index>(size) - 1);
  if (want_jacobian) out.jt = Eigen::MatrixXd::Zero(n * n, static_cast<Eigen::Index>(size) - 1);

  std::vector<double> buf;
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    const IndexSet s(mask, n);
    const auto mem = s.members();
    const int k = s.size();
    buf.resize(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        buf[static_cast<size_t>(i) * k + j] =
            a(mem[static_cast<size_t>(i)] - 1, mem[static_cast<size_t>(j)] - 1);
    const Eigen::Index row = static_cast<Eigen::Index>(mask) - 1;
    out.r(row) = det_of(buf, k) - t.targets[mask];
    if (!want_jacobian) continue;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const int col = (mem[static_cast<size_t>(i)] - 1) * n + (mem[static_cast<size_t>(j)] - 1);
        out.jt(col, row) = cofactor(buf, k, i, j);
      }
  }
}

Matrix from_vector(int n, const Eigen::VectorXd& x) {
  Matrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = x(i * n + j);
  return a;
}

Eigen::VectorXd to_vector(const Matrix& a) {
  const int n = a.order();
  Eigen::VectorXd x(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i * n + j) = a(i, j);
  return x;
}

struct LmOutcome {
  Matrix matrix;
  double residual = 0.0;
};

LmOutcome levenberg_marquardt(const TargetMinorTable& t, Matrix start, long max_iterations,
                              double tol_fit) {
  const int n = t.n;
  const int p = n * n;
  Eigen::VectorXd x = to_vector(start);
  ResidualData data;
  Matrix cur = start;
  residual_and_jacobian(cur, t, true, data);
  double norm2 = data.r.squaredNorm();
  double lambda = 1e-3;

  for (long it = 0; it < max_iterations; ++it) {
    if (std::sqrt(norm2) <= tol_fit) break;
    const Eigen::VectorXd g = data.jt * data.r;
    if (g.lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + std::sqrt(norm2))) break;  // stalled
    const Eigen::MatrixXd h = data.jt * data.jt.transpose();

    bool moved = false;
    for (int inner = 0; inner < 25; ++inner) {
      Eigen::MatrixXd damped = h;
      for (int i = 0; i < p; ++i) damped(i, i) += lambda * (h(i, i) + 1e-12);
      const Eigen::VectorXd delta = damped.ldlt().solve(-g);
      const Eigen::VectorXd x_new = x + delta;
      const Matrix cand = from_vector(n, x_new);
      ResidualData trial;
      residual_and_jacobian(cand, t, false, trial);
      const double norm2_new = trial.r.squaredNorm();
      if (norm2_new < norm2) {
        x = x_new;
        cur = cand;
        norm2 = norm2_new;
        lambda = std::max(lambda / 3.0, 1e-12);
        moved = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e14) break;
    }
    if (!moved) break;
    residual_and_jacobian(cur, t, true, data);
    norm2 = data.r.squaredNorm();
  }
  return {cur, std::sqrt(norm2)};
}

}  // namespace

void TargetMinorTable::validate() const {
  if (n < 1) throw InputError("target table order must be >= 1");
  if (targets.size() != (std::uint64_t{1} << n)) throw InputError("target table is incomplete");
  if (targets[0] != 1.0) throw InputError("target for the empty set must be 1");
  for (double v : targets)
    if (!std::isfinite(v)) throw InputError("targets must be finite");
}

double TargetMinorTable::max_abs() const {
  double m = 0.0;
  for (std::uint64_t mask = 1; mask < targets.size(); ++mask)
    m = std::max(m, std::abs(targets[mask]));
  return m;
}

TargetMinorTable targets_from_minor_table(const MinorTable& t) {
  TargetMinorTable out;
  out.n = t.n;
  out.targets = t.minors;
  out.targets[0] = 1.0;
  return out;
}

void FitConfig::validate() const {
  if (starts < 1) throw InputError("fit needs at least one start");
  if (max_iterations < 1) throw InputError("fit needs at least one iteration");
  if (!(tol_fit_scale > 0.0)) throw InputError("tol_fit_scale must be positive");
}

ClassReport hf_feasibility(const TargetMinorTable& t, const ToleranceConfig& cfg) {
  t.validate();
  MinorTable pseudo;
  pseudo.n = t.n;
  pseudo.minors = t.targets;
  pseudo.c = mean_minor_sums(pseudo);
  return hadamard_fischer_check(pseudo, cfg);
}

AssignmentResult fit_matrix_to_minors(const TargetMinorTable& t, const FitConfig& fit,
                                      const ToleranceConfig& cfg) {
  t.validate();
  fit.validate();
  cfg.validate();
  if (t.n > kFitCap) throw CapError("minor assignment fit capped at order 6");

  const int n = t.n;
  const double tol_fit = fit.tol_fit_scale * (1.0 + t.max_abs());
  const double spread = 0.25 * (1.0 + t.max_abs());

  AssignmentResult best;
  best.tol_fit = tol_fit;
  best.residual = std::numeric_limits<double>::infinity();

  for (int s = 0; s < fit.starts; ++s) {
    Matrix start(n);
    for (int i = 0; i < n; ++i) start(i, i) = t.targets[std::uint64_t{1} << i];
    if (s > 0) {
      CounterRng rng(fit.seed, static_cast<std::uint64_t>(s));
      for (double& v : start.entries()) v += spread * rng.normal();
    }
    const LmOutcome out = levenberg_marquardt(t, start, fit.max_iterations, tol_fit);
    if (out.residual < best.residual) {
      best.matrix = out.matrix;
      best.residual = out.residual;
      best.starts_used = s + 1;
    }
    if (out.residual <= tol_fit) {
      best.matrix = out.matrix;
      best.residual = out.residual;
      best.starts_used = s + 1;
      best.converged = true;
      break;
    }
  }
  best.converged = best.residual <= tol_fit;
  return best;
}

double assignment_residual(const Matrix& a, const TargetMinorTable& t) {
  t.validate();
  if (a.order() != t.n) throw InputError("matrix and target orders differ");
  ResidualData data;
  residual_and_jacobian(a, t, false, data);
  return std::sqrt(data.r.squaredNorm());
}

std::vector<double> assignment_residual_gradient(const Matrix& a, const TargetMinorTable& t) {
  t.validate();
  if (a.order() != t.n) throw InputError("matrix and target orders differ");
  ResidualData data;
  residual_and_jacobian(a, t, true, data);
  const Eigen::VectorXd g = data.jt * data.r;
  return {g.data(), g.data() + g.size()};
}

}  // namespace matclass
