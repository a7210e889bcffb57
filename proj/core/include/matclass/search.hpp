#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "matclass/classify.hpp"

namespace matclass {

// Class predicates assembled from the certifiers. sign_symmetric includes
// the P requirement (the stability question quantifies over sign-symmetric
// P-matrices); the bare product condition is available via classify labels.
enum class MatrixClass {
  p,
  gkk,
  strict_gkk,
  sign_symmetric,
  omega,
  tau,
  gkk_tau,
  m_matrix,
  hpd,
  real_spectrum,
};

enum class Objective {
  min_stability_margin,
  min_varga_margin,
  min_newton_margin,
  min_strict_gkk_margin,
  min_hf_margin,
};

std::string_view to_string(MatrixClass c);
std::string_view to_string(Objective o);
MatrixClass matrix_class_from_string(std::string_view s);
Objective objective_from_string(std::string_view s);

struct SearchConfig {
  int n = 4;
  std::uint64_t seed = 0;
  long iterations = 10000;
  double step_init = 0.25;
  double step_decay = 0.99995;  // multiplicative, per iteration
  int restarts = 4;
  long membership_budget = 5000;  // proposals allowed per starting member
  int jobs = 1;                   // restart chains to run concurrently; never affects results
  ToleranceConfig tol;

  void validate() const;
};

struct SearchResult {
  MatrixClass matrix_class{};
  Objective objective{};
  SearchConfig config;
  Matrix best;
  double best_objective = 0.0;
  int winning_restart = 0;
  long accepted_moves = 0;
  long in_class_evaluations = 0;
  // (iteration, best objective so far) samples of the winning chain;
  // non-increasing in the second component.
  std::vector<std::pair<long, double>> trace;
  ClassifyReport audit;  // full classify of best
};

// Membership predicate used by the searches; cheap checks first, early exit.
bool in_class(const Matrix& a, MatrixClass c, const ToleranceConfig& cfg = {});

// A matrix passing the class predicate. HPD / M / real-spectrum members are
// constructed; the composite classes are rejection-sampled. Throws
// BudgetError when the budget runs out before a member appears.
Matrix random_matrix_in_class(MatrixClass c, int n, std::uint64_t seed, long budget,
                              const ToleranceConfig& cfg = {});

// Stochastic hill descent inside the class: perturb entrywise, reject moves
// that leave the class, accept moves that decrease the objective.
// Deterministic given (seed, config).
SearchResult extremal_search(MatrixClass c, Objective obj, const SearchConfig& cfg);

struct StrictGkkApproximation {
  SearchResult search;  // best_objective = -(combined strictness margin)
  bool found = false;
  double distance = 0.0;          // max-entry distance from the input
  double strictness_margin = 0.0; // raw d=1 product margin of the best point
};

// Searches the epsilon-ball around a (max-entry metric) for a strict GKK
// matrix (optionally also tau). Not finding one is a result, not an error.
StrictGkkApproximation approximate_by_strict_gkk(const Matrix& a, double epsilon,
                                                 const SearchConfig& cfg,
                                                 bool require_tau = false);

struct DispersalProfileEntry {
  int d = 0;
  ClassReport check;  // dispersal products at every dispersal 1..d
};

struct DispersalProfile {
  std::vector<DispersalProfileEntry> per_d;  // d = 1..n
  int max_passing_d = 0;                     // largest d whose check passes; 0 if none
  ClassReport stability;
};

DispersalProfile dispersal_profile(const Matrix& a, const ToleranceConfig& cfg = {});

}  // namespace matclass
