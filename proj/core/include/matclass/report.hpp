#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <variant>

#include "matclass/index_set.hpp"

namespace matclass {

enum class Verdict { pass, fail, undefined };

std::string_view to_string(Verdict v);

// Locator for the binding or violated condition of a check.
struct SubsetWitness {
  IndexSet alpha;
};
struct PairWitness {
  IndexSet alpha, beta;
};
struct EigenvalueWitness {
  std::complex<double> value;
};
struct IndexWitness {
  int j = 0;
};
struct EntryWitness {
  int i = 0, j = 0;  // 1-based
};
using Witness = std::variant<SubsetWitness, PairWitness, EigenvalueWitness, IndexWitness, EntryWitness>;

// Verdict with the numeric slack that produced it. margin is the raw
// extremal quantity of the check (minor, product, real part, ...); scale is
// the magnitude the thresholds were normalized by for the binding condition.
struct ClassReport {
  Verdict verdict = Verdict::undefined;
  double margin = 0.0;
  double scale = 1.0;
  std::optional<Witness> witness;
  long checked_count = 0;
  bool marginal = false;  // binding margin within 10*tol_zero*scale of the threshold
};

}  // namespace matclass
