#include "matclass/index_set.hpp"

#include <algorithm>

namespace matclass {

IndexSet::IndexSet(std::uint64_t mask_, int n_) : mask(mask_), n(n_) {
  if (n_ < 0 || n_ > 63) throw InputError("index set ambient order must be in 0..63");
  if (n_ < 63 && mask_ >> n_) throw InputError("index set mask exceeds ambient order");
}

IndexSet IndexSet::full(int n) {
  if (n < 0 || n > 63) throw InputError("index set ambient order must be in 0..63");
  return IndexSet(n == 0 ? 0 : (std::uint64_t{1} << n) - 1, n);
}

IndexSet IndexSet::of(std::initializer_list<int> members, int n) {
  std::uint64_t m = 0;
  for (int i : members) {
    if (i < 1 || i > n) throw InputError("index out of range");
    m |= std::uint64_t{1} << (i - 1);
  }
  return IndexSet(m, n);
}

std::vector<int> IndexSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask; m;) {
    const int bit = std::countr_zero(m);
    out.push_back(bit + 1);
    m &= m - 1;
  }
  return out;
}

int dispersal(const IndexSet& alpha, const IndexSet& beta) {
  if (alpha.size() != beta.size()) throw InputError("dispersal requires equal-size index sets");
  return alpha.size() - IndexSet(alpha.mask & beta.mask, alpha.n).size();
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

std::uint64_t count_dispersal_pairs(int n, int d, DispersalMode mode) {
  if (n < 0 || d < 0 || d > n) throw InputError("dispersal out of range");
  if (mode == DispersalMode::at_most) {
    std::uint64_t total = 0;
    for (int dd = 0; dd <= d; ++dd) total += count_dispersal_pairs(n, dd, DispersalMode::exact);
    return total;
  }
  if (d == 0) return (std::uint64_t{1} << n) - 1;  // (alpha, alpha), alpha nonempty
  // Ordered pairs: choose alpha (size k), drop d of it, add d from outside.
  // Saturating: the count is only a feasibility guard at large n.
  constexpr std::uint64_t cap = std::uint64_t{1} << 62;
  long double ordered = 0.0L;
  for (int k = d; k <= n - d; ++k) {
    ordered += static_cast<long double>(binomial(n, k)) * static_cast<long double>(binomial(k, d)) *
               static_cast<long double>(binomial(n - k, d));
    if (ordered > static_cast<long double>(cap)) return cap;
  }
  return static_cast<std::uint64_t>(ordered / 2.0L);
}

namespace {

// Enumerates all size-r sub-lists of `pool`, invoking f with the combined
// bitmask of the chosen elements. Lexicographic over pool positions.
template <typename F>
void for_each_combination_mask(const std::vector<int>& pool, int r, F&& f) {
  const int m = static_cast<int>(pool.size());
  if (r < 0 || r > m) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (int i : idx) mask |= std::uint64_t{1} << (pool[static_cast<size_t>(i)] - 1);
    if (!f(mask)) return;
    int i = r - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == m - r + i) --i;
    if (i < 0) return;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

bool stream_exact(int n, int d, const std::function<bool(const DispersalPair&)>& visit) {
  const std::uint64_t limit = std::uint64_t{1} << n;
  if (d == 0) {
    for (std::uint64_t m = 1; m < limit; ++m) {
      const IndexSet a(m, n);
      if (!visit({a, a, 0})) return false;
    }
    return true;
  }
  std::vector<std::uint64_t> betas;
  for (std::uint64_t am = 1; am < limit; ++am) {
    const IndexSet alpha(am, n);
    const int k = alpha.size();
    if (k < d || n - k < d) continue;
    const std::vector<int> inside = alpha.members();
    const std::vector<int> outside = IndexSet(~am & (limit - 1), n).members();
    betas.clear();
    for_each_combination_mask(inside, d, [&](std::uint64_t drop) {
      for_each_combination_mask(outside, d, [&](std::uint64_t add) {
        const std::uint64_t bm = (am & ~drop) | add;
        if (bm > am) betas.push_back(bm);  // canonical: smaller mask first
        return true;
      });
      return true;
    });
    std::sort(betas.begin(), betas.end());
    for (std::uint64_t bm : betas)
      if (!visit({alpha, IndexSet(bm, n), d})) return false;
  }
  return true;
}

}  // namespace

void for_each_dispersal_pair(int n, int d, DispersalMode mode,
                             const std::function<bool(const DispersalPair&)>& visit) {
  if (n < 1 || n > 63 || d < 0 || d > n) throw InputError("dispersal out of range");
  if (mode == DispersalMode::exact) {
    stream_exact(n, d, visit);
    return;
  }
  for (int dd = 0; dd <= d; ++dd)
    if (!stream_exact(n, dd, visit)) return;
}

std::vector<DispersalPair> pairs_with_dispersal(int n, int d, DispersalMode mode) {
  std::vector<DispersalPair> out;
  out.reserve(count_dispersal_pairs(n, d, mode));
  for_each_dispersal_pair(n, d, mode, [&](const DispersalPair& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

}  // namespace matclass
