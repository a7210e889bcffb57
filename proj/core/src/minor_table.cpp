#include "matclass/minor_table.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>
#include <thread>

#include "det_kernel.hpp"

namespace matclass {

namespace {

using boost::multiprecision::cpp_rational;

double principal_minor_float(const Matrix& a, std::uint64_t mask) {
  double buf[MinorTable::order_cap * MinorTable::order_cap];
  const int k = detail::gather(a, mask, mask, buf);
  if (k == 1) return buf[0];
  if (k == 2) return buf[0] * buf[3] - buf[1] * buf[2];
  return detail::det_in_place(buf, k);
}

// Exact determinant over the rationals; first-nonzero pivoting.
cpp_rational det_exact(std::vector<cpp_rational> m, int k) {
  cpp_rational det = 1;
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (m[static_cast<size_t>(r) * k + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = col; j < k; ++j)
        std::swap(m[static_cast<size_t>(piv) * k + j], m[static_cast<size_t>(col) * k + j]);
      det = -det;
    }
    const cpp_rational d = m[static_cast<size_t>(col) * k + col];
    det *= d;
    for (int r = col + 1; r < k; ++r) {
      const cpp_rational f = m[static_cast<size_t>(r) * k + col] / d;
      if (f == 0) continue;
      for (int j = col + 1; j < k; ++j)
        m[static_cast<size_t>(r) * k + j] -= f * m[static_cast<size_t>(col) * k + j];
    }
  }
  return det;
}

void fill_exact(const Matrix& a, MinorTable& t) {
  const int n = a.order();
  std::vector<cpp_rational> entries(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) entries[static_cast<size_t>(i) * n + j] = cpp_rational(a(i, j));

  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<cpp_rational> csum(static_cast<size_t>(n) + 1);
  csum[0] = 1;
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    const IndexSet s(mask, n);
    const auto mem = s.members();
    const int k = s.size();
    std::vector<cpp_rational> sub(static_cast<size_t>(k) * k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        sub[static_cast<size_t>(r) * k + c] =
            entries[static_cast<size_t>(mem[static_cast<size_t>(r)] - 1) * n + (mem[static_cast<size_t>(c)] - 1)];
    const cpp_rational d = det_exact(std::move(sub), k);
    t.minors[mask] = d.convert_to<double>();
    csum[static_cast<size_t>(k)] += d;
  }
  for (int j = 0; j <= n; ++j)
    t.c[static_cast<size_t>(j)] =
        (csum[static_cast<size_t>(j)] / cpp_rational(binomial(n, j))).convert_to<double>();
}

}  // namespace

MinorTable principal_minor_table(const Matrix& a, MinorMode mode, int jobs) {
  const int n = a.order();
  if (n > MinorTable::order_cap) throw CapError("principal minor table capped at order 20");

  MinorTable t;
  t.n = n;
  t.minors.assign(std::uint64_t{1} << n, 0.0);
  t.minors[0] = 1.0;
  t.c.assign(static_cast<size_t>(n) + 1, 0.0);
  t.c[0] = 1.0;

  if (mode == MinorMode::exact) {
    fill_exact(a, t);
    return t;
  }

  const std::uint64_t size = std::uint64_t{1} << n;
  const auto fill_range = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t mask = lo; mask < hi; ++mask) t.minors[mask] = principal_minor_float(a, mask);
  };

  jobs = std::max(1, jobs);
  if (jobs == 1 || size < 4096) {
    fill_range(1, size);
  } else {
    // Disjoint mask ranges per worker: the merged table is identical for
    // any worker count.
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (size + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      const std::uint64_t lo = std::max<std::uint64_t>(1, w * chunk);
      const std::uint64_t hi = std::min(size, (w + 1) * chunk);
      if (lo < hi) pool.emplace_back(fill_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // Size sums in ascending mask order: deterministic accumulation.
  std::vector<double> sums(static_cast<size_t>(n) + 1, 0.0);
  for (std::uint64_t mask = 1; mask < size; ++mask)
    sums[static_cast<size_t>(std::popcount(mask))] += t.minors[mask];
  for (int j = 1; j <= n; ++j)
    t.c[static_cast<size_t>(j)] = sums[static_cast<size_t>(j)] / static_cast<double>(binomial(n, j));
  return t;
}

double minor(const Matrix& a, const IndexSet& alpha, const IndexSet& beta) {
  if (alpha.size() != beta.size()) throw InputError("minor requires equal-size index sets");
  if (alpha.is_empty()) return 1.0;
  const int n = a.order();
  if (alpha.n != n || beta.n != n || (alpha.mask | beta.mask) >> n)
    throw InputError("index sets do not match the matrix order");
  std::vector<double> buf(static_cast<size_t>(alpha.size()) * alpha.size());
  const int k = detail::gather(a, alpha.mask, beta.mask, buf.data());
  if (k == 1) return buf[0];
  if (k == 2) return buf[0] * buf[3] - buf[1] * buf[2];
  return detail::det_in_place(buf.data(), k);
}

Matrix principal_submatrix(const Matrix& a, const IndexSet& s) {
  if (s.is_empty()) throw InputError("principal submatrix of the empty set");
  const auto mem = s.members();
  const int k = s.size();
  Matrix sub(k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      sub(r, c) = a(mem[static_cast<size_t>(r)] - 1, mem[static_cast<size_t>(c)] - 1);
  return sub;
}

std::vector<double> mean_minor_sums(const MinorTable& t) {
  std::vector<double> c(static_cast<size_t>(t.n) + 1, 0.0);
  c[0] = 1.0;
  std::vector<double> sums(static_cast<size_t>(t.n) + 1, 0.0);
  for (std::uint64_t mask = 1; mask < t.minors.size(); ++mask)
    sums[static_cast<size_t>(std::popcount(mask))] += t.minors[mask];
  for (int j = 1; j <= t.n; ++j)
    c[static_cast<size_t>(j)] = sums[static_cast<size_t>(j)] / static_cast<double>(binomial(t.n, j));
  return c;
}

std::vector<double> char_poly_from_table(const MinorTable& t, const IndexSet& gamma) {
  if (gamma.is_empty()) throw InputError("char_poly_from_table needs a nonempty subset");
  const int k = gamma.size();
  std::vector<double> sums(static_cast<size_t>(k) + 1, 0.0);
  sums[0] = 1.0;
  // All submasks of gamma, standard descending submask walk.
  for (std::uint64_t sub = gamma.mask;; sub = (sub - 1) & gamma.mask) {
    if (sub != 0) sums[static_cast<size_t>(std::popcount(sub))] += t.minors[sub];
    if (sub == 0) break;
  }
  std::vector<double> coeffs(static_cast<size_t>(k) + 1);
  double sign = 1.0;
  for (int j = 0; j <= k; ++j) {
    coeffs[static_cast<size_t>(j)] = sign * sums[static_cast<size_t>(j)];
    sign = -sign;
  }
  return coeffs;
}

std::string to_json(const MinorTable& t) {
  nlohmann::ordered_json j;
  j["n"] = t.n;
  nlohmann::ordered_json minors = nlohmann::ordered_json::object();
  for (std::uint64_t mask = 0; mask < t.minors.size(); ++mask)
    minors[std::to_string(mask)] = t.minors[mask];
  j["minors"] = std::move(minors);
  j["c"] = t.c;
  return j.dump(2) + "\n";
}

MinorTable minor_table_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("minor table JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("minors"))
    throw InputError("minor table JSON needs {\"n\", \"minors\"}");
  MinorTable t;
  t.n = j["n"].get<int>();
  if (t.n < 1 || t.n > MinorTable::order_cap) throw InputError("minor table order out of range");
  t.minors.assign(std::uint64_t{1} << t.n, 0.0);
  t.minors[0] = 1.0;
  std::vector<bool> seen(t.minors.size(), false);
  seen[0] = true;
  for (const auto& [key, value] : j["minors"].items()) {
    std::uint64_t mask = 0;
    try {
      mask = std::stoull(key);
    } catch (...) {
      throw InputError("minor table key is not a decimal mask: " + key);
    }
    if (mask >= t.minors.size()) throw InputError("minor table mask out of range: " + key);
    t.minors[mask] = value.get<double>();
    seen[mask] = true;
  }
  if (t.minors[0] != 1.0) throw InputError("minor table entry for the empty set must be 1");
  for (std::uint64_t mask = 1; mask < t.minors.size(); ++mask)
    if (!seen[mask]) throw InputError("minor table is missing mask " + std::to_string(mask));
  t.c = j.contains("c") ? j["c"].get<std::vector<double>>() : mean_minor_sums(t);
  if (t.c.size() != static_cast<size_t>(t.n) + 1) throw InputError("minor table c has wrong length");
  return t;
}

}  // namespace matclass
