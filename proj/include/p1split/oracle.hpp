#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <type_traits>
#include <vector>

#include "p1split/smb.hpp"

namespace p1split {

/// Successive minima found by exhaustive enumeration of the lattice vectors
/// sum_j a_j col_j with a_j in F_p[T], deg a_j <= bound.
struct OracleReport {
  std::vector<int> minima;  // gauges, non-increasing
  int bound = 0;
  std::uint64_t enumerated = 0;  // q^(d (bound + 1)) - 1
  bool stable = false;           // same minima at bound - 1
};

inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

namespace detail {

// q^(d (bound + 1)), or nullopt past the cap.
inline std::optional<std::uint64_t> enumeration_size(std::int64_t q, Eigen::Index d, int bound) {
  std::uint64_t n = 1;
  for (Eigen::Index i = 0; i < d * (bound + 1); ++i) {
    n *= static_cast<std::uint64_t>(q);
    if (n > kEnumerationCap) return std::nullopt;
  }
  return n;
}

// Fraction-free row echelon form over k[T] deciding linear independence over
// k(T). Rows are kept with pairwise distinct pivots (first nonzero entry).
class IndependenceTester {
 public:
  explicit IndependenceTester(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const { return rows_.size(); }

  // Adds v when it is independent of the rows so far.
  bool insert(std::vector<Poly<Fp>> v) {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot].is_zero()) continue;
      const Poly<Fp> a = row[pivot], b = v[pivot];
      for (std::size_t i = 0; i < dim_; ++i) v[i] = a * v[i] - b * row[i];
    }
    std::size_t pivot = 0;
    while (pivot < dim_ && v[pivot].is_zero()) ++pivot;
    if (pivot == dim_) return false;
    const auto at = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                                     [](const auto& r, std::size_t p) { return r.first < p; });
    rows_.insert(at, {pivot, std::move(v)});
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::vector<Poly<Fp>>>> rows_;
};

struct MinimaRun {
  std::vector<int> minima;
  std::uint64_t count = 0;
};

inline MinimaRun enumerate_minima(const Lattice<Fp>& lattice, int bound, unsigned threads) {
  const std::int64_t p = lattice.field().characteristic();
  const Eigen::Index d = lattice.dim();
  const auto total = enumeration_size(p, d, bound);
  if (!total) throw EnumerationCapExceeded("oracle enumeration exceeds 2^24 vectors");

  // Polynomial matrix T^(s - w_i) * basis(i, j): weighted gauge = s - degree.
  int s = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (!lattice.basis()(i, j).is_zero()) s = std::max(s, lattice.weights()(i) - lattice.basis()(i, j).low());
  std::vector<std::vector<Poly<Fp>>> cols(static_cast<std::size_t>(d), std::vector<Poly<Fp>>(static_cast<std::size_t>(d)));
  int max_degree = 0;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      Poly<Fp> e = lattice.basis()(i, j).shifted(s - lattice.weights()(i)).to_poly();
      if (e.degree()) max_degree = std::max(max_degree, *e.degree());
      cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::move(e);
    }
  }

  // Generator t = j (bound + 1) + k is T^k col_j as dense residues, row-major.
  const std::size_t width = static_cast<std::size_t>(max_degree + bound + 1);
  const std::size_t len = static_cast<std::size_t>(d) * width;
  const std::size_t digits = static_cast<std::size_t>(d) * static_cast<std::size_t>(bound + 1);
  std::vector<std::vector<std::int32_t>> gens(digits, std::vector<std::int32_t>(len, 0));
  for (std::size_t t = 0; t < digits; ++t) {
    const std::size_t j = t / static_cast<std::size_t>(bound + 1);
    const int k = static_cast<int>(t % static_cast<std::size_t>(bound + 1));
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
      const auto& c = cols[j][i].coeffs();
      for (std::size_t e = 0; e < c.size(); ++e) gens[t][i * width + e + static_cast<std::size_t>(k)] = static_cast<std::int32_t>(c[e].value());
    }
  }

  auto decode = [&](std::uint64_t index, std::vector<std::int32_t>& digit) {
    for (std::size_t t = 0; t < digits; ++t) {
      digit[t] = static_cast<std::int32_t>(index % static_cast<std::uint64_t>(p));
      index /= static_cast<std::uint64_t>(p);
    }
  };
  auto degree_of = [&](const std::vector<std::int32_t>& v) {
    int deg = -1;
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i)
      for (std::size_t e = width; e-- > static_cast<std::size_t>(deg + 1);)
        if (v[i * width + e] != 0) {
          deg = static_cast<int>(e);
          break;
        }
    return deg;
  };

  // Pass 1: degree of every enumerated vector (index 0 is the zero vector).
  std::vector<std::int8_t> degree(*total);
  auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::int32_t> digit(digits), v(len, 0);
    decode(begin, digit);
    for (std::size_t t = 0; t < digits; ++t)
      for (std::size_t x = 0; x < len; ++x) v[x] = static_cast<std::int32_t>((v[x] + static_cast<std::int64_t>(digit[t]) * gens[t][x]) % p);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      degree[idx] = static_cast<std::int8_t>(degree_of(v));
      // Odometer step; a wrapping digit adds its generator p times in total.
      for (std::size_t t = 0; t < digits; ++t) {
        for (std::size_t x = 0; x < len; ++x) {
          const std::int32_t y = v[x] + gens[t][x];
          v[x] = y >= p ? y - static_cast<std::int32_t>(p) : y;
        }
        if (++digit[t] < p) break;
        digit[t] = 0;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t chunk = (*total + threads - 1) / threads;
  if (threads == 1 || *total < 4096) {
    worker(0, *total);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t b = 0; b < *total; b += chunk) pool.emplace_back(worker, b, std::min(*total, b + chunk));
    for (auto& th : pool) th.join();
  }

  // Pass 2: greedy collection of independent vectors, smallest norm first.
  MinimaRun run;
  run.count = *total - 1;
  IndependenceTester tester(static_cast<std::size_t>(d));
  std::vector<std::int32_t> digit(digits);
  for (int level = 0; level <= max_degree + bound && tester.rank() < static_cast<std::size_t>(d); ++level) {
    for (std::uint64_t idx = 1; idx < *total && tester.rank() < static_cast<std::size_t>(d); ++idx) {
      if (degree[idx] != level) continue;
      decode(idx, digit);
      std::vector<Poly<Fp>> v(static_cast<std::size_t>(d));
      for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) {
        std::vector<Fp> a;
        for (int k = 0; k <= bound; ++k) a.emplace_back(digit[j * static_cast<std::size_t>(bound + 1) + static_cast<std::size_t>(k)], p);
        const Poly<Fp> coeff(std::move(a));
        if (coeff.is_zero()) continue;
        for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) v[i] += coeff * cols[j][i];
      }
      if (tester.insert(std::move(v))) run.minima.push_back(s - level);
    }
  }
  return run;
}

}  // namespace detail

/// Successive minima straight from their definition: the i-th minimum is the
/// largest gauge g such that the enumerated vectors of gauge >= g contain i
/// vectors linearly independent over K_inf.
template <class F>
OracleReport brute_minima(const Lattice<F>& lattice, int bound, unsigned threads = 0) {
  if constexpr (!std::is_same_v<F, Fp>) {
    throw UnsupportedField("oracle enumeration needs a finite field");
  } else {
    if (bound < 0) throw EnumerationCapExceeded("oracle bound must be non-negative");
    OracleReport report;
    report.bound = bound;
    auto run = detail::enumerate_minima(lattice, bound, threads);
    report.minima = std::move(run.minima);
    report.enumerated = run.count;
    report.stable = bound >= 1 && detail::enumerate_minima(lattice, bound - 1, threads).minima == report.minima;
    return report;
  }
}

/// SMB gauges agree with the oracle minima at a stable bound.
inline bool oracle_compare(const std::vector<int>& gauges, const OracleReport& report) {
  return report.stable && gauges == report.minima;
}

template <class F>
bool oracle_compare(const Lattice<F>& lattice, const SMBResult<F>& s, int bound) {
  return oracle_compare(s.gauges, brute_minima(lattice, bound));
}

template <class F>
bool oracle_compare(const Lattice<F>& lattice, int bound) {
  return oracle_compare(lattice, smb(lattice), bound);
}

}  // namespace p1split
