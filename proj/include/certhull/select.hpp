#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace certhull {

/// Deterministic worst-case linear selection (median of medians, groups of 5).
///
/// Returns the element of rank k (0-based) under the three-way comparator
/// cmp(a, b) -> {<0, 0, >0}. Elements are compared to the pivot by value,
/// except that the pivot itself is recognised with operator== and never
/// compared, so identity-carrying element types (indices) cost nothing for it.
template <class T, class Cmp>
T select_kth(std::vector<T> items, std::size_t k, Cmp&& cmp) {
  if (k >= items.size()) throw std::out_of_range("select_kth: rank out of range");

  auto insertion_sort = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo + 1; i < hi; ++i) {
      for (std::size_t j = i; j > lo && cmp(items[j], items[j - 1]) < 0; --j)
        std::swap(items[j], items[j - 1]);
    }
  };

  while (true) {
    const std::size_t n = items.size();
    if (n <= 5) {
      insertion_sort(0, n);
      return items[k];
    }

    std::vector<T> medians;
    medians.reserve(n / 5 + 1);
    for (std::size_t lo = 0; lo < n; lo += 5) {
      const std::size_t hi = std::min(lo + 5, n);
      insertion_sort(lo, hi);
      medians.push_back(items[lo + (hi - lo - 1) / 2]);
    }
    const std::size_t mid = (medians.size() - 1) / 2;
    const T pivot = select_kth(std::move(medians), mid, cmp);

    std::vector<T> lower, upper;
    std::size_t equal = 0;
    for (const T& x : items) {
      if (x == pivot) {
        ++equal;
        continue;
      }
      const int c = cmp(x, pivot);
      if (c < 0)
        lower.push_back(x);
      else if (c > 0)
        upper.push_back(x);
      else
        ++equal;
    }

    if (k < lower.size()) {
      items = std::move(lower);
    } else if (k < lower.size() + equal) {
      return pivot;
    } else {
      k -= lower.size() + equal;
      items = std::move(upper);
    }
  }
}

/// The element of rank k together with every input classified against it.
template <class T>
struct RankSplit {
  T kth;
  std::vector<T> less;
  std::vector<T> equal;  // includes kth
  std::vector<T> greater;
};

inline constexpr std::size_t kSampledSelectMin = 128;

/// Exact rank-k selection that also classifies every element against the
/// answer, so callers need no second comparison pass. Large inputs first try
/// to bracket rank k between two pivots picked from an evenly spaced sample of
/// about m^(2/3) elements; a successful bracket keeps at most half the items.
/// After the first miss, or once fewer than kSampledSelectMin items remain,
/// median of medians finishes the job, so the worst case stays linear and the
/// result is deterministic.
template <class T, class Cmp>
RankSplit<T> select_split(std::vector<T> items, std::size_t k, Cmp&& cmp) {
  if (k >= items.size()) throw std::out_of_range("select_split: rank out of range");
  std::vector<T> less, greater;
  auto absorb = [](std::vector<T>& into, std::vector<T>& from) {
    into.insert(into.end(), from.begin(), from.end());
  };

  bool sampling = true;
  while (sampling && items.size() >= kSampledSelectMin) {
    const std::size_t m = items.size();
    const auto s = static_cast<std::size_t>(std::cbrt(static_cast<double>(m) * static_cast<double>(m)));
    const auto gap = static_cast<std::size_t>(std::sqrt(static_cast<double>(s))) + 1;
    std::vector<T> sample;
    sample.reserve(s);
    for (std::size_t i = 0; i < s; ++i) sample.push_back(items[i * m / s]);
    const std::size_t ks = k * s / m;
    const std::size_t lo_rank = ks > gap ? ks - gap : 0;
    const std::size_t hi_rank = std::min(s - 1, ks + gap);
    RankSplit<T> first = select_split(std::move(sample), lo_rank, cmp);
    const T a = first.kth;
    T b = a;
    const std::size_t at_or_above_a = first.less.size() + first.equal.size();
    if (hi_rank >= at_or_above_a) {
      b = select_split(std::move(first.greater), hi_rank - at_or_above_a, cmp).kth;
    }

    const bool upper_half = 2 * k >= m;
    std::vector<T> low, mid, high;
    for (const T& x : items) {
      if (x == a || x == b) {
        mid.push_back(x);
      } else if (upper_half) {
        if (cmp(x, b) > 0) high.push_back(x);
        else if (cmp(x, a) < 0) low.push_back(x);
        else mid.push_back(x);
      } else {
        if (cmp(x, a) < 0) low.push_back(x);
        else if (cmp(x, b) > 0) high.push_back(x);
        else mid.push_back(x);
      }
    }

    if (k < low.size()) {
      absorb(greater, mid);
      absorb(greater, high);
      items = std::move(low);
      sampling = false;
    } else if (k >= low.size() + mid.size()) {
      k -= low.size() + mid.size();
      absorb(less, low);
      absorb(less, mid);
      items = std::move(high);
      sampling = false;
    } else {
      k -= low.size();
      absorb(less, low);
      absorb(greater, high);
      sampling = 2 * mid.size() <= m;
      items = std::move(mid);
    }
  }

  auto insertion_sort = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo + 1; i < hi; ++i) {
      for (std::size_t j = i; j > lo && cmp(items[j], items[j - 1]) < 0; --j)
        std::swap(items[j], items[j - 1]);
    }
  };

  while (true) {
    const std::size_t n = items.size();
    if (n <= 5) {
      insertion_sort(0, n);
      RankSplit<T> out{items[k], std::move(less), {}, std::move(greater)};
      for (std::size_t i = 0; i < n; ++i) {
        const int c = i == k ? 0 : cmp(items[i], items[k]);
        (c < 0 ? out.less : c > 0 ? out.greater : out.equal).push_back(items[i]);
      }
      return out;
    }

    std::vector<T> medians;
    medians.reserve(n / 5 + 1);
    for (std::size_t lo = 0; lo < n; lo += 5) {
      const std::size_t hi = std::min(lo + 5, n);
      insertion_sort(lo, hi);
      medians.push_back(items[lo + (hi - lo - 1) / 2]);
    }
    const T pivot = select_kth(std::move(medians), (n / 5 + (n % 5 != 0) - 1) / 2, cmp);

    std::vector<T> lower, upper, equal;
    for (const T& x : items) {
      const int c = x == pivot ? 0 : cmp(x, pivot);
      (c < 0 ? lower : c > 0 ? upper : equal).push_back(x);
    }

    if (k < lower.size()) {
      absorb(greater, equal);
      absorb(greater, upper);
      items = std::move(lower);
    } else if (k < lower.size() + equal.size()) {
      absorb(less, lower);
      absorb(greater, upper);
      return {pivot, std::move(less), std::move(equal), std::move(greater)};
    } else {
      k -= lower.size() + equal.size();
      absorb(less, lower);
      absorb(less, equal);
      items = std::move(upper);
    }
  }
}

}  // namespace certhull
