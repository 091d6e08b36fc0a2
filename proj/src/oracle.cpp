#include "certhull/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace certhull {

namespace {

void require_general_position(std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("oracle: empty point set");
  if (auto v = validate_general_position(pts)) throw GeneralPositionError(*v);
}

void require_size(std::span<const Point> pts, std::size_t cap, const char* what) {
  if (pts.size() > cap)
    throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(pts.size()) +
                                " exceeds the enumeration cap " + std::to_string(cap));
}

// contains[((a * n + b) * n + c) * n + p]: triangle (a, b, c) strictly contains p
class ContainmentTable {
 public:
  explicit ContainmentTable(std::span<const Point> pts) : n_(pts.size()), bits_(n_ * n_ * n_ * n_, 0) {
    DecisionCounter ctr;
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t c = 0; c < n_; ++c) {
          if (a == b || b == c || a == c) continue;
          for (std::size_t p = 0; p < n_; ++p) {
            if (p == a || p == b || p == c) continue;
            bits_[((a * n_ + b) * n_ + c) * n_ + p] =
                in_triangle_strict(pts[p], pts[a], pts[b], pts[c], ctr);
          }
        }
  }

  bool operator()(Index a, Index b, Index c, Index p) const {
    return bits_[((static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)) * n_ +
                  static_cast<std::size_t>(c)) * n_ + static_cast<std::size_t>(p)] != 0;
  }

 private:
  std::size_t n_;
  std::vector<char> bits_;
};

std::vector<char> hull_membership(std::span<const Point> pts) {
  std::vector<char> on(pts.size(), 0);
  for (Index h : hull_indices_bruteforce(pts)) on[h] = 1;
  return on;
}

// Ascending position triples of 0..n-1 avoiding `skip`.
std::vector<Triple> position_triples(Index n, Index skip) {
  std::vector<Triple> out;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      for (Index c = b + 1; c < n; ++c)
        if (a != skip && b != skip && c != skip) out.push_back({a, b, c});
  return out;
}

using Bitset = std::vector<std::uint64_t>;

std::size_t popcount(const Bitset& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

}  // namespace

WitnessKey WitnessKey::from_list(std::span<const Triple> w) {
  WitnessKey key;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto idx = static_cast<Index>(i);
    if (w[i] == kSentinel) {
      key.hull_positions.push_back(idx);
    } else {
      Triple t = w[i];
      std::sort(t.begin(), t.end());
      key.triples.emplace(idx, t);
    }
  }
  return key;
}

std::vector<Triple> WitnessKey::to_list(std::size_t n) const {
  std::vector<Triple> w(n, kSentinel);
  for (const auto& [pos, t] : triples) w.at(static_cast<std::size_t>(pos)) = t;
  return w;
}

void for_each_permutation(std::size_t n, const std::function<void(const Permutation&)>& f) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

std::vector<Index> hull_indices_bruteforce(std::span<const Point> pts) {
  require_general_position(pts);
  const auto n = static_cast<Index>(pts.size());
  Index start = 0;
  for (Index i = 1; i < n; ++i)
    if (pts[i] < pts[start]) start = i;
  if (n == 1) return {start};

  DecisionCounter ctr;
  std::vector<Index> hull;
  Index cur = start;
  do {
    hull.push_back(cur);
    Index next = cur == 0 ? 1 : 0;
    for (Index p = 0; p < n; ++p) {
      if (p == cur || p == next) continue;
      if (orient(pts[cur], pts[next], pts[p], ctr) < 0) next = p;
    }
    cur = next;
  } while (cur != start && hull.size() <= pts.size());
  return hull;
}

std::vector<Point> hull_bruteforce(std::span<const Point> pts) {
  std::vector<Point> out;
  for (Index i : hull_indices_bruteforce(pts)) out.push_back(pts[i]);
  return out;
}

std::vector<Triple> witnesses_all(std::span<const Point> pts, Index p) {
  const auto n = static_cast<Index>(pts.size());
  if (p < 0 || p >= n) throw std::out_of_range("witnesses_all: index out of range");
  DecisionCounter ctr;
  std::vector<Triple> out;
  for (const Triple& t : position_triples(n, p))
    if (in_triangle_strict(pts[p], pts[t[0]], pts[t[1]], pts[t[2]], ctr)) out.push_back(t);
  return out;
}

std::uint64_t count_V(std::span<const Point> pts, const WitnessKey& w) {
  require_size(pts, kCountVMaxN, "count_V");
  require_general_position(pts);
  const std::size_t n = pts.size();
  const auto on_hull = hull_membership(pts);
  const ContainmentTable contains(pts);

  std::vector<char> sentinel_at(n, 0);
  for (Index h : w.hull_positions) sentinel_at.at(static_cast<std::size_t>(h)) = 1;
  std::vector<const Triple*> triple_at(n, nullptr);
  for (const auto& [pos, t] : w.triples) {
    for (Index v : t)
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw std::invalid_argument("count_V: triple entry out of range");
    triple_at.at(static_cast<std::size_t>(pos)) = &t;
  }

  std::uint64_t count = 0;
  for_each_permutation(n, [&](const Permutation& perm) {
    for (std::size_t i = 0; i < n; ++i) {
      const Index pt = perm[i];
      if (on_hull[pt]) {
        if (!sentinel_at[i]) return;
        continue;
      }
      const Triple* t = triple_at[i];
      if (sentinel_at[i] || t == nullptr) return;
      const Triple& tr = *t;
      if (tr[0] == static_cast<Index>(i) || tr[1] == static_cast<Index>(i) ||
          tr[2] == static_cast<Index>(i) || tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2])
        return;
      if (!contains(perm[tr[0]], perm[tr[1]], perm[tr[2]], pt)) return;
    }
    ++count;
  });
  return count;
}

VMaxResult v_max(std::span<const Point> pts) {
  require_size(pts, kVMaxMaxN, "v_max");
  require_general_position(pts);
  const std::size_t n = pts.size();
  const auto on_hull = hull_membership(pts);
  const ContainmentTable contains(pts);

  std::vector<Index> hull_pts, inner_pts;
  for (std::size_t i = 0; i < n; ++i) (on_hull[i] ? hull_pts : inner_pts).push_back(static_cast<Index>(i));
  const std::size_t k = hull_pts.size();

  // arrays with the hull points in the first k positions
  std::vector<Permutation> arrays;
  std::sort(hull_pts.begin(), hull_pts.end());
  do {
    std::sort(inner_pts.begin(), inner_pts.end());
    do {
      Permutation a(hull_pts);
      a.insert(a.end(), inner_pts.begin(), inner_pts.end());
      arrays.push_back(std::move(a));
    } while (std::next_permutation(inner_pts.begin(), inner_pts.end()));
  } while (std::next_permutation(hull_pts.begin(), hull_pts.end()));

  const std::size_t words = (arrays.size() + 63) / 64;
  Bitset all(words, 0);
  for (std::size_t m = 0; m < arrays.size(); ++m) all[m / 64] |= std::uint64_t{1} << (m % 64);

  struct Option {
    Triple t;
    Bitset bits;
  };
  std::vector<std::vector<Option>> options;  // per internal position k..n-1
  for (std::size_t i = k; i < n; ++i) {
    std::vector<Option> opts;
    for (const Triple& t : position_triples(static_cast<Index>(n), static_cast<Index>(i))) {
      Bitset bits(words, 0);
      bool any = false;
      for (std::size_t m = 0; m < arrays.size(); ++m) {
        const auto& a = arrays[m];
        if (contains(a[t[0]], a[t[1]], a[t[2]], a[i])) {
          bits[m / 64] |= std::uint64_t{1} << (m % 64);
          any = true;
        }
      }
      if (any) opts.push_back({t, std::move(bits)});
    }
    options.push_back(std::move(opts));
  }

  VMaxResult best;
  for (std::size_t h = 0; h < k; ++h) best.key.hull_positions.push_back(static_cast<Index>(h));
  if (k == n) {
    best.count = arrays.size();
    return best;
  }

  std::vector<Triple> chosen(n - k);
  std::function<void(std::size_t, const Bitset&)> dfs = [&](std::size_t depth, const Bitset& cur) {
    if (depth == options.size()) {
      const std::size_t c = popcount(cur);
      if (c > best.count) {
        best.count = c;
        best.key.triples.clear();
        for (std::size_t d = 0; d < chosen.size(); ++d)
          best.key.triples.emplace(static_cast<Index>(k + d), chosen[d]);
      }
      return;
    }
    Bitset next(words);
    for (const Option& opt : options[depth]) {
      for (std::size_t w = 0; w < words; ++w) next[w] = cur[w] & opt.bits[w];
      if (popcount(next) <= best.count) continue;
      chosen[depth] = opt.t;
      dfs(depth + 1, next);
    }
  };
  dfs(0, all);
  return best;
}

std::map<WitnessKey, std::vector<Permutation>> consistent_witness_lists(std::span<const Point> pts) {
  require_size(pts, kWitnessListEnumMaxN, "consistent_witness_lists");
  require_general_position(pts);
  const std::size_t n = pts.size();
  const auto on_hull = hull_membership(pts);
  const ContainmentTable contains(pts);

  std::vector<std::vector<Triple>> all_triples(n);
  for (std::size_t i = 0; i < n; ++i) all_triples[i] = position_triples(static_cast<Index>(n), static_cast<Index>(i));

  std::map<WitnessKey, std::vector<Permutation>> out;
  for_each_permutation(n, [&](const Permutation& perm) {
    WitnessKey base;
    std::vector<Index> inner_positions;
    std::vector<std::vector<Triple>> choices;
    for (std::size_t i = 0; i < n; ++i) {
      if (on_hull[perm[i]]) {
        base.hull_positions.push_back(static_cast<Index>(i));
        continue;
      }
      std::vector<Triple> valid;
      for (const Triple& t : all_triples[i])
        if (contains(perm[t[0]], perm[t[1]], perm[t[2]], perm[i])) valid.push_back(t);
      inner_positions.push_back(static_cast<Index>(i));
      choices.push_back(std::move(valid));
    }
    for (const auto& c : choices)
      if (c.empty()) throw std::logic_error("consistent_witness_lists: internal point without a witness");
    // odometer over the product of per-position choices
    std::vector<std::size_t> digit(choices.size(), 0);
    while (true) {
      WitnessKey key = base;
      for (std::size_t d = 0; d < choices.size(); ++d)
        key.triples.emplace(inner_positions[d], choices[d][digit[d]]);
      out[std::move(key)].push_back(perm);
      std::size_t d = 0;
      while (d < digit.size() && ++digit[d] == choices[d].size()) digit[d++] = 0;
      if (d == digit.size()) break;
    }
  });
  return out;
}

BigInt count_hull_lists(std::span<const Point> pts) {
  const auto k = hull_indices_bruteforce(pts).size();
  return falling_factorial(static_cast<unsigned>(pts.size()), static_cast<unsigned>(k));
}

std::vector<Index> canonical_hull_list(std::span<const Point> pts, const Permutation& perm) {
  if (perm.size() != pts.size()) throw std::invalid_argument("canonical_hull_list: size mismatch");
  std::vector<Index> position_of(pts.size(), -1);
  for (std::size_t i = 0; i < perm.size(); ++i) position_of.at(static_cast<std::size_t>(perm[i])) = static_cast<Index>(i);
  std::vector<Index> out;
  for (Index h : hull_indices_bruteforce(pts)) out.push_back(position_of[h]);
  return out;
}

}  // namespace certhull
