// popcert: multiset extension of a preorder given by comparison callbacks.
#pragma once

#include <cstdint>
#include <vector>

namespace popcert {

enum class MulCmp { Strict, WeakOnly, None };

inline bool mul_strict(MulCmp c) { return c == MulCmp::Strict; }
inline bool mul_weak(MulCmp c) { return c != MulCmp::None; }

// Compares two multisets in the extension of the preorder whose strict part
// is `gt` and whose equivalence part is `eq`.  The left multiset is strictly
// greater when the right one is obtained by removing a non-empty sub-multiset
// X and adding elements each dominated by some member of X; the two are
// equivalent when an eq-bijection exists.  Callbacks are invoked lazily and
// at most once per element pair.
template <typename T, typename Gt, typename Eq>
MulCmp multiset_compare(const std::vector<T>& ls, const std::vector<T>& rs,
                        Gt&& gt, Eq&& eq) {
  const size_t nl = ls.size(), nr = rs.size();
  std::vector<int8_t> eqm(nl * nr, -1), gtm(nl * nr, -1);
  auto cached_eq = [&](size_t i, size_t j) {
    int8_t& c = eqm[i * nr + j];
    if (c < 0) c = eq(ls[i], rs[j]) ? 1 : 0;
    return c == 1;
  };
  auto cached_gt = [&](size_t i, size_t j) {
    int8_t& c = gtm[i * nr + j];
    if (c < 0) c = gt(ls[i], rs[j]) ? 1 : 0;
    return c == 1;
  };

  // state per left element: 0 unused, 1 covers one right via eq, 2 covers
  // any number of rights via gt.
  std::vector<int8_t> state(nl, 0);
  auto cover = [&](auto&& self, size_t j, bool eq_only) -> bool {
    if (j == nr) {
      if (eq_only) return true;
      for (int8_t s : state)
        if (s != 1) return true;
      return false;
    }
    for (size_t i = 0; i < nl; ++i) {
      if (state[i] == 0 && cached_eq(i, j)) {
        state[i] = 1;
        if (self(self, j + 1, eq_only)) return true;
        state[i] = 0;
      }
      if (!eq_only && state[i] != 1 && cached_gt(i, j)) {
        int8_t old = state[i];
        state[i] = 2;
        if (self(self, j + 1, eq_only)) return true;
        state[i] = old;
      }
    }
    return false;
  };

  if (cover(cover, 0, false)) return MulCmp::Strict;
  std::fill(state.begin(), state.end(), 0);
  if (nl == nr && cover(cover, 0, true)) return MulCmp::WeakOnly;
  return MulCmp::None;
}

}  // namespace popcert
