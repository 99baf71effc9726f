#pragma once

// Shared pieces of the direction-bucketed incidence traversal.

#include "forge/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace forge::kernels::detail {

constexpr std::uint32_t kNoLog = 0xffffffffU;

struct LogPoints {
  std::vector<std::uint32_t> x, y, lx, ly;
};

inline LogPoints log_points(const Field& f, const RawPoints& pts) {
  LogPoints out;
  out.x = pts.x;
  out.y = pts.y;
  out.lx.resize(pts.size());
  out.ly.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.lx[i] = pts.x[i] == 0 ? kNoLog : f.log(pts.x[i]);
    out.ly[i] = pts.y[i] == 0 ? kNoLog : f.log(pts.y[i]);
  }
  return out;
}

struct Bucket {
  std::uint32_t a, b;
  std::size_t begin, end;  // range in Buckets::order
};

struct Buckets {
  std::vector<std::size_t> order;  // line indices grouped by direction
  std::vector<Bucket> list;
};

inline Buckets make_buckets(std::span<const RawLine> lines) {
  Buckets out;
  out.order.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].a == 0 && lines[i].b == 0) continue;  // line at infinity
    out.order.push_back(i);
  }
  std::sort(out.order.begin(), out.order.end(), [&](std::size_t i, std::size_t j) {
    if (lines[i].a != lines[j].a) return lines[i].a < lines[j].a;
    if (lines[i].b != lines[j].b) return lines[i].b < lines[j].b;
    return i < j;
  });
  for (std::size_t s = 0; s < out.order.size();) {
    std::size_t e = s;
    const RawLine& l = lines[out.order[s]];
    while (e < out.order.size() && lines[out.order[e]].a == l.a && lines[out.order[e]].b == l.b) ++e;
    out.list.push_back({l.a, l.b, s, e});
    s = e;
  }
  return out;
}

/// Field tables in the form the inner loop wants: exp doubled so that sums
/// of two logs need no reduction.
struct Tables {
  std::vector<std::uint32_t> exp2;
  const std::uint32_t* zech;
  std::uint32_t n;

  explicit Tables(const Field& f) : zech(f.zech_table().data()), n(f.group_order()) {
    auto e = f.exp_table();
    exp2.resize(2 * static_cast<std::size_t>(n));
    for (std::uint32_t i = 0; i < n; ++i) exp2[i] = exp2[i + n] = e[i];
  }
};

/// Calls hit(point_index, line_index) for each incidence in one bucket.
/// slot is scratch of size q filled with -1 on entry and on exit.
template <class Hit>
void probe_bucket(const Field& f, const Tables& t, const LogPoints& P, std::span<const RawLine> lines,
                  const Buckets& bk, const Bucket& b, std::vector<std::int32_t>& slot, Hit&& hit) {
  const std::size_t m = b.end - b.begin;
  // target value -c for each line of the bucket
  constexpr std::size_t kSmall = 4;
  std::uint32_t tv[kSmall];
  std::size_t ti[kSmall];
  const bool small = m <= kSmall;
  for (std::size_t r = b.begin; r < b.end; ++r) {
    std::size_t li = bk.order[r];
    std::uint32_t target = f.neg(lines[li].c);
    if (small) {
      tv[r - b.begin] = target;
      ti[r - b.begin] = li;
    } else {
      slot[target] = static_cast<std::int32_t>(li);
    }
  }
  auto check = [&](std::size_t pi, std::uint32_t value) {
    if (small) {
      for (std::size_t j = 0; j < m; ++j)
        if (tv[j] == value) hit(pi, ti[j]);
    } else if (std::int32_t li = slot[value]; li >= 0) {
      hit(pi, static_cast<std::size_t>(li));
    }
  };
  const std::size_t np = P.x.size();
  if (b.a == 0) {
    // horizontal: y = -c
    for (std::size_t i = 0; i < np; ++i) check(i, P.y[i]);
  } else if (b.b == 0) {
    for (std::size_t i = 0; i < np; ++i) check(i, P.x[i]);
  } else {
    // value = x + b y, via logs and the Zech table
    const std::uint32_t lb = f.log(b.b);
    const std::uint32_t n = t.n;
    const std::uint32_t* exp2 = t.exp2.data();
    const std::uint32_t* zech = t.zech;
    for (std::size_t i = 0; i < np; ++i) {
      std::uint32_t value;
      const std::uint32_t ly = P.ly[i];
      const std::uint32_t lx = P.lx[i];
      if (ly == kNoLog) {
        value = P.x[i];
      } else {
        std::uint32_t lu = lb + ly;  // < 2n
        if (lx == kNoLog) {
          value = exp2[lu];
        } else {
          std::uint32_t d = lu + n - lx;  // in (0, 3n)
          if (d >= n) d -= n;
          if (d >= n) d -= n;
          std::uint32_t z = zech[d];
          value = z == Field::kZechZero ? 0 : exp2[lx + z];
        }
      }
      check(i, value);
    }
  }
  if (!small) {
    for (std::size_t r = b.begin; r < b.end; ++r) slot[f.neg(lines[bk.order[r]].c)] = -1;
  }
}

}  // namespace forge::kernels::detail
