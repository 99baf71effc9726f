#include "forge/kernels.hpp"

#include "bucket.hpp"

#include <omp.h>

namespace forge::kernels {

std::uint64_t count_incidences(const Field& f, const RawPoints& pts, std::span<const RawLine> lines) {
  const detail::LogPoints P = detail::log_points(f, pts);
  const detail::Buckets bk = detail::make_buckets(lines);
  const detail::Tables t(f);
  const auto nb = static_cast<std::int64_t>(bk.list.size());
  std::uint64_t total = 0;
#pragma omp parallel reduction(+ : total)
  {
    std::vector<std::int32_t> slot(f.q(), -1);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < nb; ++i) {
      detail::probe_bucket(f, t, P, lines, bk, bk.list[i], slot, [&](std::size_t, std::size_t) { ++total; });
    }
  }
  return total;
}

IncidenceProfile incidence_profile(const Field& f, const RawPoints& pts, std::span<const RawLine> lines,
                                   bool point_degrees) {
  const detail::LogPoints P = detail::log_points(f, pts);
  const detail::Buckets bk = detail::make_buckets(lines);
  const detail::Tables t(f);
  IncidenceProfile out;
  out.line_load.assign(lines.size(), 0);
  if (point_degrees) out.point_degree.assign(pts.size(), 0);
  std::uint32_t* load = out.line_load.data();
  std::uint32_t* deg = point_degrees ? out.point_degree.data() : nullptr;
  const auto nb = static_cast<std::int64_t>(bk.list.size());
#pragma omp parallel
  {
    std::vector<std::int32_t> slot(f.q(), -1);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < nb; ++i) {
      // a line belongs to exactly one bucket, so load needs no atomics
      detail::probe_bucket(f, t, P, lines, bk, bk.list[i], slot, [&](std::size_t pi, std::size_t li) {
        ++load[li];
        if (deg != nullptr) {
#pragma omp atomic
          ++deg[pi];
        }
      });
    }
  }
  for (auto v : out.line_load) out.total += v;
  return out;
}

std::size_t count_directions(std::span<const RawLine> lines) { return detail::make_buckets(lines).list.size(); }

}  // namespace forge::kernels
