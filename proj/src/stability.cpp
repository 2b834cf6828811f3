#include "moloconv/stability.hpp"

#include <limits>

#include "moloconv/model.hpp"
#include "moloconv/parallel.hpp"

namespace moloconv {

StabilityMap stability_map(const SystemParams& base, const AxisSpec& x, const AxisSpec& y, unsigned workers) {
  validate(base);
  StabilityMap map;
  map.x_axis = x;
  map.y_axis = y;
  map.x_grid = x.grid();
  map.y_grid = y.grid();
  const auto nx = static_cast<Eigen::Index>(map.x_grid.size());
  const auto ny = static_cast<Eigen::Index>(map.y_grid.size());
  map.verdicts.setConstant(nx, ny, false);
  map.failed.setConstant(nx, ny, false);
  map.margins.setConstant(nx, ny, std::numeric_limits<double>::quiet_NaN());

  parallel_for(
      static_cast<std::size_t>(nx * ny),
      [&](std::size_t k) {
        const auto ix = static_cast<Eigen::Index>(k) / ny;
        const auto iy = static_cast<Eigen::Index>(k) % ny;
        const SystemParams point =
            apply_axis(apply_axis(base, x.param, map.x_grid[ix]), y.param, map.y_grid[iy]);
        try {
          const auto verdict = classify(full_system(point));
          map.verdicts(ix, iy) = verdict.stable;
          map.margins(ix, iy) = verdict.margin;
        } catch (const PhysicsError&) {
          map.failed(ix, iy) = true;
        }
      },
      workers);
  return map;
}

}  // namespace moloconv
