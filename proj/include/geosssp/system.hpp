/*******************************************************************************
 * Neighborhood systems: collections of balls or iso-oriented cubes with a
 * declared ply (k for balls, kappa for cubes).
 *
 * @file:   system.hpp
 ******************************************************************************/
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "geosssp/geom.hpp"

namespace geosssp {

enum class SystemKind { ball, cube };

struct NeighborhoodSystem {
  SystemKind kind = SystemKind::ball;
  std::size_t dim = 2;
  std::vector<Ball> balls; // used when kind == ball
  std::vector<Cube> cubes; // used when kind == cube
  std::uint32_t declared_ply = 1;

  [[nodiscard]] std::size_t size() const {
    return kind == SystemKind::ball ? balls.size() : cubes.size();
  }

  /// Center of object i (ball center or cube center).
  [[nodiscard]] Point center(std::size_t i) const {
    return kind == SystemKind::ball ? balls[i].center : cubes[i].center();
  }

  /// Subsystem made of the objects at `ids` (repeats allowed), in order.
  [[nodiscard]] NeighborhoodSystem select(const std::vector<std::uint32_t> &ids) const {
    NeighborhoodSystem out;
    out.kind = kind;
    out.dim = dim;
    out.declared_ply = declared_ply;
    for (const std::uint32_t i : ids) {
      if (kind == SystemKind::ball) {
        out.balls.push_back(balls[i]);
      } else {
        out.cubes.push_back(cubes[i]);
      }
    }
    return out;
  }

  bool operator==(const NeighborhoodSystem &o) const {
    if (kind != o.kind || dim != o.dim || declared_ply != o.declared_ply || size() != o.size()) {
      return false;
    }
    for (std::size_t i = 0; i < size(); ++i) {
      if (kind == SystemKind::ball) {
        if (!(balls[i].center == o.balls[i].center) || balls[i].radius != o.balls[i].radius) {
          return false;
        }
      } else if (!(cubes[i].corner == o.cubes[i].corner) || cubes[i].side != o.cubes[i].side) {
        return false;
      }
    }
    return true;
  }
};

} // namespace geosssp
