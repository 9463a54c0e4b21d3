#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <stdexcept>
#include <string>

namespace minsurf {

using Vec3 = Eigen::Vector3d;

/// Ambient position of a surface sample (X, Y, Z).
using SurfacePoint = Vec3;

enum class ErrorCode {
  InvalidArgument,
  DegreeTooLow,
  NegativeOmega,
  ClassMismatch,
  InvalidMesh,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point (u, v) in the parameter plane. Both coordinates must be finite.
struct ParamPoint {
  double u = 0.0;
  double v = 0.0;

  bool finite() const { return std::isfinite(u) && std::isfinite(v); }

  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

inline double distance(ParamPoint a, ParamPoint b) {
  return std::hypot(a.u - b.u, a.v - b.v);
}

/// Axis-aligned rectangle [u_min, u_max] x [v_min, v_max] of the parameter plane.
struct DomainRect {
  double u_min = -1.0;
  double u_max = 1.0;
  double v_min = -1.0;
  double v_max = 1.0;

  /// Throws Error(InvalidArgument) unless u_min < u_max and v_min < v_max.
  void validate() const;

  double width() const { return u_max - u_min; }
  double height() const { return v_max - v_min; }
  bool contains(ParamPoint p) const {
    return p.u >= u_min && p.u <= u_max && p.v >= v_min && p.v <= v_max;
  }

  static DomainRect square(double half_width) {
    return {-half_width, half_width, -half_width, half_width};
  }
};

/// Regular sampling lattice over a DomainRect: nu x nv samples per side,
/// endpoints included. Interior nodes are formed as a convex combination of
/// the endpoints, so a symmetric domain with an odd sample count hits 0 exactly.
struct ParamGrid {
  DomainRect domain;
  int nu = 41;
  int nv = 41;

  void validate() const;

  std::size_t size() const {
    return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv);
  }

  ParamPoint at(int i, int j) const;

  static ParamGrid square(double half_width, int samples) {
    return {DomainRect::square(half_width), samples, samples};
  }
};

/// Node i of n equal intervals on [lo, hi]; exact at i = 0, i = n, and the midpoint
/// of a symmetric range.
inline double lattice_coordinate(double lo, double hi, int i, int n) {
  if (n == 0) return lo;
  const double a = static_cast<double>(n - i);
  const double b = static_cast<double>(i);
  return (a * lo + b * hi) / static_cast<double>(n);
}

}  // namespace minsurf
