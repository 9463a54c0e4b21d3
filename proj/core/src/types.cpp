#include "minsurf/types.hpp"

namespace minsurf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::NegativeOmega: return "NegativeOmega";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::InvalidMesh: return "InvalidMesh";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

void DomainRect::validate() const {
  if (!(std::isfinite(u_min) && std::isfinite(u_max) && std::isfinite(v_min) &&
        std::isfinite(v_max))) {
    throw Error(ErrorCode::InvalidArgument, "domain bounds must be finite");
  }
  if (!(u_min < u_max)) throw Error(ErrorCode::InvalidArgument, "domain requires u_min < u_max");
  if (!(v_min < v_max)) throw Error(ErrorCode::InvalidArgument, "domain requires v_min < v_max");
}

void ParamGrid::validate() const {
  domain.validate();
  if (nu < 1 || nv < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one sample per side");
}

ParamPoint ParamGrid::at(int i, int j) const {
  return {lattice_coordinate(domain.u_min, domain.u_max, i, nu - 1),
          lattice_coordinate(domain.v_min, domain.v_max, j, nv - 1)};
}

}  // namespace minsurf
