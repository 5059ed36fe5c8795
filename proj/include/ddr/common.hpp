// Shared typedefs and small helpers used across the library.

#ifndef DDR_COMMON_HPP
#define DDR_COMMON_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ddr
{

  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  using Eigen::Vector3d;
  using Eigen::Vector2d;
  using Eigen::Matrix3d;
  using Eigen::Matrix2d;

  /// Relative singular-value cutoff shared by all rank decisions
  constexpr double rank_cutoff = 1e-10;

  /// Thrown when a constructed polynomial space does not have the expected dimension
  struct DimensionMismatch : std::runtime_error
  {
    DimensionMismatch(const std::string & what) : std::runtime_error(what) {}
  };

  /// Thrown on invalid arguments to library operations
  struct InvalidArgument : std::invalid_argument
  {
    InvalidArgument(const std::string & what) : std::invalid_argument(what) {}
  };

  /// Kinds of geometric entities a polynomial block can be attached to
  enum class EntityKind { Cell, Face, Edge, Vertex };

  /// Reference to one mesh entity
  struct EntityRef
  {
    EntityKind kind;
    int index;
  };

} // namespace ddr

#endif
