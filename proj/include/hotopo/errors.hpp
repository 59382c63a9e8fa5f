#ifndef HOTOPO_ERRORS_HPP
#define HOTOPO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hotopo {

// Data/geometry errors map to CLI exit code 1, usage errors to 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct PointOutsideMesh : Error {
  explicit PointOutsideMesh(const std::string& msg) : Error(msg) {}
};

struct SingularMassMatrix : Error {
  explicit SingularMassMatrix(const std::string& msg) : Error(msg) {}
};

struct InvalidOrder : Error {
  explicit InvalidOrder(const std::string& msg) : Error(msg) {}
};

struct SingularMomentMatrix : Error {
  explicit SingularMomentMatrix(const std::string& msg) : Error(msg) {}
};

struct SupportExitsDomain : Error {
  explicit SupportExitsDomain(const std::string& msg) : Error(msg) {}
};

struct GridMismatch : Error {
  explicit GridMismatch(const std::string& msg) : Error(msg) {}
};

struct MeshMismatch : Error {
  explicit MeshMismatch(const std::string& msg) : Error(msg) {}
};

struct ConstantField : Error {
  explicit ConstantField(const std::string& msg) : Error(msg) {}
};

struct DegenerateGrid : Error {
  explicit DegenerateGrid(const std::string& msg) : Error(msg) {}
};

struct NotSimplyConnected : Error {
  explicit NotSimplyConnected(const std::string& msg) : Error(msg) {}
};

struct ConvergenceFailure : Error {
  explicit ConvergenceFailure(const std::string& msg) : Error(msg) {}
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace hotopo

#endif
