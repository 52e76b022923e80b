#pragma once

#include <stdexcept>
#include <string>

namespace resonator {

// Caller-misuse and computation failures get distinct types so tests and the
// CLI can map them to exit codes without string matching.
struct InvalidDims : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidGap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidCutoff : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct AsymmetricOffsets : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GapTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateGap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotSymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct SpheresOverlap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct MissingCapacitance : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PointInsideResonator : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularModeMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CountMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResidualTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TableMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace resonator
