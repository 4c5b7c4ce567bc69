#pragma once

#include <stdexcept>
#include <string>

namespace polyrigid {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: neighbor ids out of range, missing rotation lists, bad JSON.
struct StructuralError : Error {
    using Error::Error;
};

// The given lengths/angles admit no realization (cosine out of range,
// chain closure failure, bigon obstruction, ...).
struct UnrealizableError : Error {
    using Error::Error;
};

// A solver was handed data within the singular guard band; the caller
// should route to the singular classification / flat-edge machinery.
struct SingularCaseError : Error {
    using Error::Error;
};

// A tuple fed to a coordinate builder does not satisfy the trigonometric
// identities within tolerance.
struct RejectedTupleError : Error {
    using Error::Error;
};

// Three vertices on a common geodesic where the algorithm needs general
// position.
struct CollinearViolationError : Error {
    using Error::Error;
};

// A face's vertices do not lie on a single totally geodesic plane.
struct FaceNotPlanarError : Error {
    using Error::Error;
};

// A local-triangulation diagonal would duplicate an existing edge.
struct DegenerateTriangulationError : Error {
    using Error::Error;
};

// A candidate vertex reduction produced a graph that is not polyhedral.
struct ReductionInvalidError : Error {
    using Error::Error;
};

// The alternating all-flat 4-valent pattern: the input violates the
// no-partially-flat-vertices hypothesis.
struct PartiallyFlatObstructionError : Error {
    using Error::Error;
};

// Degenerate geometric input (repeated vertices, zero-length edges).
struct DegenerateError : Error {
    using Error::Error;
};

// A condition that is guaranteed by proof failed at runtime; indicates a
// bug, never expected on any input.
struct InternalContradictionError : Error {
    using Error::Error;
};

}  // namespace polyrigid
