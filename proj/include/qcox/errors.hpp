#pragma once

#include <stdexcept>
#include <string>

namespace qcox {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input (bad JSON, invalid gluing, vertex index...).
struct InvalidInput : Error {
  using Error::Error;
};

// flip() was asked to flip an arc with a boundary side.
struct BoundaryArcError : Error {
  using Error::Error;
};

// flip() was asked to flip an arc whose two sides lie in the same triangle
// (the inside of a self-folded triangle).  Such arcs only flip in the tagged
// setting, which this engine does not model.
struct TaggedFlipError : Error {
  using Error::Error;
};

// coxeter_matrix() refuses quivers with arrows of multiplicity two.
struct DoubleArrowError : Error {
  using Error::Error;
};

// remove_digon() would destroy the last two triangles of a closed surface.
struct LastDigonError : Error {
  using Error::Error;
};

}  // namespace qcox
