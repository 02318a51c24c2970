#pragma once

#include <stdexcept>
#include <string>

namespace tetrainterp {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Polynomials and rational functions.
struct ZeroPolynomial : Error { using Error::Error; };
struct DegreeExceedsN : Error { using Error::Error; };

// Interpolation data and the Pick matrix.
struct InvalidData : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct TauSearchExhausted : Error { using Error::Error; };
struct ExceptionalParameter : Error { using Error::Error; };

// Tetrablock geometry.
struct PolePoint : Error { using Error::Error; };
struct RoyalPoint : Error { using Error::Error; };
struct NotInClosure : Error { using Error::Error; };
struct DegenerateOmega : Error { using Error::Error; };
struct NotUnimodularAt : Error { using Error::Error; };
struct ZeroAt : Error { using Error::Error; };

// Center search and assembly.
struct NotSolvable : Error { using Error::Error; };
struct ExceptionalGeometry : Error { using Error::Error; };
struct DenominatorVanishes : Error { using Error::Error; };

// Royal polynomial and nodes.
struct RepresentationMismatch : Error { using Error::Error; };
struct RoyalVariety : Error { using Error::Error; };
struct NumericalDegeneracy : Error { using Error::Error; };

}  // namespace tetrainterp
