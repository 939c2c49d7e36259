#pragma once

#include <stdexcept>
#include <string>

namespace catgeo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// input text is not the expected document shape
struct ParseError : Error {
  using Error::Error;
};

// document parsed but violates a structural rule (cycle, bad pair, ...)
struct ValidationError : Error {
  using Error::Error;
};

// point coordinates violate the embedding constraints
struct NotInComplex : Error {
  using Error::Error;
};

// point does not lie in the star of the given vertex
struct NotInStar : Error {
  using Error::Error;
};

// two points admit no shared star vertex (they are at distance >= 1)
struct NoCommonVertex : Error {
  using Error::Error;
};

// a local support is not a simplex of the link
struct IncompatibleSupport : Error {
  using Error::Error;
};

// a rounding step would need more fractional bits than the configured cap
struct PrecisionLoss : Error {
  using Error::Error;
};

struct TooManyIdeals : Error {
  using Error::Error;
};

struct TooLarge : Error {
  using Error::Error;
};

struct NotApplicable : Error {
  using Error::Error;
};

// a verified inequality of the halving-matrix lemma failed; must never fire
struct LemmaViolated : Error {
  using Error::Error;
};

} // namespace catgeo
