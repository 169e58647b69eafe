#pragma once

#include <stdexcept>
#include <string>

namespace diraclab {

// Base of every error raised by the library. Each subclass names one failure
// mode so that callers (and the CLI exit-code table) can tell them apart.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// |<xi>^2 - z^2| fell under the separation tolerance: the spectral parameter
// sits on the continuous spectrum and boundary-value machinery is required.
class OnSpectrum : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class QuadratureNotConverged : public Error {
public:
  using Error::Error;
};

class BandLimitViolated : public Error {
public:
  using Error::Error;
};

class SpectralOverlap : public Error {
public:
  using Error::Error;
};

class NotConverged : public Error {
public:
  using Error::Error;
};

class AnnulusOutOfRange : public Error {
public:
  using Error::Error;
};

class InvariantViolated : public Error {
public:
  using Error::Error;
};

class SeriesDiverging : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace diraclab
