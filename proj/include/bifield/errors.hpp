#pragma once

#include <stdexcept>

namespace bifield {

/// A singular Fourier weight was evaluated at a zero mode.
class DegenerateModeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two objects built on different grids were combined.
class GridMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A basis is singular or too ill-conditioned to dualise.
class SingularBasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Hamiltonian with (near-)degenerate spectrum where distinct eigenvalues are required.
class DegenerateSpectrumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operator term carries no weight tag, so its bio-conjugate cannot be formed.
class BioConjugateUndefined : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A state or operator was evolved with the Hamiltonian of the wrong space.
class SideMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The two pictures cannot agree for this state/operator pair.
class InvalidExpectationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NormalizationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace bifield
