#pragma once

#include <stdexcept>
#include <string>

namespace chaincv {

// Matrix operation required det = 1 and the input is not unimodular.
struct NonUnimodular : std::runtime_error {
  explicit NonUnimodular(const std::string& msg) : std::runtime_error(msg) {}
};

// The three pairwise commutator-trace values of a character tuple disagree.
struct EtaInconsistent : std::runtime_error {
  explicit EtaInconsistent(const std::string& msg) : std::runtime_error(msg) {}
};

// A trace parameter hit an excluded value for the requested component family.
struct ExcludedTrace : std::runtime_error {
  explicit ExcludedTrace(const std::string& msg) : std::runtime_error(msg) {}
};

// Sampler input leads to a vanishing denominator or a reducible character.
struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& msg) : std::runtime_error(msg) {}
};

// The selected sextic root violates one of the exclusion margins.
struct ExcludedRoot : std::runtime_error {
  explicit ExcludedRoot(const std::string& msg) : std::runtime_error(msg) {}
};

// Trace data admits no irreducible pair (commutator trace equals 2).
struct ReduciblePair : std::runtime_error {
  explicit ReduciblePair(const std::string& msg) : std::runtime_error(msg) {}
};

// A reconstructed matrix failed the unimodularity gate.
struct NonUnimodularResult : std::runtime_error {
  explicit NonUnimodularResult(const std::string& msg) : std::runtime_error(msg) {}
};

// Supplied matrices do not satisfy the group relators.
struct NotARepresentation : std::runtime_error {
  explicit NotARepresentation(const std::string& msg) : std::runtime_error(msg) {}
};

// A singular value sits too close to the rank threshold to decide.
struct RankAmbiguous : std::runtime_error {
  explicit RankAmbiguous(const std::string& msg) : std::runtime_error(msg) {}
};

// Determinant requested for a matrix size outside the supported set.
struct UnsupportedSize : std::runtime_error {
  explicit UnsupportedSize(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace chaincv
