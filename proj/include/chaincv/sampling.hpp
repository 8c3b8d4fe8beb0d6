#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chaincv/chars.hpp"
#include "chaincv/components.hpp"
#include "chaincv/mat2.hpp"

namespace chaincv {

// Deterministic random source.  The same (seed, stream) pair always yields
// the same draw sequence; distinct streams give independent sequences, so a
// per-component stream keeps sampling order-independent across components.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Uniform point of the closed complex disk of the given radius.
  Complex disk(double radius);

  // Uniform integer in [0, n).
  int index(int n);

 private:
  std::mt19937_64 engine_;
};

// Position of a component in ComponentId::all(); used as the RNG stream.
int component_ordinal(ComponentId c);

// Draws one random point of the component: random trace inputs on the disk
// of radius 3 plus random branch/root choices, rejecting draws that land on
// an excluded or degenerate locus, until an irreducible point comes out.
CharacterPoint sample_component(ComponentId c, Rng& rng,
                                const Tolerance& tol = {});

// `count` points from the stream Rng(seed, component_ordinal(c)).  Calling
// this twice with the same arguments yields bitwise-identical points.
std::vector<CharacterPoint> sample_many(ComponentId c, int count,
                                        std::uint64_t seed,
                                        const Tolerance& tol = {});

}  // namespace chaincv
