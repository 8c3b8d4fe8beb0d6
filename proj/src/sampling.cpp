#include "chaincv/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "chaincv/errors.hpp"

namespace chaincv {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream & 0xffffffffu),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Complex Rng::disk(double radius) {
  // Draw order is part of the deterministic contract: radius first.
  const double u = uniform();
  const double v = uniform();
  const double r = radius * std::sqrt(u);
  const double angle = 2.0 * M_PI * v;
  return Complex(r * std::cos(angle), r * std::sin(angle));
}

int Rng::index(int n) {
  const int k = static_cast<int>(uniform() * n);
  return k >= n ? n - 1 : k;
}

int component_ordinal(ComponentId c) {
  const auto& ids = ComponentId::all();
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] == c) return static_cast<int>(k);
  }
  throw std::invalid_argument("component_ordinal: unknown component");
}

CharacterPoint sample_component(ComponentId c, Rng& rng,
                                const Tolerance& tol) {
  constexpr int kMaxTries = 256;
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    try {
      CharacterPoint p;
      switch (c.family) {
        case Family::X1: {
          // Named locals pin the draw order (argument evaluation order in a
          // call expression is unspecified).
          const Complex t_i = rng.disk(3.0);
          const Complex t_next = rng.disk(3.0);
          const int branch = rng.index(2);
          p = sample_x1(c.index, c.sign, t_i, t_next, branch, tol);
          break;
        }
        case Family::X2: {
          const Complex t1 = rng.disk(3.0);
          const Complex t2 = rng.disk(3.0);
          const int t3_branch = rng.index(2);
          const int eta_branch = rng.index(2);
          p = sample_x2(c.sign, t1, t2, t3_branch, eta_branch, tol);
          break;
        }
        case Family::X3: {
          const Complex t1 = rng.disk(3.0);
          const Complex t2 = rng.disk(3.0);
          const Complex t3 = rng.disk(3.0);
          const int root_index = rng.index(6);
          p = sample_x3(t1, t2, t3, root_index, tol);
          break;
        }
      }
      if (!is_irreducible(p, tol)) continue;
      return p;
    } catch (const ExcludedTrace&) {
    } catch (const DegenerateInput&) {
    } catch (const ExcludedRoot&) {
    }
  }
  throw std::runtime_error("sample_component: rejection sampling failed for " +
                           c.str());
}

std::vector<CharacterPoint> sample_many(ComponentId c, int count,
                                        std::uint64_t seed,
                                        const Tolerance& tol) {
  Rng rng(seed, static_cast<std::uint64_t>(component_ordinal(c)));
  std::vector<CharacterPoint> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    points.push_back(sample_component(c, rng, tol));
  }
  return points;
}

}  // namespace chaincv
