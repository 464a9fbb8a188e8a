#ifndef LPLAB_RNG_HPP
#define LPLAB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace lplab {

// splitmix64 stream; output is platform-independent, which keeps every
// seeded experiment byte-reproducible across builds.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // substream for (seed, index) so parallel trials stay schedule-independent
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) { // inclusive range
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double angle() { return 2.0 * 3.14159265358979323846 * uniform(); }
    double normal() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }
    int sign() { return (next() & 1) ? 1 : -1; }

  private:
    std::uint64_t state_;
};

} // namespace lplab

#endif
