#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "lns/mass.hpp"

namespace lns {

/// Seeded 64-bit Mersenne Twister with portable floating-point draws. The
/// standard distributions are implementation-defined, so none are used.
class Rng {
 public:
  /// Independent streams for the same seed are derived with splitmix64.
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Unbiased integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Unit-rate exponential.
  double exponential();
  /// Standard normal (Box-Muller, one draw per call).
  double normal();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

enum class GenKind { general, ssf, consonant };

std::string_view to_string(GenKind kind);
GenKind parse_gen_kind(std::string_view name);

struct GenSpec {
  Frame frame = Frame::with_size(2);
  GenKind kind = GenKind::general;
  /// Candidate focal sets. Empty means every non-empty subset for `general`
  /// and every non-empty proper subset for `ssf`. Unused by `consonant`.
  std::vector<Subset> focal_pool;
  /// `general`: focal sets per bba (0 draws a count uniformly). `consonant`:
  /// length of the nested chain before Θ is appended.
  std::size_t num_focals = 0;
  /// Keep only bbas with some singleton mass strictly above this value.
  std::optional<double> min_singleton_mass;
  std::uint64_t seed = 0;

  /// Throws a parameter error for specs that cannot produce a bba.
  void validate() const;
};

/// Stateful producer for one spec and stream; yields the same sequence for
/// the same (spec, stream) on every platform.
class Generator {
 public:
  explicit Generator(GenSpec spec, std::uint64_t stream = 0);

  MassFunction next();
  /// Draw for `ssf` specs without building the dense vector.
  SimpleSupport next_support();

 private:
  MassFunction draw_general();
  MassFunction draw_consonant();
  SimpleSupport draw_support();
  bool accepted(const MassFunction& m) const;

  GenSpec spec_;
  std::vector<Subset> pool_;
  Rng rng_;
};

inline constexpr int kMaxRejections = 100'000;

std::vector<MassFunction> generate(const GenSpec& spec, std::size_t count);
std::vector<SimpleSupport> generate_supports(const GenSpec& spec, std::size_t count);

}  // namespace lns
