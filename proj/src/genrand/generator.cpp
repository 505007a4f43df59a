#include "lns/genrand.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lns/errors.hpp"

namespace lns {

namespace {

void fail(const std::string& what) { throw FusionError(ErrorKind::parameter, what); }

bool has_singleton(const std::vector<Subset>& pool) {
  return std::any_of(pool.begin(), pool.end(), [](Subset s) { return cardinality(s) == 1; });
}

std::vector<Subset> default_pool(const GenSpec& spec) {
  if (!spec.focal_pool.empty()) return spec.focal_pool;
  std::vector<Subset> pool;
  const Subset last = spec.kind == GenKind::ssf ? spec.frame.full() - 1 : spec.frame.full();
  for (Subset s = 1; s <= last; ++s) pool.push_back(s);
  return pool;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream))) {}

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

double Rng::exponential() { return -std::log1p(-uniform()); }

double Rng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::general: return "general";
    case GenKind::ssf: return "ssf";
    case GenKind::consonant: return "consonant";
  }
  return "?";
}

GenKind parse_gen_kind(std::string_view name) {
  for (GenKind k : {GenKind::general, GenKind::ssf, GenKind::consonant})
    if (to_string(k) == name) return k;
  fail("unknown generator kind '" + std::string(name) + "'");
  return GenKind::general;
}

void GenSpec::validate() const {
  if (min_singleton_mass && !(*min_singleton_mass >= 0.0 && *min_singleton_mass < 1.0))
    fail("min_singleton_mass must lie in [0, 1)");
  for (Subset s : focal_pool)
    if (!frame.contains(s)) fail("focal pool entry " + std::to_string(s) + " is outside the frame");
  switch (kind) {
    case GenKind::general:
    case GenKind::ssf: {
      const auto pool = default_pool(*this);
      if (pool.empty()) fail("focal pool is empty");
      if (kind == GenKind::general && num_focals > pool.size())
        fail("num_focals exceeds the focal pool size");
      if (min_singleton_mass && !has_singleton(pool))
        fail("singleton-mass filter needs a singleton in the focal pool");
      break;
    }
    case GenKind::consonant:
      if (num_focals < 1 || num_focals > static_cast<std::size_t>(frame.size()))
        fail("consonant chains need 1 <= num_focals <= " + std::to_string(frame.size()));
      break;
  }
}

Generator::Generator(GenSpec spec, std::uint64_t stream)
    : spec_(std::move(spec)), rng_(spec_.seed, stream) {
  spec_.validate();
  if (spec_.kind != GenKind::consonant) pool_ = default_pool(spec_);
}

bool Generator::accepted(const MassFunction& m) const {
  if (!spec_.min_singleton_mass) return true;
  for (int i = 0; i < spec_.frame.size(); ++i)
    if (m[Subset{1} << i] > *spec_.min_singleton_mass) return true;
  return false;
}

MassFunction Generator::next() {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    MassFunction m = spec_.kind == GenKind::general     ? draw_general()
                     : spec_.kind == GenKind::consonant ? draw_consonant()
                                                        : draw_support().to_mass();
    if (accepted(m)) return m;
  }
  fail("no bba passed the singleton-mass filter in " + std::to_string(kMaxRejections) + " draws");
  return MassFunction::vacuous(spec_.frame);
}

SimpleSupport Generator::next_support() {
  if (spec_.kind != GenKind::ssf) fail("next_support needs an ssf spec");
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    SimpleSupport s = draw_support();
    if (!spec_.min_singleton_mass ||
        (cardinality(s.focal()) == 1 && 1.0 - s.weight() > *spec_.min_singleton_mass))
      return s;
  }
  fail("no support passed the singleton-mass filter in " + std::to_string(kMaxRejections) + " draws");
  return {spec_.frame, spec_.frame.full(), 1.0};
}

SimpleSupport Generator::draw_support() {
  const Subset focal = pool_[rng_.below(pool_.size())];
  return {spec_.frame, focal, rng_.uniform()};
}

MassFunction Generator::draw_general() {
  const std::size_t k = spec_.num_focals != 0 ? spec_.num_focals : 1 + rng_.below(pool_.size());
  // Partial Fisher-Yates in place: the first k pool entries become the draw.
  std::vector<std::pair<Subset, double>> focal(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool_[i], pool_[i + rng_.below(pool_.size() - i)]);
    focal[i] = {pool_[i], rng_.exponential()};
    total += focal[i].second;
  }
  for (auto& f : focal) f.second /= total;
  return MassFunction::from_focal(spec_.frame, focal);
}

MassFunction Generator::draw_consonant() {
  const auto n = static_cast<std::size_t>(spec_.frame.size());
  std::vector<std::size_t> order(n), sizes(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
    sizes[i] = i + 1;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) std::swap(order[i], order[i + rng_.below(n - i)]);
  for (std::size_t i = 0; i < spec_.num_focals; ++i) std::swap(sizes[i], sizes[i + rng_.below(n - i)]);
  sizes.resize(spec_.num_focals);
  std::sort(sizes.begin(), sizes.end());
  if (sizes.back() != n) sizes.push_back(n);

  std::vector<std::pair<Subset, double>> focal;
  Subset chain = 0;
  std::size_t taken = 0;
  double total = 0.0;
  for (std::size_t size : sizes) {
    for (; taken < size; ++taken) chain |= Subset{1} << order[taken];
    focal.emplace_back(chain, rng_.exponential());
    total += focal.back().second;
  }
  for (auto& f : focal) f.second /= total;
  return MassFunction::from_focal(spec_.frame, focal);
}

std::vector<MassFunction> generate(const GenSpec& spec, std::size_t count) {
  if (count < 1) fail("count must be at least 1");
  Generator gen(spec);
  std::vector<MassFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.next());
  return out;
}

std::vector<SimpleSupport> generate_supports(const GenSpec& spec, std::size_t count) {
  if (count < 1) fail("count must be at least 1");
  Generator gen(spec);
  std::vector<SimpleSupport> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.next_support());
  return out;
}

}  // namespace lns
