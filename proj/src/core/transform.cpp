#include "lns/transform.hpp"

#include <cmath>
#include <string>

#include "lns/errors.hpp"

namespace lns {

namespace fmt {

namespace {

void require_power_of_two(std::span<const double> v) {
  if (v.empty() || !std::has_single_bit(v.size()))
    throw FusionError(ErrorKind::encoding,
                      "vector length " + std::to_string(v.size()) + " is not a power of two");
}

}  // namespace

void superset_sum(std::span<double> v) {
  require_power_of_two(v);
  for (std::size_t bit = 1; bit < v.size(); bit <<= 1)
    for (std::size_t a = 0; a < v.size(); ++a)
      if (!(a & bit)) v[a] += v[a | bit];
}

void superset_difference(std::span<double> v) {
  require_power_of_two(v);
  for (std::size_t bit = 1; bit < v.size(); bit <<= 1)
    for (std::size_t a = 0; a < v.size(); ++a)
      if (!(a & bit)) v[a] -= v[a | bit];
}

void subset_sum(std::span<double> v) {
  require_power_of_two(v);
  for (std::size_t bit = 1; bit < v.size(); bit <<= 1)
    for (std::size_t a = 0; a < v.size(); ++a)
      if (a & bit) v[a] += v[a ^ bit];
}

void subset_difference(std::span<double> v) {
  require_power_of_two(v);
  for (std::size_t bit = 1; bit < v.size(); bit <<= 1)
    for (std::size_t a = 0; a < v.size(); ++a)
      if (a & bit) v[a] -= v[a ^ bit];
}

}  // namespace fmt

std::string_view to_string(Representation kind) {
  switch (kind) {
    case Representation::belief: return "belief";
    case Representation::plausibility: return "plausibility";
    case Representation::commonality: return "commonality";
    case Representation::implicability: return "implicability";
    case Representation::pignistic: return "pignistic";
  }
  return "?";
}

Representation parse_representation(std::string_view name) {
  if (name == "belief" || name == "bel") return Representation::belief;
  if (name == "plausibility" || name == "pl") return Representation::plausibility;
  if (name == "commonality" || name == "q") return Representation::commonality;
  if (name == "implicability" || name == "b") return Representation::implicability;
  if (name == "pignistic" || name == "betp") return Representation::pignistic;
  throw FusionError(ErrorKind::parameter, "unknown representation '" + std::string(name) + "'");
}

std::vector<double> commonality(const MassFunction& m) {
  std::vector<double> q(m.values().begin(), m.values().end());
  fmt::superset_sum(q);
  return q;
}

std::vector<double> implicability(const MassFunction& m) {
  std::vector<double> b(m.values().begin(), m.values().end());
  fmt::subset_sum(b);
  return b;
}

namespace {

MassFunction checked_image(const Frame& frame, std::vector<double> m) {
  double total = 0.0;
  for (double v : m) total += v;
  if (!(std::abs(total - 1.0) <= kMassTolerance))
    throw FusionError(ErrorKind::not_valid_image,
                      "inverse transform yields masses summing to " + std::to_string(total));
  return MassFunction::from_computed(frame, std::move(m));
}

void require_length(const Frame& frame, std::size_t length) {
  if (length != frame.powerset_size())
    throw FusionError(ErrorKind::encoding, "representation length " + std::to_string(length) +
                                               " does not match the frame");
}

}  // namespace

MassFunction from_commonality(const Frame& frame, std::vector<double> q) {
  require_length(frame, q.size());
  fmt::superset_difference(q);
  return checked_image(frame, std::move(q));
}

MassFunction from_implicability(const Frame& frame, std::vector<double> b) {
  require_length(frame, b.size());
  fmt::subset_difference(b);
  return checked_image(frame, std::move(b));
}

RepresentationVector transform(const MassFunction& m, Representation kind) {
  const Frame& frame = m.frame();
  switch (kind) {
    case Representation::commonality:
      return {frame, kind, commonality(m)};
    case Representation::implicability:
      return {frame, kind, implicability(m)};
    case Representation::belief: {
      auto b = implicability(m);
      const double empty = m.conflict();
      for (auto& v : b) v -= empty;
      b[0] = 0.0;
      return {frame, kind, std::move(b)};
    }
    case Representation::plausibility: {
      const auto b = implicability(m);
      std::vector<double> pl(b.size());
      const Subset full = frame.full();
      for (Subset a = 0; a <= full; ++a) pl[a] = 1.0 - b[full & ~a];
      pl[0] = 0.0;
      return {frame, kind, std::move(pl)};
    }
    case Representation::pignistic:
      return pignistic(m);
  }
  throw FusionError(ErrorKind::parameter, "unknown representation");
}

MassFunction to_mass(const RepresentationVector& r) {
  const Frame& frame = r.frame;
  switch (r.kind) {
    case Representation::commonality:
      return from_commonality(frame, r.values);
    case Representation::implicability:
      return from_implicability(frame, r.values);
    case Representation::belief: {
      require_length(frame, r.values.size());
      const double empty = 1.0 - r.values.back();
      std::vector<double> b = r.values;
      for (auto& v : b) v += empty;
      b[0] = empty;
      return from_implicability(frame, std::move(b));
    }
    case Representation::plausibility: {
      require_length(frame, r.values.size());
      std::vector<double> b(r.values.size());
      const Subset full = frame.full();
      for (Subset a = 0; a <= full; ++a) b[a] = 1.0 - r.values[full & ~a];
      return from_implicability(frame, std::move(b));
    }
    case Representation::pignistic:
      break;
  }
  throw FusionError(ErrorKind::parameter, "a pignistic probability does not determine a mass function");
}

RepresentationVector pignistic(const MassFunction& m) {
  const double empty = m.conflict();
  if (empty >= 1.0 - 1e-12)
    throw FusionError(ErrorKind::total_conflict, "pignistic probability undefined: m(empty) = 1");
  const Frame& frame = m.frame();
  std::vector<double> bet(static_cast<std::size_t>(frame.size()), 0.0);
  const double scale = 1.0 / (1.0 - empty);
  for (Subset a = 1; a <= frame.full(); ++a) {
    if (m[a] == 0.0) continue;
    const double share = m[a] * scale / cardinality(a);
    for (int i = 0; i < frame.size(); ++i)
      if (a >> i & 1u) bet[static_cast<std::size_t>(i)] += share;
  }
  return {frame, Representation::pignistic, std::move(bet)};
}

}  // namespace lns
