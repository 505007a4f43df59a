#include "lns/frame.hpp"

#include <algorithm>
#include <unordered_set>

#include "lns/errors.hpp"

namespace lns {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::encoding: return "encoding error";
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::invalid_mass: return "invalid mass function";
    case ErrorKind::not_valid_image: return "not a valid image";
    case ErrorKind::total_conflict: return "total conflict";
    case ErrorKind::decomposition_undefined: return "decomposition undefined";
    case ErrorKind::numeric_domain: return "numeric domain error";
    case ErrorKind::invalid_weights: return "invalid weight vector";
    case ErrorKind::complexity_guard: return "complexity guard";
    case ErrorKind::not_separable: return "not separable";
    case ErrorKind::undefined_gamma: return "undefined gamma";
    case ErrorKind::parse: return "parse error";
  }
  return "error";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::total_conflict: return 3;
    case ErrorKind::complexity_guard: return 4;
    default: return 2;
  }
}

Frame::Frame(std::vector<std::string> labels) {
  if (labels.empty()) throw FusionError(ErrorKind::encoding, "frame needs at least one hypothesis");
  if (labels.size() > static_cast<std::size_t>(kMaxFrameSize))
    throw FusionError(ErrorKind::encoding,
                      "frame size " + std::to_string(labels.size()) + " exceeds the cap of " +
                          std::to_string(kMaxFrameSize));
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw FusionError(ErrorKind::encoding, "empty hypothesis label");
    if (!seen.insert(l).second) throw FusionError(ErrorKind::encoding, "duplicate label '" + l + "'");
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

Frame Frame::with_size(int n) {
  if (n < 1 || n > kMaxFrameSize)
    throw FusionError(ErrorKind::encoding, "frame size must be in [1, 20], got " + std::to_string(n));
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) labels.push_back("theta" + std::to_string(i));
  return Frame(std::move(labels));
}

std::optional<int> Frame::index_of(std::string_view label) const {
  auto it = std::find(labels_->begin(), labels_->end(), label);
  if (it == labels_->end()) return std::nullopt;
  return static_cast<int>(it - labels_->begin());
}

Subset Frame::subset_of(std::span<const std::string> labels) const {
  Subset s = 0;
  for (const auto& l : labels) {
    auto i = index_of(l);
    if (!i) throw FusionError(ErrorKind::encoding, "unknown label '" + l + "'");
    s |= Subset{1} << *i;
  }
  return s;
}

Subset Frame::singleton(int i) const {
  if (i < 0 || i >= size())
    throw FusionError(ErrorKind::encoding, "hypothesis index " + std::to_string(i) + " out of range");
  return Subset{1} << i;
}

std::vector<std::string> Frame::labels_of(Subset s) const {
  check(s);
  std::vector<std::string> out;
  for (int i = 0; i < size(); ++i)
    if (s >> i & 1u) out.push_back((*labels_)[static_cast<std::size_t>(i)]);
  return out;
}

std::string Frame::describe(Subset s) const {
  std::string out = "{";
  bool first = true;
  for (const auto& l : labels_of(s)) {
    if (!first) out += ',';
    out += l;
    first = false;
  }
  return out + "}";
}

void Frame::check(Subset s) const {
  if (!contains(s))
    throw FusionError(ErrorKind::encoding, "subset index " + std::to_string(s) +
                                               " out of range for a frame of size " +
                                               std::to_string(size()));
}

SubsetRelations subset_ops(const Frame& frame, Subset a, Subset b) {
  frame.check(a);
  frame.check(b);
  return {a & b, a | b, cardinality(a), cardinality(b), is_subset(a, b)};
}

void require_same_frame(const Frame& a, const Frame& b) {
  if (!(a == b)) throw FusionError(ErrorKind::encoding, "mass functions are defined on different frames");
}

}  // namespace lns
