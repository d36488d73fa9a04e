#pragma once

// Finite-frame Dempster-Shafer machinery: frames of discernment, mass
// functions (basic belief assignments), simple BBAs and Dempster's rule.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "evinf/error.hpp"

namespace evinf {

/// Subset of a frame, one bit per atom in frame order.
using Subset = std::uint32_t;

inline constexpr std::size_t kMaxFrameSize = 16;
inline constexpr double kMassTolerance = 1e-9;
inline constexpr double kDropMass = 1e-12;

class Frame {
 public:
  explicit Frame(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty() || atoms_.size() > kMaxFrameSize) {
      throw Error(ErrorKind::InvalidArgument,
                  "frame must hold between 1 and 16 atoms, got " + std::to_string(atoms_.size()));
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (atoms_[i].empty()) throw Error(ErrorKind::InvalidArgument, "empty atom label");
      for (std::size_t j = 0; j < i; ++j) {
        if (atoms_[i] == atoms_[j]) {
          throw Error(ErrorKind::InvalidArgument, "duplicate atom label '" + atoms_[i] + "'");
        }
      }
    }
  }

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::string& atom(std::size_t i) const { return atoms_.at(i); }
  std::span<const std::string> atoms() const noexcept { return atoms_; }

  Subset full() const noexcept { return static_cast<Subset>((Subset{1} << atoms_.size()) - 1); }
  bool contains(Subset s) const noexcept { return (s & ~full()) == 0; }

  std::optional<std::size_t> index_of(std::string_view label) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (atoms_[i] == label) return i;
    }
    return std::nullopt;
  }

  Subset singleton(std::string_view label) const { return subset({label}); }

  Subset subset(std::initializer_list<std::string_view> labels) const {
    Subset s = 0;
    for (auto label : labels) {
      auto i = index_of(label);
      if (!i) throw Error(ErrorKind::FrameMismatch, "atom '" + std::string(label) + "' not in frame");
      s |= Subset{1} << *i;
    }
    return s;
  }

  std::string to_string(Subset s) const {
    if (s == full()) return "Omega";
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (s & (Subset{1} << i)) {
        if (!first) out += ",";
        out += atoms_[i];
        first = false;
      }
    }
    return out + "}";
  }

  friend bool operator==(const Frame& a, const Frame& b) { return a.atoms_ == b.atoms_; }

 private:
  std::vector<std::string> atoms_;
};

using FramePtr = std::shared_ptr<const Frame>;

inline FramePtr make_frame(std::vector<std::string> atoms) {
  return std::make_shared<const Frame>(std::move(atoms));
}

/// Omega = {I, P}: influencer vs passive.
inline const FramePtr& influence_frame() {
  static const FramePtr frame = make_frame({"I", "P"});
  return frame;
}

/// Theta = {Pos, Neg, Neut}: opinion polarity.
inline const FramePtr& opinion_frame() {
  static const FramePtr frame = make_frame({"Pos", "Neg", "Neut"});
  return frame;
}

inline bool same_frame(const FramePtr& a, const FramePtr& b) {
  return a == b || (a && b && *a == *b);
}

struct FocalElement {
  Subset subset;
  double mass;
};

/// Normalized basic belief assignment. Immutable once built; focal elements
/// are kept sorted by subset encoding with zero masses removed.
class MassFunction {
 public:
  MassFunction(FramePtr frame, std::vector<FocalElement> focal) : frame_(std::move(frame)) {
    if (!frame_) throw Error(ErrorKind::InvalidArgument, "mass function without frame");
    std::sort(focal.begin(), focal.end(),
              [](const FocalElement& a, const FocalElement& b) { return a.subset < b.subset; });
    double total = 0.0;
    for (const auto& fe : focal) {
      if (fe.subset == 0) {
        if (fe.mass != 0.0) throw Error(ErrorKind::InvalidArgument, "mass on the empty set");
        continue;
      }
      if (!frame_->contains(fe.subset)) {
        throw Error(ErrorKind::FrameMismatch, "focal element outside the frame");
      }
      if (!(fe.mass >= 0.0) || fe.mass > 1.0 + kMassTolerance) {
        throw Error(ErrorKind::InvalidArgument, "mass outside [0,1]: " + std::to_string(fe.mass));
      }
      total += fe.mass;
      if (fe.mass == 0.0) continue;
      if (!focal_.empty() && focal_.back().subset == fe.subset) {
        focal_.back().mass += fe.mass;
      } else {
        focal_.push_back(fe);
      }
    }
    if (std::abs(total - 1.0) > kMassTolerance) {
      throw Error(ErrorKind::InvalidArgument, "masses sum to " + std::to_string(total) + ", not 1");
    }
    for (auto& fe : focal_) fe.mass = std::min(1.0, fe.mass);
  }

  static MassFunction vacuous(FramePtr frame) {
    Subset all = frame->full();
    return MassFunction(std::move(frame), {{all, 1.0}});
  }

  const FramePtr& frame() const noexcept { return frame_; }
  std::span<const FocalElement> focal_elements() const noexcept { return focal_; }

  /// Stored mass of `s`, 0 for non-focal subsets.
  double mass(Subset s) const {
    if (!frame_->contains(s)) throw Error(ErrorKind::FrameMismatch, "subset outside the frame");
    for (const auto& fe : focal_) {
      if (fe.subset == s) return fe.mass;
    }
    return 0.0;
  }

  bool is_vacuous() const noexcept {
    return focal_.size() == 1 && focal_.front().subset == frame_->full();
  }

  friend bool operator==(const MassFunction& a, const MassFunction& b) {
    if (!same_frame(a.frame_, b.frame_) || a.focal_.size() != b.focal_.size()) return false;
    for (std::size_t i = 0; i < a.focal_.size(); ++i) {
      if (a.focal_[i].subset != b.focal_[i].subset || a.focal_[i].mass != b.focal_[i].mass) {
        return false;
      }
    }
    return true;
  }

 private:
  FramePtr frame_;
  std::vector<FocalElement> focal_;
};

/// Largest absolute mass difference over the union of focal sets.
inline double max_mass_difference(const MassFunction& a, const MassFunction& b) {
  if (!same_frame(a.frame(), b.frame())) return 1.0;
  double worst = 0.0;
  for (const auto& fe : a.focal_elements()) worst = std::max(worst, std::abs(fe.mass - b.mass(fe.subset)));
  for (const auto& fe : b.focal_elements()) worst = std::max(worst, std::abs(fe.mass - a.mass(fe.subset)));
  return worst;
}

inline double mass_of(const MassFunction& m, Subset s) { return m.mass(s); }

/// m(focal) = 1 - alpha, m(frame) = alpha.
inline MassFunction simple_bba(const FramePtr& frame, Subset focal, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must lie in [0,1]");
  }
  if (focal == 0 || !frame->contains(focal)) {
    throw Error(ErrorKind::InvalidFocal, "focal element must be a non-empty subset of the frame");
  }
  if (focal == frame->full()) {
    if (alpha < 1.0) throw Error(ErrorKind::InvalidFocal, "focal element equals the whole frame");
    return MassFunction::vacuous(frame);
  }
  return MassFunction(frame, {{focal, 1.0 - alpha}, {frame->full(), alpha}});
}

/// Dempster's rule of combination. The product terms are summed in a
/// canonical order so that combine(a, b) and combine(b, a) agree bit for bit.
inline MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2) {
  if (!same_frame(m1.frame(), m2.frame())) {
    throw Error(ErrorKind::FrameMismatch, "cannot combine mass functions over different frames");
  }
  struct Term {
    Subset target;
    Subset lo;
    Subset hi;
    double value;
  };
  std::vector<Term> terms;
  terms.reserve(m1.focal_elements().size() * m2.focal_elements().size());
  for (const auto& b : m1.focal_elements()) {
    for (const auto& c : m2.focal_elements()) {
      terms.push_back({b.subset & c.subset, std::min(b.subset, c.subset), std::max(b.subset, c.subset),
                       b.mass * c.mass});
    }
  }
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    return std::tie(x.target, x.lo, x.hi, x.value) < std::tie(y.target, y.lo, y.hi, y.value);
  });

  double conflict = 0.0;
  std::vector<FocalElement> raw;
  for (const auto& t : terms) {
    if (t.target == 0) {
      conflict += t.value;
    } else if (!raw.empty() && raw.back().subset == t.target) {
      raw.back().mass += t.value;
    } else {
      raw.push_back({t.target, t.value});
    }
  }
  double norm = 1.0 - conflict;
  if (norm <= 1e-15) throw Error(ErrorKind::TotalConflict, "combination denominator 1 - K is zero");

  double kept = 0.0;
  bool dropped = false;
  std::vector<FocalElement> out;
  for (const auto& fe : raw) {
    double m = std::min(1.0, fe.mass / norm);  // x / x can round above 1
    if (m < kDropMass) {
      dropped = true;
      continue;
    }
    out.push_back({fe.subset, m});
    kept += m;
  }
  if (dropped) {
    for (auto& fe : out) fe.mass = std::min(1.0, fe.mass / kept);
  }
  return MassFunction(m1.frame(), std::move(out));
}

/// Left fold of Dempster's rule.
inline MassFunction dempster_combine_all(std::span<const MassFunction> items) {
  if (items.empty()) throw Error(ErrorKind::InvalidArgument, "nothing to combine");
  MassFunction acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = dempster_combine(acc, items[i]);
  return acc;
}

}  // namespace evinf
