#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sitassess/errors.hpp"

namespace sitassess {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Behavioral indicator vector of a factual agent (activity, magnitude,
/// recency by default). Components are finite and nonnegative.
using Indicators = Vector<double>;

using Tick = std::int64_t;
using AgentId = std::int64_t;

struct GridCell {
  int x = 0;
  int y = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

inline int chebyshev_distance(GridCell a, GridCell b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

inline int manhattan_distance(GridCell a, GridCell b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

using Attribute = std::pair<std::string, std::string>;

/// One observed fact: what it is about and its qualitative attributes,
/// anchored at a cell and a tick.
struct FactualSemanticFeature {
  std::string subject_kind;
  std::string subject_id;
  std::vector<Attribute> attributes;
  GridCell location;
  Tick time = 0;

  /// Throws DomainError when an invariant is broken.
  void validate() const;

  /// Value of the named attribute, or nullptr.
  const std::string* attribute(const std::string& name) const;

  /// "kind#id" when the id has no kind prefix of its own, else the id.
  std::string label() const;

  friend bool operator==(const FactualSemanticFeature&,
                         const FactualSemanticFeature&) = default;
};

/// Throws DomainError unless every component is finite and >= 0.
template <typename Derived>
void check_nonnegative(const Eigen::MatrixBase<Derived>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto c = v(i);
    if (!std::isfinite(c) || c < 0) {
      throw DomainError("vector component " + std::to_string(i) +
                        " must be finite and nonnegative, got " +
                        std::to_string(static_cast<double>(c)));
    }
  }
}

/// Stored scenario building block: FSF, indicator values, acquaintance count.
struct ClusterElement {
  FactualSemanticFeature fsf;
  Indicators indicators;
  std::int64_t an_size = 0;

  void validate() const;

  friend bool operator==(const ClusterElement& a, const ClusterElement& b) {
    return a.fsf == b.fsf && a.an_size == b.an_size &&
           a.indicators.size() == b.indicators.size() &&
           a.indicators == b.indicators;
  }
};

struct Cluster {
  std::string name;
  std::vector<ClusterElement> elements;

  void validate() const;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct Scenario {
  std::string name;
  std::vector<Cluster> clusters;
  Tick captured_at = 0;

  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Cosine of the angle between two nonnegative vectors, in [0,1].
///
/// Two all-zero vectors are identical states (1); exactly one all-zero vector
/// is total divergence (0). The norm product is taken as sqrt(|a|^2 |b|^2) so
/// that a vector compared with itself yields exactly 1.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_similarity(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>,
                "cosine_similarity needs a common scalar type");
  if (a.size() != b.size()) {
    throw DimensionError("cosine_similarity: length " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  }
  if (a.size() == 0) {
    throw DimensionError("cosine_similarity: vectors must be nonempty");
  }
  check_nonnegative(a);
  check_nonnegative(b);

  const Scalar aa = a.squaredNorm();
  const Scalar bb = b.squaredNorm();
  if (aa == Scalar(0) && bb == Scalar(0)) return Scalar(1);
  if (aa == Scalar(0) || bb == Scalar(0)) return Scalar(0);

  const Scalar cs = a.dot(b) / std::sqrt(aa * bb);
  return std::clamp(cs, Scalar(0), Scalar(1));
}

/// (V_I1, ..., V_In, S_AN) for a stored element.
Indicators element_vector(const ClusterElement& element);

/// Same concatenation from raw parts; used for live agent records.
template <typename Derived>
Vector<typename Derived::Scalar> element_vector(const Eigen::MatrixBase<Derived>& indicators,
                                                std::int64_t an_size) {
  Vector<typename Derived::Scalar> out(indicators.size() + 1);
  out.head(indicators.size()) = indicators;
  out(indicators.size()) = static_cast<typename Derived::Scalar>(an_size);
  return out;
}

/// Arithmetic mean of a created cluster's element similarities.
///
/// Throws DomainError on an empty list or a value outside [0,1]. A result of
/// exactly 1 is reserved for all-ones input, even where rounding of the sum
/// would otherwise produce it.
template <typename Derived>
typename Derived::Scalar relevance(const Eigen::MatrixBase<Derived>& similarities) {
  using Scalar = typename Derived::Scalar;
  if (similarities.size() == 0) {
    throw DomainError("relevance of an empty cluster is undefined");
  }
  bool all_ones = true;
  for (Eigen::Index i = 0; i < similarities.size(); ++i) {
    const Scalar s = similarities(i);
    if (!(s >= Scalar(0) && s <= Scalar(1))) {
      throw DomainError("similarity " + std::to_string(static_cast<double>(s)) +
                        " at index " + std::to_string(i) + " is outside [0,1]");
    }
    all_ones = all_ones && s == Scalar(1);
  }
  Scalar mean = similarities.sum() / static_cast<Scalar>(similarities.size());
  mean = std::clamp(mean, Scalar(0), Scalar(1));
  if (!all_ones && mean == Scalar(1)) mean = std::nextafter(Scalar(1), Scalar(0));
  return mean;
}

inline double relevance(std::span<const double> similarities) {
  return relevance(Eigen::Map<const Indicators>(similarities.data(),
                                                static_cast<Eigen::Index>(similarities.size())));
}

}  // namespace sitassess
