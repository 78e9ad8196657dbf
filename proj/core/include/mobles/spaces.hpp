#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobles/gridworld.hpp"

namespace mobles {

// One discrete observation feature taking values in [min_value, min_value + cardinality).
struct FeatureDecl {
    std::string name;
    int min_value = 0;
    int cardinality = 1;
};

// Mixed-radix bijection between value tuples and dense indices [0, size()).
// The first digit varies fastest.
class StateIndexer {
public:
    StateIndexer() = default;
    explicit StateIndexer(std::vector<FeatureDecl> digits);

    std::size_t size() const { return size_; }
    std::size_t index(std::span<const int> values) const;
    std::vector<int> decode(std::size_t index) const;

private:
    std::vector<FeatureDecl> digits_;
    std::size_t size_ = 1;
};

// A nonempty, strictly increasing selection of feature indices (0-based
// positions into the observation tuple).
class SubspaceDef {
public:
    SubspaceDef() = default;
    SubspaceDef(std::vector<std::size_t> feature_indices, const std::vector<FeatureDecl>& features);

    const std::vector<std::size_t>& feature_indices() const { return indices_; }
    const std::string& name() const { return name_; }
    std::size_t state_count() const { return indexer_.size(); }
    const StateIndexer& indexer() const { return indexer_; }

    // Dense index of the selected sub-tuple of a full observation.
    std::size_t project(std::span<const int> state) const;

    friend bool operator==(const SubspaceDef& a, const SubspaceDef& b) { return a.indices_ == b.indices_; }

private:
    std::vector<std::size_t> indices_;
    std::vector<FeatureDecl> digits_;
    std::string name_;
    StateIndexer indexer_;
};

inline std::size_t project(std::span<const int> state, const SubspaceDef& def) { return def.project(state); }

class SpaceFamily {
public:
    SpaceFamily() = default;
    SpaceFamily(std::vector<FeatureDecl> features, std::vector<SubspaceDef> subs);

    const std::vector<FeatureDecl>& features() const { return features_; }
    const SubspaceDef& full() const { return full_; }
    const std::vector<SubspaceDef>& subs() const { return subs_; }

    // Same features, different subspace list.
    SpaceFamily with_subspaces(std::vector<SubspaceDef> subs) const { return SpaceFamily(features_, std::move(subs)); }
    // Subspaces given as lists of feature names, e.g. {{"x"}, {"y"}}.
    SpaceFamily with_named_subspaces(const std::vector<std::vector<std::string>>& names) const;

    std::size_t feature_index(const std::string& name) const;

private:
    std::vector<FeatureDecl> features_;
    SubspaceDef full_;
    std::vector<SubspaceDef> subs_;
};

std::vector<FeatureDecl> maze_features(const GridMaze& maze, SensorMode mode);

// Two sensors: {x}, {y}. Six sensors: one singleton subspace per feature.
SpaceFamily default_family(const GridMaze& maze, SensorMode mode);

}  // namespace mobles
