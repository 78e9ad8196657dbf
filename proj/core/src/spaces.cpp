#include "mobles/spaces.hpp"

#include <algorithm>
#include <numeric>

namespace mobles {

StateIndexer::StateIndexer(std::vector<FeatureDecl> digits) : digits_(std::move(digits)) {
    for (const auto& d : digits_) {
        if (d.cardinality < 1) throw std::invalid_argument("feature '" + d.name + "' has no values");
        size_ *= static_cast<std::size_t>(d.cardinality);
    }
}

std::size_t StateIndexer::index(std::span<const int> values) const {
    if (values.size() != digits_.size()) throw std::invalid_argument("state tuple has the wrong arity");
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        const int v = values[i] - digits_[i].min_value;
        if (v < 0 || v >= digits_[i].cardinality)
            throw std::out_of_range("feature '" + digits_[i].name + "' value out of range");
        idx += static_cast<std::size_t>(v) * stride;
        stride *= static_cast<std::size_t>(digits_[i].cardinality);
    }
    return idx;
}

std::vector<int> StateIndexer::decode(std::size_t index) const {
    if (index >= size_) throw std::out_of_range("state index out of range");
    std::vector<int> values(digits_.size());
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        const auto card = static_cast<std::size_t>(digits_[i].cardinality);
        values[i] = static_cast<int>(index % card) + digits_[i].min_value;
        index /= card;
    }
    return values;
}

SubspaceDef::SubspaceDef(std::vector<std::size_t> feature_indices, const std::vector<FeatureDecl>& features)
    : indices_(std::move(feature_indices)) {
    if (indices_.empty()) throw std::invalid_argument("subspace must select at least one feature");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (i > 0 && indices_[i] <= indices_[i - 1])
            throw std::invalid_argument("subspace feature indices must be strictly increasing");
        if (indices_[i] >= features.size()) throw std::invalid_argument("subspace refers to an undeclared feature");
        digits_.push_back(features[indices_[i]]);
        name_ += (i ? "+" : "") + features[indices_[i]].name;
    }
    indexer_ = StateIndexer(digits_);
}

std::size_t SubspaceDef::project(std::span<const int> state) const {
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] >= state.size()) throw std::out_of_range("state is missing a subspace feature");
        const FeatureDecl& d = digits_[i];
        const int v = state[indices_[i]] - d.min_value;
        if (v < 0 || v >= d.cardinality) throw std::out_of_range("feature '" + d.name + "' value out of range");
        idx += static_cast<std::size_t>(v) * stride;
        stride *= static_cast<std::size_t>(d.cardinality);
    }
    return idx;
}

SpaceFamily::SpaceFamily(std::vector<FeatureDecl> features, std::vector<SubspaceDef> subs)
    : features_(std::move(features)), subs_(std::move(subs)) {
    std::vector<std::size_t> all(features_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    full_ = SubspaceDef(all, features_);
    for (std::size_t i = 0; i < subs_.size(); ++i) {
        if (subs_[i] == full_) throw std::invalid_argument("a subspace may not equal the full space");
        for (std::size_t j = 0; j < i; ++j) {
            if (subs_[i] == subs_[j]) throw std::invalid_argument("duplicate subspace '" + subs_[i].name() + "'");
        }
    }
}

std::size_t SpaceFamily::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (features_[i].name == name) return i;
    }
    throw std::invalid_argument("unknown feature '" + name + "'");
}

SpaceFamily SpaceFamily::with_named_subspaces(const std::vector<std::vector<std::string>>& names) const {
    std::vector<SubspaceDef> subs;
    for (const auto& group : names) {
        std::vector<std::size_t> idx;
        for (const auto& n : group) idx.push_back(feature_index(n));
        std::sort(idx.begin(), idx.end());
        subs.emplace_back(std::move(idx), features_);
    }
    return SpaceFamily(features_, std::move(subs));
}

std::vector<FeatureDecl> maze_features(const GridMaze& maze, SensorMode mode) {
    std::vector<FeatureDecl> f{{"x", 1, maze.width()}, {"y", 1, maze.height()}};
    if (mode == SensorMode::Six) {
        for (const char* n : {"ir_up", "ir_right", "ir_down", "ir_left"}) f.push_back({n, 0, 2});
    }
    return f;
}

SpaceFamily default_family(const GridMaze& maze, SensorMode mode) {
    auto features = maze_features(maze, mode);
    std::vector<SubspaceDef> subs;
    for (std::size_t i = 0; i < features.size(); ++i) subs.emplace_back(std::vector<std::size_t>{i}, features);
    return SpaceFamily(std::move(features), std::move(subs));
}

}  // namespace mobles
