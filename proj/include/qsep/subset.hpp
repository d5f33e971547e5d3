#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qsep {

/// A subset of [N] acting as a boolean oracle.
class SubsetOracle {
  public:
    SubsetOracle() = default;
    explicit SubsetOracle(Eigen::Index n_points);
    SubsetOracle(Eigen::Index n_points, const std::vector<Eigen::Index>& members);

    static SubsetOracle full(Eigen::Index n_points);

    Eigen::Index n_points() const { return n_points_; }
    bool contains(Eigen::Index x) const { return bits_[static_cast<size_t>(x)] != 0; }
    void insert(Eigen::Index x);
    void erase(Eigen::Index x);
    Eigen::Index cardinality() const;

    /// Member indices, ascending.
    std::vector<Eigen::Index> members() const;

    /// Symmetric difference (same n_points required).
    SubsetOracle symmetric_difference(const SubsetOracle& other) const;

    /// Interpret the membership bits as an atom index (coordinate i = bit i);
    /// requires n_points <= 63.
    uint64_t as_atom() const;
    static SubsetOracle from_atom(Eigen::Index n_points, uint64_t atom);

    bool operator==(const SubsetOracle& other) const = default;

  private:
    Eigen::Index n_points_ = 0;
    std::vector<uint8_t> bits_;
};

}  // namespace qsep
