#include "qsep/subset.hpp"

#include <numeric>
#include <stdexcept>

namespace qsep {

SubsetOracle::SubsetOracle(Eigen::Index n_points)
    : n_points_(n_points), bits_(static_cast<size_t>(n_points), 0) {
    if (n_points < 1) throw std::invalid_argument("SubsetOracle: n_points must be positive");
}

SubsetOracle::SubsetOracle(Eigen::Index n_points, const std::vector<Eigen::Index>& members)
    : SubsetOracle(n_points) {
    for (Eigen::Index x : members) insert(x);
}

SubsetOracle SubsetOracle::full(Eigen::Index n_points) {
    SubsetOracle s(n_points);
    for (Eigen::Index x = 0; x < n_points; ++x) s.insert(x);
    return s;
}

void SubsetOracle::insert(Eigen::Index x) {
    if (x < 0 || x >= n_points_) throw std::out_of_range("SubsetOracle: index out of range");
    bits_[static_cast<size_t>(x)] = 1;
}

void SubsetOracle::erase(Eigen::Index x) {
    if (x < 0 || x >= n_points_) throw std::out_of_range("SubsetOracle: index out of range");
    bits_[static_cast<size_t>(x)] = 0;
}

Eigen::Index SubsetOracle::cardinality() const {
    return std::accumulate(bits_.begin(), bits_.end(), Eigen::Index{0});
}

std::vector<Eigen::Index> SubsetOracle::members() const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index x = 0; x < n_points_; ++x)
        if (bits_[static_cast<size_t>(x)]) out.push_back(x);
    return out;
}

SubsetOracle SubsetOracle::symmetric_difference(const SubsetOracle& other) const {
    if (other.n_points_ != n_points_)
        throw std::invalid_argument("symmetric_difference: mismatched n_points");
    SubsetOracle out(n_points_);
    for (Eigen::Index x = 0; x < n_points_; ++x)
        if (contains(x) != other.contains(x)) out.insert(x);
    return out;
}

uint64_t SubsetOracle::as_atom() const {
    if (n_points_ > 63) throw std::invalid_argument("as_atom: n_points too large");
    uint64_t atom = 0;
    for (Eigen::Index x = 0; x < n_points_; ++x)
        if (contains(x)) atom |= (uint64_t{1} << x);
    return atom;
}

SubsetOracle SubsetOracle::from_atom(Eigen::Index n_points, uint64_t atom) {
    if (n_points > 63) throw std::invalid_argument("from_atom: n_points too large");
    SubsetOracle s(n_points);
    for (Eigen::Index x = 0; x < n_points; ++x)
        if (atom & (uint64_t{1} << x)) s.insert(x);
    return s;
}

}  // namespace qsep
