#include "qsep/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsep {

void require_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
    double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 2.0 * tol) {
        throw std::invalid_argument("matrix is not Hermitian within tolerance");
    }
}

ComplexMatrix principal_minor(const ComplexMatrix& m, const std::vector<Eigen::Index>& t) {
    if (t.empty()) throw std::invalid_argument("principal_minor: empty index set");
    std::vector<Eigen::Index> idx = t;
    std::sort(idx.begin(), idx.end());
    for (Eigen::Index i : idx) {
        if (i < 0 || i >= m.rows()) throw std::out_of_range("principal_minor: index out of range");
    }
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    ComplexMatrix out(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) out(a, b) = m(idx[a], idx[b]);
    return out;
}

double det_hermitian(const ComplexMatrix& m) {
    require_hermitian(m);
    std::complex<double> d = Eigen::PartialPivLU<ComplexMatrix>(m).determinant();
    double scale = std::max(1.0, std::abs(d));
    if (std::abs(d.imag()) > kImagResidueTol * scale) {
        throw std::runtime_error("det_hermitian: imaginary residue above tolerance");
    }
    return d.real();
}

Eigen::VectorXd eigenvalues_hermitian(const ComplexMatrix& m) {
    require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
    return es.eigenvalues();
}

double max_eigenvalue(const ComplexMatrix& m) {
    Eigen::VectorXd ev = eigenvalues_hermitian(m);
    return ev(ev.size() - 1);
}

double offdiag_max(const ComplexMatrix& m) {
    if (m.rows() < 2) throw std::invalid_argument("offdiag_max: dimension must be >= 2");
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j) best = std::max(best, std::abs(m(i, j)));
    return best;
}

double gershgorin_upper_bound(const ComplexMatrix& m) {
    require_hermitian(m);
    double bound = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double radius = 0.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j) radius += std::abs(m(i, j));
        bound = std::max(bound, m(i, i).real() + radius);
    }
    return bound;
}

}  // namespace qsep
