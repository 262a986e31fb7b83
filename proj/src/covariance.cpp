#include "doa/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace doa {

CMatrix sample_covariance(const CMatrix& snapshots) {
    if (snapshots.rows() == 0 || snapshots.cols() == 0)
        throw std::domain_error("sample_covariance: snapshot matrix must be nonempty");

    CMatrix r = snapshots * snapshots.adjoint() / static_cast<double>(snapshots.cols());
    r = 0.5 * (r + r.adjoint()).eval();
    return r;
}

EigenSystem eigendecompose(const CMatrix& hermitian) {
    if (hermitian.rows() == 0 || hermitian.rows() != hermitian.cols())
        throw std::domain_error("eigendecompose: input must be square and nonempty");

    const double scale = std::max(1.0, hermitian.norm());
    if ((hermitian - hermitian.adjoint()).norm() > 1e-8 * scale)
        throw std::domain_error("eigendecompose: input is not Hermitian to tolerance");

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: eigensolver failed to converge");

    const Eigen::Index m = hermitian.rows();
    const RVector ascending = solver.eigenvalues();
    const CMatrix vectors = solver.eigenvectors();

    // Descending order; exact ties keep the solver's index order.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return ascending(a) > ascending(b); });

    EigenSystem out;
    out.eigenvalues.resize(m);
    out.eigenvectors.resize(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        out.eigenvalues(k) = std::max(0.0, ascending(order[static_cast<std::size_t>(k)]));
        out.eigenvectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

SubspacePair partition_subspaces(const EigenSystem& eig, int source_count) {
    const Eigen::Index m = eig.eigenvectors.rows();
    if (source_count < 1 || source_count >= m)
        throw std::domain_error("partition_subspaces: source count must lie in [1, M-1]");

    SubspacePair out;
    out.signal_basis = eig.eigenvectors.leftCols(source_count);
    out.noise_basis = eig.eigenvectors.rightCols(m - source_count);
    out.signal_eigenvalues = eig.eigenvalues.head(source_count);
    out.noise_eigenvalues = eig.eigenvalues.tail(m - source_count);
    return out;
}

}  // namespace doa
