#include "doa/refinement.hpp"

#include "doa/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace doa {

namespace {

constexpr double kRankTolerance = 1e-10;

// Orthonormal basis of the column space through the unitary polar
// factor U V^H of the thin SVD. It is the closest orthonormal matrix in
// Frobenius norm, so an orthonormal input maps to itself. Returns an
// empty matrix when the columns are numerically rank deficient.
CMatrix polar_orthonormalize(const CMatrix& columns) {
    Eigen::JacobiSVD<CMatrix> svd(columns, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sigma = svd.singularValues();
    const Eigen::Index k = sigma.size();
    if (k == 0 || !(sigma(0) > 0.0) || sigma(k - 1) <= kRankTolerance * sigma(0))
        return CMatrix();
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

SimilarityMatrix similarity_matrix(const RVector& eigenvalues_desc) {
    const Eigen::Index m = eigenvalues_desc.size();
    if (m < 2)
        throw std::invalid_argument("similarity_matrix: need at least two eigenvalues");
    if (!eigenvalues_desc.allFinite())
        throw std::invalid_argument("similarity_matrix: eigenvalues must be finite");

    const double spread = eigenvalues_desc.maxCoeff() - eigenvalues_desc.minCoeff();
    const double tau = 1.0 / (1.0 + spread);

    SimilarityMatrix similarity;
    similarity.entries.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        similarity.entries(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const double b = 1.0 - std::abs(eigenvalues_desc(i) - eigenvalues_desc(j)) * tau;
            similarity.entries(i, j) = b;
            similarity.entries(j, i) = b;
        }
    }
    return similarity;
}

TransformMatrix transform_matrix(const SimilarityMatrix& similarity, const CMatrix& eigenvectors) {
    const RMatrix& b = similarity.entries;
    if (b.rows() != b.cols() || b.rows() != eigenvectors.rows())
        throw std::invalid_argument("transform_matrix: dimension mismatch");

    // B is real symmetric, so its singular values are the eigenvalue
    // magnitudes and the spectral decomposition doubles as the solver.
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(b);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("transform_matrix: eigensolver failed to converge");

    const RVector lambda = solver.eigenvalues();
    double sigma_min = std::numeric_limits<double>::infinity();
    double sigma_max = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        sigma_min = std::min(sigma_min, std::abs(lambda(i)));
        sigma_max = std::max(sigma_max, std::abs(lambda(i)));
    }
    if (!(sigma_max > 0.0) || sigma_min <= kRankTolerance * sigma_max) {
        const double condition = sigma_min > 0.0 ? sigma_max / sigma_min
                                                 : std::numeric_limits<double>::infinity();
        throw RankDeficientSimilarity(
            "transform_matrix: similarity matrix is numerically rank-deficient", condition);
    }

    const RMatrix& v = solver.eigenvectors();
    const RMatrix inverse = v * lambda.cwiseInverse().asDiagonal() * v.transpose();

    TransformMatrix transform;
    transform.entries = inverse.cast<Complex>() * eigenvectors;
    return transform;
}

RMatrix modify_similarity(const SimilarityMatrix& similarity, double mu) {
    if (!(mu >= 0.0))
        throw std::invalid_argument("modify_similarity: modification factor must be nonnegative");

    const RMatrix& b = similarity.entries;
    RMatrix modified(b.rows(), b.cols());
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        modified(i, i) = 1.0 / (1.0 + std::exp(mu * (b(i, i) - 0.5)));
        for (Eigen::Index j = i + 1; j < b.cols(); ++j) {
            const double value = 1.0 / (1.0 + std::exp(mu * (b(i, j) - 0.5)));
            modified(i, j) = value;
            modified(j, i) = value;
        }
    }
    return modified;
}

CMatrix refined_eigenspace(const RMatrix& modified, const TransformMatrix& transform, int source_count) {
    if (source_count < 1 || source_count >= modified.rows())
        throw std::invalid_argument("refined_eigenspace: source count must lie in [1, M-1]");
    if (modified.cols() != transform.entries.rows())
        throw std::invalid_argument("refined_eigenspace: dimension mismatch");

    const CMatrix candidate =
        modified.cast<Complex>() * transform.entries.leftCols(source_count);
    CMatrix basis = polar_orthonormalize(candidate);
    if (basis.size() == 0)
        throw DegenerateRefinement("refined_eigenspace: modified subspace columns are rank deficient");
    return basis;
}

CMatrix reconstruct_signal_subspace(std::span<const double> thetas_deg, const ArrayGeometry& geom) {
    const CMatrix manifold = manifold_matrix(thetas_deg, geom);

    // A (A^H A)^{-1/2} with the Hermitian PSD principal root of the Gram
    // matrix; the singular values of A are the square roots of its
    // eigenvalues, which gives the rank test.
    const CMatrix gram = manifold.adjoint() * manifold;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("reconstruct_signal_subspace: eigensolver failed to converge");

    const RVector lambda = solver.eigenvalues();
    const double lambda_max = lambda(lambda.size() - 1);
    if (!(lambda_max > 0.0) || lambda(0) <= kRankTolerance * kRankTolerance * lambda_max)
        throw DegenerateRefinement(
            "reconstruct_signal_subspace: manifold of the candidate angles is rank deficient");

    const CMatrix& v = solver.eigenvectors();
    const CMatrix inv_sqrt =
        v * lambda.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * v.adjoint();

    // An ill-conditioned manifold (nearly aliased angles) erodes the
    // orthonormality of A G^{-1/2} well before the rank test trips, so
    // polish with the span-preserving polar factor.
    CMatrix basis = polar_orthonormalize(manifold * inv_sqrt);
    if (basis.size() == 0)
        throw DegenerateRefinement(
            "reconstruct_signal_subspace: manifold of the candidate angles is rank deficient");
    return basis;
}

double reconstruction_error(const CMatrix& basis_a, const CMatrix& basis_b) {
    const auto check = [](const CMatrix& basis, const char* which) {
        const Eigen::Index k = basis.cols();
        if (k == 0 || basis.rows() < k)
            throw std::invalid_argument(std::string("reconstruction_error: bad basis shape for ") + which);
        const CMatrix gram = basis.adjoint() * basis;
        if ((gram - CMatrix::Identity(k, k)).norm() > 1e-6)
            throw std::invalid_argument(
                std::string("reconstruction_error: columns are not orthonormal to tolerance for ") + which);
    };
    check(basis_a, "the first argument");
    check(basis_b, "the second argument");
    if (basis_a.rows() != basis_b.rows())
        throw std::invalid_argument("reconstruction_error: bases live in different spaces");

    return (basis_a * basis_a.adjoint() - basis_b * basis_b.adjoint()).norm();
}

CostSample cost_at_mu(double mu, const SimilarityMatrix& similarity, const TransformMatrix& transform,
                      const ArrayGeometry& geom, const SteeringTable& table, int source_count) {
    const RMatrix modified = modify_similarity(similarity, mu);
    const CMatrix basis = refined_eigenspace(modified, transform, source_count);

    const PeakPick pick = estimate_doa(basis * basis.adjoint(), table, source_count);

    CostSample sample;
    sample.doas_deg = pick.angles_deg;
    sample.degraded_pick = pick.degraded;
    sample.reconstructed_basis = reconstruct_signal_subspace(sample.doas_deg, geom);
    sample.cost = reconstruction_error(sample.reconstructed_basis, basis);
    return sample;
}

std::vector<std::pair<double, double>> RefinementResult::cost_trace() const {
    std::vector<std::pair<double, double>> trace;
    trace.reserve(samples.size());
    for (const MuSample& s : samples)
        trace.emplace_back(s.mu, s.skipped ? std::numeric_limits<double>::quiet_NaN() : s.cost);
    return trace;
}

std::vector<std::pair<double, double>> RefinementResult::recon_error_trace() const {
    std::vector<std::pair<double, double>> trace;
    trace.reserve(samples.size());
    for (const MuSample& s : samples)
        trace.emplace_back(s.mu, s.skipped ? std::numeric_limits<double>::quiet_NaN() : s.recon_error);
    return trace;
}

std::vector<double> RefinementResult::skipped_mus() const {
    std::vector<double> skipped;
    for (const MuSample& s : samples)
        if (s.skipped)
            skipped.push_back(s.mu);
    return skipped;
}

RefinementResult search_mu(const MuGrid& grid, const SimilarityMatrix& similarity,
                           const TransformMatrix& transform, const ArrayGeometry& geom,
                           const SteeringTable& table, int source_count) {
    grid.validate();

    // Reference signal basis implied by the transform: the leading
    // columns of B * Omega reproduce the eigenvector matrix while B is
    // full rank. Used for the reconstruction-error trace. Re-orthonormalized
    // so an ill-conditioned solve cannot push it past the basis tolerance.
    CMatrix reference_basis = polar_orthonormalize(
        (similarity.entries.cast<Complex>() * transform.entries).leftCols(source_count));
    if (reference_basis.size() == 0)
        throw RefinementFailed("search_mu: transform does not yield a usable signal basis");

    RefinementResult result;
    const std::size_t points = grid.size();
    result.samples.reserve(points);

    std::size_t best_index = points;  // sentinel: nothing accepted yet
    for (std::size_t k = 0; k < points; ++k) {
        MuSample sample;
        sample.mu = grid.value(k);
        try {
            CostSample cost = cost_at_mu(sample.mu, similarity, transform, geom, table, source_count);
            sample.cost = cost.cost;
            sample.recon_error = reconstruction_error(reference_basis, cost.reconstructed_basis);
            sample.doas_deg = std::move(cost.doas_deg);
            sample.degraded_pick = cost.degraded_pick;
        } catch (const DegenerateRefinement&) {
            sample.skipped = true;
            sample.cost = std::numeric_limits<double>::quiet_NaN();
            sample.recon_error = std::numeric_limits<double>::quiet_NaN();
        }
        result.samples.push_back(std::move(sample));

        const MuSample& stored = result.samples.back();
        if (!stored.skipped &&
            (best_index == points || stored.cost < result.samples[best_index].cost))
            best_index = k;
    }

    if (best_index == points)
        throw RefinementFailed("search_mu: every modification factor on the grid was degenerate");

    const MuSample& best = result.samples[best_index];
    result.best_mu = best.mu;
    result.refined_doas_deg = best.doas_deg;
    result.best_degraded = best.degraded_pick;
    result.best_cost = best.cost;
    result.best_recon_error = best.recon_error;
    return result;
}

}  // namespace doa
