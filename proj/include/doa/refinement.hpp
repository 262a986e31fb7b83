#pragma once

#include "doa/music.hpp"
#include "doa/types.hpp"

#include <span>

namespace doa {

/// Pairwise eigenvalue similarity: b_ij = 1 - |xi_i - xi_j| * tau with
/// tau = 1 / (1 + max(xi) - min(xi)). Entries lie in (0, 1], the
/// diagonal is exactly 1 and the matrix is exactly symmetric.
struct SimilarityMatrix {
    RMatrix entries;
};

/// Solution of B * Omega = U for the full eigenvector matrix U, valid
/// while B is numerically full rank.
struct TransformMatrix {
    CMatrix entries;
};

SimilarityMatrix similarity_matrix(const RVector& eigenvalues_desc);

/// Least-squares solve of B * Omega = eigenvectors. Throws
/// RankDeficientSimilarity when the smallest singular value of B is not
/// above 1e-10 of the largest; the exception carries the condition
/// estimate so callers can fall back to the unrefined estimate.
TransformMatrix transform_matrix(const SimilarityMatrix& similarity, const CMatrix& eigenvectors);

/// Element-wise logistic reshaping 1 / (1 + exp(mu * (b - 0.5))).
/// Fixes 0.5, maps (0,1) into (0,1) and is strictly decreasing in b for
/// mu > 0. mu = 0 collapses every entry to 0.5.
RMatrix modify_similarity(const SimilarityMatrix& similarity, double mu);

/// Orthonormal basis of the modified signal subspace: the first
/// `source_count` columns of modified * Omega (the columns paired with
/// the largest eigenvalues), orthonormalized through the unitary polar
/// factor so an already orthonormal input passes through unchanged.
/// Throws DegenerateRefinement when those columns are numerically rank
/// deficient (always the case at mu = 0 for source_count >= 2).
CMatrix refined_eigenspace(const RMatrix& modified, const TransformMatrix& transform, int source_count);

/// Signal subspace rebuilt from candidate angles: A (A^H A)^{-1/2} with
/// the Hermitian PSD principal inverse square root, giving orthonormal
/// columns spanning the manifold of the angles. Throws
/// DegenerateRefinement for (near-)duplicate angles.
CMatrix reconstruct_signal_subspace(std::span<const double> thetas_deg, const ArrayGeometry& geom);

/// Frobenius distance between the projectors of two orthonormal-column
/// subspace bases. Symmetric, zero iff equal spans, at most sqrt(2 P).
double reconstruction_error(const CMatrix& basis_a, const CMatrix& basis_b);

/// One evaluation of the composite cost at a fixed modification factor.
struct CostSample {
    double cost = 0.0;                 // subspace self-consistency cost J
    std::vector<double> doas_deg;      // angles estimated from the modified subspace
    bool degraded_pick = false;
    CMatrix reconstructed_basis;       // manifold reconstruction at those angles
};

/// Pipeline at one mu: reshape the similarity matrix, rebuild the
/// subspace, estimate angles with it, reconstruct the manifold subspace
/// at the estimates, and measure the projector distance between the two.
/// Throws DegenerateRefinement when any stage collapses.
CostSample cost_at_mu(double mu, const SimilarityMatrix& similarity, const TransformMatrix& transform,
                      const ArrayGeometry& geom, const SteeringTable& table, int source_count);

/// One mu grid point of a search. Skipped points carry NaN for the
/// numeric fields and an empty angle list.
struct MuSample {
    double mu = 0.0;
    bool skipped = false;
    double cost = 0.0;           // J(mu)
    double recon_error = 0.0;    // distance of the angle reconstruction from the unmodified signal subspace
    std::vector<double> doas_deg;
    bool degraded_pick = false;
};

struct RefinementResult {
    double best_mu = 0.0;
    std::vector<double> refined_doas_deg;  // angles at best_mu
    bool best_degraded = false;
    double best_cost = 0.0;
    double best_recon_error = 0.0;
    std::vector<MuSample> samples;         // one per grid point, in grid order

    std::vector<std::pair<double, double>> cost_trace() const;         // (mu, J), NaN when skipped
    std::vector<std::pair<double, double>> recon_error_trace() const;  // (mu, R_e), NaN when skipped
    std::vector<double> skipped_mus() const;
};

/// Exhaustive scan of the inclusive mu grid. best_mu minimizes the cost
/// over non-skipped points, ties resolved toward the smaller mu. Throws
/// RefinementFailed when every grid point was degenerate.
RefinementResult search_mu(const MuGrid& grid, const SimilarityMatrix& similarity,
                           const TransformMatrix& transform, const ArrayGeometry& geom,
                           const SteeringTable& table, int source_count);

}  // namespace doa
