#pragma once

#include "doa/types.hpp"

namespace doa {

/// Eigendecomposition of a Hermitian PSD matrix with eigenvalues sorted
/// descending and column m of `eigenvectors` paired with eigenvalue m.
/// Negative roundoff eigenvalues are clamped to zero.
struct EigenSystem {
    RVector eigenvalues;
    CMatrix eigenvectors;
};

/// Signal/noise split of an EigenSystem: the signal basis holds the
/// eigenvectors of the largest eigenvalues.
struct SubspacePair {
    CMatrix signal_basis;
    CMatrix noise_basis;
    RVector signal_eigenvalues;
    RVector noise_eigenvalues;
};

/// (1/N) sum of x x^H over snapshot columns, Hermitian-symmetrized.
CMatrix sample_covariance(const CMatrix& snapshots);

/// Eigendecomposition for covariance-like input (Hermitian to 1e-8,
/// PSD up to roundoff). Eigenvalues come out descending; exact ties keep
/// the solver's ascending-index order, so the result is deterministic.
EigenSystem eigendecompose(const CMatrix& hermitian);

/// First `source_count` eigenvector columns vs the rest.
SubspacePair partition_subspaces(const EigenSystem& eig, int source_count);

}  // namespace doa
