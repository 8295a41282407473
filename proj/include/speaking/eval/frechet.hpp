// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace speaking {

struct GaussianSummary {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
};

using EmbeddingSet = std::vector<std::vector<double>>;

// Sample mean and unbiased (n-1) covariance. Throws InsufficientSamples for
// fewer than two vectors and DimensionMismatch for ragged input.
GaussianSummary fit_gaussian(const EmbeddingSet& embeddings);

// ||mu1-mu2||^2 + Tr(C1 + C2 - 2*sqrt(C1*C2)) with the matrix square root
// taken through the symmetric eigendecomposition of the symmetrized product
// (C1*C2 + (C1*C2)')/2. Eigenvalues in (-1e-8, 0) are clipped to zero;
// anything more negative raises NonPSD.
double frechet_distance(const GaussianSummary& g1, const GaussianSummary& g2);

// Fréchet distance between Gaussian fits of the two embedding sets. The
// embedder that produces the vectors is a pluggable backend: an image
// network for FID, a clip network for FVD — the math downstream is shared.
double fid_score(const EmbeddingSet& real_embeds, const EmbeddingSet& gen_embeds);

// JSON fixture {"name": ..., "real": [[...],...], "generated": [[...],...]}.
struct EmbeddingFixture {
    std::string name;
    EmbeddingSet real;
    EmbeddingSet generated;
};

EmbeddingFixture load_embedding_fixture(const std::filesystem::path& path);

}  // namespace speaking
