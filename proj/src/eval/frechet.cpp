// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/eval/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "speaking/core/errors.hpp"

namespace speaking {

namespace {

constexpr double kPsdTolerance = 1e-8;

void check_psd(const Eigen::MatrixXd& c, const char* which) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
    if (eig.eigenvalues().minCoeff() < -kPsdTolerance) {
        throw NonPSD(std::string("frechet_distance: ") + which +
                     " covariance has a negative eigenvalue");
    }
}

}  // namespace

GaussianSummary fit_gaussian(const EmbeddingSet& embeddings) {
    const auto n = static_cast<Eigen::Index>(embeddings.size());
    if (n < 2) throw InsufficientSamples("fit_gaussian: need at least two embeddings");
    const auto d = static_cast<Eigen::Index>(embeddings.front().size());
    if (d == 0) throw DimensionMismatch("fit_gaussian: zero-dimensional embeddings");

    Eigen::MatrixXd x(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(embeddings[i].size()) != d) {
            throw DimensionMismatch("fit_gaussian: ragged embedding list");
        }
        for (Eigen::Index j = 0; j < d; ++j) x(i, j) = embeddings[i][j];
    }

    GaussianSummary g;
    g.mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - g.mean.transpose();
    g.covariance = (centered.adjoint() * centered) / static_cast<double>(n - 1);
    // Force exact symmetry so downstream eigensolvers see a clean input.
    g.covariance = ((g.covariance + g.covariance.transpose()) / 2.0).eval();
    return g;
}

double frechet_distance(const GaussianSummary& g1, const GaussianSummary& g2) {
    if (g1.mean.size() != g2.mean.size() || g1.covariance.rows() != g2.covariance.rows() ||
        g1.covariance.cols() != g1.covariance.rows() ||
        g2.covariance.cols() != g2.covariance.rows()) {
        throw DimensionMismatch("frechet_distance: dimension mismatch");
    }
    check_psd(g1.covariance, "first");
    check_psd(g2.covariance, "second");

    const Eigen::MatrixXd product = g1.covariance * g2.covariance;
    const Eigen::MatrixXd symmetrized = (product + product.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetrized);
    if (eig.info() != Eigen::Success) {
        throw NonPSD("frechet_distance: eigendecomposition failed");
    }
    double trace_sqrt = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        const double lambda = eig.eigenvalues()[i];
        if (lambda < -kPsdTolerance) {
            throw NonPSD("frechet_distance: covariance product is not PSD");
        }
        trace_sqrt += std::sqrt(std::max(lambda, 0.0));
    }

    const double mean_term = (g1.mean - g2.mean).squaredNorm();
    const double result =
        mean_term + g1.covariance.trace() + g2.covariance.trace() - 2.0 * trace_sqrt;
    return std::max(result, 0.0);
}

double fid_score(const EmbeddingSet& real_embeds, const EmbeddingSet& gen_embeds) {
    return frechet_distance(fit_gaussian(real_embeds), fit_gaussian(gen_embeds));
}

EmbeddingFixture load_embedding_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open embedding fixture: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("embedding fixture " + path.string() + ": " + e.what());
    }
    EmbeddingFixture fx;
    try {
        fx.name = j.value("name", std::string{});
        fx.real = j.at("real").get<EmbeddingSet>();
        fx.generated = j.at("generated").get<EmbeddingSet>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("embedding fixture " + path.string() + ": " + e.what());
    }
    return fx;
}

}  // namespace speaking
