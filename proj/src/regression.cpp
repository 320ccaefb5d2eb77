#include "fsmodel/regression.hpp"

#include <cmath>
#include <string>

namespace fsmodel {

FittedModel::FittedModel(FeatureSchema schema, std::vector<std::vector<double>> beta_per_metric)
    : FittedModel(std::move(schema), std::move(beta_per_metric), {}) {}

FittedModel::FittedModel(FeatureSchema schema, std::vector<std::vector<double>> beta_per_metric,
                         std::vector<std::vector<double>> residuals_per_metric)
    : schema_(std::move(schema)),
      beta_(std::move(beta_per_metric)),
      residuals_(std::move(residuals_per_metric)) {
    const std::size_t p = schema_.feature_count();
    if (beta_.size() != schema_.metric_count())
        raise(ErrorKind::SchemaInvalid, "coefficient vectors must cover every schema metric");
    for (const auto& b : beta_) {
        if (b.size() != p + 1)
            raise(ErrorKind::SchemaInvalid,
                  "coefficient vector length " + std::to_string(b.size()) +
                      " does not match p+1 = " + std::to_string(p + 1));
        for (double v : b)
            if (!std::isfinite(v))
                raise(ErrorKind::NonFiniteValue, "non-finite coefficient");
    }
    if (!residuals_.empty() && residuals_.size() != beta_.size())
        raise(ErrorKind::SchemaInvalid, "residual vectors must cover every schema metric");
}

std::size_t FittedModel::metric_index_or_throw(std::string_view metric) const {
    auto idx = schema_.metric_index(metric);
    if (!idx)
        raise(ErrorKind::UnknownMetric, "unknown metric '" + std::string(metric) + "'");
    return *idx;
}

const std::vector<double>& FittedModel::beta(std::string_view metric) const {
    return beta_[metric_index_or_throw(metric)];
}

const std::vector<double>& FittedModel::residuals(std::string_view metric) const {
    return residuals_[metric_index_or_throw(metric)];
}

double FittedModel::predict(std::span<const double> feature_values,
                            std::string_view metric) const {
    if (feature_values.size() != schema_.feature_count())
        raise(ErrorKind::SchemaMismatch,
              "expected " + std::to_string(schema_.feature_count()) + " feature values, got " +
                  std::to_string(feature_values.size()));
    return predict_with_beta(beta_[metric_index_or_throw(metric)], feature_values);
}

double predict_with_beta(std::span<const double> beta, std::span<const double> feature_values) {
    double y = beta[0];
    for (std::size_t j = 0; j < feature_values.size(); ++j) y += beta[j + 1] * feature_values[j];
    return y;
}

namespace {

// In-place Householder QR of the column-major copy of X. After the loop,
// column j holds R above the diagonal and the reflector below it; the
// reflector scales are kept separately. Pivot magnitudes are |R_jj|.
struct HouseholderQR {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;     // column-major, rows x cols
    std::vector<double> tau;   // reflector scales
    std::vector<double> pivots;

    double& at(std::size_t i, std::size_t j) { return a[j * rows + i]; }
    double at(std::size_t i, std::size_t j) const { return a[j * rows + i]; }
};

HouseholderQR decompose(const DesignMatrix& x) {
    HouseholderQR qr;
    qr.rows = x.rows;
    qr.cols = x.cols;
    qr.a.resize(x.rows * x.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) qr.at(i, j) = x.at(i, j);
    qr.tau.assign(x.cols, 0.0);
    qr.pivots.assign(x.cols, 0.0);

    for (std::size_t k = 0; k < qr.cols; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < qr.rows; ++i) norm += qr.at(i, k) * qr.at(i, k);
        norm = std::sqrt(norm);
        qr.pivots[k] = norm;
        if (norm == 0.0) {
            qr.tau[k] = 0.0;
            continue;
        }
        const double alpha = qr.at(k, k) >= 0.0 ? -norm : norm;
        const double vk = qr.at(k, k) - alpha;
        qr.at(k, k) = alpha;
        // Normalized reflector v = (1, a[k+1..]/vk); tau = -vk / alpha.
        for (std::size_t i = k + 1; i < qr.rows; ++i) qr.at(i, k) /= vk;
        qr.tau[k] = -vk / alpha;
        for (std::size_t j = k + 1; j < qr.cols; ++j) {
            double dot = qr.at(k, j);
            for (std::size_t i = k + 1; i < qr.rows; ++i) dot += qr.at(i, k) * qr.at(i, j);
            const double scale = qr.tau[k] * dot;
            qr.at(k, j) -= scale;
            for (std::size_t i = k + 1; i < qr.rows; ++i) qr.at(i, j) -= scale * qr.at(i, k);
        }
    }
    return qr;
}

// Applies Q^T to y, then back-substitutes R beta = (Q^T y)[0..cols).
std::vector<double> solve(const HouseholderQR& qr, std::vector<double> y) {
    for (std::size_t k = 0; k < qr.cols; ++k) {
        if (qr.tau[k] == 0.0) continue;
        double dot = y[k];
        for (std::size_t i = k + 1; i < qr.rows; ++i) dot += qr.at(i, k) * y[i];
        const double scale = qr.tau[k] * dot;
        y[k] -= scale;
        for (std::size_t i = k + 1; i < qr.rows; ++i) y[i] -= scale * qr.at(i, k);
    }
    std::vector<double> beta(qr.cols, 0.0);
    for (std::size_t j = qr.cols; j-- > 0;) {
        double v = y[j];
        for (std::size_t k = j + 1; k < qr.cols; ++k) v -= qr.at(j, k) * beta[k];
        beta[j] = v / qr.at(j, j);
    }
    return beta;
}

std::string column_name(const FeatureSchema& schema, std::size_t col) {
    return col == 0 ? std::string("intercept") : schema.features()[col - 1].name;
}

} // namespace

FittedModel fit(const Dataset& dataset) {
    if (dataset.size() == 0)
        raise(ErrorKind::EmptyDataset, "cannot fit an empty dataset");
    const std::size_t n = dataset.size();
    const std::size_t p = dataset.schema().feature_count();
    if (n < p + 2)
        raise(ErrorKind::TooFewSamples,
              "need at least p+2 = " + std::to_string(p + 2) + " records, got " +
                  std::to_string(n));

    const DesignMatrix x = build_design_matrix(dataset);
    const HouseholderQR qr = decompose(x);

    double largest_pivot = 0.0;
    for (double piv : qr.pivots) largest_pivot = std::max(largest_pivot, piv);
    constexpr double kRelativePivotTolerance = 1e-10;
    for (std::size_t k = 0; k < qr.cols; ++k) {
        if (qr.pivots[k] <= kRelativePivotTolerance * largest_pivot)
            raise(ErrorKind::RankDeficient,
                  "column '" + column_name(dataset.schema(), k) +
                      "' is linearly dependent on earlier columns");
    }

    std::vector<std::vector<double>> beta_per_metric;
    std::vector<std::vector<double>> residuals_per_metric;
    beta_per_metric.reserve(dataset.schema().metric_count());
    residuals_per_metric.reserve(dataset.schema().metric_count());
    for (std::size_t m = 0; m < dataset.schema().metric_count(); ++m) {
        std::vector<double> y = dataset.metric_column(m);
        std::vector<double> beta = solve(qr, y);
        std::vector<double> residuals(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double fitted = beta[0];
            for (std::size_t j = 0; j < p; ++j) fitted += beta[j + 1] * x.at(i, j + 1);
            residuals[i] = dataset.records()[i].metric_values[m] - fitted;
        }
        beta_per_metric.push_back(std::move(beta));
        residuals_per_metric.push_back(std::move(residuals));
    }
    return FittedModel(dataset.schema(), std::move(beta_per_metric),
                       std::move(residuals_per_metric));
}

} // namespace fsmodel
