#include "fsmodel/evaluation.hpp"

#include <cmath>

#include "fsmodel/prng.hpp"

namespace fsmodel {

FitStats fit_stats(std::span<const double> y, std::span<const double> y_hat, std::size_t k) {
    const std::size_t n = y.size();
    if (y_hat.size() != n)
        raise(ErrorKind::SchemaMismatch, "y and y_hat must have equal length");
    if (n < 2)
        raise(ErrorKind::DegenerateDof, "need at least 2 samples, got " + std::to_string(n));
    if (n <= k + 1)
        raise(ErrorKind::DegenerateDof,
              "adjusted R^2 needs n > k+1 (n=" + std::to_string(n) +
                  ", k=" + std::to_string(k) + ")");

    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);

    FitStats s;
    s.n = n;
    s.k = k;
    for (std::size_t i = 0; i < n; ++i) {
        s.tss += (y[i] - mean) * (y[i] - mean);
        s.sse += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
        s.ssr += (y_hat[i] - mean) * (y_hat[i] - mean);
    }
    if (s.tss == 0.0)
        raise(ErrorKind::ZeroVariance, "all responses are identical; R^2 is undefined");
    s.r2 = 1.0 - s.sse / s.tss;
    const double dof_ratio = static_cast<double>(n - 1) / static_cast<double>(n - k - 1);
    s.adj_r2 = 1.0 - dof_ratio * (1.0 - s.r2);
    return s;
}

std::vector<FitStats> evaluate_model(const FittedModel& model, const Dataset& dataset) {
    if (!model.schema().compatible_with(dataset.schema()))
        raise(ErrorKind::SchemaMismatch, "model schema does not match dataset schema");
    const std::size_t k = dataset.schema().feature_count();
    std::vector<FitStats> out;
    out.reserve(dataset.schema().metric_count());
    for (std::size_t m = 0; m < dataset.schema().metric_count(); ++m) {
        std::vector<double> y = dataset.metric_column(m);
        std::vector<double> y_hat(y.size(), 0.0);
        for (std::size_t i = 0; i < dataset.size(); ++i)
            y_hat[i] = predict_with_beta(model.beta(m), dataset.records()[i].feature_values);
        out.push_back(fit_stats(y, y_hat, k));
    }
    return out;
}

CrossValReport cross_validate(const Dataset& dataset, double train_fraction,
                              std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        raise(ErrorKind::InvalidConfig, "train fraction must be in (0, 1)");
    const std::size_t n = dataset.size();
    const std::size_t p = dataset.schema().feature_count();
    const auto train_size =
        static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    if (train_size < p + 2 || train_size >= n)
        raise(ErrorKind::TooFewSamples,
              "split of " + std::to_string(n) + " records leaves train=" +
                  std::to_string(train_size) + "; need p+2 <= train < n");

    const std::vector<std::size_t> order = shuffled_indices(n, seed);
    std::vector<Record> train_records;
    std::vector<Record> validation_records;
    train_records.reserve(train_size);
    validation_records.reserve(n - train_size);
    for (std::size_t i = 0; i < n; ++i) {
        const Record& r = dataset.records()[order[i]];
        (i < train_size ? train_records : validation_records).push_back(r);
    }
    const Dataset train_set(dataset.schema(), std::move(train_records));
    const Dataset validation_set(dataset.schema(), std::move(validation_records));

    const FittedModel model = fit(train_set);

    CrossValReport report;
    report.train_size = train_size;
    report.validation_size = n - train_size;
    report.train_fraction = train_fraction;
    report.seed = seed;
    for (std::size_t m = 0; m < dataset.schema().metric_count(); ++m) {
        const std::vector<double>& residuals = model.residuals(m);
        std::vector<double> y_train = train_set.metric_column(m);
        std::vector<double> y_hat_train(y_train.size(), 0.0);
        for (std::size_t i = 0; i < y_train.size(); ++i)
            y_hat_train[i] = y_train[i] - residuals[i];
        const FitStats train = fit_stats(y_train, y_hat_train, p);

        std::vector<double> y_val = validation_set.metric_column(m);
        double val_mean = 0.0;
        for (double v : y_val) val_mean += v;
        val_mean /= static_cast<double>(y_val.size());
        double val_tss = 0.0;
        double val_sse = 0.0;
        for (std::size_t i = 0; i < validation_set.size(); ++i) {
            const double y_hat =
                predict_with_beta(model.beta(m), validation_set.records()[i].feature_values);
            val_tss += (y_val[i] - val_mean) * (y_val[i] - val_mean);
            val_sse += (y_val[i] - y_hat) * (y_val[i] - y_hat);
        }
        if (val_tss == 0.0)
            raise(ErrorKind::ZeroVariance,
                  "validation subset of metric '" + dataset.schema().metrics()[m] +
                      "' has zero variance");

        MetricCrossVal mc;
        mc.metric = dataset.schema().metrics()[m];
        mc.train_r2 = train.r2;
        mc.train_adj_r2 = train.adj_r2;
        mc.validation_r2 = 1.0 - val_sse / val_tss;
        report.per_metric.push_back(std::move(mc));
    }
    return report;
}

} // namespace fsmodel
