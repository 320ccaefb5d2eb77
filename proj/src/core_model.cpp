#include "fsmodel/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_set>

namespace fsmodel {

namespace {

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

const char* feature_kind_name(FeatureKind kind) {
    return kind == FeatureKind::Numeric ? "numeric" : "binary_categorical";
}

const char* feature_role_name(FeatureRole role) {
    switch (role) {
    case FeatureRole::Hardware: return "hardware";
    case FeatureRole::Gluster: return "gluster";
    case FeatureRole::Workload: return "workload";
    }
    return "hardware";
}

std::optional<FeatureKind> feature_kind_from_name(std::string_view name) {
    if (name == "numeric") return FeatureKind::Numeric;
    if (name == "binary_categorical") return FeatureKind::BinaryCategorical;
    return std::nullopt;
}

std::optional<FeatureRole> feature_role_from_name(std::string_view name) {
    if (name == "hardware") return FeatureRole::Hardware;
    if (name == "gluster") return FeatureRole::Gluster;
    if (name == "workload") return FeatureRole::Workload;
    return std::nullopt;
}

FeatureDescriptor FeatureDescriptor::numeric(std::string name, std::string units,
                                             FeatureRole role) {
    FeatureDescriptor d;
    d.name = std::move(name);
    d.kind = FeatureKind::Numeric;
    d.units = std::move(units);
    d.role = role;
    return d;
}

FeatureDescriptor FeatureDescriptor::categorical(std::string name, FeatureRole role,
                                                 std::string zero_label,
                                                 std::string one_label) {
    FeatureDescriptor d;
    d.name = std::move(name);
    d.kind = FeatureKind::BinaryCategorical;
    d.role = role;
    d.labels = {std::move(zero_label), std::move(one_label)};
    return d;
}

FeatureSchema::FeatureSchema(std::vector<FeatureDescriptor> features,
                             std::vector<std::string> metrics)
    : features_(std::move(features)), metrics_(std::move(metrics)) {
    std::unordered_set<std::string> seen;
    for (const auto& f : features_) {
        if (f.name.empty())
            raise(ErrorKind::SchemaInvalid, "feature name must be non-empty");
        if (!seen.insert(f.name).second)
            raise(ErrorKind::SchemaInvalid, "duplicate feature name '" + f.name + "'");
        if (f.kind == FeatureKind::BinaryCategorical) {
            if (f.labels[0].empty() || f.labels[1].empty())
                raise(ErrorKind::SchemaInvalid,
                      "categorical feature '" + f.name + "' needs two labels");
            if (lowercase(f.labels[0]) == lowercase(f.labels[1]))
                raise(ErrorKind::SchemaInvalid,
                      "categorical feature '" + f.name +
                          "' labels must differ case-insensitively");
        }
    }
    std::unordered_set<std::string> metric_seen;
    for (const auto& m : metrics_) {
        if (m.empty())
            raise(ErrorKind::SchemaInvalid, "metric name must be non-empty");
        if (!metric_seen.insert(m).second)
            raise(ErrorKind::SchemaInvalid, "duplicate metric name '" + m + "'");
        if (seen.count(m))
            raise(ErrorKind::SchemaInvalid,
                  "name '" + m + "' used as both feature and metric");
    }
}

std::optional<std::size_t> FeatureSchema::feature_index(std::string_view name) const {
    for (std::size_t i = 0; i < features_.size(); ++i)
        if (features_[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> FeatureSchema::metric_index(std::string_view name) const {
    for (std::size_t i = 0; i < metrics_.size(); ++i)
        if (metrics_[i] == name) return i;
    return std::nullopt;
}

bool FeatureSchema::compatible_with(const FeatureSchema& other) const {
    if (features_.size() != other.features_.size()) return false;
    if (metrics_ != other.metrics_) return false;
    for (std::size_t i = 0; i < features_.size(); ++i) {
        const auto& a = features_[i];
        const auto& b = other.features_[i];
        if (a.name != b.name || a.kind != b.kind || a.labels != b.labels) return false;
    }
    return true;
}

namespace {

std::vector<std::string> default_metrics() {
    return {"write_mbps", "read_mbps", "rand_read_mbps", "rand_write_mbps"};
}

} // namespace

FeatureSchema FeatureSchema::hardware() {
    std::vector<FeatureDescriptor> f;
    f.push_back(FeatureDescriptor::categorical("network", FeatureRole::Hardware,
                                               "gigabit", "infiniband"));
    f.push_back(FeatureDescriptor::numeric("disk_read_speed", "MB/s", FeatureRole::Hardware));
    f.push_back(FeatureDescriptor::numeric("disk_write_speed", "MB/s", FeatureRole::Hardware));
    f.push_back(FeatureDescriptor::categorical("base_filesystem", FeatureRole::Hardware,
                                               "ext3", "xfs"));
    f.push_back(FeatureDescriptor::numeric("num_servers", "count", FeatureRole::Hardware));
    f.push_back(FeatureDescriptor::numeric("num_clients", "count", FeatureRole::Hardware));
    f.push_back(FeatureDescriptor::numeric("striping", "count", FeatureRole::Gluster));
    f.push_back(FeatureDescriptor::numeric("replication", "count", FeatureRole::Gluster));
    f.push_back(FeatureDescriptor::numeric("workload_size", "GB", FeatureRole::Workload));
    return FeatureSchema(std::move(f), default_metrics());
}

FeatureSchema FeatureSchema::gluster() {
    std::vector<FeatureDescriptor> f;
    f.push_back(FeatureDescriptor::numeric("block_size_kb", "KB", FeatureRole::Workload));
    f.push_back(FeatureDescriptor::numeric("cache_size_mb", "MB", FeatureRole::Gluster));
    f.push_back(FeatureDescriptor::categorical("write_behind", FeatureRole::Gluster, "off", "on"));
    f.push_back(FeatureDescriptor::categorical("read_ahead", FeatureRole::Gluster, "off", "on"));
    f.push_back(FeatureDescriptor::categorical("io_cache", FeatureRole::Gluster, "off", "on"));
    f.push_back(FeatureDescriptor::categorical("md_cache", FeatureRole::Gluster, "off", "on"));
    f.push_back(FeatureDescriptor::categorical("o_sync", FeatureRole::Workload, "off", "on"));
    return FeatureSchema(std::move(f), default_metrics());
}

std::optional<FeatureSchema> FeatureSchema::builtin(std::string_view name) {
    if (name == "hardware") return hardware();
    if (name == "gluster") return gluster();
    return std::nullopt;
}

Dataset::Dataset(FeatureSchema schema, std::vector<Record> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
    const std::size_t p = schema_.feature_count();
    const std::size_t m = schema_.metric_count();
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (r.feature_values.size() != p || r.metric_values.size() != m)
            raise(ErrorKind::SchemaInvalid,
                  "record " + std::to_string(i) + " has " +
                      std::to_string(r.feature_values.size()) + " feature and " +
                      std::to_string(r.metric_values.size()) + " metric values; schema needs " +
                      std::to_string(p) + " and " + std::to_string(m));
        for (double v : r.feature_values)
            if (!std::isfinite(v))
                raise(ErrorKind::NonFiniteValue,
                      "record " + std::to_string(i) + " has a non-finite feature value");
        for (double v : r.metric_values)
            if (!std::isfinite(v))
                raise(ErrorKind::NonFiniteValue,
                      "record " + std::to_string(i) + " has a non-finite metric value");
    }
}

std::vector<double> Dataset::feature_column(std::size_t feature_idx) const {
    std::vector<double> col;
    col.reserve(records_.size());
    for (const auto& r : records_) col.push_back(r.feature_values.at(feature_idx));
    return col;
}

std::vector<double> Dataset::metric_column(std::size_t metric_idx) const {
    std::vector<double> col;
    col.reserve(records_.size());
    for (const auto& r : records_) col.push_back(r.metric_values.at(metric_idx));
    return col;
}

double encode_value(const FeatureDescriptor& descriptor, std::string_view raw) {
    if (descriptor.kind == FeatureKind::BinaryCategorical) {
        const std::string lowered = lowercase(raw);
        if (lowered == lowercase(descriptor.labels[0])) return 0.0;
        if (lowered == lowercase(descriptor.labels[1])) return 1.0;
        raise(ErrorKind::UnknownLabel,
              "'" + std::string(raw) + "' is not a label of feature '" + descriptor.name +
                  "' (expected '" + descriptor.labels[0] + "' or '" + descriptor.labels[1] + "')");
    }
    double value = 0.0;
    const char* first = raw.data();
    const char* last = raw.data() + raw.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        raise(ErrorKind::ParseError,
              "'" + std::string(raw) + "' is not a number for feature '" + descriptor.name + "'");
    return encode_value(descriptor, value);
}

double encode_value(const FeatureDescriptor& descriptor, double raw) {
    if (!std::isfinite(raw))
        raise(ErrorKind::NonFiniteValue,
              "non-finite value for feature '" + descriptor.name + "'");
    if (descriptor.kind == FeatureKind::BinaryCategorical && raw != 0.0 && raw != 1.0)
        raise(ErrorKind::UnknownLabel,
              "categorical feature '" + descriptor.name + "' accepts only 0 or 1, got " +
                  std::to_string(raw));
    return raw;
}

std::string render_value(const FeatureDescriptor& descriptor, double encoded) {
    if (descriptor.kind == FeatureKind::BinaryCategorical) {
        if (encoded == 0.0) return descriptor.labels[0];
        if (encoded == 1.0) return descriptor.labels[1];
        raise(ErrorKind::UnknownLabel,
              "categorical feature '" + descriptor.name + "' holds non-binary value");
    }
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), encoded);
    return std::string(buf, ptr);
}

DesignMatrix build_design_matrix(const Dataset& dataset) {
    if (dataset.size() == 0)
        raise(ErrorKind::EmptyDataset, "cannot build a design matrix from an empty dataset");
    const std::size_t n = dataset.size();
    const std::size_t p = dataset.schema().feature_count();
    DesignMatrix m;
    m.rows = n;
    m.cols = p + 1;
    m.values.assign(n * (p + 1), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, 0) = 1.0;
        const auto& fv = dataset.records()[i].feature_values;
        for (std::size_t j = 0; j < p; ++j) m.at(i, j + 1) = fv[j];
    }
    return m;
}

} // namespace fsmodel
