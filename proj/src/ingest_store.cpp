#include "fsmodel/ingest_store.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace fsmodel {

namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
    while (end > begin &&
           (text[end - 1] == ' ' || text[end - 1] == '\t' || text[end - 1] == '\r'))
        --end;
    return std::string(text.substr(begin, end - begin));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

double parse_double(const std::string& cell, std::size_t row, const std::string& column) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        raise(ErrorKind::ParseError,
              "row " + std::to_string(row) + ", column '" + column + "': '" + cell +
                  "' is not a number");
    if (!std::isfinite(value))
        raise(ErrorKind::NonFiniteValue,
              "row " + std::to_string(row) + ", column '" + column + "': value is not finite");
    return value;
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

json schema_to_json(const FeatureSchema& schema) {
    json features = json::array();
    for (const auto& f : schema.features()) {
        json jf;
        jf["name"] = f.name;
        jf["kind"] = feature_kind_name(f.kind);
        jf["units"] = f.units;
        jf["role"] = feature_role_name(f.role);
        if (f.kind == FeatureKind::BinaryCategorical) jf["labels"] = {f.labels[0], f.labels[1]};
        features.push_back(std::move(jf));
    }
    json out;
    out["features"] = std::move(features);
    out["metrics"] = schema.metrics();
    return out;
}

FeatureSchema schema_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("features") || !doc.contains("metrics"))
        raise(ErrorKind::SchemaInvalid, "schema document needs 'features' and 'metrics'");
    std::vector<FeatureDescriptor> features;
    for (const json& jf : doc.at("features")) {
        FeatureDescriptor d;
        d.name = jf.at("name").get<std::string>();
        const auto kind = feature_kind_from_name(jf.at("kind").get<std::string>());
        if (!kind)
            raise(ErrorKind::SchemaInvalid,
                  "feature '" + d.name + "' has unknown kind '" +
                      jf.at("kind").get<std::string>() + "'");
        d.kind = *kind;
        d.units = jf.value("units", std::string{});
        const auto role = feature_role_from_name(jf.value("role", std::string{"hardware"}));
        if (!role)
            raise(ErrorKind::SchemaInvalid, "feature '" + d.name + "' has unknown role");
        d.role = *role;
        if (d.kind == FeatureKind::BinaryCategorical) {
            if (!jf.contains("labels") || !jf.at("labels").is_array() ||
                jf.at("labels").size() != 2)
                raise(ErrorKind::SchemaInvalid,
                      "categorical feature '" + d.name + "' needs exactly two labels");
            d.labels = {jf.at("labels")[0].get<std::string>(),
                        jf.at("labels")[1].get<std::string>()};
        }
        features.push_back(std::move(d));
    }
    std::vector<std::string> metrics;
    for (const json& jm : doc.at("metrics")) metrics.push_back(jm.get<std::string>());
    return FeatureSchema(std::move(features), std::move(metrics));
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorKind::ParseError, "'" + path.string() + "': " + e.what());
    }
}

void write_json_file(const json& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        raise(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out)
        raise(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

} // namespace

void ModelDocument::validate() const {
    const std::size_t p = schema.feature_count();
    if (coefficients.size() != schema.metric_count() ||
        fit_stats.size() != schema.metric_count())
        raise(ErrorKind::SchemaInvalid,
              "model document must carry coefficients and fit stats for every metric");
    for (std::size_t m = 0; m < schema.metric_count(); ++m) {
        const auto& [name, beta] = coefficients[m];
        if (name != schema.metrics()[m])
            raise(ErrorKind::SchemaInvalid,
                  "coefficient entry '" + name + "' does not match schema metric '" +
                      schema.metrics()[m] + "'");
        if (beta.size() != p + 1)
            raise(ErrorKind::SchemaInvalid,
                  "metric '" + name + "' has " + std::to_string(beta.size()) +
                      " coefficients; expected p+1 = " + std::to_string(p + 1));
        for (double v : beta)
            if (!std::isfinite(v))
                raise(ErrorKind::SchemaInvalid,
                      "metric '" + name + "' has a non-finite coefficient");
        const auto& [stats_name, stats] = fit_stats[m];
        if (stats_name != name)
            raise(ErrorKind::SchemaInvalid,
                  "fit stats entry '" + stats_name + "' does not match metric '" + name + "'");
        if (stats.k != p)
            raise(ErrorKind::SchemaInvalid,
                  "fit stats k=" + std::to_string(stats.k) + " must equal feature count " +
                      std::to_string(p));
        if (stats.n < stats.k + 2)
            raise(ErrorKind::SchemaInvalid,
                  "fit stats n=" + std::to_string(stats.n) + " must be at least k+2");
    }
}

FittedModel ModelDocument::to_model() const {
    validate();
    std::vector<std::vector<double>> beta;
    beta.reserve(coefficients.size());
    for (const auto& [name, b] : coefficients) beta.push_back(b);
    return FittedModel(schema, std::move(beta));
}

ModelDocument ModelDocument::from_fit(const FittedModel& model,
                                      const std::vector<FitStats>& stats) {
    const FeatureSchema& schema = model.schema();
    if (stats.size() != schema.metric_count())
        raise(ErrorKind::SchemaInvalid, "need one fit stats entry per metric");
    ModelDocument doc{ModelDocument::kFormatVersion, schema, {}, {}};
    for (std::size_t m = 0; m < schema.metric_count(); ++m) {
        doc.coefficients.emplace_back(schema.metrics()[m], model.beta(m));
        doc.fit_stats.emplace_back(
            schema.metrics()[m],
            Stats{stats[m].r2, stats[m].adj_r2, stats[m].n, stats[m].k});
    }
    doc.validate();
    return doc;
}

Dataset load_csv(const std::filesystem::path& path, const FeatureSchema& schema) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");

    std::string line;
    if (!std::getline(in, line))
        raise(ErrorKind::ParseError, "'" + path.string() + "' is empty; a header is required");
    const std::vector<std::string> header = split_row(line);

    const std::size_t p = schema.feature_count();
    const std::size_t metric_count = schema.metric_count();
    // column index in the row -> (is_metric, schema index)
    std::vector<std::size_t> feature_cols(p, SIZE_MAX);
    std::vector<std::size_t> metric_cols(metric_count, SIZE_MAX);
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string& name = header[c];
        if (auto fi = schema.feature_index(name)) {
            if (feature_cols[*fi] != SIZE_MAX)
                raise(ErrorKind::ExtraColumn, "duplicate column '" + name + "'");
            feature_cols[*fi] = c;
        } else if (auto mi = schema.metric_index(name)) {
            if (metric_cols[*mi] != SIZE_MAX)
                raise(ErrorKind::ExtraColumn, "duplicate column '" + name + "'");
            metric_cols[*mi] = c;
        } else {
            raise(ErrorKind::ExtraColumn, "unexpected column '" + name + "'");
        }
    }
    for (std::size_t f = 0; f < p; ++f)
        if (feature_cols[f] == SIZE_MAX)
            raise(ErrorKind::MissingColumn,
                  "missing column '" + schema.features()[f].name + "'");
    for (std::size_t m = 0; m < metric_count; ++m)
        if (metric_cols[m] == SIZE_MAX)
            raise(ErrorKind::MissingColumn, "missing column '" + schema.metrics()[m] + "'");

    std::vector<Record> records;
    std::size_t row = 1; // header is row 1
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_row(line);
        if (cells.size() != header.size())
            raise(ErrorKind::ParseError,
                  "row " + std::to_string(row) + ": expected " +
                      std::to_string(header.size()) + " cells, got " +
                      std::to_string(cells.size()));
        Record r;
        r.feature_values.reserve(p);
        r.metric_values.reserve(metric_count);
        for (std::size_t f = 0; f < p; ++f) {
            const FeatureDescriptor& desc = schema.features()[f];
            try {
                r.feature_values.push_back(encode_value(desc, cells[feature_cols[f]]));
            } catch (const Error& e) {
                throw Error(e.kind(),
                            "row " + std::to_string(row) + ", column '" + desc.name +
                                "': " + e.what());
            }
        }
        for (std::size_t m = 0; m < metric_count; ++m)
            r.metric_values.push_back(
                parse_double(cells[metric_cols[m]], row, schema.metrics()[m]));
        records.push_back(std::move(r));
    }
    return Dataset(schema, std::move(records));
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        raise(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    const FeatureSchema& schema = dataset.schema();
    for (std::size_t f = 0; f < schema.feature_count(); ++f) {
        if (f > 0) out << ',';
        out << schema.features()[f].name;
    }
    for (const std::string& m : schema.metrics()) out << ',' << m;
    out << '\n';
    for (const Record& r : dataset.records()) {
        for (std::size_t f = 0; f < schema.feature_count(); ++f) {
            if (f > 0) out << ',';
            out << render_value(schema.features()[f], r.feature_values[f]);
        }
        for (double v : r.metric_values) out << ',' << format_double(v);
        out << '\n';
    }
    if (!out)
        raise(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

void save_model(const ModelDocument& document, const std::filesystem::path& path) {
    document.validate();
    json doc;
    doc["format_version"] = document.format_version;
    doc["schema"] = schema_to_json(document.schema);
    json coeffs;
    for (const auto& [name, beta] : document.coefficients) coeffs[name] = beta;
    doc["coefficients"] = std::move(coeffs);
    json stats;
    for (const auto& [name, s] : document.fit_stats)
        stats[name] = {{"r2", s.r2}, {"adj_r2", s.adj_r2}, {"n", s.n}, {"k", s.k}};
    doc["fit_stats"] = std::move(stats);
    write_json_file(doc, path);
}

ModelDocument load_model(const std::filesystem::path& path) {
    const json doc = read_json_file(path);
    if (!doc.is_object() || !doc.contains("format_version"))
        raise(ErrorKind::SchemaInvalid,
              "'" + path.string() + "' is not a model document");
    const int version = doc.at("format_version").get<int>();
    if (version != ModelDocument::kFormatVersion)
        raise(ErrorKind::VersionMismatch,
              "model format version " + std::to_string(version) + " is not supported (expected " +
                  std::to_string(ModelDocument::kFormatVersion) + ")");

    ModelDocument out{version, schema_from_json(doc.at("schema")), {}, {}};
    if (!doc.contains("coefficients") || !doc.contains("fit_stats"))
        raise(ErrorKind::SchemaInvalid, "model document needs coefficients and fit_stats");
    const json& coeffs = doc.at("coefficients");
    const json& stats = doc.at("fit_stats");
    for (const auto& item : coeffs.items())
        if (!out.schema.metric_index(item.key()))
            raise(ErrorKind::SchemaInvalid,
                  "coefficients name unknown metric '" + item.key() + "'");
    for (const std::string& metric : out.schema.metrics()) {
        if (!coeffs.contains(metric))
            raise(ErrorKind::SchemaInvalid, "coefficients missing metric '" + metric + "'");
        out.coefficients.emplace_back(metric, coeffs.at(metric).get<std::vector<double>>());
        if (!stats.contains(metric))
            raise(ErrorKind::SchemaInvalid, "fit_stats missing metric '" + metric + "'");
        const json& s = stats.at(metric);
        out.fit_stats.emplace_back(
            metric, ModelDocument::Stats{s.at("r2").get<double>(), s.at("adj_r2").get<double>(),
                                         s.at("n").get<std::size_t>(),
                                         s.at("k").get<std::size_t>()});
    }
    out.validate();
    return out;
}

FeatureSchema load_schema(const std::filesystem::path& path) {
    return schema_from_json(read_json_file(path));
}

void save_schema(const FeatureSchema& schema, const std::filesystem::path& path) {
    write_json_file(schema_to_json(schema), path);
}

std::vector<DesignCandidate> load_candidates(const std::filesystem::path& path,
                                             const FeatureSchema& schema) {
    const json doc = read_json_file(path);
    if (!doc.is_array())
        raise(ErrorKind::SchemaInvalid,
              "'" + path.string() + "' must be a JSON array of candidates");
    std::vector<DesignCandidate> candidates;
    for (const json& jc : doc) {
        DesignCandidate c;
        c.name = jc.at("name").get<std::string>();
        const json& features = jc.at("features");
        for (const auto& item : features.items())
            if (!schema.feature_index(item.key()))
                raise(ErrorKind::ExtraColumn,
                      "candidate '" + c.name + "' names unknown feature '" + item.key() + "'");
        for (const FeatureDescriptor& desc : schema.features()) {
            if (!features.contains(desc.name))
                raise(ErrorKind::MissingColumn,
                      "candidate '" + c.name + "' is missing feature '" + desc.name + "'");
            const json& v = features.at(desc.name);
            if (v.is_string())
                c.feature_values.push_back(encode_value(desc, v.get<std::string>()));
            else
                c.feature_values.push_back(encode_value(desc, v.get<double>()));
        }
        c.cpu_points = jc.at("cpu_points").get<double>();
        c.power_watts = jc.at("power_watts").get<double>();
        candidates.push_back(std::move(c));
    }
    return candidates;
}

void save_truth(const PlantedTruth& truth, const FeatureSchema& schema,
                const std::filesystem::path& path) {
    json doc;
    doc["regime"] = regime_name(truth.regime);
    doc["seed"] = truth.seed;
    doc["noise_sigma"] = truth.noise_sigma;
    if (truth.regime == Regime::Hardware) {
        json coeffs;
        for (std::size_t m = 0; m < schema.metric_count(); ++m)
            coeffs[schema.metrics()[m]] = truth.beta[m];
        doc["coefficients"] = std::move(coeffs);
    } else {
        doc["o_sync"] = truth.o_sync;
        json curves;
        for (std::size_t m = 0; m < schema.metric_count(); ++m) {
            const GlusterCurve& c = truth.curves[m];
            curves[schema.metrics()[m]] = {{"t_max_mbps", c.t_max_mbps},
                                           {"b_half_kb", c.b_half_kb},
                                           {"cache_gain_mbps", c.cache_gain_mbps},
                                           {"cache_sat_mb", c.cache_sat_mb}};
        }
        doc["curves"] = std::move(curves);
    }
    write_json_file(doc, path);
}

} // namespace fsmodel
