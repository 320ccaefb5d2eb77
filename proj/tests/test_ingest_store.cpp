#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <functional>

#include <unistd.h>

#include "fsmodel/evaluation.hpp"
#include "fsmodel/ingest_store.hpp"
#include "fsmodel/regression.hpp"
#include "fsmodel/synthbench.hpp"

using namespace fsmodel;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fsmodel_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path file(const std::string& name) const { return path / name; }
    static inline int counter = 0;
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::UsageError;
}

const char* kSmallHeader =
    "network,disk_read_speed,disk_write_speed,base_filesystem,num_servers,"
    "num_clients,striping,replication,workload_size,write_mbps,read_mbps,"
    "rand_read_mbps,rand_write_mbps";

std::string small_csv() {
    std::string text = kSmallHeader;
    text += "\n";
    text += "infiniband,117,148,ext3,5,1,1,1,20,218.7,190.2,120.5,180.1\n";
    text += "gigabit,81,100,xfs,1,5,2,3,0.5,12.5,20.1,15.9,11.2\n";
    text += "infiniband,117,100,xfs,3,3,3,3,1,150.0,140.0,90.0,130.0\n";
    return text;
}

ModelDocument sample_document() {
    const auto [dataset, truth] = generate(GeneratorConfig::hardware(60, 11));
    const FittedModel model = fit(dataset);
    return ModelDocument::from_fit(model, evaluate_model(model, dataset));
}

} // namespace

TEST_CASE("load_csv reads records in order with encoded labels") {
    TempDir dir;
    write_text(dir.file("d.csv"), small_csv());
    const Dataset d = load_csv(dir.file("d.csv"), FeatureSchema::hardware());
    REQUIRE(d.size() == 3);
    CHECK(d.records()[0].feature_values[0] == 1.0);  // infiniband
    CHECK(d.records()[1].feature_values[0] == 0.0);  // gigabit
    CHECK(d.records()[1].feature_values[3] == 1.0);  // xfs
    CHECK(d.records()[0].metric_values[0] == 218.7);
    CHECK(d.records()[2].metric_values[3] == 130.0);
}

TEST_CASE("load_csv header columns may appear in any order") {
    TempDir dir;
    write_text(dir.file("d.csv"),
               "write_mbps,read_mbps,rand_read_mbps,rand_write_mbps,workload_size,"
               "replication,striping,num_clients,num_servers,base_filesystem,"
               "disk_write_speed,disk_read_speed,network\n"
               "218.7,190.2,120.5,180.1,20,1,1,1,5,ext3,148,117,infiniband\n");
    const Dataset d = load_csv(dir.file("d.csv"), FeatureSchema::hardware());
    REQUIRE(d.size() == 1);
    CHECK(d.records()[0].feature_values[0] == 1.0);
    CHECK(d.records()[0].feature_values[8] == 20.0);
    CHECK(d.records()[0].metric_values[0] == 218.7);
}

TEST_CASE("load_csv rejects a header missing replication") {
    TempDir dir;
    write_text(dir.file("d.csv"),
               "network,disk_read_speed,disk_write_speed,base_filesystem,num_servers,"
               "num_clients,striping,workload_size,write_mbps,read_mbps,"
               "rand_read_mbps,rand_write_mbps\n");
    try {
        load_csv(dir.file("d.csv"), FeatureSchema::hardware());
        FAIL("expected MissingColumn");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingColumn);
        CHECK(std::string(e.what()).find("replication") != std::string::npos);
    }
}

TEST_CASE("load_csv rejects extra and duplicate columns") {
    TempDir dir;
    write_text(dir.file("extra.csv"), std::string(kSmallHeader) + ",temperature\n");
    CHECK(kind_of([&] { load_csv(dir.file("extra.csv"), FeatureSchema::hardware()); }) ==
          ErrorKind::ExtraColumn);

    write_text(dir.file("dup.csv"), std::string(kSmallHeader) + ",network\n");
    CHECK(kind_of([&] { load_csv(dir.file("dup.csv"), FeatureSchema::hardware()); }) ==
          ErrorKind::ExtraColumn);
}

TEST_CASE("load_csv locates parse errors by row and column") {
    TempDir dir;
    std::string text = kSmallHeader;
    text += "\ninfiniband,117,148,ext3,5,1,1,1,20,fast,190.2,120.5,180.1\n";
    write_text(dir.file("d.csv"), text);
    try {
        load_csv(dir.file("d.csv"), FeatureSchema::hardware());
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
        CHECK(std::string(e.what()).find("write_mbps") != std::string::npos);
    }
}

TEST_CASE("load_csv locates unknown labels") {
    TempDir dir;
    std::string text = kSmallHeader;
    text += "\nethernet,117,148,ext3,5,1,1,1,20,1,2,3,4\n";
    write_text(dir.file("d.csv"), text);
    try {
        load_csv(dir.file("d.csv"), FeatureSchema::hardware());
        FAIL("expected UnknownLabel");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownLabel);
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("load_csv rejects rows with the wrong cell count") {
    TempDir dir;
    std::string text = kSmallHeader;
    text += "\ninfiniband,117,148,ext3,5,1,1,1,20,1,2,3\n";
    write_text(dir.file("d.csv"), text);
    CHECK(kind_of([&] { load_csv(dir.file("d.csv"), FeatureSchema::hardware()); }) ==
          ErrorKind::ParseError);
}

TEST_CASE("load_csv of a missing file is an IoError") {
    CHECK(kind_of([] { load_csv("/no/such/file.csv", FeatureSchema::hardware()); }) ==
          ErrorKind::IoError);
}

TEST_CASE("loading the same file twice yields identical datasets") {
    TempDir dir;
    write_text(dir.file("d.csv"), small_csv());
    const Dataset a = load_csv(dir.file("d.csv"), FeatureSchema::hardware());
    const Dataset b = load_csv(dir.file("d.csv"), FeatureSchema::hardware());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.records()[i].feature_values == b.records()[i].feature_values);
        CHECK(a.records()[i].metric_values == b.records()[i].metric_values);
    }
}

TEST_CASE("write_csv then load_csv reproduces every value exactly") {
    TempDir dir;
    const auto [dataset, truth] = generate(GeneratorConfig::hardware(50, 3));
    write_csv(dataset, dir.file("gen.csv"));
    const Dataset loaded = load_csv(dir.file("gen.csv"), FeatureSchema::hardware());
    REQUIRE(loaded.size() == dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        CHECK(loaded.records()[i].feature_values == dataset.records()[i].feature_values);
        CHECK(loaded.records()[i].metric_values == dataset.records()[i].metric_values);
    }
}

TEST_CASE("model document round-trips through JSON losslessly") {
    TempDir dir;
    const ModelDocument doc = sample_document();
    save_model(doc, dir.file("m.json"));
    const ModelDocument loaded = load_model(dir.file("m.json"));

    CHECK(loaded.format_version == doc.format_version);
    CHECK(loaded.schema.compatible_with(doc.schema));
    REQUIRE(loaded.coefficients.size() == doc.coefficients.size());
    for (std::size_t m = 0; m < doc.coefficients.size(); ++m) {
        CHECK(loaded.coefficients[m].first == doc.coefficients[m].first);
        // exact equality: serialization uses shortest round-trip doubles,
        // which is stricter than the 15-significant-digit contract
        CHECK(loaded.coefficients[m].second == doc.coefficients[m].second);
        CHECK(loaded.fit_stats[m].second.r2 == doc.fit_stats[m].second.r2);
        CHECK(loaded.fit_stats[m].second.adj_r2 == doc.fit_stats[m].second.adj_r2);
        CHECK(loaded.fit_stats[m].second.n == doc.fit_stats[m].second.n);
        CHECK(loaded.fit_stats[m].second.k == doc.fit_stats[m].second.k);
    }
}

TEST_CASE("a coefficient vector without the intercept is rejected before write") {
    TempDir dir;
    ModelDocument doc = sample_document();
    doc.coefficients[0].second.resize(doc.schema.feature_count()); // drop one entry
    CHECK(kind_of([&] { save_model(doc, dir.file("m.json")); }) == ErrorKind::SchemaInvalid);
    CHECK_FALSE(fs::exists(dir.file("m.json")));
}

TEST_CASE("save_model to an unwritable path is an IoError") {
    const ModelDocument doc = sample_document();
    CHECK(kind_of([&] { save_model(doc, "/no/such/dir/m.json"); }) == ErrorKind::IoError);
}

TEST_CASE("load_model rejects future format versions") {
    TempDir dir;
    ModelDocument doc = sample_document();
    save_model(doc, dir.file("m.json"));
    std::ifstream in(dir.file("m.json"));
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    in.close();
    const auto pos = text.find("\"format_version\": 1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 19, "\"format_version\": 2");
    write_text(dir.file("m2.json"), text);
    CHECK(kind_of([&] { load_model(dir.file("m2.json")); }) == ErrorKind::VersionMismatch);
}

TEST_CASE("load_model rejects truncated coefficient vectors") {
    TempDir dir;
    ModelDocument doc = sample_document();
    save_model(doc, dir.file("m.json"));
    std::ifstream in(dir.file("m.json"));
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    in.close();
    // truncate write_mbps coefficients to 7 entries
    const auto pos = text.find("\"write_mbps\": [");
    REQUIRE(pos != std::string::npos);
    std::size_t commas = 0;
    std::size_t cut = pos;
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (text[i] == ',') ++commas;
        if (commas == 7) {
            cut = i;
            break;
        }
    }
    const auto close = text.find(']', pos);
    text.erase(cut, close - cut);
    write_text(dir.file("m3.json"), text);
    CHECK(kind_of([&] { load_model(dir.file("m3.json")); }) == ErrorKind::SchemaInvalid);
}

TEST_CASE("load_model kind mapping for broken files") {
    TempDir dir;
    write_text(dir.file("junk.json"), "{ not json");
    CHECK(kind_of([&] { load_model(dir.file("junk.json")); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { load_model(dir.file("absent.json")); }) == ErrorKind::IoError);
}

TEST_CASE("schema JSON round trip") {
    TempDir dir;
    save_schema(FeatureSchema::gluster(), dir.file("s.json"));
    const FeatureSchema loaded = load_schema(dir.file("s.json"));
    CHECK(loaded.compatible_with(FeatureSchema::gluster()));
    CHECK(loaded.features()[1].units == "MB");
    CHECK(loaded.features()[1].role == FeatureRole::Gluster);
}

TEST_CASE("candidates JSON loads labels and numbers") {
    TempDir dir;
    write_text(dir.file("c.json"), R"([
      {"name": "atom", "features": {"network": "gigabit", "disk_read_speed": 117,
        "disk_write_speed": 148, "base_filesystem": "xfs", "num_servers": 4,
        "num_clients": 1, "striping": 1, "replication": 1, "workload_size": 20},
       "cpu_points": 916, "power_watts": 8.5}
    ])");
    const auto candidates =
        load_candidates(dir.file("c.json"), FeatureSchema::hardware());
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].name == "atom");
    CHECK(candidates[0].feature_values[0] == 0.0);
    CHECK(candidates[0].feature_values[3] == 1.0);
    CHECK(candidates[0].cpu_points == 916.0);
    CHECK(candidates[0].power_watts == 8.5);
}

TEST_CASE("candidates JSON rejects missing or unknown features") {
    TempDir dir;
    write_text(dir.file("missing.json"),
               R"([{"name": "a", "features": {"network": "gigabit"},
                    "cpu_points": 1, "power_watts": 1}])");
    CHECK(kind_of([&] {
              load_candidates(dir.file("missing.json"), FeatureSchema::hardware());
          }) == ErrorKind::MissingColumn);

    write_text(dir.file("unknown.json"), R"([
      {"name": "a", "features": {"network": "gigabit", "disk_read_speed": 117,
        "disk_write_speed": 148, "base_filesystem": "xfs", "num_servers": 4,
        "num_clients": 1, "striping": 1, "replication": 1, "workload_size": 20,
        "gpu": 2}, "cpu_points": 1, "power_watts": 1}
    ])");
    CHECK(kind_of([&] {
              load_candidates(dir.file("unknown.json"), FeatureSchema::hardware());
          }) == ErrorKind::ExtraColumn);
}
