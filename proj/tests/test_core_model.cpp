#include "doctest.h"

#include <cmath>
#include <limits>

#include "fsmodel/core_model.hpp"
#include "fsmodel/prng.hpp"

using namespace fsmodel;

namespace {

FeatureDescriptor network_descriptor() {
    return FeatureDescriptor::categorical("network", FeatureRole::Hardware, "gigabit",
                                          "infiniband");
}

} // namespace

TEST_CASE("encode_value maps labels and numbers") {
    const auto net = network_descriptor();
    CHECK(encode_value(net, "Infiniband") == 1.0);
    CHECK(encode_value(net, "gigabit") == 0.0);
    CHECK(encode_value(net, "GIGABIT") == 0.0);

    const auto fs = FeatureDescriptor::categorical("base_filesystem", FeatureRole::Hardware,
                                                   "ext3", "xfs");
    CHECK(encode_value(fs, "ext3") == 0.0);
    CHECK(encode_value(fs, "XFS") == 1.0);

    const auto workload =
        FeatureDescriptor::numeric("workload_size", "GB", FeatureRole::Workload);
    CHECK(encode_value(workload, "20") == 20.0);
    CHECK(encode_value(workload, 20.0) == 20.0);
    CHECK(encode_value(workload, "0.5") == 0.5);
}

TEST_CASE("encode_value rejects bad inputs") {
    const auto net = network_descriptor();
    CHECK_THROWS_AS(encode_value(net, "ethernet"), Error);
    try {
        encode_value(net, "ethernet");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownLabel);
    }

    const auto workload =
        FeatureDescriptor::numeric("workload_size", "GB", FeatureRole::Workload);
    CHECK_THROWS_AS(encode_value(workload, "fast"), Error);
    CHECK_THROWS_AS(encode_value(workload, std::numeric_limits<double>::infinity()), Error);
    try {
        encode_value(workload, std::numeric_limits<double>::quiet_NaN());
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFiniteValue);
    }
    // categorical features only accept exact 0/1 numerics
    CHECK_THROWS_AS(encode_value(net, 0.5), Error);
}

TEST_CASE("encoding is deterministic") {
    const auto net = network_descriptor();
    for (int i = 0; i < 10; ++i) CHECK(encode_value(net, "infiniband") == 1.0);
}

TEST_CASE("built-in hardware schema matches the campaign layout") {
    const FeatureSchema schema = FeatureSchema::hardware();
    const std::vector<std::string> expected = {
        "network",     "disk_read_speed", "disk_write_speed", "base_filesystem",
        "num_servers", "num_clients",     "striping",         "replication",
        "workload_size"};
    REQUIRE(schema.feature_count() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(schema.features()[i].name == expected[i]);
    CHECK(schema.metrics() == std::vector<std::string>{"write_mbps", "read_mbps",
                                                       "rand_read_mbps", "rand_write_mbps"});
    CHECK(schema.features()[8].units == "GB");
    CHECK(schema.feature_index("striping") == 6);
    CHECK(schema.metric_index("read_mbps") == 1);
    CHECK_FALSE(schema.feature_index("bogus").has_value());
}

TEST_CASE("built-in gluster schema") {
    const FeatureSchema schema = FeatureSchema::gluster();
    const std::vector<std::string> expected = {"block_size_kb", "cache_size_mb",
                                               "write_behind",  "read_ahead",
                                               "io_cache",      "md_cache",
                                               "o_sync"};
    REQUIRE(schema.feature_count() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(schema.features()[i].name == expected[i]);
    CHECK(schema.features()[2].labels[0] == "off");
    CHECK(schema.features()[2].labels[1] == "on");
}

TEST_CASE("builtin lookup by name") {
    CHECK(FeatureSchema::builtin("hardware").has_value());
    CHECK(FeatureSchema::builtin("gluster").has_value());
    CHECK_FALSE(FeatureSchema::builtin("nope").has_value());
}

TEST_CASE("schema invariants are enforced") {
    auto f1 = FeatureDescriptor::numeric("a", "", FeatureRole::Hardware);
    auto dup = FeatureDescriptor::numeric("a", "", FeatureRole::Hardware);
    CHECK_THROWS_AS(FeatureSchema({f1, dup}, {"y"}), Error);

    auto unnamed = FeatureDescriptor::numeric("", "", FeatureRole::Hardware);
    CHECK_THROWS_AS(FeatureSchema({unnamed}, {"y"}), Error);

    auto same_labels =
        FeatureDescriptor::categorical("c", FeatureRole::Gluster, "On", "on");
    CHECK_THROWS_AS(FeatureSchema({same_labels}, {"y"}), Error);

    auto ok = FeatureDescriptor::categorical("c", FeatureRole::Gluster, "off", "on");
    CHECK_NOTHROW(FeatureSchema({f1, ok}, {"y"}));
}

TEST_CASE("dataset validates record shape and finiteness") {
    const FeatureSchema schema({FeatureDescriptor::numeric("x", "", FeatureRole::Hardware)},
                               {"y"});
    CHECK_NOTHROW(Dataset(schema, {{{1.0}, {2.0}}}));
    CHECK_THROWS_AS(Dataset(schema, {{{1.0, 2.0}, {2.0}}}), Error);
    CHECK_THROWS_AS(Dataset(schema, {{{1.0}, {}}}), Error);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Dataset(schema, {{{nan}, {2.0}}}), Error);
    CHECK_THROWS_AS(Dataset(schema, {{{1.0}, {nan}}}), Error);
}

TEST_CASE("design matrix layout") {
    const FeatureSchema schema({FeatureDescriptor::numeric("x", "", FeatureRole::Hardware)},
                               {"y"});
    const Dataset dataset(schema, {{{3.0}, {1.0}}, {{5.0}, {2.0}}});
    const DesignMatrix m = build_design_matrix(dataset);
    REQUIRE(m.rows == 2);
    REQUIRE(m.cols == 2);
    CHECK(m.at(0, 0) == 1.0);
    CHECK(m.at(0, 1) == 3.0);
    CHECK(m.at(1, 0) == 1.0);
    CHECK(m.at(1, 1) == 5.0);
}

TEST_CASE("design matrix of one hardware record is 1 x 10") {
    const FeatureSchema schema = FeatureSchema::hardware();
    Record r;
    r.feature_values = {1, 117, 148, 0, 5, 1, 1, 1, 20};
    r.metric_values = {100, 100, 100, 100};
    const DesignMatrix m = build_design_matrix(Dataset(schema, {r}));
    CHECK(m.rows == 1);
    CHECK(m.cols == 10);
    CHECK(m.at(0, 0) == 1.0);
    CHECK(m.at(0, 9) == 20.0);
}

TEST_CASE("empty dataset cannot produce a design matrix") {
    const FeatureSchema schema = FeatureSchema::hardware();
    const Dataset dataset(schema, {});
    try {
        build_design_matrix(dataset);
        FAIL("expected EmptyDataset");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyDataset);
    }
}

TEST_CASE("design matrix dimensions property: column 0 sums to n") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng.next_below(40);
        const std::size_t p = 1 + rng.next_below(8);
        std::vector<FeatureDescriptor> features;
        for (std::size_t j = 0; j < p; ++j)
            features.push_back(FeatureDescriptor::numeric("f" + std::to_string(j), "",
                                                          FeatureRole::Hardware));
        const FeatureSchema schema(features, {"y"});
        std::vector<Record> records;
        for (std::size_t i = 0; i < n; ++i) {
            Record r;
            for (std::size_t j = 0; j < p; ++j)
                r.feature_values.push_back(rng.next_double() * 20.0 - 10.0);
            r.metric_values.push_back(rng.next_double());
            records.push_back(std::move(r));
        }
        const DesignMatrix m = build_design_matrix(Dataset(schema, records));
        CHECK(m.rows == n);
        CHECK(m.cols == p + 1);
        double ones = 0.0;
        for (std::size_t i = 0; i < n; ++i) ones += m.at(i, 0);
        CHECK(ones == static_cast<double>(n));
    }
}

TEST_CASE("render_value inverts label encoding for CSV output") {
    const auto net = network_descriptor();
    CHECK(render_value(net, 0.0) == "gigabit");
    CHECK(render_value(net, 1.0) == "infiniband");
    CHECK_THROWS_AS(render_value(net, 0.5), Error);
    const auto workload =
        FeatureDescriptor::numeric("workload_size", "GB", FeatureRole::Workload);
    CHECK(render_value(workload, 0.1) == "0.1");
    CHECK(render_value(workload, 20.0) == "20");
}
