#pragma once

#include <string>
#include <vector>

#include "gaknn/gaknn.hpp"

namespace testsup {

inline std::string fixture_path(const std::string& name) {
    return std::string(GAKNN_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    return gaknn::detail::read_file(fixture_path(name));
}

inline gaknn::Dataset load_weather() {
    return gaknn::parse_arff(read_fixture("weather.arff"));
}

/// Numeric-only dataset builder: each row is (features..., class index).
inline gaknn::Dataset numeric_dataset(const std::vector<std::vector<double>>& features,
                                      const std::vector<std::size_t>& labels,
                                      std::size_t n_classes = 2) {
    std::vector<gaknn::AttributeSpec> schema;
    for (std::size_t j = 0; j < features.at(0).size(); ++j)
        schema.push_back({"f" + std::to_string(j), gaknn::AttrKind::Numeric,
                          gaknn::AttrRole::Feature, {}});
    std::vector<std::string> cats;
    for (std::size_t c = 0; c < n_classes; ++c) cats.push_back("c" + std::to_string(c));
    schema.push_back({"class", gaknn::AttrKind::Nominal, gaknn::AttrRole::Class, cats});

    std::vector<gaknn::Row> rows;
    for (std::size_t i = 0; i < features.size(); ++i) {
        gaknn::Row row;
        for (double v : features[i]) row.push_back(gaknn::Value::numeric(v));
        row.push_back(gaknn::Value::nominal(labels.at(i)));
        rows.push_back(std::move(row));
    }
    return gaknn::Dataset("inline", std::move(schema), std::move(rows));
}

/// Random mixed-type dataset for property tests: some numeric, some nominal
/// features, two classes, no missing values.
inline gaknn::Dataset random_dataset(gaknn::Rng& rng, std::size_t n_rows,
                                     std::size_t n_numeric, std::size_t n_nominal) {
    std::vector<gaknn::AttributeSpec> schema;
    for (std::size_t j = 0; j < n_numeric; ++j)
        schema.push_back({"num" + std::to_string(j), gaknn::AttrKind::Numeric,
                          gaknn::AttrRole::Feature, {}});
    for (std::size_t j = 0; j < n_nominal; ++j)
        schema.push_back({"nom" + std::to_string(j), gaknn::AttrKind::Nominal,
                          gaknn::AttrRole::Feature, {"a", "b", "c"}});
    schema.push_back({"class", gaknn::AttrKind::Nominal, gaknn::AttrRole::Class, {"neg", "pos"}});

    std::vector<gaknn::Row> rows;
    for (std::size_t i = 0; i < n_rows; ++i) {
        gaknn::Row row;
        for (std::size_t j = 0; j < n_numeric; ++j)
            row.push_back(gaknn::Value::numeric(gaknn::uniform01(rng) * 10.0 - 5.0));
        for (std::size_t j = 0; j < n_nominal; ++j)
            row.push_back(gaknn::Value::nominal(gaknn::uniform_index(rng, 3)));
        row.push_back(gaknn::Value::nominal(gaknn::uniform_index(rng, 2)));
        rows.push_back(std::move(row));
    }
    return gaknn::Dataset("random", std::move(schema), std::move(rows));
}

}  // namespace testsup
