#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gaknn/chromosome.hpp"
#include "gaknn/errors.hpp"
#include "gaknn/rng.hpp"
#include "gaknn/textutil.hpp"

namespace gaknn {

enum class AttrKind { Numeric, Nominal };
enum class AttrRole { Feature, Class };

/// One column of a dataset: a name, a kind and a role. Nominal attributes own
/// their ordered category list; values refer to categories by index.
struct AttributeSpec {
    std::string name;
    AttrKind kind = AttrKind::Numeric;
    AttrRole role = AttrRole::Feature;
    std::vector<std::string> categories;  // Nominal only; non-empty, duplicate-free

    bool numeric() const { return kind == AttrKind::Numeric; }
    bool nominal() const { return kind == AttrKind::Nominal; }

    std::optional<std::size_t> category_index(std::string_view cat) const {
        for (std::size_t i = 0; i < categories.size(); ++i)
            if (categories[i] == cat) return i;
        return std::nullopt;
    }

    bool operator==(const AttributeSpec&) const = default;
};

/// A single cell: finite numeric, nominal category index, or missing.
class Value {
public:
    static Value numeric(double v) {
        if (!std::isfinite(v)) throw DataError("numeric value must be finite");
        return Value(Tag::Numeric, v, 0);
    }
    static Value nominal(std::size_t category) { return Value(Tag::Nominal, 0.0, category); }
    static Value missing() { return Value(Tag::Missing, 0.0, 0); }

    bool is_numeric() const { return tag_ == Tag::Numeric; }
    bool is_nominal() const { return tag_ == Tag::Nominal; }
    bool is_missing() const { return tag_ == Tag::Missing; }

    double num() const { return num_; }
    std::size_t cat() const { return cat_; }

    bool operator==(const Value&) const = default;

private:
    enum class Tag : std::uint8_t { Numeric, Nominal, Missing };

    Value(Tag t, double n, std::size_t c) : tag_(t), num_(n), cat_(c) {}

    Tag tag_;
    double num_;
    std::size_t cat_;
};

using Row = std::vector<Value>;

/// Immutable typed tabular dataset. The constructor validates every invariant:
/// exactly one nominal class attribute, row arity, value/kind agreement,
/// in-range nominal indices, and no missing class cells.
class Dataset {
public:
    Dataset(std::string name, std::vector<AttributeSpec> schema, std::vector<Row> rows)
        : name_(std::move(name)), schema_(std::move(schema)), rows_(std::move(rows)) {
        validate();
    }

    const std::string& name() const { return name_; }
    const std::vector<AttributeSpec>& schema() const { return schema_; }
    const std::vector<Row>& rows() const { return rows_; }
    const Row& row(std::size_t i) const { return rows_[i]; }

    std::size_t n_rows() const { return rows_.size(); }
    std::size_t n_attributes() const { return schema_.size(); }

    std::size_t class_index() const { return class_index_; }
    const AttributeSpec& class_attribute() const { return schema_[class_index_]; }
    std::size_t n_classes() const { return schema_[class_index_].categories.size(); }

    /// Class category index of row i.
    std::size_t label(std::size_t i) const { return rows_[i][class_index_].cat(); }

    std::size_t n_features() const { return schema_.size() - 1; }

    std::vector<std::size_t> feature_indices() const {
        std::vector<std::size_t> idx;
        idx.reserve(n_features());
        for (std::size_t i = 0; i < schema_.size(); ++i)
            if (schema_[i].role == AttrRole::Feature) idx.push_back(i);
        return idx;
    }

    /// Stable textual identity of the schema; normalization models refuse to
    /// apply across datasets whose fingerprints differ.
    std::string schema_fingerprint() const {
        std::ostringstream os;
        for (const auto& a : schema_) {
            os << a.name << '\x1f' << (a.numeric() ? 'n' : 'c') << '\x1f'
               << (a.role == AttrRole::Class ? 'C' : 'F');
            for (const auto& c : a.categories) os << '\x1f' << c;
            os << '\x1e';
        }
        return os.str();
    }

    /// New dataset with the same schema holding the given subset of rows.
    Dataset subset(const std::vector<std::size_t>& indices) const {
        std::vector<Row> out;
        out.reserve(indices.size());
        for (auto i : indices) out.push_back(rows_[i]);
        return Dataset(name_, schema_, std::move(out));
    }

    bool operator==(const Dataset&) const = default;

private:
    void validate() {
        std::size_t class_count = 0;
        for (std::size_t i = 0; i < schema_.size(); ++i) {
            const auto& a = schema_[i];
            if (a.nominal()) {
                if (a.categories.empty())
                    throw DataError("attribute '" + a.name + "' has an empty category list");
                for (std::size_t x = 0; x < a.categories.size(); ++x)
                    for (std::size_t y = x + 1; y < a.categories.size(); ++y)
                        if (a.categories[x] == a.categories[y])
                            throw DataError("attribute '" + a.name + "' has duplicate category '" +
                                            a.categories[x] + "'");
            }
            if (a.role == AttrRole::Class) {
                if (!a.nominal())
                    throw ClassError("class attribute '" + a.name + "' must be nominal");
                class_index_ = i;
                ++class_count;
            }
        }
        if (class_count != 1)
            throw DataError("schema must declare exactly one class attribute, found " +
                            std::to_string(class_count));

        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Row& row = rows_[r];
            if (row.size() != schema_.size())
                throw DataError("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                " values, schema has " + std::to_string(schema_.size()));
            for (std::size_t i = 0; i < row.size(); ++i) {
                const Value& v = row[i];
                if (v.is_missing()) {
                    if (i == class_index_)
                        throw ClassError("row " + std::to_string(r) + " has a missing class value");
                    continue;
                }
                if (schema_[i].numeric() != v.is_numeric())
                    throw DataError("row " + std::to_string(r) + ", attribute '" +
                                    schema_[i].name + "': value kind does not match schema");
                if (v.is_nominal() && v.cat() >= schema_[i].categories.size())
                    throw DataError("row " + std::to_string(r) + ", attribute '" +
                                    schema_[i].name + "': category index out of range");
            }
        }
    }

    std::string name_;
    std::vector<AttributeSpec> schema_;
    std::vector<Row> rows_;
    std::size_t class_index_ = 0;
};

// ---------------------------------------------------------------------------
// ARFF / CSV parsing
// ---------------------------------------------------------------------------

struct ParseOptions {
    /// Class attribute name; empty selects the last declared attribute.
    std::string class_attribute;
};

namespace detail {

inline double parse_numeric_cell(const std::string& cell, std::size_t line,
                                 const std::string& attr) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw SchemaError(line, "expected a numeric value for attribute '" + attr + "', got '" +
                                    cell + "'");
    if (!std::isfinite(v))
        throw SchemaError(line, "non-finite numeric value for attribute '" + attr + "'");
    return v;
}

inline std::size_t resolve_class_index(std::vector<AttributeSpec>& schema,
                                       const std::string& class_name) {
    if (schema.empty()) throw ClassError("schema has no attributes");
    std::size_t idx = schema.size() - 1;
    if (!class_name.empty()) {
        bool found = false;
        for (std::size_t i = 0; i < schema.size(); ++i) {
            if (schema[i].name == class_name) {
                idx = i;
                found = true;
                break;
            }
        }
        if (!found) throw ClassError("no attribute named '" + class_name + "'");
    }
    if (!schema[idx].nominal())
        throw ClassError("class attribute '" + schema[idx].name + "' is numeric");
    for (auto& a : schema) a.role = AttrRole::Feature;
    schema[idx].role = AttrRole::Class;
    return idx;
}

/// One data line -> one row; shared by the ARFF and CSV readers.
inline Row parse_data_line(const std::vector<std::string>& fields,
                           const std::vector<AttributeSpec>& schema, std::size_t class_index,
                           std::size_t line, bool empty_is_missing) {
    if (fields.size() != schema.size())
        throw SchemaError(line, "expected " + std::to_string(schema.size()) + " values, got " +
                                    std::to_string(fields.size()));
    Row row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string cell(unquote(fields[i]));
        const bool missing = cell == "?" || (empty_is_missing && cell.empty());
        if (missing) {
            if (i == class_index) throw ClassError(line, "class value may not be missing");
            row.push_back(Value::missing());
        } else if (schema[i].numeric()) {
            row.push_back(Value::numeric(parse_numeric_cell(cell, line, schema[i].name)));
        } else {
            auto cat = schema[i].category_index(cell);
            if (!cat)
                throw SchemaError(line, "undeclared nominal value '" + cell + "' for attribute '" +
                                            schema[i].name + "'");
            row.push_back(Value::nominal(*cat));
        }
    }
    return row;
}

}  // namespace detail

/// Parses the ARFF subset used by the bundled benchmark files: case-insensitive
/// @relation/@attribute/@data keywords, numeric and nominal attribute types,
/// '%' comment lines and '?' missing markers. String, date and sparse ARFF
/// features are rejected. The last declared attribute is the class unless
/// ParseOptions names another one.
inline Dataset parse_arff(std::string_view text, const ParseOptions& opt = {}) {
    std::string relation;
    bool have_relation = false;
    bool in_data = false;
    std::vector<AttributeSpec> schema;
    std::vector<std::vector<std::string>> data_fields;
    std::vector<std::size_t> data_lines;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = (eol == std::string_view::npos) ? text.substr(pos)
                                                               : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++lineno;

        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '%') continue;

        if (!in_data && line.front() == '@') {
            std::size_t sp = line.find_first_of(" \t");
            std::string keyword = detail::lower(line.substr(0, sp));
            std::string_view rest =
                sp == std::string_view::npos ? std::string_view{} : detail::trim(line.substr(sp));

            if (keyword == "@relation") {
                if (have_relation) throw SyntaxError(lineno, "duplicate @relation");
                if (rest.empty()) throw SyntaxError(lineno, "@relation requires a name");
                relation = std::string(detail::unquote(rest));
                have_relation = true;
            } else if (keyword == "@attribute") {
                if (!have_relation) throw SyntaxError(lineno, "@attribute before @relation");
                if (rest.empty()) throw SyntaxError(lineno, "@attribute requires a name and type");
                AttributeSpec attr;
                std::string_view decl = rest;
                if (decl.front() == '\'' || decl.front() == '"') {
                    const char q = decl.front();
                    std::size_t close = decl.find(q, 1);
                    if (close == std::string_view::npos)
                        throw SyntaxError(lineno, "unterminated quoted attribute name");
                    attr.name = std::string(decl.substr(1, close - 1));
                    decl = detail::trim(decl.substr(close + 1));
                } else {
                    std::size_t ws = decl.find_first_of(" \t");
                    if (ws == std::string_view::npos)
                        throw SyntaxError(lineno, "@attribute requires a type");
                    attr.name = std::string(decl.substr(0, ws));
                    decl = detail::trim(decl.substr(ws));
                }
                if (attr.name.empty()) throw SyntaxError(lineno, "empty attribute name");
                for (const auto& existing : schema)
                    if (existing.name == attr.name)
                        throw SyntaxError(lineno, "duplicate attribute name '" + attr.name + "'");

                if (decl.empty()) throw SyntaxError(lineno, "@attribute requires a type");
                if (decl.front() == '{') {
                    if (decl.back() != '}')
                        throw SyntaxError(lineno, "unterminated nominal category list");
                    attr.kind = AttrKind::Nominal;
                    auto cats = detail::split_fields(decl.substr(1, decl.size() - 2));
                    for (const auto& c : cats) {
                        std::string cat(detail::unquote(c));
                        if (cat.empty())
                            throw SyntaxError(lineno, "empty nominal category for attribute '" +
                                                          attr.name + "'");
                        if (attr.category_index(cat))
                            throw SyntaxError(lineno, "duplicate nominal category '" + cat +
                                                          "' for attribute '" + attr.name + "'");
                        attr.categories.push_back(std::move(cat));
                    }
                    if (attr.categories.empty())
                        throw SyntaxError(lineno, "nominal attribute '" + attr.name +
                                                      "' declares no categories");
                } else {
                    std::string type = detail::lower(decl);
                    if (type == "numeric" || type == "real" || type == "integer") {
                        attr.kind = AttrKind::Numeric;
                    } else {
                        throw SyntaxError(lineno, "unsupported attribute type '" +
                                                      std::string(decl) + "'");
                    }
                }
                schema.push_back(std::move(attr));
            } else if (keyword == "@data") {
                if (!have_relation) throw SyntaxError(lineno, "@data before @relation");
                if (schema.empty()) throw SyntaxError(lineno, "@data before any @attribute");
                in_data = true;
            } else {
                throw SyntaxError(lineno, "unknown declaration '" + keyword + "'");
            }
            continue;
        }

        if (!in_data)
            throw SyntaxError(lineno, have_relation ? "expected @attribute or @data"
                                                    : "expected @relation");
        if (line.front() == '{')
            throw SyntaxError(lineno, "sparse ARFF data is not supported");
        data_fields.push_back(detail::split_fields(line));
        data_lines.push_back(lineno);
    }

    if (!have_relation) throw SyntaxError(lineno, "missing @relation declaration");
    if (!in_data) throw SyntaxError(lineno, "missing @data section");

    std::size_t class_index = detail::resolve_class_index(schema, opt.class_attribute);

    std::vector<Row> rows;
    rows.reserve(data_fields.size());
    for (std::size_t i = 0; i < data_fields.size(); ++i)
        rows.push_back(
            detail::parse_data_line(data_fields[i], schema, class_index, data_lines[i], false));

    return Dataset(relation, std::move(schema), std::move(rows));
}

/// Parses comma-separated text under a caller-supplied schema (CSV carries no
/// types). The first line must repeat the schema's attribute names in order.
/// Empty fields and '?' are missing.
inline Dataset parse_csv(std::string_view text, std::vector<AttributeSpec> schema,
                         const std::string& name = "csv",
                         const ParseOptions& opt = {}) {
    std::string class_name = opt.class_attribute;
    if (class_name.empty()) {
        for (const auto& a : schema) {
            if (a.role == AttrRole::Class) {
                class_name = a.name;
                break;
            }
        }
    }
    std::size_t class_index = detail::resolve_class_index(schema, class_name);

    std::vector<Row> rows;
    bool saw_header = false;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = (eol == std::string_view::npos) ? text.substr(pos)
                                                               : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++lineno;

        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (detail::trim(raw).empty()) continue;

        auto fields = detail::split_fields(raw);
        if (!saw_header) {
            if (fields.size() != schema.size())
                throw HeaderMismatch("header has " + std::to_string(fields.size()) +
                                     " columns, schema has " + std::to_string(schema.size()));
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (std::string(detail::unquote(fields[i])) != schema[i].name)
                    throw HeaderMismatch("column " + std::to_string(i + 1) + " is '" + fields[i] +
                                         "', schema expects '" + schema[i].name + "'");
            }
            saw_header = true;
            continue;
        }
        rows.push_back(detail::parse_data_line(fields, schema, class_index, lineno, true));
    }
    if (!saw_header) throw HeaderMismatch("input has no header line");

    return Dataset(name, std::move(schema), std::move(rows));
}

/// Serializes back to the ARFF subset grammar. Numeric cells use the shortest
/// representation that round-trips, so reparsing reproduces the dataset
/// exactly (assuming the class attribute is declared last, the convention all
/// bundled datasets follow).
inline std::string to_arff(const Dataset& d) {
    std::ostringstream os;
    os << "@relation " << detail::arff_quote(d.name()) << "\n\n";
    for (const auto& a : d.schema()) {
        os << "@attribute " << detail::arff_quote(a.name) << ' ';
        if (a.numeric()) {
            os << "numeric";
        } else {
            os << '{';
            for (std::size_t i = 0; i < a.categories.size(); ++i) {
                if (i) os << ',';
                os << detail::arff_quote(a.categories[i]);
            }
            os << '}';
        }
        os << '\n';
    }
    os << "\n@data\n";
    for (const auto& row : d.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            const Value& v = row[i];
            if (v.is_missing()) {
                os << '?';
            } else if (v.is_numeric()) {
                os << detail::format_double(v.num());
            } else {
                os << detail::arff_quote(d.schema()[i].categories[v.cat()]);
            }
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Stratified folds
// ---------------------------------------------------------------------------

/// Partition of row indices into k folds, stratified by class.
struct FoldAssignment {
    int k = 0;
    std::vector<int> fold_of;  // per-row fold index in [0, k)

    std::vector<std::size_t> test_indices(int fold) const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < fold_of.size(); ++i)
            if (fold_of[i] == fold) idx.push_back(i);
        return idx;
    }

    std::vector<std::size_t> train_indices(int fold) const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < fold_of.size(); ++i)
            if (fold_of[i] != fold) idx.push_back(i);
        return idx;
    }

    bool operator==(const FoldAssignment&) const = default;
};

/// Stratified k-fold assignment: within every class, fold sizes differ by at
/// most one; classes smaller than k land on distinct folds. Deterministic for
/// fixed (dataset, k, seed). Each class is shuffled with its own derived
/// stream, and classes start dealing at a rotating offset so overall fold
/// sizes stay balanced.
inline FoldAssignment stratified_folds(const Dataset& d, int k, std::uint64_t seed) {
    if (k < 2) throw InvalidFoldCount("k must be >= 2, got " + std::to_string(k));
    if (static_cast<std::size_t>(k) > d.n_rows())
        throw InvalidFoldCount("k=" + std::to_string(k) + " exceeds instance count " +
                               std::to_string(d.n_rows()));

    std::vector<std::vector<std::size_t>> by_class(d.n_classes());
    for (std::size_t i = 0; i < d.n_rows(); ++i) by_class[d.label(i)].push_back(i);

    FoldAssignment fa;
    fa.k = k;
    fa.fold_of.assign(d.n_rows(), 0);

    std::size_t assigned = 0;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& members = by_class[c];
        Rng rng = make_rng(derive_seed(seed, c));
        for (std::size_t i = members.size(); i > 1; --i)
            std::swap(members[i - 1], members[uniform_index(rng, i)]);
        const std::size_t start = assigned % static_cast<std::size_t>(k);
        for (std::size_t i = 0; i < members.size(); ++i)
            fa.fold_of[members[i]] = static_cast<int>((start + i) % static_cast<std::size_t>(k));
        assigned += members.size();
    }
    return fa;
}

// ---------------------------------------------------------------------------
// Attribute projection
// ---------------------------------------------------------------------------

/// Keeps exactly the masked-in feature attributes plus the class attribute.
/// Row order and relative attribute order are preserved.
inline Dataset project(const Dataset& d, const Chromosome& mask) {
    if (mask.size() != d.n_features()) throw MaskLengthError(d.n_features(), mask.size());
    if (!mask.any()) throw EmptyMaskError();
    if (mask.all()) return d;

    std::vector<std::size_t> keep;
    std::size_t feature = 0;
    for (std::size_t i = 0; i < d.n_attributes(); ++i) {
        if (d.schema()[i].role == AttrRole::Class) {
            keep.push_back(i);
        } else {
            if (mask.test(feature)) keep.push_back(i);
            ++feature;
        }
    }

    std::vector<AttributeSpec> schema;
    schema.reserve(keep.size());
    for (auto i : keep) schema.push_back(d.schema()[i]);

    std::vector<Row> rows;
    rows.reserve(d.n_rows());
    for (const auto& row : d.rows()) {
        Row out;
        out.reserve(keep.size());
        for (auto i : keep) out.push_back(row[i]);
        rows.push_back(std::move(out));
    }
    return Dataset(d.name(), std::move(schema), std::move(rows));
}

// ---------------------------------------------------------------------------
// Synthetic heart-AP generator
// ---------------------------------------------------------------------------

/// Synthetic tabular generator with the 12-attribute hospital screening
/// schema (age, gender, diabetic, blood pressures, anthropometrics, residence
/// indicators, binary disease class). Values are drawn from plausible ranges;
/// BMI is computed from height/weight. Disease correlates with age, systolic
/// pressure, BMI and diabetes through the documented logistic score below, so
/// classifiers trained on the output achieve non-trivial accuracy. The
/// thresholds are engineering constants, not medical claims. Deterministic
/// and byte-identical per (n, seed).
inline Dataset synth_heart_ap(int n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("synthetic dataset size must be >= 1, got " + std::to_string(n));

    const std::vector<std::string> yes_no = {"no", "yes"};
    std::vector<AttributeSpec> schema = {
        {"Age", AttrKind::Numeric, AttrRole::Feature, {}},
        {"Gender", AttrKind::Nominal, AttrRole::Feature, {"female", "male"}},
        {"Diabetic", AttrKind::Nominal, AttrRole::Feature, yes_no},
        {"BP Systolic", AttrKind::Numeric, AttrRole::Feature, {}},
        {"BP Dialic", AttrKind::Numeric, AttrRole::Feature, {}},
        {"Height", AttrKind::Numeric, AttrRole::Feature, {}},
        {"Weight", AttrKind::Numeric, AttrRole::Feature, {}},
        {"BMI", AttrKind::Numeric, AttrRole::Feature, {}},
        {"Hypertension", AttrKind::Nominal, AttrRole::Feature, yes_no},
        {"Rural", AttrKind::Nominal, AttrRole::Feature, yes_no},
        {"Urban", AttrKind::Nominal, AttrRole::Feature, yes_no},
        {"Disease", AttrKind::Nominal, AttrRole::Class, {"healthy", "sick"}},
    };

    auto round1 = [](double v) { return std::round(v * 10.0) / 10.0; };
    auto clamp = [](double v, double lo, double hi) { return std::min(std::max(v, lo), hi); };

    Rng rng = make_rng(seed);
    std::vector<Row> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double age = std::floor(29.0 + uniform01(rng) * 51.0);  // 29..79
        const bool male = bernoulli(rng, 0.5);
        const bool diabetic = bernoulli(rng, age > 50.0 ? 0.30 : 0.12);

        const double height =
            std::round(clamp(normal(rng, male ? 170.0 : 159.0, 7.0), 145.0, 195.0));
        const double bmi = round1(clamp(normal(rng, 26.0, 4.5), 16.0, 45.0));
        const double weight = round1(bmi * (height / 100.0) * (height / 100.0));

        double bp_sys = normal(rng, 124.0, 14.0);
        if (age > 55.0) bp_sys += 12.0;
        if (bmi > 30.0) bp_sys += 8.0;
        bp_sys = std::round(clamp(bp_sys, 90.0, 210.0));
        const double bp_dia = std::round(clamp(bp_sys * 0.65 + normal(rng, 0.0, 7.0), 55.0, 130.0));

        const bool hypertension = bp_sys >= 140.0 || bp_dia >= 90.0;
        const bool rural = bernoulli(rng, 0.4);

        // Logistic risk: age, systolic pressure, BMI, diabetes and gender all
        // push toward "sick". Coefficients chosen so ~half the population is
        // positive and the signal is recoverable by a nearest-neighbor model.
        const double logit = -0.8 + 0.13 * (age - 52.0) + 0.10 * (bp_sys - 132.0) +
                             0.26 * (bmi - 27.0) + (diabetic ? 2.2 : 0.0) + (male ? 0.9 : 0.0);
        const double p_sick = 1.0 / (1.0 + std::exp(-logit));
        const bool sick = uniform01(rng) < p_sick;

        rows.push_back(Row{
            Value::numeric(age),
            Value::nominal(male ? 1 : 0),
            Value::nominal(diabetic ? 1 : 0),
            Value::numeric(bp_sys),
            Value::numeric(bp_dia),
            Value::numeric(height),
            Value::numeric(weight),
            Value::numeric(bmi),
            Value::nominal(hypertension ? 1 : 0),
            Value::nominal(rural ? 1 : 0),
            Value::nominal(rural ? 0 : 1),
            Value::nominal(sick ? 1 : 0),
        });
    }
    return Dataset("heart_ap_synthetic", std::move(schema), std::move(rows));
}

}  // namespace gaknn
