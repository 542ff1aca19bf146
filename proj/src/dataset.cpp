#include "rfqsrr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "rfqsrr/errors.hpp"
#include "rfqsrr/rng.hpp"

namespace rfq {

namespace {

bool has_forbidden_chars(const std::string& s) {
    return s.find_first_of(",\r\n") != std::string::npos;
}

// Shortest decimal form that parses back to the identical double.
void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

double parse_cell(const std::string& cell, std::size_t line, std::size_t column) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
    if (begin == end) {
        throw ParseError("empty cell at row " + std::to_string(line) + ", column " +
                             std::to_string(column),
                         line, column);
    }
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ParseError("non-numeric cell '" + std::string(begin, end) + "' at row " +
                             std::to_string(line) + ", column " + std::to_string(column),
                         line, column);
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite value at row " + std::to_string(line) + ", column " +
                             std::to_string(column),
                         line, column);
    }
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
        fields.back().pop_back();
    }
    return fields;
}

}  // namespace

Dataset::Dataset(std::vector<std::string> compound_ids,
                 std::vector<std::string> descriptor_names,
                 std::vector<double> column_major_x,
                 std::vector<double> response)
    : compound_ids_(std::move(compound_ids)),
      descriptor_names_(std::move(descriptor_names)),
      x_(std::move(column_major_x)),
      response_(std::move(response)) {
    const std::size_t n = response_.size();
    const std::size_t p = descriptor_names_.size();
    if (compound_ids_.size() != n) {
        throw std::invalid_argument("dataset: compound id count " +
                                    std::to_string(compound_ids_.size()) +
                                    " does not match response length " + std::to_string(n));
    }
    if (x_.size() != n * p) {
        throw std::invalid_argument("dataset: value buffer holds " + std::to_string(x_.size()) +
                                    " entries, expected " + std::to_string(n * p));
    }
    std::unordered_set<std::string> seen;
    seen.reserve(p);
    for (const auto& name : descriptor_names_) {
        if (has_forbidden_chars(name)) {
            throw std::invalid_argument("dataset: descriptor name '" + name +
                                        "' contains a comma or line break");
        }
        if (!seen.insert(name).second) {
            throw std::invalid_argument("dataset: duplicate descriptor name '" + name + "'");
        }
    }
    for (const auto& id : compound_ids_) {
        if (has_forbidden_chars(id)) {
            throw std::invalid_argument("dataset: compound id '" + id +
                                        "' contains a comma or line break");
        }
    }
    for (double v : x_) {
        if (!std::isfinite(v)) throw std::invalid_argument("dataset: non-finite descriptor value");
    }
    for (double v : response_) {
        if (!std::isfinite(v)) throw std::invalid_argument("dataset: non-finite response value");
    }
}

void Dataset::copy_row(std::size_t row, std::span<double> out) const {
    const std::size_t p = n_cols();
    const std::size_t n = n_rows();
    for (std::size_t j = 0; j < p; ++j) out[j] = x_[j * n + row];
}

std::uint64_t Dataset::names_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& name : descriptor_names_) {
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double Dataset::response_variance() const {
    const std::size_t n = n_rows();
    if (n == 0) return 0.0;
    double mean = 0.0;
    for (double v : response_) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : response_) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(n);
}

Dataset Dataset::subset_rows(std::span<const std::size_t> rows) const {
    const std::size_t n = n_rows();
    const std::size_t p = n_cols();
    std::vector<std::string> ids;
    ids.reserve(rows.size());
    std::vector<double> resp;
    resp.reserve(rows.size());
    for (std::size_t r : rows) {
        if (r >= n) throw std::out_of_range("subset_rows: row index out of range");
        ids.push_back(compound_ids_[r]);
        resp.push_back(response_[r]);
    }
    std::vector<double> values(rows.size() * p);
    for (std::size_t j = 0; j < p; ++j) {
        const double* src = x_.data() + j * n;
        double* dst = values.data() + j * rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) dst[i] = src[rows[i]];
    }
    return Dataset(std::move(ids), descriptor_names_, std::move(values), std::move(resp));
}

Dataset Dataset::restrict_columns(std::span<const std::size_t> cols) const {
    const std::size_t n = n_rows();
    std::vector<std::string> names;
    names.reserve(cols.size());
    std::vector<double> values;
    values.reserve(cols.size() * n);
    for (std::size_t c : cols) {
        if (c >= n_cols()) throw std::out_of_range("restrict_columns: column index out of range");
        names.push_back(descriptor_names_[c]);
        const double* src = x_.data() + c * n;
        values.insert(values.end(), src, src + n);
    }
    return Dataset(compound_ids_, std::move(names), std::move(values), response_);
}

bool Dataset::equals(const Dataset& other) const {
    return compound_ids_ == other.compound_ids_ &&
           descriptor_names_ == other.descriptor_names_ && x_ == other.x_ &&
           response_ == other.response_;
}

Dataset Dataset::load_csv(const std::string& path, std::size_t min_rows) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("'" + path + "': missing header row", 1, 0);
    const std::vector<std::string> header = split_fields(line);
    if (header.size() < 3) {
        throw ParseError("'" + path + "': header needs at least 3 columns (id, response, "
                         "descriptors), found " + std::to_string(header.size()), 1, header.size());
    }
    const std::size_t p = header.size() - 2;
    std::vector<std::string> names(header.begin() + 2, header.end());
    {
        std::unordered_set<std::string> seen;
        for (std::size_t j = 0; j < p; ++j) {
            if (!seen.insert(names[j]).second) {
                throw ParseError("'" + path + "': duplicate descriptor name '" + names[j] + "'",
                                 1, j + 3);
            }
        }
    }

    std::vector<std::string> ids;
    std::vector<double> response;
    std::vector<std::vector<double>> columns(p);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;  // ignore trailing blank lines
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw ParseError("'" + path + "': row " + std::to_string(line_no) + " has " +
                                 std::to_string(fields.size()) + " fields, expected " +
                                 std::to_string(header.size()),
                             line_no, fields.size());
        }
        ids.push_back(fields[0]);
        response.push_back(parse_cell(fields[1], line_no, 2));
        for (std::size_t j = 0; j < p; ++j) {
            columns[j].push_back(parse_cell(fields[j + 2], line_no, j + 3));
        }
    }
    if (in.bad()) throw IoError("i/o failure while reading '" + path + "'");
    const std::size_t n = response.size();
    if (n == 0) throw ParseError("'" + path + "': no data rows", line_no, 0);
    if (n < min_rows) {
        throw ParseError("'" + path + "': " + std::to_string(n) + " rows, need at least " +
                             std::to_string(min_rows),
                         line_no, 0);
    }

    std::vector<double> values;
    values.reserve(n * p);
    for (std::size_t j = 0; j < p; ++j) {
        values.insert(values.end(), columns[j].begin(), columns[j].end());
    }
    try {
        return Dataset(std::move(ids), std::move(names), std::move(values), std::move(response));
    } catch (const std::invalid_argument& e) {
        throw ParseError("'" + path + "': " + e.what(), 0, 0);
    }
}

void Dataset::write_csv(const std::string& path) const {
    std::string out;
    out.reserve(n_rows() * (n_cols() + 2) * 12);
    out += "compound_id,response";
    for (const auto& name : descriptor_names_) {
        out += ',';
        out += name;
    }
    out += '\n';
    const std::size_t n = n_rows();
    for (std::size_t i = 0; i < n; ++i) {
        out += compound_ids_[i];
        out += ',';
        append_double(out, response_[i]);
        for (std::size_t j = 0; j < n_cols(); ++j) {
            out += ',';
            append_double(out, x(i, j));
        }
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("i/o failure while writing '" + path + "'");
}

SplitPair split_2to1(const Dataset& d, std::uint64_t seed) {
    const std::size_t n = d.n_rows();
    if (n < 3) {
        throw std::invalid_argument("split_2to1: need at least 3 rows, have " + std::to_string(n));
    }
    // round-half-up of 2n/3
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(2.0 * static_cast<double>(n) / 3.0 + 0.5));

    Rng rng(seed);
    std::vector<std::size_t> perm = random_permutation(n, rng);
    std::vector<std::size_t> train_rows(perm.begin(), perm.begin() + n_train);
    std::vector<std::size_t> test_rows(perm.begin() + n_train, perm.end());
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());

    SplitPair pair;
    pair.train = d.subset_rows(train_rows);
    pair.test = d.subset_rows(test_rows);
    pair.train_rows = std::move(train_rows);
    pair.test_rows = std::move(test_rows);
    pair.seed = seed;
    return pair;
}

BagSample bootstrap(std::size_t n_rows, std::uint64_t seed) {
    if (n_rows == 0) throw std::invalid_argument("bootstrap: empty dataset");
    Rng rng(seed);
    BagSample bag;
    bag.indices.resize(n_rows);
    std::vector<bool> drawn(n_rows, false);
    for (std::size_t i = 0; i < n_rows; ++i) {
        const std::size_t r = rng.below(n_rows);
        bag.indices[i] = r;
        drawn[r] = true;
    }
    for (std::size_t i = 0; i < n_rows; ++i) {
        if (!drawn[i]) bag.oob_indices.push_back(i);
    }
    return bag;
}

BagSample bootstrap(const Dataset& d, std::uint64_t seed) { return bootstrap(d.n_rows(), seed); }

}  // namespace rfq
