#include "paving/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "paving/errors.hpp"

namespace paving::io {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view s, const std::string& context) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || s.empty()) {
        throw ParseError("cannot parse number in '" + context + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_complex(const Complex& z) {
    return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") +
           format_double(std::abs(z.imag())) + "j";
}

Complex parse_complex(const std::string& raw) {
    const std::string token = trim(raw);
    if (token.size() < 4 || token.back() != 'j') {
        throw ParseError("complex entry '" + token + "' must look like re+imj");
    }
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i + 1 < token.size(); ++i) {
        const char c = token[i];
        if ((c == '+' || c == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') split = i;
    }
    if (split == std::string::npos) {
        throw ParseError("complex entry '" + token + "' has no imaginary sign");
    }
    const std::string_view view(token);
    const double re = parse_double(view.substr(0, split), token);
    const double im = parse_double(view.substr(split + 1, token.size() - split - 2), token);
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ParseError("complex entry '" + token + "' is not finite");
    }
    return {re, token[split] == '-' ? -im : im};
}

void write_matrix_csv(std::ostream& out, const ComplexMatrix& m) {
    out << "# " << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_complex(m(i, j));
        }
        out << '\n';
    }
}

std::string matrix_csv(const ComplexMatrix& m) {
    std::ostringstream out;
    write_matrix_csv(out, m);
    return out.str();
}

ComplexMatrix read_matrix_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty matrix file");
    std::istringstream header(line);
    char hash = 0;
    long long rows = -1;
    long long cols = -1;
    std::string rest;
    if (!(header >> hash >> rows >> cols) || hash != '#' || rows < 0 || cols < 0 ||
        (header >> rest)) {
        throw ParseError("matrix header must be '# rows cols'");
    }
    std::vector<Complex> entries;
    entries.reserve(static_cast<std::size_t>(rows * cols));
    long long seen = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        if (seen == rows) throw ParseError("more matrix rows than the header declares");
        std::istringstream row(line);
        std::string token;
        long long count = 0;
        while (std::getline(row, token, ',')) {
            entries.push_back(parse_complex(token));
            ++count;
        }
        if (count != cols) {
            throw ParseError("row " + std::to_string(seen) + " has " + std::to_string(count) +
                             " entries, expected " + std::to_string(cols));
        }
        ++seen;
    }
    if (seen != rows) {
        throw ParseError("matrix has " + std::to_string(seen) + " rows, header declares " +
                         std::to_string(rows));
    }
    return ComplexMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                         std::move(entries));
}

ComplexMatrix read_matrix_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file '" + path + "'");
    return read_matrix_csv(in);
}

std::string family_sidecar_json(const DeltaSchedule& schedule, const BlockLayout& layout) {
    nlohmann::ordered_json j;
    j["r"] = schedule.r;
    j["n"] = schedule.n;
    j["deltas"] = schedule.deltas;
    j["partial_sums"] = schedule.partial_sums;
    j["vacuous"] = schedule.vacuous();
    auto blocks = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < layout.blocks.size(); ++k) {
        const auto& b = layout.blocks[k];
        nlohmann::ordered_json e;
        e["block"] = k + 1;
        e["zero_prefix"] = b.zero_prefix;
        e["band_width"] = b.band_width;
        e["band_weight"] = b.band_weight;
        e["tail_width"] = b.tail_width;
        e["tail_weight"] = b.tail_weight;
        blocks.push_back(std::move(e));
    }
    j["layout"] = std::move(blocks);
    return j.dump(2) + "\n";
}

std::string certificate_json(const CertificationSummary& s) {
    nlohmann::ordered_json j;
    j["family"] = {{"r", s.r}, {"n", s.n}};
    j["mode"] = s.mode;
    j["partitions_checked"] = s.partitions_checked;
    j["worst_min_part_bound"] = s.worst_min_part_bound;
    j["bound_delta"] = s.deltas;
    j["certified_bound"] = s.bound;
    j["vacuous"] = s.vacuous;
    j["partition"] = s.worst.partition.labels();
    auto bounds = nlohmann::ordered_json::array();
    for (const auto& b : s.worst.part_bounds) {
        if (b) {
            bounds.push_back(*b);
        } else {
            bounds.push_back(nullptr);
        }
    }
    j["part_bounds"] = std::move(bounds);
    if (s.worst.witness) {
        const Witness& w = *s.worst.witness;
        auto coeffs = nlohmann::ordered_json::array();
        for (const auto& a : w.coefficients) coeffs.push_back({a.real(), a.imag()});
        j["witness"] = {{"k", w.k},
                        {"j", w.part},
                        {"indices", w.indices},
                        {"coefficients", std::move(coeffs)},
                        {"achieved", w.achieved_norm_sq},
                        {"band_residual", w.band_residual}};
    } else {
        j["witness"] = nullptr;
    }
    return j.dump(2) + "\n";
}

}  // namespace paving::io
