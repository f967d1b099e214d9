#include "tgideal/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tgideal/errors.hpp"

namespace tgideal {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct LineReader {
    std::istream& in;
    std::size_t line_no = 0;

    /// Next non-comment, non-blank line; returns false at end of stream.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            const auto first = raw.find_first_not_of(" \t");
            if (first == std::string::npos) continue;
            if (raw[first] == '%') continue;
            out = raw;
            return true;
        }
        return false;
    }
};

double parse_real(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected a real number, got '" + token + "'");
    }
    if (used != token.size()) {
        throw ParseError(line_no, "trailing characters in number '" + token + "'");
    }
    if (!std::isfinite(v)) throw ParseError(line_no, "non-finite entry '" + token + "'");
    return v;
}

std::size_t parse_index(const std::string& token, std::size_t line_no) {
    for (char c : token) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ParseError(line_no, "expected an index, got '" + token + "'");
        }
    }
    if (token.empty()) throw ParseError(line_no, "expected an index");
    return static_cast<std::size_t>(std::stoull(token));
}

std::vector<std::string> split(const std::string& s) {
    std::istringstream iss(s);
    std::vector<std::string> out;
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

DenseMatrix read_matrix_market(std::istream& in, const std::string& name) {
    std::string banner;
    if (!std::getline(in, banner)) throw ParseError(1, name + ": empty file");
    if (!banner.empty() && banner.back() == '\r') banner.pop_back();
    std::vector<std::string> parts = split(banner);
    if (parts.size() < 5 || parts[0] != "%%MatrixMarket" || lower(parts[1]) != "matrix") {
        throw ParseError(1, name + ": malformed MatrixMarket banner");
    }
    const std::string format = lower(parts[2]);
    const std::string field = lower(parts[3]);
    const std::string symmetry = lower(parts[4]);

    if (field == "complex" || field == "pattern") {
        throw UnsupportedFieldError(name + ": field '" + field + "' is not supported");
    }
    if (field != "real" && field != "integer" && field != "double") {
        throw ParseError(1, name + ": unknown field '" + field + "'");
    }
    const bool symmetric = symmetry == "symmetric";
    const bool skew = symmetry == "skew-symmetric";
    if (!symmetric && !skew && symmetry != "general") {
        throw ParseError(1, name + ": unsupported symmetry '" + symmetry + "'");
    }

    LineReader reader{in, 1};
    std::string line;
    if (!reader.next(line)) throw ParseError(reader.line_no, name + ": missing size line");
    const std::vector<std::string> size_tokens = split(line);

    if (format == "array") {
        if (size_tokens.size() != 2) {
            throw ParseError(reader.line_no, name + ": array size line needs 'rows cols'");
        }
        const std::size_t rows = parse_index(size_tokens[0], reader.line_no);
        const std::size_t cols = parse_index(size_tokens[1], reader.line_no);
        if ((symmetric || skew) && rows != cols) {
            throw ParseError(reader.line_no, name + ": symmetric array must be square");
        }
        DenseMatrix m(rows, cols);
        // Array storage is column-major; symmetric variants store the lower
        // triangle only (skew-symmetric omits the diagonal).
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t i0 = symmetric ? j : (skew ? j + 1 : 0);
            for (std::size_t i = i0; i < rows; ++i) {
                if (!reader.next(line)) {
                    throw ParseError(reader.line_no, name + ": unexpected end of data");
                }
                const std::vector<std::string> toks = split(line);
                if (toks.size() != 1) {
                    throw ParseError(reader.line_no, name + ": expected one value per line");
                }
                const double v = parse_real(toks[0], reader.line_no);
                m(i, j) = v;
                if (symmetric) m(j, i) = v;
                if (skew) m(j, i) = -v;
            }
        }
        if (reader.next(line)) throw ParseError(reader.line_no, name + ": trailing data");
        return m;
    }

    if (format == "coordinate") {
        if (size_tokens.size() != 3) {
            throw ParseError(reader.line_no, name + ": coordinate size line needs 'rows cols nnz'");
        }
        const std::size_t rows = parse_index(size_tokens[0], reader.line_no);
        const std::size_t cols = parse_index(size_tokens[1], reader.line_no);
        const std::size_t nnz = parse_index(size_tokens[2], reader.line_no);
        if ((symmetric || skew) && rows != cols) {
            throw ParseError(reader.line_no, name + ": symmetric matrix must be square");
        }
        DenseMatrix m(rows, cols);
        for (std::size_t k = 0; k < nnz; ++k) {
            if (!reader.next(line)) {
                throw ParseError(reader.line_no, name + ": expected " + std::to_string(nnz) +
                                                     " entries, got " + std::to_string(k));
            }
            const std::vector<std::string> toks = split(line);
            if (toks.size() != 3) {
                throw ParseError(reader.line_no, name + ": expected 'i j value'");
            }
            const std::size_t i = parse_index(toks[0], reader.line_no);
            const std::size_t j = parse_index(toks[1], reader.line_no);
            if (i < 1 || j < 1 || i > rows || j > cols) {
                throw ParseError(reader.line_no, name + ": index out of range");
            }
            const double v = parse_real(toks[2], reader.line_no);
            m(i - 1, j - 1) += v;  // duplicates are summed
            if (i != j) {
                if (symmetric) m(j - 1, i - 1) += v;
                if (skew) m(j - 1, i - 1) -= v;
            }
        }
        if (reader.next(line)) throw ParseError(reader.line_no, name + ": trailing data");
        return m;
    }

    throw ParseError(1, name + ": unknown format '" + format + "'");
}

DenseMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_matrix_market(in, path);
}

void write_matrix_market(std::ostream& out, const DenseMatrix& m) {
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << " " << m.cols() << "\n";
    char buf[64];
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << buf << "\n";
        }
    }
}

void write_matrix_market(const std::string& path, const DenseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_matrix_market(out, m);
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace tgideal
