#include "lexpcm/matrix_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace lexpcm {

namespace {

struct Token {
    std::string text;
    int line;
    int column;
};

// Split a line into whitespace-separated tokens, remembering 1-based columns.
std::vector<Token> tokenize(const std::string& line, int line_no) {
    std::vector<Token> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos >= line.size()) break;
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        out.push_back({line.substr(start, pos - start), line_no, static_cast<int>(start) + 1});
    }
    return out;
}

double parse_number(const std::string& s, const Token& tok) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ParseError(tok.line, tok.column, "invalid number '" + s + "'");
    }
    return v;
}

// "*" handled by the caller; here: decimal or p/q fraction.
double parse_value(const Token& tok) {
    auto slash = tok.text.find('/');
    double v;
    if (slash != std::string::npos) {
        double p = parse_number(tok.text.substr(0, slash), tok);
        double q = parse_number(tok.text.substr(slash + 1), tok);
        if (q == 0.0) throw ParseError(tok.line, tok.column, "zero denominator in '" + tok.text + "'");
        v = p / q;
    } else {
        v = parse_number(tok.text, tok);
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParseError(tok.line, tok.column, "entry '" + tok.text + "' must be a positive number");
    }
    return v;
}

}  // namespace

IncompletePcm parse_matrix(std::istream& in) {
    std::string line;
    int line_no = 0;

    auto next_content_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            auto toks = tokenize(line, line_no);
            if (!toks.empty() && toks[0].text[0] != '#') return true;
        }
        return false;
    };

    if (!next_content_line()) throw ParseError(1, 1, "missing matrix order");
    auto header = tokenize(line, line_no);
    if (header.size() != 1) {
        throw ParseError(line_no, header[1].column, "expected only the order on the first line");
    }
    long n_long = 0;
    try {
        std::size_t used = 0;
        n_long = std::stol(header[0].text, &used);
        if (used != header[0].text.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ParseError(line_no, header[0].column, "invalid order '" + header[0].text + "'");
    }
    if (n_long < 2 || n_long > 1000) {
        throw ParseError(line_no, header[0].column, "order must be between 2 and 1000");
    }
    int n = static_cast<int>(n_long);

    std::vector<std::optional<double>> cells(static_cast<std::size_t>(n) * n);
    std::vector<Token> toks(static_cast<std::size_t>(n) * n,
                            Token{"", 0, 0});  // for error positions
    for (int i = 0; i < n; ++i) {
        if (!next_content_line()) throw ParseError(line_no + 1, 1, "expected matrix row " + std::to_string(i + 1));
        auto row = tokenize(line, line_no);
        if (static_cast<int>(row.size()) != n) {
            throw ParseError(line_no, 1,
                             "row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                                 " entries, expected " + std::to_string(n));
        }
        for (int j = 0; j < n; ++j) {
            toks[static_cast<std::size_t>(i) * n + j] = row[j];
            if (row[j].text == "*") continue;
            cells[static_cast<std::size_t>(i) * n + j] = parse_value(row[j]);
        }
    }

    for (int i = 0; i < n; ++i) {
        const auto& d = cells[static_cast<std::size_t>(i) * n + i];
        const auto& t = toks[static_cast<std::size_t>(i) * n + i];
        if (!d.has_value()) throw ParseError(t.line, t.column, "diagonal entries cannot be missing");
        if (std::abs(*d - 1.0) > 1e-12) {
            throw ParseError(t.line, t.column, "diagonal entry must equal 1");
        }
        cells[static_cast<std::size_t>(i) * n + i] = 1.0;
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            auto& up = cells[static_cast<std::size_t>(i) * n + j];
            auto& lo = cells[static_cast<std::size_t>(j) * n + i];
            if (up.has_value() && lo.has_value()) {
                double prod = *up * *lo;
                if (std::abs(prod - 1.0) > 1e-12 * std::max(1.0, std::abs(prod))) {
                    const auto& t = toks[static_cast<std::size_t>(j) * n + i];
                    throw ParseError(t.line, t.column,
                                     "cell (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                         ") is not the reciprocal of cell (" + std::to_string(i + 1) +
                                         "," + std::to_string(j + 1) + ")");
                }
            } else if (up.has_value()) {
                lo = 1.0 / *up;  // mirrored lower triangle
            } else if (lo.has_value()) {
                up = 1.0 / *lo;
            }
        }
    }

    try {
        return IncompletePcm::from_cells(n, std::move(cells));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, 1, e.what());
    }
}

IncompletePcm parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

IncompletePcm parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(1, 1, "cannot open '" + path + "'");
    return parse_matrix(in);
}

namespace {

std::string format_entry(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string format_matrix(const IncompletePcm& matrix) {
    std::ostringstream out;
    int n = matrix.order();
    out << n << "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << ' ';
            if (matrix.known(i, j)) {
                out << format_entry(matrix.value(i, j));
            } else {
                out << '*';
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string format_matrix(const CompletePcm& matrix) {
    return format_matrix(IncompletePcm::from_complete(matrix));
}

void write_matrix_file(const std::string& path, const CompletePcm& matrix) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << format_matrix(matrix);
}

}  // namespace lexpcm
