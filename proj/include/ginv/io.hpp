#pragma once

// Plain-text matrix files: a "rows cols" header followed by rows*cols
// whitespace-separated complex entries ("a", "bi", "a+bi", "a-bi"; "j" is
// accepted for "i"). Lines starting with '#' are comments.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ginv/matcore.hpp"

namespace ginv::io {

/// Malformed matrix text; carries the 1-based position of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

namespace detail {

struct Token {
    std::string text;
    int line = 0;
    int column = 0;
};

inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view row = text.substr(pos, end - pos);
        const std::size_t first = row.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || row[first] != '#') {
            std::size_t i = 0;
            while (i < row.size()) {
                while (i < row.size() && (row[i] == ' ' || row[i] == '\t' || row[i] == '\r')) {
                    ++i;
                }
                const std::size_t start = i;
                while (i < row.size() && row[i] != ' ' && row[i] != '\t' && row[i] != '\r') {
                    ++i;
                }
                if (i > start) {
                    out.push_back({std::string(row.substr(start, i - start)), line, static_cast<int>(start) + 1});
                }
            }
        }
        ++line;
        pos = end + 1;
    }
    return out;
}

// Parses a real number occupying all of `s`. An empty, "+" or "-" body is the
// implicit unit coefficient of a bare imaginary unit.
inline bool parse_real(std::string_view s, bool allow_unit, double& out) {
    if (allow_unit && (s.empty() || s == "+" || s == "-")) {
        out = s == "-" ? -1.0 : 1.0;
        return true;
    }
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
        if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
            return false;
        }
    }
    if (s.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_complex(std::string_view s, Complex& out) {
    if (s.empty()) {
        return false;
    }
    if (s.back() != 'i' && s.back() != 'j') {
        double re = 0.0;
        if (!parse_real(s, false, re)) {
            return false;
        }
        out = Complex(re, 0.0);
        return true;
    }
    const std::string_view body = s.substr(0, s.size() - 1);
    // The split is the last sign that is not the sign of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    double re = 0.0;
    double im = 0.0;
    if (split == std::string_view::npos) {
        if (!parse_real(body, true, im)) {
            return false;
        }
    } else if (!parse_real(body.substr(0, split), false, re) || !parse_real(body.substr(split), true, im)) {
        return false;
    }
    out = Complex(re, im);
    return true;
}

inline Index parse_dimension(const Token& t) {
    long long v = -1;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v < 0) {
        throw ParseError("expected a non-negative integer dimension, got '" + t.text + "'", t.line, t.column);
    }
    return static_cast<Index>(v);
}

}  // namespace detail

inline Matrix parse_matrix(std::string_view text) {
    const std::vector<detail::Token> tokens = detail::tokenize(text);
    const int last_line = static_cast<int>(std::count(text.begin(), text.end(), '\n')) + 1;
    if (tokens.size() < 2) {
        throw ParseError("missing 'rows cols' header", tokens.empty() ? 1 : tokens[0].line,
                         tokens.empty() ? 1 : tokens[0].column);
    }
    const Index rows = detail::parse_dimension(tokens[0]);
    const Index cols = detail::parse_dimension(tokens[1]);
    const std::size_t expected = static_cast<std::size_t>(rows * cols);
    const std::size_t found = tokens.size() - 2;
    if (found < expected) {
        throw ParseError("expected " + std::to_string(expected) + " entries, found " + std::to_string(found),
                         last_line, 1);
    }
    if (found > expected) {
        const auto& extra = tokens[2 + expected];
        throw ParseError("unexpected extra entry '" + extra.text + "' after " + std::to_string(expected) + " entries",
                         extra.line, extra.column);
    }
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < expected; ++i) {
        const auto& t = tokens[2 + i];
        Complex z;
        if (!detail::parse_complex(t.text, z)) {
            throw ParseError("malformed complex entry '" + t.text + "'", t.line, t.column);
        }
        m(static_cast<Index>(i) / cols, static_cast<Index>(i) % cols) = z;
    }
    return m;
}

inline Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'", 0, 0);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

/// Shortest-safe text for one entry: 17 significant digits, "i" for the imaginary unit.
inline std::string format_complex(const Complex& z) {
    char buf[64];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    } else if (z.real() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17gi", z.imag());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    }
    return buf;
}

inline std::string format_matrix(const Matrix& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out += ' ';
            }
            out += format_complex(m(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace ginv::io
