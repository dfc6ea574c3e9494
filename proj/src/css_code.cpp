#include "cssbp/css_code.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cssbp {

namespace {

std::vector<std::vector<int>> transpose_supports(const RowSupports& rows, int cols) {
    std::vector<std::vector<int>> out(cols);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        for (int j : rows[i]) out[j].push_back(i);
    }
    return out;  // row indices arrive in ascending order already
}

void check_supports(const char* which, const RowSupports& rows, int n) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] < 0 || row[k] >= n) {
                throw std::invalid_argument(std::string(which) + " row " + std::to_string(i + 1) +
                                            ": column index " + std::to_string(row[k] + 1) +
                                            " out of range 1.." + std::to_string(n));
            }
            if (k > 0 && row[k] == row[k - 1]) {
                throw std::invalid_argument(std::string(which) + " row " + std::to_string(i + 1) +
                                            ": duplicate column index " +
                                            std::to_string(row[k] + 1));
            }
        }
    }
}

}  // namespace

CssCode CssCode::from_row_supports(int n, RowSupports hx, RowSupports hz) {
    if (n <= 0) throw std::invalid_argument("qubit count must be positive");
    for (auto& row : hx) std::sort(row.begin(), row.end());
    for (auto& row : hz) std::sort(row.begin(), row.end());
    check_supports("HX", hx, n);
    check_supports("HZ", hz, n);

    CssCode code;
    code.n = n;
    code.mx = static_cast<int>(hx.size());
    code.mz = static_cast<int>(hz.size());
    code.hx_rows = std::move(hx);
    code.hz_rows = std::move(hz);
    code.hx_cols = transpose_supports(code.hx_rows, n);
    code.hz_cols = transpose_supports(code.hz_rows, n);
    return code;
}

std::string_view to_string(ResidualClass c) {
    switch (c) {
        case ResidualClass::Exact: return "exact";
        case ResidualClass::Stabilizer: return "stabilizer";
        case ResidualClass::Logical: return "logical";
        case ResidualClass::SyndromeMismatch: return "syndrome_mismatch";
    }
    return "?";
}

namespace {

/// Splits into lines, dropping comments (# to end of line) and blank lines.
std::vector<std::string> content_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(pos, end - pos));
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
        pos = end + 1;
        if (end == text.size()) break;
    }
    return lines;
}

int parse_count_line(const std::string& line, const char* key) {
    std::istringstream in(line);
    std::string word;
    long long value = -1;
    if (!(in >> word >> value) || word != key || value < 0 || !(in >> std::ws).eof()) {
        throw std::invalid_argument("expected `" + std::string(key) + " <count>`, got: " + line);
    }
    return static_cast<int>(value);
}

/// Parses `<tag> <index>: <j1> <j2> ...` with 1-based indices.
std::vector<int> parse_support_line(const std::string& line, const char* tag, int expect_index,
                                    int n) {
    std::istringstream in(line);
    std::string word;
    in >> word;
    if (word != tag) {
        throw std::invalid_argument("expected a " + std::string(tag) + " row, got: " + line);
    }
    std::string index_token;
    in >> index_token;
    if (!index_token.empty() && index_token.back() == ':') index_token.pop_back();
    if (index_token != std::to_string(expect_index)) {
        throw std::invalid_argument(std::string(tag) + " rows out of order: expected row " +
                                    std::to_string(expect_index) + ", got: " + line);
    }
    // Tolerate a detached colon (`HX 1 : ...`).
    if (in.peek() != EOF) {
        in >> std::ws;
        if (in.peek() == ':') in.get();
    }
    std::vector<int> support;
    long long j = 0;
    while (in >> j) {
        if (j < 1 || j > n) {
            throw std::invalid_argument(std::string(tag) + " row " + std::to_string(expect_index) +
                                        ": column index " + std::to_string(j) +
                                        " out of range 1.." + std::to_string(n));
        }
        support.push_back(static_cast<int>(j) - 1);
    }
    if (!in.eof()) {
        throw std::invalid_argument(std::string(tag) + " row " + std::to_string(expect_index) +
                                    ": non-numeric column entry in: " + line);
    }
    return support;
}

}  // namespace

CssCode parse_css_support_table(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw std::invalid_argument("empty css-support input");

    {
        std::istringstream in(lines[0]);
        std::string a, b;
        in >> a >> b;
        if (a != "css-support" || b != "v1" || !(in >> std::ws).eof()) {
            throw std::invalid_argument("missing `css-support v1` header, got: " + lines[0]);
        }
    }
    if (lines.size() < 4) throw std::invalid_argument("truncated css-support header");
    const int n = parse_count_line(lines[1], "n");
    const int mx = parse_count_line(lines[2], "mX");
    const int mz = parse_count_line(lines[3], "mZ");
    if (n <= 0) throw std::invalid_argument("css-support: n must be positive");

    const std::size_t expected = 4 + static_cast<std::size_t>(mx) + static_cast<std::size_t>(mz);
    if (lines.size() != expected) {
        throw std::invalid_argument("css-support: expected " + std::to_string(mx) + " HX and " +
                                    std::to_string(mz) + " HZ rows, found " +
                                    std::to_string(lines.size() - 4) + " row lines");
    }

    RowSupports hx(mx), hz(mz);
    for (int i = 0; i < mx; ++i) hx[i] = parse_support_line(lines[4 + i], "HX", i + 1, n);
    for (int i = 0; i < mz; ++i) hz[i] = parse_support_line(lines[4 + mx + i], "HZ", i + 1, n);
    return CssCode::from_row_supports(n, std::move(hx), std::move(hz));
}

AlistMatrix parse_alist(std::string_view text) {
    auto lines = content_lines(text);
    auto ints_on = [&](std::size_t idx, const char* what) {
        if (idx >= lines.size()) {
            throw std::invalid_argument(std::string("alist: missing ") + what + " line");
        }
        std::istringstream in(lines[idx]);
        std::vector<long long> values;
        long long v;
        while (in >> v) values.push_back(v);
        if (!in.eof()) {
            throw std::invalid_argument(std::string("alist: non-numeric token on ") + what +
                                        " line: " + lines[idx]);
        }
        return values;
    };

    auto header = ints_on(0, "size");
    if (header.size() != 2 || header[0] < 1 || header[1] < 1) {
        throw std::invalid_argument("alist: first line must be `<columns> <rows>`");
    }
    const int n = static_cast<int>(header[0]);
    const int m = static_cast<int>(header[1]);

    auto maxima = ints_on(1, "max-weight");
    if (maxima.size() != 2) throw std::invalid_argument("alist: second line must hold two maxima");

    auto col_weights = ints_on(2, "column-weight");
    auto row_weights = ints_on(3, "row-weight");
    if (static_cast<int>(col_weights.size()) != n || static_cast<int>(row_weights.size()) != m) {
        throw std::invalid_argument("alist: weight lines do not match the declared sizes");
    }

    const std::size_t wanted = 4 + static_cast<std::size_t>(n) + static_cast<std::size_t>(m);
    if (lines.size() != wanted) {
        throw std::invalid_argument("alist: expected " + std::to_string(wanted) +
                                    " content lines, found " + std::to_string(lines.size()));
    }

    // Column lists first (1-based row indices), then row lists; zero padding
    // from fixed-width writers is dropped.
    std::vector<std::vector<int>> cols(n);
    for (int j = 0; j < n; ++j) {
        auto entries = ints_on(4 + j, "column-entry");
        for (long long v : entries) {
            if (v == 0) continue;
            if (v < 1 || v > m) {
                throw std::invalid_argument("alist: column " + std::to_string(j + 1) +
                                            " references row " + std::to_string(v));
            }
            cols[j].push_back(static_cast<int>(v) - 1);
        }
        if (static_cast<long long>(cols[j].size()) != col_weights[j]) {
            throw std::invalid_argument("alist: column " + std::to_string(j + 1) + " lists " +
                                        std::to_string(cols[j].size()) + " entries, declared " +
                                        std::to_string(col_weights[j]));
        }
    }

    AlistMatrix out;
    out.n = n;
    out.rows.resize(m);
    for (int i = 0; i < m; ++i) {
        auto entries = ints_on(4 + n + i, "row-entry");
        for (long long v : entries) {
            if (v == 0) continue;
            if (v < 1 || v > n) {
                throw std::invalid_argument("alist: row " + std::to_string(i + 1) +
                                            " references column " + std::to_string(v));
            }
            out.rows[i].push_back(static_cast<int>(v) - 1);
        }
        if (static_cast<long long>(out.rows[i].size()) != row_weights[i]) {
            throw std::invalid_argument("alist: row " + std::to_string(i + 1) + " lists " +
                                        std::to_string(out.rows[i].size()) + " entries, declared " +
                                        std::to_string(row_weights[i]));
        }
        std::sort(out.rows[i].begin(), out.rows[i].end());
    }

    // The two lists describe the same matrix; verify they transpose into
    // each other.
    auto rebuilt = transpose_supports(out.rows, n);
    for (int j = 0; j < n; ++j) {
        std::sort(cols[j].begin(), cols[j].end());
        if (cols[j] != rebuilt[j]) {
            throw std::invalid_argument("alist: column list " + std::to_string(j + 1) +
                                        " disagrees with the row lists");
        }
    }
    return out;
}

CssCode css_from_alist_pair(std::string_view hx_text, std::string_view hz_text) {
    AlistMatrix hx = parse_alist(hx_text);
    AlistMatrix hz = parse_alist(hz_text);
    if (hx.n != hz.n) {
        throw std::invalid_argument("alist pair: HX has " + std::to_string(hx.n) +
                                    " columns, HZ has " + std::to_string(hz.n));
    }
    return CssCode::from_row_supports(hx.n, std::move(hx.rows), std::move(hz.rows));
}

ValidationReport validate_css(const CssCode& code) {
    ValidationReport report;
    for (const auto& row : code.hx_rows) report.row_weights_x[static_cast<int>(row.size())]++;
    for (const auto& row : code.hz_rows) report.row_weights_z[static_cast<int>(row.size())]++;
    for (const auto& col : code.hx_cols) report.col_weights_x[static_cast<int>(col.size())]++;
    for (const auto& col : code.hz_cols) report.col_weights_z[static_cast<int>(col.size())]++;

    bool all_even = true;
    for (const auto& rx : code.hx_rows) {
        for (const auto& rz : code.hz_rows) {
            // Both supports sorted: two-pointer intersection size.
            std::size_t a = 0, b = 0;
            int overlap = 0;
            while (a < rx.size() && b < rz.size()) {
                if (rx[a] == rz[b]) ++overlap, ++a, ++b;
                else if (rx[a] < rz[b]) ++a;
                else ++b;
            }
            report.intersection_census[overlap]++;
            if (overlap % 2 != 0) all_even = false;
        }
    }
    report.orthogonal = all_even;
    return report;
}

const CssCode& paper_code_24() {
    static const CssCode code = [] {
        auto shift = [](std::vector<std::vector<int>> rows) {
            for (auto& row : rows)
                for (int& j : row) --j;
            return rows;
        };
        RowSupports hx = shift({{10, 14, 17, 19, 21, 22},
                                {2, 3, 4, 7, 8, 24},
                                {3, 4, 6, 9, 11, 16},
                                {1, 5, 11, 12, 13, 18},
                                {5, 9, 10, 12, 14, 17},
                                {2, 6, 8, 15, 16, 20},
                                {1, 7, 18, 20, 23, 24},
                                {13, 15, 19, 21, 22, 23}});
        RowSupports hz = shift({{5, 15, 17, 18, 20, 22},
                                {2, 8, 12, 13, 14, 19},
                                {1, 3, 4, 10, 14, 18},
                                {4, 9, 10, 21, 23, 24},
                                {3, 8, 9, 15, 17, 19},
                                {1, 7, 11, 16, 20, 24},
                                {2, 6, 7, 11, 13, 23},
                                {5, 6, 12, 16, 21, 22}});
        return CssCode::from_row_supports(24, std::move(hx), std::move(hz));
    }();
    return code;
}

Syndromes syndrome(const CssCode& code, const PauliError& error) {
    if (static_cast<int>(error.x.size()) != code.n || static_cast<int>(error.z.size()) != code.n) {
        throw std::invalid_argument("error length does not match the code");
    }
    Syndromes s;
    s.s_z.resize(code.mx, 0);
    s.s_x.resize(code.mz, 0);
    for (int i = 0; i < code.mx; ++i) {
        std::uint8_t parity = 0;
        for (int j : code.hx_rows[i]) parity ^= error.z[j];
        s.s_z[i] = parity;
    }
    for (int i = 0; i < code.mz; ++i) {
        std::uint8_t parity = 0;
        for (int j : code.hz_rows[i]) parity ^= error.x[j];
        s.s_x[i] = parity;
    }
    return s;
}

namespace {

/// Dense GF(2) row vectors packed into 64-bit words.
struct BitRows {
    int cols = 0;
    int words = 0;
    std::vector<std::uint64_t> data;  // rows * words

    BitRows(int rows, int cols_)
        : cols(cols_), words((cols_ + 63) / 64), data(static_cast<std::size_t>(rows) * words, 0) {}

    std::uint64_t* row(int i) { return data.data() + static_cast<std::size_t>(i) * words; }

    void set(int i, int j) { row(i)[j / 64] |= std::uint64_t{1} << (j % 64); }
    bool get(int i, int j) { return (row(i)[j / 64] >> (j % 64)) & 1u; }

    void xor_rows(int dst, int src) {
        auto* d = row(dst);
        auto* s = row(src);
        for (int w = 0; w < words; ++w) d[w] ^= s[w];
    }
};

}  // namespace

bool in_rowspace_gf2(const RowSupports& rows, const std::vector<std::uint8_t>& v) {
    const int cols = static_cast<int>(v.size());
    const int m = static_cast<int>(rows.size());
    // Row-reduce the generators, then reduce v against the pivots; membership
    // means v cancels to zero.
    BitRows mat(m + 1, cols == 0 ? 1 : cols);
    for (int i = 0; i < m; ++i) {
        for (int j : rows[i]) {
            if (j < 0 || j >= cols) throw std::invalid_argument("row support exceeds vector length");
            mat.set(i, j);
        }
    }
    const int vrow = m;
    for (int j = 0; j < cols; ++j) {
        if (v[j]) mat.set(vrow, j);
    }

    int rank = 0;
    for (int j = 0; j < cols && rank < m; ++j) {
        int pivot = -1;
        for (int i = rank; i < m; ++i) {
            if (mat.get(i, j)) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int w = 0; w < mat.words; ++w) std::swap(mat.row(pivot)[w], mat.row(rank)[w]);
        }
        for (int i = 0; i < m; ++i) {
            if (i != rank && mat.get(i, j)) mat.xor_rows(i, rank);
        }
        if (mat.get(vrow, j)) mat.xor_rows(vrow, rank);
        ++rank;
    }

    const auto* r = mat.row(vrow);
    for (int w = 0; w < mat.words; ++w) {
        if (r[w] != 0) return false;
    }
    return true;
}

ResidualClass classify_residual(const CssCode& code, const PauliError& truth,
                                const PauliError& estimate) {
    if (truth.x.size() != estimate.x.size() || truth.z.size() != estimate.z.size()) {
        throw std::invalid_argument("truth and estimate lengths differ");
    }
    PauliError residual;
    residual.x.resize(code.n);
    residual.z.resize(code.n);
    bool zero = true;
    for (int j = 0; j < code.n; ++j) {
        residual.x[j] = truth.x[j] ^ estimate.x[j];
        residual.z[j] = truth.z[j] ^ estimate.z[j];
        zero = zero && !residual.x[j] && !residual.z[j];
    }
    if (zero) return ResidualClass::Exact;

    Syndromes s = syndrome(code, residual);
    for (auto bit : s.s_z) {
        if (bit) return ResidualClass::SyndromeMismatch;
    }
    for (auto bit : s.s_x) {
        if (bit) return ResidualClass::SyndromeMismatch;
    }

    // Undetectable residual: harmless iff the x part is generated by X-type
    // stabilizers (HX rows) and the z part by Z-type stabilizers (HZ rows).
    if (in_rowspace_gf2(code.hx_rows, residual.x) && in_rowspace_gf2(code.hz_rows, residual.z)) {
        return ResidualClass::Stabilizer;
    }
    return ResidualClass::Logical;
}

}  // namespace cssbp
