#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cssbp {

/// Sparse row supports: one sorted list of 0-based column indices per check row.
using RowSupports = std::vector<std::vector<int>>;

/// A CSS check-matrix pair HX/HZ with precomputed row and column
/// neighborhoods.  Rows of HX are X-type checks (they constrain the
/// z-component of an error); rows of HZ are Z-type checks (x-component).
/// Immutable after construction and safe to share across threads.
struct CssCode {
    int n = 0;   ///< qubit count (columns of both matrices)
    int mx = 0;  ///< rows of HX
    int mz = 0;  ///< rows of HZ

    RowSupports hx_rows;  ///< per HX check: adjacent columns
    RowSupports hz_rows;  ///< per HZ check: adjacent columns
    RowSupports hx_cols;  ///< per column: adjacent HX checks
    RowSupports hz_cols;  ///< per column: adjacent HZ checks

    /// Builds a code from row supports (0-based column indices, any order).
    /// Sorts each support, rejects duplicates and out-of-range indices, and
    /// fills the transposed column neighborhoods.
    static CssCode from_row_supports(int n, RowSupports hx, RowSupports hz);
};

/// Pauli error in binary (x, z) component form.
struct PauliError {
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> z;
};

/// Check outcomes.  s_z has one bit per HX row (X-type checks measure the
/// z-component); s_x has one bit per HZ row.
struct Syndromes {
    std::vector<std::uint8_t> s_z;
    std::vector<std::uint8_t> s_x;
};

struct ValidationReport {
    bool orthogonal = false;
    std::map<int, int> row_weights_x;  ///< weight -> number of HX rows
    std::map<int, int> row_weights_z;
    std::map<int, int> col_weights_x;  ///< weight -> number of columns of HX
    std::map<int, int> col_weights_z;
    /// |row_i(HX) ∩ row_k(HZ)| -> number of (i,k) pairs.  The code is
    /// orthogonal iff every key is even.
    std::map<int, int> intersection_census;
};

enum class ResidualClass {
    Exact,             ///< estimate equals the true error
    Stabilizer,        ///< residual lies in the stabilizer rowspaces
    Logical,           ///< residual is undetectable but not a stabilizer
    SyndromeMismatch,  ///< residual has a nonzero syndrome
};

std::string_view to_string(ResidualClass c);

/// Parses the `css-support v1` text format:
///
///     css-support v1
///     n <N>
///     mX <MX>
///     mZ <MZ>
///     HX 1: <j1> <j2> ...
///     ...
///     HZ 1: <j1> ...
///
/// Column indices are 1-based in the file and converted to 0-based here.
/// Rows must appear in order.  Orthogonality is NOT checked; run
/// validate_css separately.
CssCode parse_css_support_table(std::string_view text);

/// One parity-check matrix read from a MacKay-style alist file.
struct AlistMatrix {
    int n = 0;            ///< columns
    RowSupports rows;     ///< per row: sorted 0-based column indices
};

/// Parses a single alist file (N M header, max weights, per-column and
/// per-row weights, column lists then row lists, 1-based, zero-padded
/// entries ignored).  The column lists must be consistent with the row
/// lists.
AlistMatrix parse_alist(std::string_view text);

/// Builds a CssCode from two alist files, HX first.
CssCode css_from_alist_pair(std::string_view hx_text, std::string_view hz_text);

/// Weight histograms plus the intersection census over all (HX row, HZ row)
/// pairs.  Never throws; failures are carried in the report.
ValidationReport validate_css(const CssCode& code);

/// The length-24 (2,6)-regular CSS pair, embedded as a constant.
const CssCode& paper_code_24();

/// s_z[i] = parity of error.z over row i of HX; s_x[i] = parity of error.x
/// over row i of HZ.
Syndromes syndrome(const CssCode& code, const PauliError& error);

/// True iff v is a GF(2) linear combination of the given rows (each row the
/// indicator vector of its support).  v.size() fixes the column count.
bool in_rowspace_gf2(const RowSupports& rows, const std::vector<std::uint8_t>& v);

/// Classifies the residual r = truth + estimate (componentwise GF(2)).
ResidualClass classify_residual(const CssCode& code, const PauliError& truth,
                                const PauliError& estimate);

}  // namespace cssbp
