#include "oatk/oa_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "oatk/errors.hpp"

namespace oatk {

namespace {

std::uint64_t parse_u64(const std::string& token, const char* what) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError(std::string(what) + ": malformed integer '" + token + "'");
    if (token.size() > 1 && token[0] == '0')
        throw ConfigError(std::string(what) + ": leading zero in '" + token + "'");
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (errno != 0 || end != token.c_str() + token.size())
        throw ConfigError(std::string(what) + ": integer out of range '" + token + "'");
    return static_cast<std::uint64_t>(v);
}

} // namespace

OaTextWriter::OaTextWriter(std::ostream& out, std::uint64_t s, std::uint32_t m, std::uint64_t n,
                           std::uint32_t t, std::uint64_t lambda)
    : out_(out), expected_(s), m_(m) {
    out_ << "OA " << s << ' ' << m << ' ' << n << ' ' << t << ' ' << lambda << '\n';
}

void OaTextWriter::row(std::span<const std::uint32_t> row, std::uint64_t repeat) {
    if (row.size() != m_) throw ConfigError("oa writer: row width mismatch");
    if (repeat > expected_ - written_)
        throw std::logic_error("oa writer: more rows than the header promised");
    std::string line;
    line.reserve(row.size() * 4);
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line.push_back(' ');
        line += std::to_string(row[i]);
    }
    line.push_back('\n');
    for (std::uint64_t i = 0; i < repeat; ++i) out_ << line;
    written_ += repeat;
}

void OaTextWriter::finish() {
    out_.flush();
    if (written_ != expected_)
        throw std::logic_error("oa writer: wrote " + std::to_string(written_) + " rows, header " +
                               "promised " + std::to_string(expected_));
}

CsvWriter::CsvWriter(std::ostream& out, std::uint32_t m, const CsvOptions& opts)
    : out_(out), m_(m), opts_(opts) {
    if (opts_.header) {
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (i) out_ << ',';
            out_ << 'c' << (i + 1);
        }
        out_ << '\n';
    }
}

void CsvWriter::row(std::span<const std::uint32_t> row, std::uint64_t repeat) {
    if (row.size() != m_) throw ConfigError("csv writer: row width mismatch");
    std::string line;
    line.reserve(row.size() * 4);
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line.push_back(',');
        line += std::to_string(row[i] - (opts_.zero_based ? 1u : 0u));
    }
    line.push_back('\n');
    for (std::uint64_t i = 0; i < repeat; ++i) out_ << line;
}

void write_oa_text(std::ostream& out, const OrthogonalArray& a) {
    OaTextWriter w(out, a.s, a.m, a.n, a.t, a.lambda);
    for (std::uint64_t i = 0; i < a.s; ++i)
        w.row(std::span<const std::uint32_t>(a.cells.data() + i * a.m, a.m), 1);
    w.finish();
}

void write_oa_csv(std::ostream& out, const OrthogonalArray& a, const CsvOptions& opts) {
    CsvWriter w(out, a.m, opts);
    for (std::uint64_t i = 0; i < a.s; ++i)
        w.row(std::span<const std::uint32_t>(a.cells.data() + i * a.m, a.m), 1);
}

OrthogonalArray read_oa_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("oa reader: empty input");
    std::istringstream header(line);
    std::string tag, s_tok, m_tok, n_tok, t_tok, l_tok, extra;
    header >> tag >> s_tok >> m_tok >> n_tok >> t_tok >> l_tok;
    if (tag != "OA" || l_tok.empty() || (header >> extra))
        throw ConfigError("oa reader: malformed header line");
    const std::uint64_t s = parse_u64(s_tok, "oa reader");
    const std::uint64_t m64 = parse_u64(m_tok, "oa reader");
    const std::uint64_t n = parse_u64(n_tok, "oa reader");
    const std::uint64_t t64 = parse_u64(t_tok, "oa reader");
    const std::uint64_t lambda = parse_u64(l_tok, "oa reader");
    if (m64 == 0 || m64 > std::numeric_limits<std::uint32_t>::max())
        throw ConfigError("oa reader: column count out of range");
    if (t64 == 0 || t64 > m64) throw ConfigError("oa reader: strength out of range");
    const std::uint32_t m = static_cast<std::uint32_t>(m64);
    const std::uint32_t t = static_cast<std::uint32_t>(t64);

    std::vector<std::uint32_t> cells;
    if (s > 0 && m > 0) {
        if (s > (std::uint64_t{1} << 40) / m)
            throw ConfigError("oa reader: declared size too large");
        cells.reserve(static_cast<std::size_t>(s) * m);
    }
    for (std::uint64_t r = 0; r < s; ++r) {
        if (!std::getline(in, line))
            throw ConfigError("oa reader: expected " + std::to_string(s) + " rows, got " +
                              std::to_string(r));
        std::size_t pos = 0;
        for (std::uint32_t c = 0; c < m; ++c) {
            const std::size_t next = line.find(' ', pos);
            const std::string token = (next == std::string::npos)
                                          ? line.substr(pos)
                                          : line.substr(pos, next - pos);
            const std::uint64_t v = parse_u64(token, "oa reader");
            if (v < 1 || v > n) throw ConfigError("oa reader: entry outside [1, n]");
            cells.push_back(static_cast<std::uint32_t>(v));
            if (c + 1 < m) {
                if (next == std::string::npos)
                    throw ConfigError("oa reader: too few columns in a row");
                pos = next + 1;
            } else if (next != std::string::npos) {
                throw ConfigError("oa reader: trailing content in a row");
            }
        }
    }
    if (std::getline(in, line))
        throw ConfigError("oa reader: trailing content after the last row");

    OrthogonalArray a = OrthogonalArray::from_cells(s, m, n, t, std::move(cells),
                                                    OaProvenance::Imported);
    if (a.lambda != lambda)
        throw ConfigError("oa reader: header lambda " + std::to_string(lambda) +
                          " does not equal s / n^t");
    return a;
}

OrthogonalArray read_oa_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("oa reader: cannot open '" + path + "'");
    return read_oa_text(in);
}

} // namespace oatk
