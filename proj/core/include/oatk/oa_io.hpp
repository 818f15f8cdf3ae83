#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "oatk/oa.hpp"

namespace oatk {

/// Streams the canonical text format: header line "OA <s> <m> <n> <t> <lambda>",
/// then s lines of m space-separated values in [1, n]. LF line endings, no
/// trailing whitespace. finish() checks the advertised row count was met.
class OaTextWriter {
public:
    OaTextWriter(std::ostream& out, std::uint64_t s, std::uint32_t m, std::uint64_t n,
                 std::uint32_t t, std::uint64_t lambda);

    void row(std::span<const std::uint32_t> row, std::uint64_t repeat = 1);
    void finish();

    /// RowSink adapter.
    void operator()(std::span<const std::uint32_t> r, std::uint64_t repeat) { row(r, repeat); }

private:
    std::ostream& out_;
    std::uint64_t expected_;
    std::uint64_t written_ = 0;
    std::uint32_t m_;
};

struct CsvOptions {
    bool header = false;     ///< leading "c1,...,cm" line
    bool zero_based = false; ///< emit values in [0, n)
};

/// Comma-separated rows, LF endings, no header metadata beyond CsvOptions.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::uint32_t m, const CsvOptions& opts = {});

    void row(std::span<const std::uint32_t> row, std::uint64_t repeat = 1);
    void operator()(std::span<const std::uint32_t> r, std::uint64_t repeat) { row(r, repeat); }

private:
    std::ostream& out_;
    std::uint32_t m_;
    CsvOptions opts_;
};

void write_oa_text(std::ostream& out, const OrthogonalArray& a);
void write_oa_csv(std::ostream& out, const OrthogonalArray& a, const CsvOptions& opts = {});

/// Strict reader for the text format: validates the header, entry ranges,
/// row count, line shape, and that the header lambda equals s / n^t.
/// Throws ConfigError on any malformation. Provenance: Imported.
OrthogonalArray read_oa_text(std::istream& in);
OrthogonalArray read_oa_file(const std::string& path);

} // namespace oatk
