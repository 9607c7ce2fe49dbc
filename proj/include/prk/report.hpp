#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prk/arith.hpp"

namespace prk {

enum class Format { text, json, csv };

Format parse_format(const std::string& name);

// One value cell of a report row: empty, boolean, machine integer,
// big integer, real (printed to 6 significant digits), or free text.
using Cell = std::variant<std::monostate, bool, long, Int, double,
                          std::string>;

struct Row {
    std::vector<std::pair<std::string, Cell>> cells;
    void add(const std::string& name, Cell value) {
        cells.emplace_back(name, std::move(value));
    }
};

struct ReportDocument {
    std::string command;
    std::vector<std::pair<std::string, Cell>> parameters;
    std::vector<Row> rows;
    std::vector<std::pair<std::string, Cell>> summary;
    std::vector<std::string> notes;  // human-readable evidence lines
    std::vector<std::string> csv_header_hint;  // used when rows is empty
};

// Reals are reported with 6 significant digits; the parsed-back double is
// what lands in JSON so CSV and JSON carry the same numeric content.
std::string format_real(double v);
double normalized_real(double v);

void write_report(const ReportDocument& doc, Format format,
                  std::ostream& out);

// ---- Regression fixtures ------------------------------------------------

struct FixtureRow {
    int table = 0;
    long p = 0;
    int j = 0;
    long value = 0;
};

struct FixtureSet {
    std::vector<FixtureRow> rows;
    std::optional<long> lookup(int table, long p, int j) const;
    std::vector<long> table_primes(int table) const;
};

// Copy of the fixture CSV baked into the binary at build time.
const char* embedded_fixture_text();
// Path of the data file the embedded copy was generated from.
const char* shipped_fixture_path();

FixtureSet parse_fixture_csv(const std::string& text);
// PRK_FIXTURE_PATH overrides the embedded copy (fault-injection hook).
FixtureSet load_fixture_set();

struct Mismatch {
    long p = 0;
    std::string column;
    std::string expected;
    std::string computed;
};

struct TableVerification {
    int table = 0;
    long checked = 0;
    std::vector<Mismatch> mismatches;
    std::vector<Row> detail_rows;
};

// Recomputes one embedded table and compares cell by cell.
TableVerification verify_table(const FixtureSet& fixture, int table,
                               int jobs);

}  // namespace prk
