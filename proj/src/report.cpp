#include "prk/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prk/embedded_tables.hpp"
#include "prk/errors.hpp"
#include "prk/search.hpp"

namespace prk {

using ordered_json = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    throw domain_error("unknown format: " + name);
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double normalized_real(double v) {
    return std::strtod(format_real(v).c_str(), nullptr);
}

namespace {

constexpr long long kJsonIntMax = 9007199254740992LL;  // 2^53

ordered_json cell_to_json(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return nullptr;
    if (const bool* b = std::get_if<bool>(&c)) return *b;
    if (const long* l = std::get_if<long>(&c)) return *l;
    if (const Int* z = std::get_if<Int>(&c)) {
        if (z->fits_slong_p()) {
            const long v = z->get_si();
            if (v < kJsonIntMax && v > -kJsonIntMax) return v;
        }
        return z->get_str();
    }
    if (const double* d = std::get_if<double>(&c)) return normalized_real(*d);
    return std::get<std::string>(c);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

std::string cell_to_text(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    if (const long* l = std::get_if<long>(&c)) return std::to_string(*l);
    if (const Int* z = std::get_if<Int>(&c)) return z->get_str();
    if (const double* d = std::get_if<double>(&c)) return format_real(*d);
    return std::get<std::string>(c);
}

void write_json(const ReportDocument& doc, std::ostream& out) {
    ordered_json j;
    j["command"] = doc.command;
    j["parameters"] = ordered_json::object();
    for (const auto& [k, v] : doc.parameters) {
        j["parameters"][k] = cell_to_json(v);
    }
    j["rows"] = ordered_json::array();
    for (const Row& row : doc.rows) {
        ordered_json o = ordered_json::object();
        for (const auto& [k, v] : row.cells) o[k] = cell_to_json(v);
        j["rows"].push_back(std::move(o));
    }
    j["summary"] = ordered_json::object();
    for (const auto& [k, v] : doc.summary) {
        j["summary"][k] = cell_to_json(v);
    }
    if (!doc.notes.empty()) j["summary"]["notes"] = doc.notes;
    out << j.dump(2) << "\n";
}

void write_csv(const ReportDocument& doc, std::ostream& out) {
    std::vector<std::string> header = doc.csv_header_hint;
    if (header.empty() && !doc.rows.empty()) {
        for (const auto& [k, v] : doc.rows.front().cells) {
            (void)v;
            header.push_back(k);
        }
    }
    for (size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << "\n";
    for (const Row& row : doc.rows) {
        if (row.cells.size() != header.size()) {
            throw computation_error("csv row width differs from header");
        }
        for (size_t i = 0; i < row.cells.size(); ++i) {
            if (row.cells[i].first != header[i]) {
                throw computation_error("csv row schema differs from header");
            }
            out << (i ? "," : "") << csv_escape(cell_to_text(row.cells[i].second));
        }
        out << "\n";
    }
}

void write_text(const ReportDocument& doc, std::ostream& out) {
    out << "command: " << doc.command << "\n";
    for (const auto& [k, v] : doc.parameters) {
        out << "  " << k << " = " << cell_to_text(v) << "\n";
    }
    if (!doc.rows.empty()) out << "rows:\n";
    for (const Row& row : doc.rows) {
        out << " ";
        for (const auto& [k, v] : row.cells) {
            out << " " << k << "=" << cell_to_text(v);
        }
        out << "\n";
    }
    if (!doc.summary.empty() || !doc.notes.empty()) out << "summary:\n";
    for (const auto& [k, v] : doc.summary) {
        out << "  " << k << " = " << cell_to_text(v) << "\n";
    }
    for (const std::string& n : doc.notes) {
        out << "  note: " << n << "\n";
    }
}

}  // namespace

void write_report(const ReportDocument& doc, Format format,
                  std::ostream& out) {
    switch (format) {
        case Format::json: write_json(doc, out); break;
        case Format::csv: write_csv(doc, out); break;
        case Format::text: write_text(doc, out); break;
    }
}

// ---- Fixtures -----------------------------------------------------------

const char* embedded_fixture_text() { return generated::kReferenceTablesCsv; }

const char* shipped_fixture_path() { return generated::kReferenceTablesPath; }

std::optional<long> FixtureSet::lookup(int table, long p, int j) const {
    for (const FixtureRow& r : rows) {
        if (r.table == table && r.p == p && r.j == j) return r.value;
    }
    return std::nullopt;
}

std::vector<long> FixtureSet::table_primes(int table) const {
    std::set<long> ps;
    for (const FixtureRow& r : rows) {
        if (r.table == table) ps.insert(r.p);
    }
    return std::vector<long>(ps.begin(), ps.end());
}

FixtureSet parse_fixture_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "table,p,j,value") {
        throw domain_error("fixture schema mismatch: expected header "
                           "'table,p,j,value'");
    }
    FixtureSet fx;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        FixtureRow row;
        char trail = 0;
        if (std::sscanf(line.c_str(), "%d,%ld,%d,%ld%c", &row.table, &row.p,
                        &row.j, &row.value, &trail) != 4) {
            throw domain_error("fixture parse error at line " +
                               std::to_string(lineno));
        }
        fx.rows.push_back(row);
    }
    if (fx.rows.empty()) {
        throw domain_error("fixture file contains no rows");
    }
    return fx;
}

FixtureSet load_fixture_set() {
    const char* override_path = std::getenv("PRK_FIXTURE_PATH");
    if (override_path != nullptr && override_path[0] != '\0') {
        std::ifstream in(override_path);
        if (!in) {
            throw domain_error(std::string("cannot read fixture file: ") +
                               override_path);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_fixture_csv(buf.str());
    }
    return parse_fixture_csv(embedded_fixture_text());
}

// ---- Table verification -------------------------------------------------

namespace {

void add_detail(TableVerification& tv, int table, long p, int j,
                long expected, const Int& computed) {
    const bool ok = (computed == expected);
    Row r;
    r.add("table", long(table));
    r.add("p", long(p));
    r.add("j", long(j));
    r.add("expected", long(expected));
    r.add("computed", computed);
    r.add("match", ok);
    tv.detail_rows.push_back(std::move(r));
    ++tv.checked;
    if (!ok) {
        tv.mismatches.push_back(Mismatch{p, "j" + std::to_string(j),
                                         std::to_string(expected),
                                         computed.get_str()});
    }
}

TableVerification verify_imaginary_table(const FixtureSet& fx, int table,
                                         int jobs) {
    TableVerification tv;
    tv.table = table;
    const std::vector<long> ps = fx.table_primes(table);
    if (ps.empty()) {
        throw domain_error("fixture has no rows for table " +
                           std::to_string(table));
    }
    const ImaginaryVariant variant = (table == 1)
                                         ? ImaginaryVariant::shifted
                                         : ImaginaryVariant::p_multiplied;
    const auto rows = scan_consecutive_imaginary(
        5, variant, Int(ps.front()), Int(ps.back()), jobs);
    std::map<long, const ImaginaryScanRow*> by_p;
    for (const auto& r : rows) by_p[r.p.get_si()] = &r;
    for (long p : ps) {
        const auto it = by_p.find(p);
        if (it == by_p.end()) {
            throw computation_error("scan did not produce prime " +
                                    std::to_string(p));
        }
        for (int j = 1; j <= 5; ++j) {
            const auto expected = fx.lookup(table, p, j);
            if (!expected) continue;
            const ScanEntry& e = it->second->entries.at(j - 1);
            if (e.skipped) {
                throw computation_error("table entry unexpectedly skipped");
            }
            add_detail(tv, table, p, j, *expected, e.h);
        }
    }
    return tv;
}

TableVerification verify_real_table(const FixtureSet& fx, int jobs) {
    TableVerification tv;
    tv.table = 3;
    const std::vector<long> ps = fx.table_primes(3);
    if (ps.empty()) {
        throw domain_error("fixture has no rows for table 3");
    }
    const auto rows = scan_real_family(Int(3), Int(100), jobs);
    std::set<long> computed_members;
    std::map<long, const RealScanRow*> by_p;
    for (const auto& r : rows) {
        by_p[r.p.get_si()] = &r;
        if (r.all_squarefree) computed_members.insert(r.p.get_si());
    }
    // Membership: primes <= 100 with all four values square-free must be
    // exactly the fixture's prime column.
    const std::set<long> fixture_members(ps.begin(), ps.end());
    for (long p : fixture_members) {
        ++tv.checked;
        if (computed_members.count(p) == 0) {
            tv.mismatches.push_back(
                Mismatch{p, "membership", "all_squarefree", "absent"});
        }
    }
    for (long p : computed_members) {
        if (fixture_members.count(p) == 0) {
            tv.mismatches.push_back(
                Mismatch{p, "membership", "absent", "all_squarefree"});
        }
    }
    // Value rows: fixture stores the radicands p^2 + c for c = 1,-2,2,4.
    for (long p : ps) {
        const auto it = by_p.find(p);
        if (it == by_p.end()) continue;
        for (int j = 1; j <= 4; ++j) {
            const auto expected = fx.lookup(3, p, j);
            if (!expected) continue;
            add_detail(tv, 3, p, j, *expected,
                       it->second->entries.at(j - 1).value);
        }
    }
    return tv;
}

}  // namespace

TableVerification verify_table(const FixtureSet& fixture, int table,
                               int jobs) {
    if (table == 1 || table == 2) {
        return verify_imaginary_table(fixture, table, jobs);
    }
    if (table == 3) {
        return verify_real_table(fixture, jobs);
    }
    throw domain_error("unknown table: " + std::to_string(table));
}

}  // namespace prk
