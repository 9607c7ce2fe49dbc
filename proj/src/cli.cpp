#include "prk/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "prk/arith.hpp"
#include "prk/classnumber.hpp"
#include "prk/density.hpp"
#include "prk/errors.hpp"
#include "prk/prational.hpp"
#include "prk/quadfield.hpp"
#include "prk/report.hpp"
#include "prk/search.hpp"

namespace prk {

namespace {

struct GlobalOpts {
    Format format = Format::text;
    std::string out_path;
    int jobs = 1;
};

Int parse_big(const std::string& s, const char* what) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw domain_error(std::string("invalid integer for ") + what +
                           ": " + s);
    }
}

void emit(const ReportDocument& doc, const GlobalOpts& g,
          std::ostream& out) {
    if (!g.out_path.empty()) {
        std::ofstream f(g.out_path);
        if (!f) {
            throw domain_error("cannot open output file: " + g.out_path);
        }
        write_report(doc, g.format, f);
    } else {
        write_report(doc, g.format, out);
    }
}

Cell opt_cell(const std::optional<double>& v) {
    if (v) return Cell(*v);
    return Cell(std::monostate{});
}

int cmd_classnum(const std::string& d_str, const std::string& method,
                 const GlobalOpts& g, std::ostream& out) {
    const Int d = parse_big(d_str, "-d");
    const FieldDescriptor K = make_field(d);
    const ClassNumberCertificate cert = class_number_certificate(K, method);
    ReportDocument doc;
    doc.command = "classnum";
    doc.parameters = {{"d", d}, {"method", method}};
    Row r;
    r.add("radicand", K.radicand);
    r.add("discriminant", K.discriminant);
    r.add("real", K.real);
    r.add("h", cert.h);
    r.add("method", cert.method);
    r.add("bound", opt_cell(cert.bound));
    r.add("l_value", opt_cell(cert.l_value));
    doc.rows.push_back(std::move(r));
    doc.summary = {{"h", cert.h}};
    emit(doc, g, out);
    return 0;
}

int cmd_fundunit(const std::string& d_str, const GlobalOpts& g,
                 std::ostream& out) {
    const Int d = parse_big(d_str, "-d");
    const FieldDescriptor K = make_field(d);
    const FundamentalUnit u = fundamental_unit(K);
    ReportDocument doc;
    doc.command = "fundunit";
    doc.parameters = {{"d", d}};
    Row r;
    r.add("radicand", K.radicand);
    r.add("t", u.t);
    r.add("u", u.u);
    r.add("sigma", long(u.sigma));
    r.add("norm", long(u.norm));
    r.add("regulator", u.regulator);
    doc.rows.push_back(std::move(r));
    doc.summary = {{"regulator", Cell(u.regulator)}};
    emit(doc, g, out);
    return 0;
}

int cmd_fibtest(const std::string& d_str, const std::string& p_str,
                const GlobalOpts& g, std::ostream& out) {
    const Int d = parse_big(d_str, "-d");
    const Int p = parse_big(p_str, "-p");
    const FieldDescriptor K = make_field(d);
    const FibonacciResidue fr = generalized_fibonacci_mod(K, p);
    ReportDocument doc;
    doc.command = "fibtest";
    doc.parameters = {{"d", d}, {"p", p}};
    Row r;
    r.add("radicand", K.radicand);
    r.add("p", p);
    r.add("f", long(fr.f));
    r.add("q", fr.q);
    r.add("residue", fr.residue);
    r.add("trace_divisible", fr.trace_divisible);
    r.add("local_pth_power", fr.residue == 1);
    doc.rows.push_back(std::move(r));
    doc.summary = {{"residue", fr.residue},
                   {"local_pth_power", fr.residue == 1}};
    if (fr.trace_divisible && fr.residue == 1) {
        doc.notes.push_back(
            "p divides the unit trace: residue 1 is inconclusive as a "
            "local p-th-power certificate");
    }
    emit(doc, g, out);
    return 0;
}

void verdict_to_doc(const PRationalityVerdict& v, ReportDocument& doc) {
    for (const Evidence& e : v.reasons) {
        doc.notes.push_back(e.tag + ": " + e.detail);
    }
}

int cmd_prational(const std::string& d_str, const std::string& p_str,
                  const GlobalOpts& g, std::ostream& out) {
    const Int d = parse_big(d_str, "-d");
    const Int p = parse_big(p_str, "-p");
    const FieldDescriptor K = make_field(d);
    const PRationalityVerdict v =
        K.real ? is_p_rational_real(K, p) : is_p_rational_imaginary(K, p);
    ReportDocument doc;
    doc.command = "prational";
    doc.parameters = {{"d", d}, {"p", p}};
    Row r;
    r.add("radicand", K.radicand);
    r.add("p", p);
    r.add("real", K.real);
    r.add("outcome", std::string(outcome_name(v.outcome)));
    r.add("h", v.h ? Cell(*v.h) : Cell(std::monostate{}));
    r.add("residue", v.residue ? Cell(*v.residue) : Cell(std::monostate{}));
    doc.rows.push_back(std::move(r));
    doc.summary = {{"outcome", std::string(outcome_name(v.outcome))}};
    verdict_to_doc(v, doc);
    emit(doc, g, out);
    return 0;
}

int cmd_scan_imaginary(int k, const std::string& variant_name,
                       const std::string& from_str, const std::string& to_str,
                       const GlobalOpts& g, std::ostream& out) {
    const Int from = parse_big(from_str, "--from");
    const Int to = parse_big(to_str, "--to");
    const ImaginaryVariant variant = (variant_name == "shifted")
                                         ? ImaginaryVariant::shifted
                                         : ImaginaryVariant::p_multiplied;
    const auto rows =
        scan_consecutive_imaginary(k, variant, from, to, g.jobs);
    ReportDocument doc;
    doc.command = "scan-imaginary";
    doc.parameters = {{"k", long(k)},
                      {"variant", variant_name},
                      {"from", from},
                      {"to", to},
                      {"jobs", long(g.jobs)}};
    doc.csv_header_hint = {"p",  "j", "radicand",        "kernel",
                           "h",  "louboutin_bound", "p_divides_h",
                           "simultaneous"};
    long simultaneous_count = 0;
    for (const auto& row : rows) {
        if (row.simultaneous) ++simultaneous_count;
        for (const auto& e : row.entries) {
            Row r;
            r.add("p", row.p);
            r.add("j", long(e.j));
            r.add("radicand", e.radicand);
            if (e.skipped) {
                r.add("kernel", Cell(std::monostate{}));
                r.add("h", Cell(std::monostate{}));
                r.add("louboutin_bound", Cell(std::monostate{}));
                r.add("p_divides_h", Cell(std::monostate{}));
                doc.notes.push_back("p=" + row.p.get_str() + " j=" +
                                    std::to_string(e.j) + " skipped: " +
                                    e.note);
            } else {
                r.add("kernel", e.kern);
                r.add("h", e.h);
                r.add("louboutin_bound", e.louboutin);
                r.add("p_divides_h", e.p_divides_h);
            }
            r.add("simultaneous", row.simultaneous);
            doc.rows.push_back(std::move(r));
        }
    }
    doc.summary = {{"prime_count", long(rows.size())},
                   {"simultaneous_count", simultaneous_count},
                   {"all_simultaneous",
                    simultaneous_count == long(rows.size())}};
    emit(doc, g, out);
    return 0;
}

int cmd_scan_real(const std::string& from_str, const std::string& to_str,
                  const GlobalOpts& g, std::ostream& out) {
    const Int from = parse_big(from_str, "--from");
    const Int to = parse_big(to_str, "--to");
    const auto rows = scan_real_family(from, to, g.jobs);
    ReportDocument doc;
    doc.command = "scan-real";
    doc.parameters = {{"from", from}, {"to", to}, {"jobs", long(g.jobs)}};
    doc.csv_header_hint = {"p",       "c", "value",   "squarefree",
                           "h",       "residue", "f", "outcome",
                           "all_squarefree", "simultaneous"};
    long members = 0;
    long simultaneous_count = 0;
    std::string membership;
    for (const auto& row : rows) {
        if (row.all_squarefree) {
            ++members;
            if (!membership.empty()) membership += " ";
            membership += row.p.get_str();
        }
        if (row.simultaneous) ++simultaneous_count;
        for (const auto& e : row.entries) {
            Row r;
            r.add("p", row.p);
            r.add("c", long(e.c));
            r.add("value", e.value);
            r.add("squarefree", e.squarefree);
            if (e.evaluated) {
                r.add("h", e.h);
                r.add("residue", e.residue);
                r.add("f", long(e.f));
                r.add("outcome", std::string(outcome_name(e.outcome)));
            } else {
                r.add("h", Cell(std::monostate{}));
                r.add("residue", Cell(std::monostate{}));
                r.add("f", Cell(std::monostate{}));
                r.add("outcome", Cell(std::monostate{}));
            }
            r.add("all_squarefree", row.all_squarefree);
            r.add("simultaneous", row.simultaneous);
            doc.rows.push_back(std::move(r));
        }
    }
    doc.summary = {{"prime_count", long(rows.size())},
                   {"all_squarefree_count", members},
                   {"simultaneous_count", simultaneous_count},
                   {"membership", membership}};
    emit(doc, g, out);
    return 0;
}

int cmd_primesearch(const std::vector<std::string>& shift_strs,
                    const std::vector<std::string>& moduli_strs,
                    const std::string& limit_str, const GlobalOpts& g,
                    std::ostream& out) {
    std::vector<Int> rs, ms;
    for (const auto& s : shift_strs) rs.push_back(parse_big(s, "--shifts"));
    for (const auto& s : moduli_strs) ms.push_back(parse_big(s, "--moduli"));
    const Int limit = parse_big(limit_str, "--limit");
    const SearchResult sr = find_prime_square_divisors(rs, ms, limit);
    ReportDocument doc;
    doc.command = "primesearch";
    std::string shifts_txt, moduli_txt;
    for (size_t i = 0; i < rs.size(); ++i) {
        if (i) shifts_txt += " ";
        shifts_txt += rs[i].get_str();
    }
    for (size_t i = 0; i < ms.size(); ++i) {
        if (i) moduli_txt += " ";
        moduli_txt += ms[i].get_str();
    }
    doc.parameters = {{"shifts", shifts_txt},
                      {"moduli", moduli_txt},
                      {"limit", limit}};
    for (const auto& [r, m] : sr.shifts) {
        Row row;
        const Int m2 = m * m;
        const Int diff = sr.p - r;
        row.add("p", sr.p);
        row.add("r", r);
        row.add("m", m);
        row.add("m_squared", m2);
        row.add("p_minus_r", diff);
        row.add("quotient", Int(diff / m2));
        row.add("verified",
                mpz_divisible_p(diff.get_mpz_t(), m2.get_mpz_t()) != 0);
        doc.rows.push_back(std::move(row));
    }
    doc.summary = {{"p", sr.p},
                   {"scan_steps", sr.scan_steps},
                   {"combined_residue", sr.plan.combined_residue},
                   {"combined_modulus", sr.plan.combined_modulus},
                   {"square_factor_exponent",
                    Cell(square_factor_exponent(sr))}};
    emit(doc, g, out);
    return 0;
}

int cmd_density(const std::string& c_str, long cutoff,
                std::optional<long> empirical_x, const GlobalOpts& g,
                std::ostream& out) {
    const Int c = parse_big(c_str, "-c");
    DensityReport rep = euler_density(c, cutoff);
    if (empirical_x) {
        const EmpiricalDensity emp = empirical_density(c, *empirical_x);
        rep.empirical_x = *empirical_x;
        rep.empirical_ratio = emp.ratio;
    }
    ReportDocument doc;
    doc.command = "density";
    doc.parameters = {{"c", c}, {"cutoff", cutoff}};
    if (empirical_x) doc.parameters.emplace_back("empirical", *empirical_x);
    Row r;
    r.add("c", c);
    r.add("product_value", rep.product_value);
    r.add("terms_used", rep.terms_used);
    r.add("tail_bound", rep.tail_bound);
    r.add("empirical_x",
          rep.empirical_x ? Cell(*rep.empirical_x) : Cell(std::monostate{}));
    r.add("empirical_ratio", opt_cell(rep.empirical_ratio));
    r.add("reference_constant",
          rep.reference ? Cell(rep.reference->value)
                        : Cell(std::monostate{}));
    r.add("reference_is_lower_bound",
          rep.reference ? Cell(rep.reference->lower_bound)
                        : Cell(std::monostate{}));
    r.add("agreement",
          rep.agreement ? Cell(*rep.agreement) : Cell(std::monostate{}));
    doc.rows.push_back(std::move(r));
    doc.summary = {{"product_value", Cell(rep.product_value)},
                   {"tail_bound", Cell(rep.tail_bound)}};
    if (rep.empirical_ratio) {
        const double diff =
            std::fabs(*rep.empirical_ratio - rep.product_value);
        doc.summary.emplace_back("empirical_ratio",
                                 Cell(*rep.empirical_ratio));
        doc.summary.emplace_back("abs_difference", Cell(diff));
        doc.summary.emplace_back("within_0_01", diff <= 0.01);
    }
    if (rep.reference) {
        doc.summary.emplace_back("reference_constant",
                                 Cell(rep.reference->value));
        doc.summary.emplace_back("agreement", Cell(*rep.agreement));
        if (!*rep.agreement) {
            doc.notes.push_back(
                "computed product " + format_real(rep.product_value) +
                " does not support the reference constant " +
                format_real(rep.reference->value) +
                "; the discrepancy is reported, not asserted away");
        }
    }
    emit(doc, g, out);
    return 0;
}

int cmd_multiquadratic(const char* name, const std::string& p_str,
                       const std::string& alpha_str, const GlobalOpts& g,
                       std::ostream& out) {
    const Int p = parse_big(p_str, "-p");
    const Int alpha = parse_big(alpha_str, "--alpha");
    const bool is_kalpha = std::string(name) == "kalpha";
    const PRationalityVerdict v =
        is_kalpha ? check_K_alpha(p, alpha) : check_F_alpha(p, alpha);
    ReportDocument doc;
    doc.command = name;
    doc.parameters = {{"p", p}, {"alpha", alpha}};
    doc.csv_header_hint = {"p", "alpha", "radicand", "h", "p_divides_h",
                           "ramified", "residue", "trace_divisible",
                           "outcome"};
    for (const SubfieldCheck& sc : v.subfields) {
        Row r;
        r.add("p", p);
        r.add("alpha", alpha);
        r.add("radicand", sc.radicand);
        r.add("h", sc.h ? Cell(*sc.h) : Cell(std::monostate{}));
        r.add("p_divides_h", sc.h_divisible);
        r.add("ramified", sc.ramified);
        r.add("residue",
              sc.residue ? Cell(*sc.residue) : Cell(std::monostate{}));
        r.add("trace_divisible",
              sc.residue ? Cell(sc.trace_divisible)
                         : Cell(std::monostate{}));
        r.add("outcome", std::string(outcome_name(v.outcome)));
        doc.rows.push_back(std::move(r));
    }
    doc.summary = {{"outcome", std::string(outcome_name(v.outcome))},
                   {"subfield_count", long(v.subfields.size())}};
    verdict_to_doc(v, doc);
    emit(doc, g, out);
    return 0;
}

int cmd_tables(const std::string& which, const GlobalOpts& g,
               std::ostream& out) {
    const FixtureSet fx = load_fixture_set();
    std::vector<int> tables;
    if (which == "all") {
        tables = {1, 2, 3};
    } else if (which == "1" || which == "2" || which == "3") {
        tables = {std::stoi(which)};
    } else {
        throw domain_error("tables --verify expects 1, 2, 3 or all");
    }
    ReportDocument doc;
    doc.command = "tables";
    doc.parameters = {{"verify", which}, {"jobs", long(g.jobs)}};
    doc.csv_header_hint = {"table", "p", "j", "expected", "computed",
                           "match"};
    long checked = 0;
    long mismatch_count = 0;
    for (int t : tables) {
        const TableVerification tv = verify_table(fx, t, g.jobs);
        checked += tv.checked;
        mismatch_count += long(tv.mismatches.size());
        for (const Row& r : tv.detail_rows) doc.rows.push_back(r);
        for (const Mismatch& m : tv.mismatches) {
            doc.notes.push_back("mismatch: table " + std::to_string(t) +
                                " p=" + std::to_string(m.p) + " " +
                                m.column + " expected=" + m.expected +
                                " computed=" + m.computed);
        }
    }
    doc.summary = {{"checked", checked},
                   {"mismatches", mismatch_count},
                   {"all_match", mismatch_count == 0}};
    emit(doc, g, out);
    return mismatch_count == 0 ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    CLI::App app{"p-rationality toolkit for quadratic and multiquadratic "
                 "fields"};
    app.name("prk");
    app.require_subcommand(1);

    GlobalOpts g;
    std::string format_name = "text";
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", g.out_path, "Write the report to a file");
    app.add_option("--jobs", g.jobs, "Worker threads for scans")
        ->check(CLI::PositiveNumber);

    auto* classnum = app.add_subcommand("classnum", "Class number of a "
                                                    "quadratic field");
    std::string cn_d;
    std::string cn_method = "auto";
    classnum->add_option("-d", cn_d, "Radicand")->required();
    classnum->add_option("--method", cn_method)
        ->check(CLI::IsMember({"forms", "analytic"}));

    auto* fundunit = app.add_subcommand("fundunit", "Fundamental unit of a "
                                                    "real quadratic field");
    std::string fu_d;
    fundunit->add_option("-d", fu_d, "Radicand")->required();

    auto* fibtest = app.add_subcommand("fibtest", "Generalized Fibonacci "
                                                  "residue mod p^2");
    std::string fb_d, fb_p;
    fibtest->add_option("-d", fb_d, "Radicand")->required();
    fibtest->add_option("-p", fb_p, "Odd prime")->required();

    auto* prational = app.add_subcommand("prational", "p-rationality "
                                                      "verdict");
    std::string pr_d, pr_p;
    prational->add_option("-d", pr_d, "Radicand")->required();
    prational->add_option("-p", pr_p, "Prime")->required();

    auto* scan_im = app.add_subcommand("scan-imaginary", "Consecutive "
                                                         "imaginary scan");
    int si_k = 1;
    std::string si_variant, si_from, si_to;
    scan_im->add_option("-k", si_k, "Number of consecutive fields")
        ->required()
        ->check(CLI::PositiveNumber);
    scan_im->add_option("--variant", si_variant)
        ->required()
        ->check(CLI::IsMember({"shifted", "pmul"}));
    scan_im->add_option("--from", si_from)->required();
    scan_im->add_option("--to", si_to)->required();

    auto* scan_re = app.add_subcommand("scan-real", "Square-free screening "
                                                    "and verdicts for the "
                                                    "p^2+c family");
    std::string sr_from, sr_to;
    scan_re->add_option("--from", sr_from)->required();
    scan_re->add_option("--to", sr_to)->required();

    auto* psearch = app.add_subcommand("primesearch", "CRT-driven prime "
                                                      "search");
    std::vector<std::string> ps_shifts, ps_moduli;
    std::string ps_limit;
    psearch->add_option("--shifts", ps_shifts)->required()->delimiter(',');
    psearch->add_option("--moduli", ps_moduli)->required()->delimiter(',');
    psearch->add_option("--limit", ps_limit)->required();

    auto* density = app.add_subcommand("density", "Square-free density of "
                                                  "p^2+c over primes");
    std::string de_c;
    long de_cutoff = 0;
    long de_empirical = 0;
    density->add_option("-c", de_c, "Polynomial shift")->required();
    density->add_option("--cutoff", de_cutoff)->required();
    auto* de_emp_opt = density->add_option("--empirical", de_empirical);

    auto* kalpha = app.add_subcommand("kalpha", "Real biquadratic family "
                                                "check");
    std::string ka_p, ka_alpha;
    kalpha->add_option("-p", ka_p)->required();
    kalpha->add_option("--alpha", ka_alpha)->required();

    auto* falpha = app.add_subcommand("falpha", "Imaginary multiquadratic "
                                                "family check");
    std::string fa_p, fa_alpha;
    falpha->add_option("-p", fa_p)->required();
    falpha->add_option("--alpha", fa_alpha)->required();

    auto* tables = app.add_subcommand("tables", "Verify embedded reference "
                                                "tables");
    std::string tb_which;
    tables->add_option("--verify", tb_which)
        ->required()
        ->check(CLI::IsMember({"1", "2", "3", "all"}));

    for (auto* sub :
         {classnum, fundunit, fibtest, prational, scan_im, scan_re, psearch,
          density, kalpha, falpha, tables}) {
        sub->fallthrough();
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("prk");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    g.format = parse_format(format_name);

    try {
        if (classnum->parsed()) {
            return cmd_classnum(cn_d, cn_method, g, out);
        }
        if (fundunit->parsed()) return cmd_fundunit(fu_d, g, out);
        if (fibtest->parsed()) return cmd_fibtest(fb_d, fb_p, g, out);
        if (prational->parsed()) return cmd_prational(pr_d, pr_p, g, out);
        if (scan_im->parsed()) {
            return cmd_scan_imaginary(si_k, si_variant, si_from, si_to, g,
                                      out);
        }
        if (scan_re->parsed()) return cmd_scan_real(sr_from, sr_to, g, out);
        if (psearch->parsed()) {
            return cmd_primesearch(ps_shifts, ps_moduli, ps_limit, g, out);
        }
        if (density->parsed()) {
            std::optional<long> emp;
            if (de_emp_opt->count() > 0) emp = de_empirical;
            return cmd_density(de_c, de_cutoff, emp, g, out);
        }
        if (kalpha->parsed()) {
            return cmd_multiquadratic("kalpha", ka_p, ka_alpha, g, out);
        }
        if (falpha->parsed()) {
            return cmd_multiquadratic("falpha", fa_p, fa_alpha, g, out);
        }
        if (tables->parsed()) return cmd_tables(tb_which, g, out);
        err << "error: no subcommand given\n";
        return 2;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const computation_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace prk
