// Command-line front end: operator evaluation, moments, error-bound tables,
// figure-data sweeps, family validation and Korovkin reports, with
// byte-stable CSV/JSON output.
//
// Exit codes: 0 ok, 2 config/parse error, 3 family validation failure,
// 4 numeric range error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sheffer/analysis.hpp"
#include "sheffer/expr.hpp"
#include "sheffer/family.hpp"
#include "sheffer/fixtures.hpp"
#include "sheffer/format.hpp"
#include "sheffer/operator.hpp"

using nlohmann::json;
using namespace sheffer;

namespace {

constexpr const char* kToolVersion = "1.0.0";

constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRange = 4;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family = "example1";
    std::string family_json;
    std::string f = "f1";
    std::string n_list = "20,30,50";
    std::string x_list;
    std::string interval;
    int grid = 256;
    double tol = 1e-12;
    std::string norm_interval = "0,12";
    std::string delta_rule = "inv-sqrt";
    std::string format = "csv";
    std::string out;
};

std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(std::string("invalid ") + what + " entry: '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError(std::string("empty ") + what + " list");
    return out;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> ns;
    for (double v : parse_number_list(text, "--n")) {
        if (v < 1 || v != int(v)) throw ConfigError("--n entries must be integers >= 1");
        ns.push_back(int(v));
    }
    return ns;
}

std::pair<double, double> parse_interval(const std::string& text, const char* what) {
    const auto v = parse_number_list(text, what);
    if (v.size() != 2 || !(v[1] >= v[0]))
        throw ConfigError(std::string(what) + " must be A,B with B >= A");
    return {v[0], v[1]};
}

// x abscissas: explicit list, or interval + grid
std::vector<double> resolve_x(const Options& opt) {
    if (!opt.x_list.empty()) {
        auto xs = parse_number_list(opt.x_list, "--x");
        for (double x : xs)
            if (x < 0) throw ConfigError("--x entries must be >= 0");
        return xs;
    }
    if (opt.interval.empty()) throw ConfigError("need --x or --interval");
    const auto [a, b] = parse_interval(opt.interval, "--interval");
    if (opt.grid < 2) throw ConfigError("--grid must be >= 2");
    std::vector<double> xs;
    for (int i = 0; i < opt.grid; ++i)
        xs.push_back(opt.grid > 1 ? a + (b - a) * i / (opt.grid - 1) : a);
    return xs;
}

Family resolve_family(const Options& opt) {
    if (!opt.family_json.empty()) {
        std::ifstream in(opt.family_json);
        if (!in) throw ConfigError("cannot open family JSON: " + opt.family_json);
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw ConfigError(std::string("family JSON parse error: ") + e.what());
        }
        try {
            auto terms = [&](const char* key) {
                std::vector<SparseTerm> out;
                for (const auto& t : doc.at(key))
                    out.push_back({t.at("k1").get<int>(), t.at("k2").get<int>(),
                                   t.at("c").get<double>()});
                return out;
            };
            return family_from_terms(doc.value("name", std::string("user")),
                                     terms("A"), terms("H"));
        } catch (const json::exception& e) {
            throw ConfigError(std::string("malformed family JSON: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("family rejected: ") + e.what());
        }
    }
    try {
        return builtin(opt.family);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

Family resolve_capable_family(const Options& opt) {
    Family fam = resolve_family(opt);
    if (!fam.operator_capable) {
        const auto rep = validate_family(fam, default_positivity_grid(), 40);
        std::string why = !rep.constants.pass
                              ? "restriction (ii) fails: " + rep.constants.witness
                              : "positivity fails: " + rep.positivity.witness;
        throw ValidationError("family '" + fam.name + "' is not operator-capable; " + why);
    }
    return fam;
}

// f selector: a named builtin or an expression over x
Expr resolve_f(const std::string& sel) {
    if (sel == "f1") return Expr::parse("(x-0.5)*(x-0.33333333333333331)");
    if (sel == "f2") return Expr::parse("-4*x^3");
    if (sel == "e0") return Expr::parse("1");
    if (sel == "e1") return Expr::parse("x");
    if (sel == "e2") return Expr::parse("x^2");
    try {
        return Expr::parse(sel);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad --f: ") + e.what());
    }
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + opt.out);
    out << text;
}

std::string render(const Options& opt, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows,
                   const std::vector<std::pair<std::string, std::string>>& metadata = {}) {
    if (opt.format == "json") {
        json j;
        for (const auto& [k, v] : metadata) j["metadata"][k] = v;
        j["rows"] = json::array();
        for (const auto& row : rows) {
            json obj;
            for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
            j["rows"].push_back(obj);
        }
        return j.dump(2) + "\n";
    }
    std::string text;
    for (const auto& [k, v] : metadata) text += "# " + k + ": " + v + "\n";
    CsvWriter w(header);
    for (const auto& row : rows) w.append_row(row);
    return text + w.str();
}

int cmd_eval(const Options& opt) {
    const Family fam = resolve_capable_family(opt);
    const Expr f = resolve_f(opt.f);
    std::vector<std::vector<std::string>> rows;
    for (int n : parse_n_list(opt.n_list))
        for (double x : resolve_x(opt)) {
            const OperatorResult r = apply(fam, f, n, x, opt.tol);
            rows.push_back({std::to_string(n), format_double(x), format_double(r.value),
                            std::to_string(r.terms_used),
                            format_double(r.accumulated_weight),
                            format_double(r.tail_bound)});
        }
    emit(opt, render(opt, {"n", "x", "value", "terms_used", "accumulated_weight", "tail_bound"},
                     rows));
    return 0;
}

int cmd_moments(const Options& opt) {
    const Family fam = resolve_capable_family(opt);
    std::vector<std::vector<std::string>> rows;
    for (int n : parse_n_list(opt.n_list))
        for (double x : resolve_x(opt)) {
            const MomentSet m = moments_closed(fam, n, x);
            const double s0 = apply(fam, [](double) { return 1.0; }, n, x, opt.tol).value;
            const double s1 = apply(fam, [](double u) { return u; }, n, x, opt.tol).value;
            const double s2 = apply(fam, [](double u) { return u * u; }, n, x, opt.tol).value;
            rows.push_back({std::to_string(n), format_double(x),
                            format_double(m.e0), format_double(m.e1), format_double(m.e2),
                            format_double(m.central1), format_double(m.central2),
                            format_double(s0), format_double(s1), format_double(s2),
                            format_double(std::abs(s0 - m.e0)),
                            format_double(std::abs(s1 - m.e1)),
                            format_double(std::abs(s2 - m.e2))});
        }
    emit(opt, render(opt,
                     {"n", "x", "e0_closed", "e1_closed", "e2_closed", "central1",
                      "central2", "e0_series", "e1_series", "e2_series", "e0_diff",
                      "e1_diff", "e2_diff"},
                     rows));
    return 0;
}

int cmd_table(const Options& opt) {
    if (opt.f != "f1" && opt.f != "f2")
        throw ConfigError("table command supports --f f1 or f2");
    if (opt.family != "example1" && opt.family != "example2")
        throw ConfigError("table command supports --family example1 or example2");
    if (!opt.family_json.empty())
        throw ConfigError("table command uses built-in families only");
    const Family fam = resolve_capable_family(opt);
    const Expr f = resolve_f(opt.f);
    const Expr d1 = f.derivative();
    const Expr d2 = d1.derivative();
    const auto [a, b] = parse_interval(opt.norm_interval, "--norm-interval");
    const NormSet norms = sup_norms(f, a, b, 2048,
                                    std::function<double(double)>(d1),
                                    std::function<double(double)>(d2));
    const FixtureGrid& fixture = fixture_bounds(opt.family, opt.f);

    DeltaRule rule = DeltaRule::inv_sqrt_n;
    double custom_delta = 0.0;
    if (opt.delta_rule == "paper") rule = DeltaRule::paper_sqrt_n;
    else if (opt.delta_rule != "inv-sqrt") {
        rule = DeltaRule::custom;
        try {
            custom_delta = std::stod(opt.delta_rule);
        } catch (const std::exception&) {
            throw ConfigError("--delta-rule must be paper, inv-sqrt or a number");
        }
        if (!(custom_delta > 0)) throw ConfigError("--delta-rule value must be > 0");
    }

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < kFixtureN.size(); ++i)
        for (std::size_t j = 0; j < kFixtureX.size(); ++j) {
            const int n = kFixtureN[i];
            const double x = kFixtureX[j];
            const BoundReport r = report_gavrea_rasa(fam, f, n, x, norms, opt.tol);
            const BoundReport rm =
                bound_modulus(fam, f, n, x, rule, custom_delta, a, b, 2048, opt.tol);
            std::ostringstream paper_cell;
            paper_cell.setf(std::ios::fixed);
            paper_cell.precision(4);
            paper_cell << fixture[i][j];
            rows.push_back({std::to_string(n), format_double(x),
                            format_double(r.bound), format_double(rm.bound),
                            format_double(r.actual_error), paper_cell.str()});
        }
    emit(opt, render(opt,
                     {"n", "x", "bound", "modulus_bound", "actual_error",
                      "reference_bound"},
                     rows,
                     {{"family", opt.family},
                      {"f", opt.f},
                      {"norm_convention",
                       "sup norms of f', f'' on [" + format_double(a) + "," +
                           format_double(b) + "] from analytic derivatives"},
                      {"bound", "||f'|| sqrt(m2) + 0.5 ||f''|| m2"},
                      {"delta_rule", opt.delta_rule},
                      {"tool_version", kToolVersion}}));
    return 0;
}

int cmd_sweep(const Options& opt) {
    if (opt.interval.empty()) throw ConfigError("sweep requires --interval A,B");
    const Family fam = resolve_capable_family(opt);
    const Expr f = resolve_f(opt.f);
    const auto ns = parse_n_list(opt.n_list);
    const auto [a, b] = parse_interval(opt.interval, "--interval");
    if (opt.grid < 2) throw ConfigError("--grid must be >= 2");

    std::vector<std::string> header = {"x", "f"};
    for (int n : ns) header.push_back("G_" + std::to_string(n));
    std::vector<std::vector<std::string>> rows;
    const int steps = (b > a) ? opt.grid - 1 : 0;
    for (int i = 0; i <= steps; ++i) {
        const double x = steps > 0 ? a + (b - a) * i / steps : a;
        std::vector<std::string> row = {format_double(x), format_double(f(x))};
        for (int n : ns) row.push_back(format_double(apply(fam, f, n, x, opt.tol).value));
        rows.push_back(row);
    }
    emit(opt, render(opt, header, rows));

    // companion gnuplot script reproducing the figure layout
    std::string data_file = opt.out.empty() ? "sweep.csv" : opt.out;
    std::string script;
    script += "set datafile separator ','\n";
    script += "set key top left\n";
    script += "set xlabel 'x'\n";
    script += "plot '" + data_file + "' using 1:2 with lines title 'f'";
    for (std::size_t i = 0; i < ns.size(); ++i)
        script += ", \\\n     '" + data_file + "' using 1:" + std::to_string(i + 3) +
                  " with lines title 'G_{" + std::to_string(ns[i]) + "}'";
    script += "\n";
    if (opt.out.empty()) {
        std::cout << script;
    } else {
        std::ofstream gp(opt.out + ".gp", std::ios::binary);
        if (!gp) throw ConfigError("cannot write gnuplot script");
        gp << script;
    }
    return 0;
}

int cmd_validate(const Options& opt) {
    const Family fam = resolve_family(opt);
    const auto rep = validate_family(fam, default_positivity_grid(), 40);
    json j;
    j["family"] = fam.name;
    j["condition_i_positivity"] = {{"pass", rep.positivity.pass},
                                   {"witness", rep.positivity.witness}};
    j["condition_ii_constants"] = {{"pass", rep.constants.pass},
                                   {"witness", rep.constants.witness}};
    j["condition_iii_convergence"] = "declared";
    j["operator_capable"] = rep.operator_capable();
    emit(opt, j.dump(2) + "\n");
    return rep.operator_capable() ? 0 : kExitValidation;
}

int cmd_korovkin(const Options& opt) {
    const Family fam = resolve_capable_family(opt);
    double b = 1.0;
    if (!opt.interval.empty()) b = parse_interval(opt.interval, "--interval").second;
    const auto rep = korovkin_report(fam, parse_n_list(opt.n_list), b, opt.grid);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        std::array<double, 3> ratio = {0, 0, 0};
        if (i > 0) ratio = rep.ratios[i - 1];
        rows.push_back({std::to_string(r.n), format_double(r.dev_e0),
                        format_double(r.dev_e1), format_double(r.dev_e2),
                        format_double(ratio[0]), format_double(ratio[1]),
                        format_double(ratio[2])});
    }
    emit(opt, render(opt,
                     {"n", "dev_e0", "dev_e1", "dev_e2", "ratio_e0", "ratio_e1",
                      "ratio_e2"},
                     rows, {{"family", fam.name}, {"interval", "[0," + format_double(b) + "]"}}));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Szasz operators on multiple Sheffer families"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", opt.family, "builtin family name");
        sub->add_option("--family-json", opt.family_json, "path to a family JSON file");
        sub->add_option("--f", opt.f, "function: f1, f2, e0, e1, e2 or an expression in x");
        sub->add_option("--n", opt.n_list, "comma-separated n values");
        sub->add_option("--x", opt.x_list, "comma-separated x values");
        sub->add_option("--interval", opt.interval, "x interval A,B");
        sub->add_option("--grid", opt.grid, "grid points for --interval");
        sub->add_option("--tol", opt.tol, "truncation tolerance");
        sub->add_option("--norm-interval", opt.norm_interval, "interval for sup norms A,B");
        sub->add_option("--delta-rule", opt.delta_rule, "paper | inv-sqrt | VALUE");
        sub->add_option("--format", opt.format, "csv | json");
        sub->add_option("--out", opt.out, "output path (stdout when omitted)");
        return sub;
    };
    auto* eval = add_common(app.add_subcommand("eval", "evaluate G_n(f;x)"));
    auto* moments = add_common(app.add_subcommand("moments", "closed-form and series moments"));
    auto* table = add_common(app.add_subcommand("table", "error-bound table with reference values"));
    auto* sweep = add_common(app.add_subcommand("sweep", "figure data plus gnuplot script"));
    auto* validate = add_common(app.add_subcommand("validate", "check family restrictions"));
    auto* korovkin = add_common(app.add_subcommand("korovkin", "moment-deviation report"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (!(opt.tol > 0) || opt.tol > 1e-3)
            throw ConfigError("--tol must be in (0, 1e-3]");
        if (opt.format != "csv" && opt.format != "json")
            throw ConfigError("--format must be csv or json");
        if (eval->parsed()) return cmd_eval(opt);
        if (moments->parsed()) return cmd_moments(opt);
        if (table->parsed()) return cmd_table(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (validate->parsed()) return cmd_validate(opt);
        if (korovkin->parsed()) return cmd_korovkin(opt);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::range_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRange;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRange;
    }
}
