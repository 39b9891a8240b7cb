#include "cli.hpp"

#include "schroder_lab/dynamics.hpp"
#include "schroder_lab/errors.hpp"
#include "schroder_lab/schroder.hpp"
#include "schroder_lab/series.hpp"
#include "schroder_lab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace schroder_lab::cli {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Flag values as typed; s stays a string until a command parses it exactly.
struct Options {
    std::string s;
    int n = 200;
    int family = 0;
    int index = 0;
    std::optional<std::string> xmin;
    std::optional<std::string> xmax;
    int samples = 201;
    std::string x0;
    double t0 = 0;
    double t1 = 3;
    double dt = 0.125;
    int count = 8;
    int depth = 4;
    std::string format = "csv";  // transit and verify switch to json unless given
    std::string out;
    std::vector<std::string> only;
    std::string json_path;
};

Rational parse_s(const std::string& text)
{
    if (text.empty()) {
        throw UsageError("--s is required");
    }
    try {
        return parse_rational(text);
    } catch (const std::exception& e) {
        throw UsageError("cannot parse --s '" + text + "': " + e.what());
    }
}

Rational parse_value(const std::string& flag, const std::string& text)
{
    try {
        return parse_rational(text);
    } catch (const std::exception& e) {
        throw UsageError("cannot parse " + flag + " '" + text + "': " + e.what());
    }
}

// A table with a fixed header; cells are already formatted strings, and an
// empty cell is a missing value.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const
    {
        std::string text;
        const auto line = [&text](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                text += (i ? "," : "") + cells[i];
            }
            text += '\n';
        };
        line(header);
        for (const auto& r : rows) {
            line(r);
        }
        return text;
    }

    // Array of row objects; numeric cells become numbers, "p/q" strings stay
    // strings, empty cells become null.
    nlohmann::json json() const
    {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t i = 0; i < header.size(); ++i) {
                const std::string& cell = r[i];
                if (cell.empty()) {
                    obj[header[i]] = nullptr;
                    continue;
                }
                char* end = nullptr;
                const double v = std::strtod(cell.c_str(), &end);
                if (end && *end == '\0' && cell.find('/') == std::string::npos) {
                    obj[header[i]] = v;
                } else {
                    obj[header[i]] = cell;
                }
            }
            arr.push_back(std::move(obj));
        }
        return arr;
    }
};

std::string real_cell(Real x)
{
    return format_real(static_cast<double>(x));
}

// Where output goes: --out (relative paths under SCHRODER_LAB_OUT when set),
// else $SCHRODER_LAB_OUT/<default_name>, else the `out` stream.
void emit(const Options& opt, const std::string& default_name, const std::string& text, std::ostream& out,
          std::ostream& err)
{
    const char* env = std::getenv("SCHRODER_LAB_OUT");
    const std::filesystem::path base = env && *env ? std::filesystem::path(env) : std::filesystem::path();
    std::filesystem::path target;
    if (!opt.out.empty()) {
        target = std::filesystem::path(opt.out);
        if (target.is_relative() && !base.empty()) {
            target = base / target;
        }
    } else if (!base.empty()) {
        target = base / default_name;
    } else {
        out << text;
        return;
    }
    if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path());
    }
    std::ofstream f(target, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + target.string() + " for writing");
    }
    f << text;
    err << "wrote " << target.string() << '\n';
}

void emit_table(const Options& opt, const std::string& stem, const Table& t, std::ostream& out, std::ostream& err)
{
    if (opt.format == "json") {
        emit(opt, stem + ".json", t.json().dump(2) + "\n", out, err);
    } else {
        emit(opt, stem + ".csv", t.csv(), out, err);
    }
}

Table report_table(const VerificationReport& rep)
{
    Table t{{"check", "expected", "computed", "tolerance", "pass"}, {}};
    const auto cell = [](const nlohmann::json& j) {
        if (j.is_null()) {
            return std::string();
        }
        if (j.is_number_float()) {
            return format_real(j.get<double>());
        }
        std::string s = j.is_string() ? j.get<std::string>() : j.dump();
        // Check names may contain commas; CSV cells are quoted when they do.
        if (s.find_first_of(",\"") != std::string::npos) {
            std::string q = "\"";
            for (char c : s) {
                q += c == '"' ? std::string("\"\"") : std::string(1, c);
            }
            return q + "\"";
        }
        return s;
    };
    for (const auto& c : rep.checks()) {
        t.rows.push_back({cell(c.check), cell(c.expected), cell(c.computed), format_real(c.tolerance),
                          c.pass ? "true" : "false"});
    }
    return t;
}

int emit_report(const Options& opt, const std::string& stem, const VerificationReport& rep, std::ostream& out,
                std::ostream& err)
{
    if (opt.format == "csv") {
        emit(opt, stem + ".csv", report_table(rep).csv(), out, err);
    } else {
        emit(opt, stem + ".json", rep.to_json().dump(2) + "\n", out, err);
    }
    err << rep.passed() << "/" << rep.total() << " checks passed\n";
    return rep.all_passed() ? 0 : 1;
}

int cmd_coeffs(const Options& opt, std::ostream& out, std::ostream& err)
{
    const Rational s = parse_s(opt.s);
    if (opt.n < 0) {
        throw UsageError("--n must be non-negative");
    }
    const auto u = u_coefficients(s, opt.n);
    Table t{{"n", "a_n_exact", "a_n"}, {}};
    for (int n = 0; n <= opt.n; ++n) {
        const Rational& a = u_coefficient(u, n);
        t.rows.push_back({std::to_string(n), to_string(a), real_cell(to_real(a))});
    }
    emit_table(opt, "coeffs", t, out, err);
    return 0;
}

int cmd_potential(const Options& opt, std::ostream& out, std::ostream& err)
{
    const Rational s = parse_s(opt.s);
    if (opt.samples < 2) {
        throw UsageError("--samples must be at least 2");
    }
    const PotentialNode node = family_node(opt.family, opt.index, s);
    const Rational lo = opt.xmin ? parse_value("--xmin", *opt.xmin) : node.lower_tp();
    const Rational hi = opt.xmax ? parse_value("--xmax", *opt.xmax) : node.upper_tp();
    if (lo > hi) {
        throw UsageError("--xmin exceeds --xmax");
    }
    if (lo < node.lower_tp()) {
        throw ComplexValued(node.name() + " is complex-valued on [" + to_string(lo) + ", " +
                                to_string(std::min<Rational>(hi, node.lower_tp())) + ")",
                            to_real(lo), to_real(std::min<Rational>(hi, node.lower_tp())));
    }
    if (hi > node.upper_tp()) {
        throw ComplexValued(node.name() + " is complex-valued on (" +
                                to_string(std::max<Rational>(lo, node.upper_tp())) + ", " + to_string(hi) + "]",
                            to_real(std::max<Rational>(lo, node.upper_tp())), to_real(hi));
    }
    const PotentialModel model(s, opt.n);
    const std::size_t count = static_cast<std::size_t>(opt.samples);
    std::vector<Real> xs(count);
    std::vector<Real> vs(count);
    for_each_index(count, Exec::Parallel, [&](std::size_t i) {
        // Exact grid points, so the endpoints are the turning points themselves.
        const Rational x = lo + (hi - lo) * Rational(static_cast<long>(i), static_cast<long>(count - 1));
        xs[i] = to_real(x);
        vs[i] = model.V(node, xs[i]);
    });
    Table t{{"x", "V"}, {}};
    for (std::size_t i = 0; i < count; ++i) {
        t.rows.push_back({real_cell(xs[i]), real_cell(vs[i])});
    }
    emit_table(opt, "potential", t, out, err);
    return 0;
}

VerificationReport transit_report(const Rational& s, int depth, int N)
{
    if (depth < 0) {
        throw UsageError("--depth must be non-negative");
    }
    if (depth == 0) {
        return {};
    }
    const CheminSchedule schedule = build_chemin(s, depth - 1);
    VerificationReport rep = verify_chemin(schedule, N);
    if (s != Rational(10, 3)) {
        return rep;
    }
    struct Published {
        int group;
        const char* name;
        double value;
    };
    const Published published[] = {{2, "V_2", 0.825728}, {2, "W_1", 0.174272}, {3, "W_2", 0.164433}, {3, "V_3", 0.661295}};
    for (const Published& p : published) {
        if (p.group >= depth) {
            continue;
        }
        for (const CheckResult& c : rep.checks()) {
            if (c.check.rfind(std::string("leg ") + p.name + " ", 0) == 0 && c.computed.is_number()) {
                rep.add_close("published leg " + std::string(p.name), p.value, c.computed.get<double>(), 1e-3);
                break;
            }
        }
    }
    return rep;
}

int cmd_transit(const Options& opt, std::ostream& out, std::ostream& err)
{
    const Rational s = parse_s(opt.s);
    Options o = opt;
    if (o.format == "csv" && !o.json_path.empty()) {
        o.format = "json";
    }
    return emit_report(o, "transit", transit_report(s, opt.depth, opt.n), out, err);
}

int cmd_trajectory(const Options& opt, std::ostream& out, std::ostream& err)
{
    const Rational s = parse_s(opt.s);
    if (opt.x0.empty()) {
        throw UsageError("--x0 is required");
    }
    if (!(opt.dt > 0) || opt.t1 < opt.t0) {
        throw UsageError("need --dt > 0 and --t1 >= --t0");
    }
    const Real x0 = to_real(parse_value("--x0", opt.x0));
    // Grid points t0 + k dt, with t1 itself included when it falls on the grid.
    std::vector<Real> grid;
    const long steps = std::lround(std::floor((opt.t1 - opt.t0) / opt.dt + 1e-9));
    for (long k = 0; k <= steps; ++k) {
        grid.push_back(static_cast<Real>(opt.t0) + static_cast<Real>(k) * static_cast<Real>(opt.dt));
    }
    const Trajectory tr = trajectory(x0, s, grid, opt.n);
    const Flow flow(s, opt.n);
    std::vector<Real> v(grid.size());
    for_each_index(grid.size(), Exec::Parallel, [&](std::size_t i) { v[i] = flow.velocity(x0, grid[i]); });
    Table t{{"t", "x", "dx_dt"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.rows.push_back({real_cell(tr.samples[i].first), real_cell(tr.samples[i].second), real_cell(v[i])});
    }
    emit_table(opt, "trajectory", t, out, err);
    return 0;
}

int cmd_branches(const Options& opt, std::ostream& out, std::ostream& err)
{
    const Rational s = parse_s(opt.s);
    if (opt.count < 1) {
        throw UsageError("--count must be positive");
    }
    if (opt.samples < 2) {
        throw UsageError("--samples must be at least 2");
    }
    const PsiSheets sheets(s, opt.n);
    const auto br = psi_branches(s, opt.count);

    // Cells are direct sheet values; the interpolated tables lose accuracy in
    // the cells next to a turning point.
    Rational lo = br.front().domain().lo;
    Rational hi = br.front().domain().hi;
    for (const auto& b : br) {
        lo = std::min<Rational>(lo, b.domain().lo);
        hi = std::max<Rational>(hi, b.domain().hi);
    }
    Table t{{"x"}, {}};
    for (std::size_t b = 0; b < br.size(); ++b) {
        t.header.push_back("branch_" + std::to_string(b));
    }
    const std::size_t count = static_cast<std::size_t>(opt.samples);
    t.rows.resize(count);
    for_each_index(count, Exec::Parallel, [&](std::size_t i) {
        const Rational xq = lo + (hi - lo) * Rational(static_cast<long>(i), static_cast<long>(count - 1));
        const Real x = to_real(xq);
        auto& row = t.rows[i];
        row.push_back(real_cell(x));
        for (std::size_t b = 0; b < br.size(); ++b) {
            row.push_back(br[b].domain().contains(xq) ? real_cell(sheets.eval(br[b], x)) : std::string());
        }
    });
    emit_table(opt, "branches", t, out, err);
    return 0;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> only;
    for (const std::string& item : opt.only) {
        std::stringstream ss(item);
        std::string g;
        while (std::getline(ss, g, ',')) {
            if (!g.empty()) {
                only.push_back(g);
            }
        }
    }
    for (const std::string& g : only) {
        const auto& all = verification_groups();
        if (std::find(all.begin(), all.end(), g) == all.end()) {
            std::string list;
            for (const auto& a : all) {
                list += (list.empty() ? "" : ", ") + a;
            }
            throw UsageError("unknown --only group '" + g + "' (known: " + list + ")");
        }
    }
    const VerificationReport rep = run_verification(only);
    if (!opt.json_path.empty()) {
        Options o = opt;
        o.out = opt.json_path;
        o.format = "json";
        return emit_report(o, "verify", rep, out, err);
    }
    Options o = opt;
    if (o.format != "csv") {
        o.format = "json";
    }
    return emit_report(o, "verify", rep, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Switchback potentials and Schroder functions of the logistic map"};
    app.require_subcommand(1);
    Options opt;

    const auto add_s = [&](CLI::App* c) {
        c->add_option("--s", opt.s, "map parameter, \"p/q\" or decimal (read exactly)")->required();
    };
    const auto add_n = [&](CLI::App* c) { c->add_option("--n", opt.n, "series order N")->capture_default_str(); };
    const auto add_output = [&](CLI::App* c) {
        c->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--out", opt.out, "output file (relative to $SCHRODER_LAB_OUT when set)");
    };

    auto* coeffs = app.add_subcommand("coeffs", "exact and float a_n of the U series");
    add_s(coeffs);
    add_n(coeffs);

    auto* potential = app.add_subcommand("potential", "V_n^(m) sampled on an interval");
    add_s(potential);
    add_n(potential);
    potential->add_option("--family", opt.family, "family m (0 = V, 1 = W, ...)");
    potential->add_option("--index", opt.index, "index n");
    potential->add_option("--xmin", opt.xmin, "left end (default: lower turning point)");
    potential->add_option("--xmax", opt.xmax, "right end (default: upper turning point)");
    potential->add_option("--samples", opt.samples, "grid points")->capture_default_str();

    auto* transit = app.add_subcommand("transit", "transit times along the chemin, per group");
    add_s(transit);
    add_n(transit);
    transit->add_option("--depth", opt.depth, "number of chemin groups, starting with V_0")->capture_default_str();
    transit->add_option("--json", opt.json_path, "write the JSON report to this file");

    auto* traj = app.add_subcommand("trajectory", "x(t) and dx/dt for the continuous-time flow");
    add_s(traj);
    add_n(traj);
    traj->add_option("--x0", opt.x0, "start point on the rising branch")->required();
    traj->add_option("--t0", opt.t0, "first time")->capture_default_str();
    traj->add_option("--t1", opt.t1, "last time")->capture_default_str();
    traj->add_option("--dt", opt.dt, "time step")->capture_default_str();

    auto* branches = app.add_subcommand("branches", "the first sheets of Psi on a common grid");
    add_s(branches);
    add_n(branches);
    branches->add_option("--count", opt.count, "number of sheets")->capture_default_str();
    branches->add_option("--samples", opt.samples, "grid points")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_option("--only", opt.only, "comma-separated check groups")->delimiter(',');
    verify->add_option("--json", opt.json_path, "write the JSON report to this file");

    for (CLI::App* c : {coeffs, potential, transit, traj, branches, verify}) {
        add_output(c);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) {
        rev.pop_back();  // program name
    }
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    // transit and verify default to JSON unless --format csv was given.
    for (CLI::App* c : {transit, verify}) {
        if (c->parsed() && c->get_option("--format")->count() == 0) {
            opt.format = "json";
        }
    }

    try {
        if (coeffs->parsed()) {
            return cmd_coeffs(opt, out, err);
        }
        if (potential->parsed()) {
            return cmd_potential(opt, out, err);
        }
        if (transit->parsed()) {
            return cmd_transit(opt, out, err);
        }
        if (traj->parsed()) {
            return cmd_trajectory(opt, out, err);
        }
        if (branches->parsed()) {
            return cmd_branches(opt, out, err);
        }
        return cmd_verify(opt, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DegenerateParameter& e) {
        err << "error: DegenerateParameter (k=" << e.index() << "): " << e.what() << '\n';
    } catch (const ComplexValued& e) {
        err << "error: ComplexValued on [" << format_real(static_cast<double>(e.lo())) << ", "
            << format_real(static_cast<double>(e.hi())) << "]: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

}  // namespace schroder_lab::cli
