#include "qmcoh/cli.hpp"

#include "qmcoh/cohomology.hpp"
#include "qmcoh/errors.hpp"
#include "qmcoh/lift.hpp"
#include "qmcoh/quasimonoidal.hpp"
#include "qmcoh/witt.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qmcoh {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    bool no_timing = false;
    bool json = false;
};

// Report fields in insertion order. In text mode "summary" is printed as a
// bare line and "document" (a text block in one of the file formats) is
// printed last.
class Report {
public:
    explicit Report(const Options& o) : opts_(o) {}

    Json& operator[](const std::string& key) { return data_[key]; }

    void timing(double seconds) {
        if (!opts_.no_timing) data_["time_seconds"] = seconds;
    }

    void print(std::ostream& out) const {
        if (opts_.json) {
            out << data_.dump(2) << '\n';
            return;
        }
        for (const auto& [key, value] : data_.items()) {
            if (key == "document") continue;
            if (key == "summary") {
                out << value.get<std::string>() << '\n';
                continue;
            }
            out << key << ": " << render(value) << '\n';
        }
        if (data_.contains("document")) out << data_["document"].get<std::string>();
    }

private:
    static std::string render(const Json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_array()) {
            std::string s;
            for (const auto& e : v) {
                if (!s.empty()) s += ' ';
                s += render(e);
            }
            return s.empty() ? "-" : s;
        }
        return v.dump();
    }

    const Options& opts_;
    Json data_ = Json::object();
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

QuasiMonoidalSkeleton load_skeleton(const std::string& path) {
    auto in = open_input(path);
    return parse_skeleton(in);
}

Cochain load_cochain(const std::string& path) {
    auto in = open_input(path);
    return parse_cochain(in);
}

Json factor_list(const std::vector<Integer>& factors) {
    Json a = Json::array();
    for (const auto& d : factors) a.push_back(d.str());
    return a;
}

Json coordinate_list(const ClassCoordinates& c) {
    Json a = Json::array();
    for (const auto& v : c.coords) a.push_back(v.str());
    return a;
}

std::string group_summary(int degree, const std::vector<Integer>& factors) {
    std::string s = "H^" + std::to_string(degree) + " = ";
    if (factors.empty()) return s + "0";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " + ";
        s += "Z/" + factors[i].str();
    }
    return s;
}

// Writes a text document to a file, or attaches it to the report.
void emit_document(Report& r, const std::string& output, const std::string& text) {
    if (output.empty()) {
        r["document"] = text;
        return;
    }
    std::ofstream f(output);
    if (!f) throw InputError("cannot write '" + output + "'");
    f << text;
    r["output"] = output;
}

template <class F>
std::string to_text(F&& write) {
    std::ostringstream s;
    write(s);
    return s.str();
}

void describe_defect(Report& r, const PentagonDefect& d) {
    r["defect_support"] = d.cocycle.support_size();
    try {
        const CohomologyGroup h4 = compute_cohomology(d.base, 4);
        r["h4"] = group_summary(4, h4.invariant_factors);
        r["class"] = coordinate_list(class_coordinates(d.cocycle, h4));
    } catch (const BudgetError& e) {
        r["class"] = std::string("unavailable (") + e.what() + ")";
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite group cohomology, pentagon defects and Witt-ledger bookkeeping", "qmcoh"};
    app.require_subcommand(1);
    Options opts;
    app.add_flag("--no-timing", opts.no_timing, "omit timings from reports");
    app.add_flag("--json", opts.json, "emit the report as a JSON document");

    std::string group_label, dump_dir, skeleton_path, lambda_path, left_path, right_path, output, omega, expr;
    int degree = 0;
    int max_cover = 16;

    auto* coh = app.add_subcommand("coh", "compute H^n(G, Q/Z)");
    coh->add_option("--group", group_label, "catalog label or group file")->required();
    coh->add_option("--degree", degree, "cohomological degree n >= 1")->required();
    coh->add_option("--dump-generators", dump_dir, "directory for generator cochains");

    auto* defect = app.add_subcommand("defect", "pentagon defect of a skeleton");
    defect->add_option("--skeleton", skeleton_path, "skeleton file")->required();
    defect->add_option("--output", output, "write the defect cochain here");

    auto* tw = app.add_subcommand("twist", "twist a skeleton by a base 3-cochain");
    tw->add_option("--skeleton", skeleton_path, "skeleton file")->required();
    tw->add_option("--lambda", lambda_path, "3-cochain file on the base")->required();
    tw->add_option("--output", output, "write the skeleton here");

    auto* op = app.add_subcommand("oppose", "opposite skeleton");
    op->add_option("--skeleton", skeleton_path, "skeleton file")->required();
    op->add_option("--output", output, "write the skeleton here");

    auto* fp = app.add_subcommand("fibprod", "fiber product of two skeletons over the same base");
    fp->add_option("--left", left_path, "skeleton file")->required();
    fp->add_option("--right", right_path, "skeleton file")->required();
    fp->add_option("--output", output, "write the skeleton here");

    auto* lift = app.add_subcommand("lift", "realize a class of H^4 as a pentagon defect");
    lift->add_option("--group", group_label, "catalog label or group file")->required();
    lift->add_option("--omega", omega, "class coordinates c1,c2,... (missing ones are 0)")->expected(0, 1);
    lift->add_option("--max-cover", max_cover, "largest cover order searched");
    lift->add_option("--output", output, "write the skeleton here");

    auto* witt = app.add_subcommand("witt", "evaluate a Witt-ledger expression");
    witt->add_option("--group", group_label, "catalog label or group file")->required();
    witt->add_option("--expr", expr, "expression in S(sym), H4(...), *, inv(...), pow(..., n)")->required();

    for (auto* sub : {coh, defect, tw, op, fp, lift, witt}) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? 0 : 1;
    }

    try {
        Report r(opts);
        Stopwatch clock;
        if (coh->parsed()) {
            const FiniteGroup g = load_group(group_label);
            const CohomologyGroup h = compute_cohomology(g, degree);
            r["group"] = g.name();
            r["order"] = g.order();
            r["degree"] = degree;
            r["summary"] = group_summary(degree, h.invariant_factors);
            r["invariant_factors"] = factor_list(h.invariant_factors);
            r["matrix"] = std::to_string(h.matrix_rows) + " x " + std::to_string(h.matrix_cols);
            r["rank"] = h.rank;
            if (!dump_dir.empty()) {
                std::filesystem::create_directories(dump_dir);
                Json files = Json::array();
                for (std::size_t i = 0; i < h.generators.size(); ++i) {
                    const auto path = std::filesystem::path(dump_dir) / ("generator_" + std::to_string(i + 1) + ".cochain");
                    std::ofstream f(path);
                    if (!f) throw InputError("cannot write '" + path.string() + "'");
                    write_cochain(f, h.generators[i]);
                    files.push_back(path.string());
                }
                r["generator_files"] = files;
            }
        } else if (defect->parsed()) {
            const QuasiMonoidalSkeleton c = load_skeleton(skeleton_path);
            const PentagonDefect d = pentagon_defect(c);
            r["base"] = c.base.name();
            r["cover"] = c.cover.name();
            describe_defect(r, d);
            emit_document(r, output, to_text([&](std::ostream& s) { write_cochain(s, d.cocycle); }));
        } else if (tw->parsed()) {
            const QuasiMonoidalSkeleton c = load_skeleton(skeleton_path);
            const QuasiMonoidalSkeleton t = twist(c, load_cochain(lambda_path));
            r["base"] = t.base.name();
            r["cover"] = t.cover.name();
            emit_document(r, output, to_text([&](std::ostream& s) { write_skeleton(s, t); }));
        } else if (op->parsed()) {
            const QuasiMonoidalSkeleton t = opposite(load_skeleton(skeleton_path));
            r["base"] = t.base.name();
            r["cover"] = t.cover.name();
            emit_document(r, output, to_text([&](std::ostream& s) { write_skeleton(s, t); }));
        } else if (fp->parsed()) {
            const QuasiMonoidalSkeleton t = fiber_product(load_skeleton(left_path), load_skeleton(right_path));
            r["base"] = t.base.name();
            r["cover"] = t.cover.name();
            r["cover_order"] = t.cover.order();
            emit_document(r, output, to_text([&](std::ostream& s) { write_skeleton(s, t); }));
        } else if (lift->parsed()) {
            const FiniteGroup g = load_group(group_label);
            const CohomologyGroup h4 = compute_cohomology(g, 4);
            std::vector<Integer> coords;
            std::stringstream ss(omega);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    coords.push_back(parse_integer(item));
                } catch (const std::exception&) {
                    throw InputError("malformed coordinate '" + item + "'");
                }
            }
            const Realization z = realize(h4, {coords}, default_cover_catalog(max_cover));
            r["group"] = g.name();
            r["h4"] = group_summary(4, h4.invariant_factors);
            r["omega"] = coordinate_list(normalize_coordinates(h4, coords));
            r["cover"] = z.skeleton.cover.name();
            r["cover_order"] = z.skeleton.cover.order();
            r["surjections_tested"] = z.search.surjections_tested;
            r["class"] = coordinate_list(class_coordinates(pentagon_defect(z.skeleton).cocycle, h4));
            emit_document(r, output, to_text([&](std::ostream& s) { write_skeleton(s, z.skeleton); }));
        } else if (witt->parsed()) {
            const FiniteGroup g = load_group(group_label);
            const CohomologyGroup h4 = compute_cohomology(g, 4);
            const WittElement x = evaluate_witt_expression(expr, h4);
            r["group"] = g.name();
            r["h4"] = group_summary(4, h4.invariant_factors);
            r["w_part"] = format_word(x.w_part);
            r["h4_part"] = coordinate_list(x.h4_part);
            r["identity"] = is_identity(x);
            r["admits_minimal_extension"] = admits_minimal_extension(x);
        }
        r.timing(clock.seconds());
        r.print(out);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace qmcoh
