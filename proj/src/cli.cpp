#include "gsvm/cli.hpp"

#include "gsvm/csv_io.hpp"
#include "gsvm/fixtures.hpp"
#include "gsvm/gsvm.hpp"
#include "gsvm/linear.hpp"
#include "gsvm/operator_props.hpp"
#include "gsvm/svm.hpp"
#include "gsvm/vi.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace gsvm::cli {
namespace {

using json = nlohmann::ordered_json;

json to_json(const Vector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
    return rows;
}

Vector parse_vector(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            fail("usage", "cannot parse '" + field + "' in vector '" + text + "'");
        }
    }
    if (values.empty()) fail("usage", "empty vector '" + text + "'");
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

std::vector<int> parse_indices(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            values.push_back(std::stoi(field));
        } catch (const std::exception&) {
            fail("usage", "cannot parse index '" + field + "'");
        }
    }
    return values;
}

const char* property_name(OperatorProperty p) {
    switch (p) {
        case OperatorProperty::lipschitz: return "lipschitz";
        case OperatorProperty::monotone: return "monotone";
        case OperatorProperty::strictly_monotone: return "strictly_monotone";
        case OperatorProperty::strongly_monotone: return "strongly_monotone";
    }
    return "?";
}

json report_to_json(const PropertyReport& r) {
    json j;
    j["property"] = property_name(r.property);
    j["holds"] = r.holds;
    if (r.estimate) j["estimate"] = *r.estimate;
    if (r.witness) {
        j["witness"] = {{"x", to_json(r.witness->first)}, {"y", to_json(r.witness->second)}};
    }
    return j;
}

// ---- shared option bag ----------------------------------------------------

struct Options {
    std::string input_path, output_path;
    double tol = 1e-9;
    bool tol_set = false;
    double rho = 0.0;
    bool rho_set = false;
    long max_iter = 1000000;
    std::uint64_t seed = 1;
    int samples = 200;
    double lipschitz = 0.0;
    bool lipschitz_set = false;
    double alpha = 0.0;
    bool alpha_set = false;
    bool best_effort = false;

    std::string op_kind = "affine";
    double affine_a = 1.0;
    std::string affine_c, start_text, w_text, active_text;
    double b = 0.0;
    int dim = 0;

    std::string example = "all";
    std::string family;
    int n = 2;
    int m = 1;
    bool m_set = false;
    std::string alphas_text, betas_text;
    double k = -1.0;
};

OperatorHandle build_operator(const Options& o) {
    if (o.op_kind == "affine") {
        if (o.affine_c.empty()) fail("usage", "--op affine requires --c");
        OperatorHandle op = make_affine_operator(o.affine_a, parse_vector(o.affine_c));
        if (o.lipschitz_set || o.alpha_set) {
            op = make_operator(op.eval, op.dim,
                               o.lipschitz_set ? std::optional<double>(o.lipschitz)
                                               : op.lipschitz_L,
                               o.alpha_set ? std::optional<double>(o.alpha) : op.strong_alpha);
        }
        return op;
    }
    if (o.op_kind == "norm-gradient") {
        Index dim = o.dim;
        if (dim == 0 && !o.start_text.empty()) dim = parse_vector(o.start_text).size();
        if (dim == 0) fail("usage", "--op norm-gradient requires --dim (or --start)");
        return make_norm_gradient_operator(dim);
    }
    fail("usage", "unknown operator '" + o.op_kind + "' (use affine or norm-gradient)");
}

// ---- command payloads ------------------------------------------------------

json run_train_svm(const Options& o) {
    const DataSet ds = parse_dataset_csv_file(o.input_path);
    const SvmSolution s = svm_train(ds, o.tol);
    json r;
    r["w"] = to_json(s.hyperplane.w);
    r["b"] = s.hyperplane.b;
    r["norm"] = s.norm_w;
    r["objective"] = s.objective;
    r["support_indices"] = s.support_indices;
    r["multipliers"] = to_json(s.multipliers);
    return r;
}

json run_train_gsvm(const Options& o) {
    const DataSet ds = parse_dataset_csv_file(o.input_path);
    const GsvmTrainResult t = o.active_text.empty()
                                  ? gsvm_train(ds, o.tol)
                                  : gsvm_train_active(ds, parse_indices(o.active_text), o.tol);
    json r;
    r["W"] = to_json(t.model.W);
    r["B"] = to_json(t.model.B);
    r["min_g"] = to_json(gsvm_objective_min(t.model));
    r["residual"] = t.residual;
    r["rank_deficient"] = t.rank_deficient;
    r["active_indices"] = t.active_indices;
    const Hyperplane h = gsvm_row_solution(t.model);
    r["row_solution"] = {{"w", to_json(h.w)}, {"b", h.b}, {"norm", h.w.norm()}};
    return r;
}

json run_classify(const Options& o) {
    if (o.w_text.empty()) fail("usage", "classify requires --w");
    const Hyperplane h{parse_vector(o.w_text), o.b};
    const DataSet ds = parse_dataset_csv_file(o.input_path);

    json r;
    std::vector<double> decisions;
    std::vector<int> predicted;
    for (const auto& p : ds.points) {
        decisions.push_back(decision_value(h, p.x));
        predicted.push_back(classify(h, p.x));
    }
    r["decisions"] = decisions;
    r["predicted"] = predicted;
    const MarginReport mr = margin_report(h, ds);
    r["functional_margins"] = to_json(mr.functional);
    r["geometric_margins"] = to_json(mr.geometric);
    r["min_functional"] = mr.min_functional;
    r["min_geometric"] = mr.min_geometric;
    return r;
}

json run_solve_vi(const Options& o) {
    if (o.start_text.empty()) fail("usage", "solve-vi requires --start");
    const OperatorHandle op = build_operator(o);

    SolverConfig cfg;
    if (o.rho_set) cfg.rho = o.rho;
    if (o.tol_set) cfg.tol = o.tol;  // otherwise the solver default (1e-10)
    cfg.max_iter = o.max_iter;
    cfg.start = parse_vector(o.start_text);
    cfg.best_effort = o.best_effort;

    const SolveReport rep = fixed_point_solve(op, cfg);
    json r;
    r["solution"] = to_json(rep.solution);
    r["iterations"] = rep.iterations;
    r["converged"] = rep.converged;
    if (rep.theta) r["theta"] = *rep.theta;
    r["residual_history"] = rep.residual_history;
    r["contraction_ratios"] = rep.contraction_ratios;
    return r;
}

json run_check_op(const Options& o) {
    const OperatorHandle op = build_operator(o);
    json reports = json::array();
    if (o.lipschitz_set) {
        reports.push_back(report_to_json(check_lipschitz(op, o.lipschitz, o.samples, o.seed)));
    }
    reports.push_back(report_to_json(check_monotone(op, o.samples, o.seed, false)));
    reports.push_back(report_to_json(check_monotone(op, o.samples, o.seed, true)));
    if (o.alpha_set) {
        reports.push_back(
            report_to_json(check_strongly_monotone(op, o.alpha, o.samples, o.seed)));
        json r;
        r["reports"] = reports;
        r["hierarchy"] = class_hierarchy_check(op, o.alpha, o.samples, o.seed);
        return r;
    }
    json r;
    r["reports"] = reports;
    return r;
}

json run_gen(const Options& o, GoldenCase& out_case) {
    if (!o.family.empty()) {
        FamilySpec spec;
        spec.family = o.family == "A" ? Family::A : o.family == "B" ? Family::B : Family::C;
        spec.n = o.n;
        if (o.m_set) spec.m = o.m;
        if (o.alphas_text.empty()) fail("usage", "--family requires --alphas");
        spec.alphas = parse_vector(o.alphas_text);
        if (!o.betas_text.empty()) spec.betas = parse_vector(o.betas_text);
        spec.k = o.k;
        out_case = gen_family(spec);
    } else {
        static const std::map<std::string, WorkedExample> ids = {
            {"ex2_2", WorkedExample::ex2_2},
            {"ex2_3_s1", WorkedExample::ex2_3_s1},
            {"ex2_3_s2", WorkedExample::ex2_3_s2},
            {"ex2_3_s3", WorkedExample::ex2_3_s3},
            {"ex2_14", WorkedExample::ex2_14},
        };
        const auto it = ids.find(o.example);
        if (it == ids.end()) {
            fail("usage", "gen supports the fixture ids (" + std::string("ex2_2, ex2_3_s1, ") +
                              "ex2_3_s2, ex2_3_s3, ex2_14) or --family");
        }
        out_case = fixture(it->second);
    }

    json r;
    r["rows"] = out_case.dataset.size();
    r["dim"] = out_case.dataset.dim;
    r["expected_w"] = to_json(out_case.expected_w);
    if (out_case.expected_b) r["expected_b"] = *out_case.expected_b;
    r["expected_norm"] = out_case.expected_norm;
    if (out_case.support_indices) r["support_indices"] = *out_case.support_indices;
    r["margin_feasible"] = out_case.margin_feasible;
    if (!out_case.note.empty()) r["note"] = out_case.note;
    return r;
}

// ---- reproduce -------------------------------------------------------------

bool near(const Vector& a, const Vector& b, double tol) {
    return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

GsvmTrainResult train_case(const GoldenCase& g, double tol = 1e-9) {
    return g.support_indices ? gsvm_train_active(g.dataset, *g.support_indices, tol)
                             : gsvm_train(g.dataset, tol);
}

json reproduce_fixture(WorkedExample id, const std::string& name, double tol, bool check_svm,
                       bool& matched) {
    const GoldenCase g = fixture(id);
    json detail;
    detail["example"] = name;
    matched = true;

    if (check_svm) {
        const SvmSolution s = svm_train(g.dataset);
        detail["svm"] = {{"w", to_json(s.hyperplane.w)},
                         {"b", s.hyperplane.b},
                         {"norm", s.norm_w}};
        matched = matched && near(s.hyperplane.w, g.expected_w, tol) &&
                  near(s.hyperplane.b, *g.expected_b, tol) &&
                  near(s.norm_w, g.expected_norm, tol);
    }

    const GsvmTrainResult t = train_case(g);
    const Hyperplane row = gsvm_row_solution(t.model);
    const Vector min_g = gsvm_objective_min(t.model);
    detail["gsvm"] = {{"w", to_json(row.w)},
                      {"b", row.b},
                      {"norm", row.w.norm()},
                      {"min_g", to_json(min_g)}};
    matched = matched && near(row.w, g.expected_w, tol) && near(row.b, *g.expected_b, tol) &&
              near(min_g, Vector::Constant(min_g.size(), g.expected_norm), tol);

    if (id == WorkedExample::ex2_14) {
        const Vector direction = g_gradient(row.w);
        Vector expected_dir(3);
        expected_dir << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
        detail["gsvm"]["gradient_direction"] = to_json(direction);
        matched = matched && near(direction, expected_dir, tol);
    }

    detail["expected"] = {{"w", to_json(g.expected_w)},
                          {"b", *g.expected_b},
                          {"norm", g.expected_norm}};
    detail["matches_paper"] = matched;
    return detail;
}

FamilySpec make_spec(Family fam, int n, std::optional<int> m, const Vector& alphas,
                     std::optional<Vector> betas, double k) {
    FamilySpec s;
    s.family = fam;
    s.n = n;
    s.m = m;
    s.alphas = alphas;
    s.betas = std::move(betas);
    s.k = k;
    return s;
}

json reproduce_family(const std::string& name, const std::vector<FamilySpec>& specs, double tol,
                      bool& matched) {
    json detail;
    detail["example"] = name;
    json instances = json::array();
    matched = true;
    for (const auto& spec : specs) {
        const GoldenCase g = gen_family(spec);
        const GsvmTrainResult t = train_case(g);
        const Hyperplane row = gsvm_row_solution(t.model);
        const bool ok = near(row.w, g.expected_w, tol) && near(row.b, *g.expected_b, tol) &&
                        near(row.w.norm(), g.expected_norm, tol);
        json inst;
        inst["n"] = spec.n;
        if (spec.m) inst["m"] = *spec.m;
        inst["k"] = spec.k;
        inst["w"] = to_json(row.w);
        inst["expected_w"] = to_json(g.expected_w);
        inst["margin_feasible"] = g.margin_feasible;
        inst["ok"] = ok;
        instances.push_back(inst);
        matched = matched && ok;
    }
    detail["instances"] = instances;
    detail["matches_paper"] = matched;
    return detail;
}

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

json run_reproduce(const Options& o, bool& all_matched) {
    const double tol = 1e-8;
    struct Entry {
        std::string id;
        std::function<json(bool&)> runner;
    };

    const std::vector<Entry> entries = {
        {"ex2_2",
         [&](bool& m) { return reproduce_fixture(WorkedExample::ex2_2, "ex2_2", tol, true, m); }},
        {"ex2_3_s1",
         [&](bool& m) {
             return reproduce_fixture(WorkedExample::ex2_3_s1, "ex2_3_s1", tol, true, m);
         }},
        {"ex2_3_s2",
         [&](bool& m) {
             return reproduce_fixture(WorkedExample::ex2_3_s2, "ex2_3_s2", tol, true, m);
         }},
        {"ex2_3_s3",
         [&](bool& m) {
             return reproduce_fixture(WorkedExample::ex2_3_s3, "ex2_3_s3", tol, true, m);
         }},
        {"ex2_11",
         [&](bool& m) {
             return reproduce_family(
                 "ex2_11",
                 {make_spec(Family::A, 2, std::nullopt, vec({1, 1}), std::nullopt, -1.0),
                  make_spec(Family::A, 3, std::nullopt, vec({1, 2, 4}), std::nullopt, 3.0),
                  make_spec(Family::A, 4, std::nullopt, vec({2, 1, 0.5, 4}), std::nullopt, 0.5)},
                 tol, m);
         }},
        {"ex2_12",
         [&](bool& m) {
             return reproduce_family(
                 "ex2_12",
                 {make_spec(Family::B, 3, 2, vec({1, 2, 4}), std::nullopt, -1.0),
                  make_spec(Family::B, 5, 2, vec({1, 2, 4, 1, 2}), std::nullopt, 0.5),
                  make_spec(Family::B, 4, 3, vec({1, -2, 4, 0.5}), std::nullopt, 2.0)},
                 tol, m);
         }},
        {"ex2_13",
         [&](bool& m) {
             return reproduce_family(
                 "ex2_13",
                 {make_spec(Family::C, 3, std::nullopt, vec({1, 2, 4}), vec({1, 2, 4}), 2.0),
                  make_spec(Family::C, 3, std::nullopt, vec({1, 1, 1}), vec({2, 3, 4}), 0.5),
                  make_spec(Family::C, 3, std::nullopt, vec({0.5, 1, 2}), vec({1, 1, 2}), 4.0)},
                 tol, m);
         }},
        {"ex2_14",
         [&](bool& m) {
             return reproduce_fixture(WorkedExample::ex2_14, "ex2_14", tol, false, m);
         }},
    };

    json examples = json::array();
    all_matched = true;
    bool ran_any = false;
    for (const auto& e : entries) {
        if (o.example != "all" && o.example != e.id) continue;
        ran_any = true;
        bool matched = false;
        examples.push_back(e.runner(matched));
        all_matched = all_matched && matched;
    }
    if (!ran_any) fail("usage", "unknown example id '" + o.example + "'");

    json r;
    r["examples"] = examples;
    return r;
}

// ---- dispatch ---------------------------------------------------------------

void emit(const json& report, const Options& o, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    if (!o.output_path.empty()) {
        std::ofstream f(o.output_path);
        if (!f) fail("io", "cannot open '" + o.output_path + "' for writing");
        f << text;
    } else {
        out << text;
    }
}

bool want_color(std::ostream& err) {
    if (std::getenv("NO_COLOR") != nullptr) return false;
    return &err == &std::cerr && isatty(2);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hard-margin linear classification with matrix-valued training and a "
                 "projection fixed-point solver"};
    app.require_subcommand(1);

    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output", o.output_path, "write the JSON report to this file");
        cmd->add_option("--tol", o.tol, "numeric tolerance")
            ->each([&](const std::string&) { o.tol_set = true; });
    };

    CLI::App* train_svm = app.add_subcommand("train-svm", "max-margin hyperplane from a CSV dataset");
    train_svm->add_option("--input", o.input_path, "dataset CSV")->required();
    add_common(train_svm);

    CLI::App* train_gsvm =
        app.add_subcommand("train-gsvm", "matrix model from margin equalities");
    train_gsvm->add_option("--input", o.input_path, "dataset CSV")->required();
    train_gsvm->add_option("--active", o.active_text,
                           "comma-separated indices of equality-support points");
    add_common(train_gsvm);

    CLI::App* classify_cmd = app.add_subcommand("classify", "apply a hyperplane to a dataset");
    classify_cmd->add_option("--input", o.input_path, "dataset CSV")->required();
    classify_cmd->add_option("--w", o.w_text, "weight vector, comma-separated")->required();
    classify_cmd->add_option("--b", o.b, "offset");
    add_common(classify_cmd);

    CLI::App* solve = app.add_subcommand("solve-vi", "projected fixed-point iteration");
    solve->add_option("--op", o.op_kind, "operator: affine | norm-gradient");
    solve->add_option("--a", o.affine_a, "affine slope");
    solve->add_option("--c", o.affine_c, "affine shift, comma-separated");
    solve->add_option("--dim", o.dim, "dimension for norm-gradient");
    solve->add_option("--rho", o.rho, "step size")->each([&](const std::string&) { o.rho_set = true; });
    solve->add_option("--max-iter", o.max_iter, "iteration cap");
    solve->add_option("--start", o.start_text, "start vector, comma-separated")->required();
    solve->add_option("--lipschitz", o.lipschitz, "override Lipschitz certificate")
        ->each([&](const std::string&) { o.lipschitz_set = true; });
    solve->add_option("--alpha", o.alpha, "override strong-monotonicity certificate")
        ->each([&](const std::string&) { o.alpha_set = true; });
    solve->add_flag("--best-effort", o.best_effort, "solve outside the certified step window");
    add_common(solve);

    CLI::App* check = app.add_subcommand("check-op", "sampled operator-class certification");
    check->add_option("--op", o.op_kind, "operator: affine | norm-gradient");
    check->add_option("--a", o.affine_a, "affine slope");
    check->add_option("--c", o.affine_c, "affine shift, comma-separated");
    check->add_option("--dim", o.dim, "dimension for norm-gradient");
    check->add_option("--lipschitz", o.lipschitz, "Lipschitz candidate L")
        ->each([&](const std::string&) { o.lipschitz_set = true; });
    check->add_option("--alpha", o.alpha, "strong-monotonicity candidate alpha")
        ->each([&](const std::string&) { o.alpha_set = true; });
    check->add_option("--samples", o.samples, "sampled pairs");
    check->add_option("--seed", o.seed, "sampler seed");
    add_common(check);

    CLI::App* reproduce = app.add_subcommand("reproduce", "re-derive the worked examples");
    reproduce
        ->add_option("--example", o.example, "ex2_2 | ex2_3_s1 | ex2_3_s2 | ex2_3_s3 | ex2_11 "
                                             "| ex2_12 | ex2_13 | ex2_14 | all")
        ->check(CLI::IsMember({"ex2_2", "ex2_3_s1", "ex2_3_s2", "ex2_3_s3", "ex2_11", "ex2_12",
                               "ex2_13", "ex2_14", "all"}));
    add_common(reproduce);

    CLI::App* gen = app.add_subcommand("gen", "emit a dataset CSV with its expected solution");
    gen->add_option("--example", o.example, "fixture id");
    gen->add_option("--family", o.family, "A | B | C")
        ->check(CLI::IsMember({"A", "B", "C"}));
    gen->add_option("--n", o.n, "dimension");
    gen->add_option("--m", o.m, "family B window size")
        ->each([&](const std::string&) { o.m_set = true; });
    gen->add_option("--alphas", o.alphas_text, "comma-separated alphas");
    gen->add_option("--betas", o.betas_text, "comma-separated betas (family C)");
    gen->add_option("--k", o.k, "negative-class scale");
    gen->add_option("--output", o.output_path, "dataset CSV path")->required();
    gen->add_option("--tol", o.tol, "numeric tolerance");

    std::vector<std::string> argv_like = args;
    std::reverse(argv_like.begin(), argv_like.end());  // CLI11 consumes a reversed vector
    try {
        app.parse(argv_like);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << (want_color(err) ? "\033[31merror:\033[0m " : "error: ") << e.what() << "\n";
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();

    json report;
    report["command"] = command;
    try {
        json result;
        if (command == "train-svm") {
            result = run_train_svm(o);
        } else if (command == "train-gsvm") {
            result = run_train_gsvm(o);
        } else if (command == "classify") {
            result = run_classify(o);
        } else if (command == "solve-vi") {
            result = run_solve_vi(o);
        } else if (command == "check-op") {
            result = run_check_op(o);
        } else if (command == "reproduce") {
            bool all_matched = false;
            result = run_reproduce(o, all_matched);
            report["status"] = "ok";
            report["result"] = result;
            report["paper_match"] = all_matched;
            report["diagnostics"] = json::array();
            emit(report, o, out);
            return all_matched ? 0 : 1;
        } else if (command == "gen") {
            GoldenCase g;
            result = run_gen(o, g);
            std::ofstream f(o.output_path);
            if (!f) fail("io", "cannot open '" + o.output_path + "' for writing");
            serialize_dataset_csv(g.dataset, f);
            result["path"] = o.output_path;
            report["status"] = "ok";
            report["result"] = result;
            report["diagnostics"] = json::array();
            out << report.dump(2) << "\n";
            return 0;
        }
        report["status"] = "ok";
        report["result"] = result;
        report["diagnostics"] = json::array();
        emit(report, o, out);
        return 0;
    } catch (const Error& e) {
        report["status"] = "error";
        report["error"] = {{"code", e.code()}, {"message", e.what()}};
        report["diagnostics"] = json::array({std::string(e.what())});
        const bool usage = e.code() == "csv_parse" || e.code() == "io" || e.code() == "usage";
        err << (want_color(err) ? "\033[31merror:\033[0m " : "error: ") << e.what() << "\n";
        try {
            emit(report, o, out);
        } catch (const Error&) {
            // output path unwritable; the stderr diagnostic already covers it
        }
        return usage ? 2 : 1;
    }
}

}  // namespace gsvm::cli
