#include "piconn/cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "piconn/io.hpp"
#include "piconn/pipeline.hpp"

namespace piconn {

namespace {

using nlohmann::ordered_json;

std::string index_text(const std::vector<int>& index) {
    std::string s = "(";
    for (size_t k = 0; k < index.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(index[k]);
    }
    s += ')';
    return s;
}

void print_check_text(std::ostream& out, const CheckResult& c) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name;
    if (!c.witness_index.empty()) out << "  at " << index_text(c.witness_index);
    if (!c.residual.empty()) out << "  residual = " << c.residual;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << '\n';
}

void print_report_text(std::ostream& out, const std::string& heading,
                       const ValidationReport& report) {
    out << "== " << heading << " ==\n";
    for (const auto& c : report.checks) print_check_text(out, c);
}

ordered_json check_to_json(const CheckResult& c) {
    ordered_json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    if (!c.witness_index.empty()) item["witness"] = c.witness_index;
    if (!c.residual.empty()) item["residual"] = c.residual;
    if (!c.detail.empty()) item["detail"] = c.detail;
    return item;
}

ordered_json report_to_json(const ValidationReport& report) {
    ordered_json list = ordered_json::array();
    for (const auto& c : report.checks) list.push_back(check_to_json(c));
    return list;
}

ordered_json classes_json(const ClassificationReport& cls) {
    ordered_json classes;
    for (size_t i = 0; i < cls.basic.size(); ++i)
        classes["F" + std::to_string(i + 1)] = cls.basic[i].holds;
    return classes;
}

ordered_json unions_json(const UnionVerdicts& unions) {
    ordered_json u;
    u["U0"] = unions.u0.holds;
    u["U0hat"] = unions.u0hat.holds;
    u["U1"] = unions.u1.holds;
    return u;
}

void print_classification_text(std::ostream& out, const ClassificationReport& cls,
                               const UnionVerdicts& unions) {
    auto word = [](bool b) { return b ? "true" : "false"; };
    out << "F0: " << word(cls.f0.holds) << '\n';
    for (size_t i = 0; i < cls.basic.size(); ++i)
        out << 'F' << (i + 1) << ": " << word(cls.basic[i].holds) << '\n';
    out << "U0: " << word(unions.u0.holds) << '\n';
    out << "U0hat: " << word(unions.u0hat.holds) << '\n';
    out << "U1: " << word(unions.u1.holds) << '\n';
    out << "class: " << single_class_label(cls) << '\n';
}

struct NamedTensor {
    std::string name;
    const Tensor* tensor;
};

std::vector<NamedTensor> select_tensors(const Pipeline& p, const std::string& which) {
    if (which == "nabla") return {{"nabla", &p.nabla.gamma}};
    if (which == "F") return {{"F", &p.F}};
    if (which == "lee")
        return {{"theta", &p.lee.theta},
                {"theta_star", &p.lee.theta_star},
                {"omega", &p.lee.omega}};
    if (which == "N") return {{"N", &p.pair.N_cov}};
    if (which == "Nhat") return {{"Nhat", &p.pair.N_hat_cov}};
    if (which == "D1") return {{"D1", &p.d1.coefficients.gamma}};
    if (which == "D2") return {{"D2", &p.d2.coefficients.gamma}};
    if (which == "T1") return {{"T1", &p.T1.T_cov}};
    if (which == "T2") return {{"T2", &p.T2.T_cov}};
    if (which == "dEta") return {{"dEta", &p.dEta}};
    throw InputError("unknown tensor selector \"" + which + "\"");
}

std::uint64_t fuzz_seed() {
    const char* env = std::getenv("PI_CONN_SEED");
    if (!env || !*env) return 0x5eedULL;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw InputError("PI_CONN_SEED must be a decimal integer, got \"" + std::string(env) +
                         "\"");
    return static_cast<std::uint64_t>(value);
}

// Runs the selected suite on `trials` full random rational substitutions of
// the instance parameters.  Each trial is reported as one check carrying the
// bindings in its note; a failing trial names the first failing check.
ValidationReport run_fuzz(const PiManifoldInstance& inst, const std::string& suite, int trials) {
    ValidationReport report;
    const ParamTablePtr& table = inst.params();
    if (trials <= 0) return report;
    if (!table || table->size() == 0) {
        report.add(CheckResult::ok("fuzz_skipped", "instance has no parameters"));
        return report;
    }
    std::mt19937_64 rng(fuzz_seed());
    std::uniform_int_distribution<int> numerator(-9, 9);
    std::uniform_int_distribution<int> denominator(1, 9);
    for (int t = 0; t < trials; ++t) {
        std::map<std::string, Rational> bindings;
        std::string description;
        PiManifoldInstance candidate = inst;
        bool admissible = false;
        for (int attempt = 0; attempt < 64 && !admissible; ++attempt) {
            bindings.clear();
            description.clear();
            for (const auto& name : table->names()) {
                const Rational value = make_rational(numerator(rng), denominator(rng));
                bindings[name] = value;
                if (!description.empty()) description += ", ";
                description += name + "=" + to_string(value);
            }
            candidate = inst.substituted(Substitution(table, bindings));
            admissible = candidate.metric_invertible();
        }
        std::string label = "fuzz_trial_";
        if (t + 1 < 10) label += '0';
        label += std::to_string(t + 1);
        if (!admissible) {
            report.add(CheckResult::fail(label, {}, "",
                                         "no admissible substitution found; " + description));
            continue;
        }
        const ValidationReport trial = Pipeline::build(candidate).run_suite(suite);
        if (trial.all_passed()) {
            report.add(CheckResult::ok(label, description));
        } else {
            const CheckResult* first = nullptr;
            for (const auto& c : trial.checks)
                if (!c.passed) {
                    first = &c;
                    break;
                }
            report.add(CheckResult::fail(label, first->witness_index, first->residual,
                                         description + "; first failure: " + first->name));
        }
    }
    return report;
}

int summary_exit(std::ostream& out, const std::string& format, bool all_passed) {
    if (format == "text")
        out << (all_passed ? "all checks passed\n" : "some checks FAILED\n");
    return all_passed ? 0 : 1;
}

const std::vector<std::string> kSuiteSections = {"identities",  "naturality", "torsion-paths",
                                                 "t2-property", "forms",      "coincidence",
                                                 "theorems"};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact symbolic calculus of natural connections on left-invariant"
                 " almost-paracontact structures"};
    app.require_subcommand(1);

    std::string file;
    std::string subst_arg;
    std::string subst_file;
    std::string format = "text";
    std::string which;
    std::string suite = "all";
    int fuzz_trials = 20;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "instance JSON file")->required();
        cmd->add_option("--subst", subst_arg, "parameter bindings name=value,name=value,...");
        cmd->add_option("--subst-file", subst_file, "JSON file of parameter bindings");
        cmd->add_option("--format", format, "output format (text|json)")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* cmd_validate =
        app.add_subcommand("validate", "check the structure axioms and the Jacobi identity");
    add_common(cmd_validate);

    CLI::App* cmd_classify = app.add_subcommand(
        "classify", "membership in the basic classes and the named unions");
    add_common(cmd_classify);

    CLI::App* cmd_tensor = app.add_subcommand("tensor", "emit one derived tensor");
    add_common(cmd_tensor);
    cmd_tensor->add_option("--which", which, "nabla|F|lee|N|Nhat|D1|D2|T1|T2|dEta")
        ->required()
        ->check(CLI::IsMember(
            {"nabla", "F", "lee", "N", "Nhat", "D1", "D2", "T1", "T2", "dEta"}));

    CLI::App* cmd_check = app.add_subcommand("check", "run verification suites");
    add_common(cmd_check);
    cmd_check->add_option("--suite", suite, "suite name or \"all\"")
        ->check(CLI::IsMember(Pipeline::suite_names()));
    cmd_check->add_option("--fuzz", fuzz_trials,
                          "number of randomized substitution trials (default 20)")
        ->check(CLI::NonNegativeNumber);

    CLI::App* cmd_report = app.add_subcommand("report", "full pipeline report");
    add_common(cmd_report);

    try {
        std::vector<std::string> argv_storage;
        argv_storage.reserve(args.size() + 1);
        argv_storage.push_back("piconn");
        argv_storage.insert(argv_storage.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        argv.reserve(argv_storage.size());
        for (const auto& a : argv_storage) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        PiManifoldInstance inst = load_instance_file(file);

        std::map<std::string, Rational> bindings;
        if (!subst_file.empty())
            bindings = load_substitution_file(subst_file, inst.params()).bindings();
        if (!subst_arg.empty()) {
            const Substitution parsed = parse_substitution_arg(subst_arg, inst.params());
            for (const auto& [name, value] : parsed.bindings()) bindings[name] = value;
        }
        if (!bindings.empty()) inst = inst.substituted(Substitution(inst.params(), bindings));

        const ValidationReport validation = validate(inst.algebra(), inst.structure());

        if (cmd_validate->parsed()) {
            if (format == "json")
                out << report_to_json(validation).dump(2) << '\n';
            else
                print_report_text(out, "validation", validation);
            return summary_exit(out, format, validation.all_passed());
        }

        if (!validation.all_passed()) {
            if (format == "json")
                out << report_to_json(validation).dump(2) << '\n';
            else
                print_report_text(out, "validation", validation);
            err << "instance failed validation; no derived quantities computed\n";
            return 1;
        }

        const Pipeline pipeline = Pipeline::build(inst);

        if (cmd_classify->parsed()) {
            const ClassificationReport cls = classify_by_F(inst, pipeline.F, pipeline.lee);
            const UnionVerdicts unions = classify_unions(inst, pipeline.pair);
            if (format == "json") {
                ordered_json doc;
                doc["classes"] = classes_json(cls);
                doc["unions"] = unions_json(unions);
                doc["F0"] = cls.f0.holds;
                out << doc.dump(2) << '\n';
            } else {
                print_classification_text(out, cls, unions);
            }
            return 0;
        }

        if (cmd_tensor->parsed()) {
            const std::vector<NamedTensor> selected = select_tensors(pipeline, which);
            if (format == "json") {
                if (selected.size() == 1) {
                    out << tensor_component_list(*selected[0].tensor).dump() << '\n';
                } else {
                    ordered_json doc;
                    for (const auto& named : selected)
                        doc[named.name] = tensor_component_list(*named.tensor);
                    out << doc.dump() << '\n';
                }
            } else {
                for (const auto& named : selected) out << tensor_to_text(named.name, *named.tensor);
            }
            return 0;
        }

        if (cmd_check->parsed()) {
            const ValidationReport suite_report = pipeline.run_suite(suite);
            const ValidationReport fuzz_report = run_fuzz(inst, suite, fuzz_trials);
            const bool ok = suite_report.all_passed() && fuzz_report.all_passed();
            if (format == "json") {
                ordered_json doc;
                doc["suite"] = suite;
                doc["checks"] = report_to_json(suite_report);
                doc["fuzz"] = report_to_json(fuzz_report);
                doc["all_passed"] = ok;
                out << doc.dump(2) << '\n';
                return ok ? 0 : 1;
            }
            print_report_text(out, "suite " + suite, suite_report);
            if (!fuzz_report.checks.empty())
                print_report_text(out, "randomized substitutions", fuzz_report);
            return summary_exit(out, format, ok);
        }

        // report
        const ClassificationReport cls = classify_by_F(inst, pipeline.F, pipeline.lee);
        const UnionVerdicts unions = classify_unions(inst, pipeline.pair);
        bool ok = validation.all_passed();
        if (format == "json") {
            ordered_json doc;
            doc["validation"] = report_to_json(validation);
            ordered_json suites;
            for (const auto& name : kSuiteSections) {
                const ValidationReport r = pipeline.run_suite(name);
                ok = ok && r.all_passed();
                suites[name] = report_to_json(r);
            }
            doc["suites"] = suites;
            doc["classes"] = classes_json(cls);
            doc["unions"] = unions_json(unions);
            doc["F0"] = cls.f0.holds;
            doc["class"] = single_class_label(cls);
            out << doc.dump(2) << '\n';
            return ok ? 0 : 1;
        }
        print_report_text(out, "validation", validation);
        for (const auto& name : kSuiteSections) {
            const ValidationReport r = pipeline.run_suite(name);
            ok = ok && r.all_passed();
            print_report_text(out, name, r);
        }
        out << "== classification ==\n";
        print_classification_text(out, cls, unions);
        return ok ? 0 : 1;
    } catch (const InputError& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace piconn
