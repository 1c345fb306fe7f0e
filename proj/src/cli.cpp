#include "grstrata/cli.hpp"

#include "grstrata/error.hpp"
#include "grstrata/homotopy.hpp"
#include "grstrata/json_io.hpp"
#include "grstrata/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace grstrata {

namespace {

struct StratumFlags {
    std::size_t h = 0, i = 0, k = 0, n = 0;

    StratumId id() const { return {h, i, k, n}; }
};

struct Options {
    StratumFlags s;
    bool json = false;
    // pi
    int order = 1;
    bool trace = false;
    bool unordered = false;
    // sample / verify
    std::uint64_t seed = 0;
    std::string output;
    // classify
    std::string input;
    // verify
    std::string suite;
    std::size_t cases = 100;
    double tol = 1e-6;
    std::string eps = "1/1000";
    std::size_t target = 0;
};

void add_stratum(CLI::App* cmd, StratumFlags& s, bool with_i) {
    cmd->add_option("--h", s.h, "number of points")->required()->check(CLI::PositiveNumber);
    if (with_i) cmd->add_option("--i", s.i, "dimension of the sum")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--k", s.k, "dimension of each subspace")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--n", s.n, "ambient dimension")->required()->check(CLI::PositiveNumber);
}

std::string stratum_name(const StratumId& s) {
    return "F_" + std::to_string(s.h) + "^" + std::to_string(s.i) + "(" + std::to_string(s.k) + "," +
           std::to_string(s.n) + ")";
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Parse, "cannot write " + path);
    f << text;
    if (!f) throw Error(ErrorCode::Parse, "failed writing " + path);
}

// ---------------------------------------------------------------------------

int cmd_strata(const Options& o, std::ostream& out) {
    validate({o.s.h, o.s.k, o.s.k, o.s.n});
    const std::size_t h = o.s.h, k = o.s.k, n = o.s.n;
    const std::size_t top = std::min(h * k, n);

    Json rows = Json::array();
    std::ostringstream text;
    text << "strata of F_" << h << "(Gr(" << k << "," << n << "))\n";
    text << std::left << std::setw(5) << "i" << std::setw(7) << "dim" << std::setw(10) << "nonempty"
         << "closure\n";
    for (std::size_t i = k; i <= top; ++i) {
        const StratumId s{h, i, k, n};
        const bool nonempty = is_stratum_nonempty(s);
        Json row{{"i", i}, {"nonempty", nonempty}};
        std::string closure;
        if (nonempty) {
            Json cl = Json::array();
            for (const auto& c : stratum_closure(s)) {
                cl.push_back(c.i);
                closure += (closure.empty() ? "" : ",") + std::to_string(c.i);
            }
            row["dimension"] = stratum_dimension(s);
            row["open"] = is_open_stratum(s);
            row["closure"] = std::move(cl);
            text << std::setw(5) << i << std::setw(7) << stratum_dimension(s) << std::setw(10) << "yes" << closure
                 << (is_open_stratum(s) ? "  (open)" : "") << '\n';
        } else {
            row["dimension"] = nullptr;
            row["open"] = false;
            row["closure"] = Json::array();
            text << std::setw(5) << i << std::setw(7) << "-" << std::setw(10) << "no"
                 << "-\n";
        }
        rows.push_back(std::move(row));
    }
    if (o.json) {
        emit_json(out, {{"h", h}, {"k", k}, {"n", n}, {"strata", std::move(rows)}});
    } else {
        out << text.str();
    }
    return kExitOk;
}

int cmd_pi(const Options& o, std::ostream& out) {
    const StratumId s = o.s.id();
    validate(s);
    if (o.unordered) {
        if (o.order != 1) throw Error(ErrorCode::OutOfRange, "--unordered applies to the fundamental group only");
        const GroupExpr g = config_unordered_pi1(s);
        if (o.json) {
            emit_json(out, {{"query", "pi_1(" + stratum_name(s) + "/Sigma_" + std::to_string(s.h) + ")"},
                            {"value", g.to_json()},
                            {"text", g.to_string()}});
        } else {
            out << g.to_string() << '\n';
        }
        return g.is_unknown() ? kExitUncovered : kExitOk;
    }

    const Derivation d = derive(s, o.order);
    if (o.json) {
        if (o.trace) {
            emit_json(out, derivation_to_json(d));
        } else {
            emit_json(out, {{"query", d.query.to_string()}, {"value", d.value.to_json()}, {"text", d.value.to_string()}});
        }
    } else if (o.trace) {
        out << d.query.to_string() << " = " << d.value.to_string() << '\n';
        for (std::size_t t = 0; t < d.steps.size(); ++t) {
            const auto& step = d.steps[t];
            out << "  " << t + 1 << ". [" << step.rule << "] " << step.input.to_string()
                << (step.relation == DerivationStep::Relation::QuotientOf ? " is a " : " = ") << step.output_text()
                << '\n'
                << "     " << step.anchor << '\n';
        }
    } else {
        out << d.value.to_string() << '\n';
    }
    return d.value.is_unknown() ? kExitUncovered : kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
    const Configuration c = sample_configuration(o.s.id(), o.seed);
    const std::string text = configuration_to_json(c).dump(2) + '\n';
    if (o.output.empty()) {
        out << text;
    } else {
        write_file(o.output, text);
    }
    return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
    std::ifstream f(o.input, std::ios::binary);
    if (!f) throw Error(ErrorCode::Parse, "cannot read " + o.input);
    Json j;
    try {
        j = Json::parse(f);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
    }
    const Configuration c = configuration_from_json(j);
    const std::size_t i = stratum_of(c);
    if (o.json) {
        emit_json(out, {{"h", c.h()}, {"i", i}, {"k", c.k()}, {"n", c.n()}});
    } else {
        out << "i = " << i << '\n';
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, bool stratum_given) {
    VerificationReport r;
    if (o.suite == "dimension" || o.suite == "adjacency") {
        if (!stratum_given) throw Error(ErrorCode::OutOfRange, "suite " + o.suite + " needs --h --i --k --n");
        const StratumId s = o.s.id();
        validate(s);
        if (o.suite == "dimension") {
            r = check_dimension(s, o.cases, o.tol, o.seed);
        } else {
            Rational eps;
            try {
                eps = Rational(o.eps);
                eps.canonicalize();
            } catch (const std::invalid_argument&) {
                throw Error(ErrorCode::Parse, "--eps must be a rational such as 1/1000");
            }
            r = check_adjacency(sample_configuration(s, o.seed), o.target == 0 ? s.i : o.target, eps, o.cases,
                                o.seed);
        }
    } else {
        const RoundTrip which = round_trip_from_string(o.suite);
        StratumId s = default_roundtrip_stratum(which);
        if (stratum_given) s = o.s.id();
        r = run_roundtrip_suite(which, std::span(&s, 1), o.cases, o.seed);
    }

    const Json j = report_to_json(r);
    if (!o.output.empty()) write_file(o.output, j.dump(2) + '\n');
    if (o.json) {
        emit_json(out, j);
    } else {
        out << r.suite << ": " << r.passed << "/" << r.cases << " passed\n";
        for (const auto& f : r.failures) out << "  seed " << f.seed << ": " << f.desc << '\n';
    }
    return r.ok() ? kExitOk : kExitCasesFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Strata of configuration spaces of Grassmannians", "grstrata"};
    // --h is the number of points, so help is long-form only; subcommands inherit this.
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    Options o;

    auto* strata = app.add_subcommand("strata", "list the strata of F_h(Gr(k,n))");
    add_stratum(strata, o.s, false);
    strata->add_flag("--json", o.json);

    auto* pi = app.add_subcommand("pi", "homotopy group of a stratum");
    add_stratum(pi, o.s, true);
    pi->add_option("--order", o.order, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    pi->add_flag("--trace", o.trace, "print the derivation");
    pi->add_flag("--unordered", o.unordered, "unordered configurations (fundamental group)");
    pi->add_flag("--json", o.json);

    auto* sample = app.add_subcommand("sample", "sample a configuration of a stratum");
    add_stratum(sample, o.s, true);
    sample->add_option("--seed", o.seed);
    sample->add_option("-o,--output", o.output, "write the configuration here instead of stdout");
    sample->add_flag("--json", o.json, "accepted for uniformity; output is always JSON");

    auto* classify = app.add_subcommand("classify", "stratum of a configuration file");
    classify->add_option("file", o.input, "configuration JSON")->required();
    classify->add_flag("--json", o.json);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", o.suite)
        ->required()
        ->check(CLI::IsMember({"gamma", "pr", "eta", "dimension", "adjacency"}));
    verify->add_option("--cases", o.cases, "cases (samples, or perturbation trials for adjacency)");
    verify->add_option("--seed", o.seed);
    verify->add_option("-o,--output", o.output, "write the JSON report here");
    verify->add_option("--tol", o.tol, "relative rank threshold (dimension)");
    verify->add_option("--eps", o.eps, "chart radius as a rational (adjacency)");
    verify->add_option("--target", o.target, "target stratum (adjacency; defaults to --i)");
    auto* vh = verify->add_option("--h", o.s.h);
    auto* vi = verify->add_option("--i", o.s.i);
    auto* vk = verify->add_option("--k", o.s.k);
    auto* vn = verify->add_option("--n", o.s.n);
    for (auto* opt : {vh, vi, vk, vn}) opt->check(CLI::PositiveNumber);
    vh->needs(vi, vk, vn);
    verify->add_flag("--json", o.json);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (strata->parsed()) return cmd_strata(o, out);
        if (pi->parsed()) return cmd_pi(o, out);
        if (sample->parsed()) return cmd_sample(o, out);
        if (classify->parsed()) return cmd_classify(o, out);
        return cmd_verify(o, out, vh->count() > 0);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::OutOfScope ? kExitUncovered : kExitUsage;
    } catch (const Json::exception& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace grstrata
