// Command-line front end. Every subcommand prints one JSON report on stdout
// and a short summary on stderr.
//
// Exit codes: 0 success (any verdict), 2 input error, 3 truncation order
// insufficient, 1 internal error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include <morin/morin.hpp>

using namespace morin;

namespace
{

constexpr int exit_input = 2;
constexpr int exit_truncation = 3;

bool use_color()
{
    const char *nc = std::getenv("NO_COLOR");
    return (nc == nullptr || *nc == '\0') && isatty(STDERR_FILENO);
}

void summary(const std::string &msg, bool good)
{
    if (use_color()) {
        std::cerr << (good ? "\033[32m" : "\033[33m") << msg << "\033[0m\n";
    } else {
        std::cerr << msg << '\n';
    }
}

std::string read_input(const std::string &path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Timer
{
public:
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - m_start).count();
    }

private:
    std::chrono::steady_clock::time_point m_start = std::chrono::steady_clock::now();
};

void emit(json j, const Timer &t)
{
    j["timing_ms"] = t.ms();
    std::cout << j.dump(2) << '\n';
}

int fail(const Timer &t, const std::string &type, const std::exception &e, int code, json extra = json::object())
{
    json j = error_report(type, e.what());
    for (const auto &[k, v] : extra.items()) {
        j["error"][k] = v;
    }
    emit(j, t);
    summary("error: " + std::string(e.what()), false);
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Morin singularity toolkit: classification, isotopy invariants, ruling maps"};
    app.require_subcommand(1);

    std::string in_path;
    int rmax = 3, trials = 20, degree = 3, r = 1, a = 1, extra = 0, eps1 = 1, eps2 = 1, amax = 4;
    int order = 0, to_eps1 = 0, to_eps2 = 0;
    std::uint64_t seed = 0;
    bool auto_order = false;

    auto *classify = app.add_subcommand("classify", "classify a germ file");
    classify->add_option("--in", in_path, "germ file, '-' for stdin")->required();
    classify->add_option("--rmax", rmax, "largest Morin order tested")->check(CLI::Range(1, 12));
    classify->add_flag("--auto-order", auto_order, "raise the truncation order to rmax + 2 when needed");

    auto *fuzz = app.add_subcommand("fuzz", "classify random A-equivalent copies of a germ");
    fuzz->add_option("--in", in_path, "germ file, '-' for stdin")->required();
    fuzz->add_option("--rmax", rmax, "largest Morin order tested")->check(CLI::Range(1, 12));
    fuzz->add_option("--trials", trials, "number of random conjugations")->check(CLI::Range(0, 100000));
    fuzz->add_option("--seed", seed, "random seed");
    fuzz->add_option("--degree", degree, "degree of the random diffeomorphisms")->check(CLI::Range(1, 16));

    auto *nf = app.add_subcommand("normal-form", "print the r-Morin normal form");
    auto *isf = app.add_subcommand("isotopy-form", "print the signed normal form");
    for (auto *sc : {nf, isf}) {
        sc->add_option("--r", r, "Morin order")->check(CLI::Range(1, 16));
        sc->add_option("--a", a, "n - m")->check(CLI::Range(1, 16));
        sc->add_option("--extra", extra, "suspension variables")->check(CLI::Range(0, 16));
        sc->add_option("--order", order, "truncation order (default r + 2)")->check(CLI::Range(0, 64));
    }
    isf->add_option("--eps1", eps1, "sign of the first m - 1 components")->check(CLI::IsMember({-1, 1}));
    isf->add_option("--eps2", eps2, "sign of the last component")->check(CLI::IsMember({-1, 1}));

    auto *dinv = app.add_subcommand("d-invariant", "sign of the isotopy determinant D");
    dinv->add_option("--in", in_path, "germ file, '-' for stdin")->required();
    dinv->add_option("--r", r, "Morin order")->required()->check(CLI::Range(1, 16));

    auto *table = app.add_subcommand("table", "number of isotopy classes for r <= rmax, a <= amax");
    table->add_option("--rmax", rmax, "largest r")->check(CLI::Range(1, 64));
    table->add_option("--amax", amax, "largest a")->check(CLI::Range(1, 64));

    auto *witness = app.add_subcommand("witness", "pi-rotations relating signed normal forms");
    witness->add_option("--r", r, "Morin order")->check(CLI::Range(1, 16));
    witness->add_option("--a", a, "n - m")->check(CLI::Range(1, 16));
    witness->add_option("--extra", extra, "suspension variables")->check(CLI::Range(0, 16));
    witness->add_option("--eps1", eps1, "source sign")->check(CLI::IsMember({-1, 1}));
    witness->add_option("--eps2", eps2, "source sign")->check(CLI::IsMember({-1, 1}));
    witness->add_option("--to-eps1", to_eps1, "target sign (default 1; without either, the class representative)")
        ->check(CLI::IsMember({-1, 1}));
    witness->add_option("--to-eps2", to_eps2, "target sign (default 1; without either, the class representative)")
        ->check(CLI::IsMember({-1, 1}));

    auto *ruling = app.add_subcommand("ruling", "striction curve and 1-Morin check of a ruling map");
    ruling->add_option("--in", in_path, "framed-curve file, '-' for stdin")->required();

    auto *schema = app.add_subcommand("schema", "print the JSON schema of the reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    const Timer timer;
    try {
        if (*schema) {
            std::cout << report_schema_text();
            return 0;
        }
        if (*classify) {
            const GermSource g = parse_germ(read_input(in_path));
            ClassifyReport rep = classify_report(g, rmax, auto_order);
            rep.timing_ms = timer.ms();
            std::cout << rep.to_json().dump(2) << '\n';
            summary("classify: " + to_string(rep.result.verdict),
                    std::holds_alternative<verdict::Morin>(rep.result.verdict));
            return std::holds_alternative<verdict::TruncationInsufficient>(rep.result.verdict) ? exit_truncation : 0;
        }
        if (*fuzz) {
            const GermSource g = parse_germ(read_input(in_path));
            const json j = fuzz_report(g, rmax, trials, degree, seed);
            emit(j, timer);
            summary("fuzz: " + std::to_string(trials) + " trials, all agree: " + (j["all_agree"] ? "yes" : "no"),
                    j["all_agree"].get<bool>());
            return j["baseline"]["kind"] == "truncation_insufficient" ? exit_truncation : 0;
        }
        if (*nf || *isf) {
            const FormSpec s{r, a, extra, eps1, eps2};
            const int ord = order > 0 ? order : s.default_order();
            const json j = form_report(s, isf->parsed(), ord);
            emit(j, timer);
            summary(j["germ"]["text"].get<std::string>(), true);
            return 0;
        }
        if (*dinv) {
            const GermSource g = parse_germ(read_input(in_path));
            const json j = d_invariant_report(g, r);
            emit(j, timer);
            summary("D = " + std::to_string(j["d_sign"].get<int>()), true);
            return 0;
        }
        if (*table) {
            const json j = table_report(rmax, amax);
            emit(j, timer);
            summary("table: " + std::to_string(j["cells"].size()) + " cells", true);
            return 0;
        }
        if (*witness) {
            const FormSpec from{r, a, extra, eps1, eps2};
            Witness w;
            if (to_eps1 != 0 || to_eps2 != 0) {
                const FormSpec to{r, a, extra, to_eps1 != 0 ? to_eps1 : 1, to_eps2 != 0 ? to_eps2 : 1};
                w = isotopy_witness(from, to);
            } else {
                w = isotopy_witness(from);
            }
            const json j = witness_report(w);
            emit(j, timer);
            summary("witness: " + std::to_string(w.steps.size()) + " rotations, verified: "
                        + (j["verified"] ? "yes" : "no"),
                    j["verified"].get<bool>());
            return 0;
        }
        if (*ruling) {
            const RulingSource src = parse_ruling(read_input(in_path));
            const json j = ruling_report(src);
            emit(j, timer);
            summary(std::string("ruling: 1-Morin at origin: ") + (j["morin1_at_origin"] ? "yes" : "no")
                        + ", characterizations agree: " + (j["agree"] ? "yes" : "no"),
                    j["agree"].get<bool>());
            return 0;
        }
    } catch (const ParseError &e) {
        return fail(timer, "ParseError", e, exit_input, {{"line", e.line()}, {"column", e.column()}});
    } catch (const GermError &e) {
        return fail(timer, "GermError", e, exit_input, {{"component", e.component()}});
    } catch (const TruncationError &e) {
        return fail(timer, "TruncationError", e, exit_truncation, {{"required_order", e.required_order()}});
    } catch (const DimensionError &e) {
        return fail(timer, "DimensionError", e, exit_input);
    } catch (const ParityError &e) {
        return fail(timer, "ParityError", e, exit_input);
    } catch (const FrameError &e) {
        return fail(timer, "FrameError", e, exit_input);
    } catch (const NotApplicableError &e) {
        return fail(timer, "NotApplicableError", e, exit_input);
    } catch (const NoWitnessError &e) {
        return fail(timer, "NoWitnessError", e, exit_input);
    } catch (const NotCorankOneError &e) {
        return fail(timer, "NotCorankOneError", e, exit_input);
    } catch (const std::invalid_argument &e) {
        return fail(timer, "InputError", e, exit_input);
    } catch (const std::exception &e) {
        return fail(timer, "InternalError", e, 1);
    }
    return 0;
}
