#ifndef MORIN_REPORT_HPP
#define MORIN_REPORT_HPP

// JSON reports. Field names are frozen in schema/report.schema.json.
// Rationals are serialized as "p/q" strings so that reports are lossless.

#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include <morin/classify.hpp>
#include <morin/errors.hpp>
#include <morin/forms.hpp>
#include <morin/isotopy.hpp>
#include <morin/parse.hpp>
#include <morin/report_schema.hpp>
#include <morin/ruling.hpp>

namespace morin
{

using json = nlohmann::json;

inline constexpr const char *tool_version = "1.0.0";

inline json rat_list_to_json(const std::vector<Rat> &v)
{
    json a = json::array();
    for (const auto &x : v) {
        a.push_back(x.to_string());
    }
    return a;
}

inline std::vector<Rat> rat_list_from_json(const json &a)
{
    std::vector<Rat> v;
    for (const auto &x : a) {
        v.push_back(Rat::parse(x.get<std::string>()));
    }
    return v;
}

inline json verdict_to_json(const Verdict &v)
{
    struct Visit {
        json operator()(const verdict::Regular &) const
        {
            return {{"kind", "regular"}};
        }
        json operator()(const verdict::Morin &x) const
        {
            return {{"kind", "morin"}, {"r", x.r}};
        }
        json operator()(const verdict::NotCorankOne &x) const
        {
            return {{"kind", "not_corank_one"}, {"corank", x.corank}};
        }
        json operator()(const verdict::DegenerateRank &x) const
        {
            return {{"kind", "degenerate_rank"}, {"j", x.j}, {"expected", x.expected}, {"actual", x.actual}};
        }
        json operator()(const verdict::FlatToOrder &x) const
        {
            return {{"kind", "flat_to_order"}, {"r_max", x.r_max}};
        }
        json operator()(const verdict::TruncationInsufficient &x) const
        {
            return {{"kind", "truncation_insufficient"}, {"required_order", x.required_order}};
        }
    };
    return std::visit(Visit{}, v);
}

inline Verdict verdict_from_json(const json &j)
{
    const std::string k = j.at("kind").get<std::string>();
    if (k == "regular") {
        return verdict::Regular{};
    }
    if (k == "morin") {
        return verdict::Morin{j.at("r").get<int>()};
    }
    if (k == "not_corank_one") {
        return verdict::NotCorankOne{j.at("corank").get<int>()};
    }
    if (k == "degenerate_rank") {
        return verdict::DegenerateRank{j.at("j").get<int>(), j.at("expected").get<int>(), j.at("actual").get<int>()};
    }
    if (k == "flat_to_order") {
        return verdict::FlatToOrder{j.at("r_max").get<int>()};
    }
    if (k == "truncation_insufficient") {
        return verdict::TruncationInsufficient{j.at("required_order").get<int>()};
    }
    throw std::invalid_argument("verdict_from_json: unknown kind '" + k + "'");
}

inline json chain_to_json(const SingularChainReport &c)
{
    json vals = json::array();
    for (const auto &v : c.eta_lambda_values) {
        vals.push_back(rat_list_to_json(v));
    }
    json diffs = json::array();
    for (const auto &d : c.differentials) {
        json rows = json::array();
        for (int i = 0; i < d.rows(); ++i) {
            rows.push_back(rat_list_to_json(d.row(i)));
        }
        diffs.push_back(rows);
    }
    return {{"eta_lambda_values", vals}, {"chain_ranks", c.chain_ranks}, {"differentials", diffs}};
}

inline SingularChainReport chain_from_json(const json &j)
{
    SingularChainReport c;
    for (const auto &v : j.at("eta_lambda_values")) {
        c.eta_lambda_values.push_back(rat_list_from_json(v));
    }
    c.chain_ranks = j.at("chain_ranks").get<std::vector<int>>();
    for (const auto &rows : j.at("differentials")) {
        const int nr = static_cast<int>(rows.size());
        const int nc = nr == 0 ? 0 : static_cast<int>(rows.front().size());
        RatMatrix d(nr, nc);
        for (int i = 0; i < nr; ++i) {
            const auto row = rat_list_from_json(rows.at(static_cast<std::size_t>(i)));
            for (int k = 0; k < nc; ++k) {
                d(i, k) = row.at(static_cast<std::size_t>(k));
            }
        }
        c.differentials.push_back(std::move(d));
    }
    return c;
}

inline json isotopy_to_json(const IsotopyReport &r)
{
    return {{"r", r.r},
            {"a", r.a},
            {"case", r.case_id},
            {"suspension", r.suspension},
            {"class_count", r.class_count},
            {"invariant", r.invariant_label},
            {"d_sign", r.d_sign ? json(*r.d_sign) : json(nullptr)},
            {"gauge_note", r.gauge_note}};
}

inline IsotopyReport isotopy_from_json(const json &j)
{
    IsotopyReport r;
    r.r = j.at("r").get<int>();
    r.a = j.at("a").get<int>();
    r.case_id = j.at("case").get<int>();
    r.suspension = j.at("suspension").get<bool>();
    r.class_count = j.at("class_count").get<int>();
    r.invariant_label = j.at("invariant").get<std::string>();
    if (!j.at("d_sign").is_null()) {
        r.d_sign = j.at("d_sign").get<int>();
    }
    r.gauge_note = j.at("gauge_note").get<std::string>();
    return r;
}

inline json form_spec_to_json(const FormSpec &s)
{
    return {{"r", s.r}, {"a", s.a}, {"extra", s.extra}, {"eps1", s.eps1}, {"eps2", s.eps2}};
}

inline FormSpec form_spec_from_json(const json &j)
{
    return {j.at("r").get<int>(), j.at("a").get<int>(), j.at("extra").get<int>(), j.at("eps1").get<int>(),
            j.at("eps2").get<int>()};
}

inline json input_to_json(const GermSource &g)
{
    return {{"text", g.to_string()}, {"m", g.m}, {"n", g.n}, {"order", g.order}};
}

inline json report_header(const std::string &kind, double timing_ms)
{
    return {{"tool", "morin"}, {"version", tool_version}, {"kind", kind}, {"timing_ms", timing_ms}};
}

struct ClassifyReport {
    GermSource input;
    int r_max = 1;
    bool auto_order = false;
    MorinResult result;
    std::optional<IsotopyReport> isotopy;
    double timing_ms = 0;

    json to_json() const
    {
        json j = report_header("classify", timing_ms);
        j["input"] = input_to_json(input);
        j["r_max"] = r_max;
        j["auto_order"] = auto_order;
        j["verdict"] = verdict_to_json(result.verdict);
        j["chain"] = result.evidence ? chain_to_json(*result.evidence) : json(nullptr);
        j["isotopy"] = isotopy ? isotopy_to_json(*isotopy) : json(nullptr);
        return j;
    }

    static ClassifyReport from_json(const json &j)
    {
        ClassifyReport r;
        r.input = parse_germ(j.at("input").at("text").get<std::string>());
        r.r_max = j.at("r_max").get<int>();
        r.auto_order = j.at("auto_order").get<bool>();
        r.result.verdict = verdict_from_json(j.at("verdict"));
        if (!j.at("chain").is_null()) {
            r.result.evidence = chain_from_json(j.at("chain"));
        }
        if (!j.at("isotopy").is_null()) {
            r.isotopy = isotopy_from_json(j.at("isotopy"));
        }
        r.timing_ms = j.at("timing_ms").get<double>();
        return r;
    }

    friend bool operator==(const ClassifyReport &a, const ClassifyReport &b)
    {
        return a.input == b.input && a.r_max == b.r_max && a.auto_order == b.auto_order && a.result == b.result
               && a.isotopy == b.isotopy && a.timing_ms == b.timing_ms;
    }
};

// Classifies the parsed germ. With auto_order the polynomial input is
// re-expanded at order r_max + 2 when its header order is lower.
inline ClassifyReport classify_report(const GermSource &g, int r_max, bool auto_order)
{
    ClassifyReport rep;
    rep.input = g;
    rep.r_max = r_max;
    rep.auto_order = auto_order;
    const int order = auto_order ? std::max(g.order, r_max + 2) : g.order;
    const MapJet f = g.to_map_jet(order);
    rep.result = morin_classify(f, r_max);
    if (const auto *mo = std::get_if<verdict::Morin>(&rep.result.verdict)) {
        const int a = f.target_dim() - f.source_dim();
        rep.isotopy = isotopy_classify(mo->r, a, f.source_dim() > mo->r * (a + 1));
        if (!rep.isotopy->suspension) {
            rep.isotopy->d_sign = d_invariant_of_chain(*rep.result.evidence, mo->r);
        }
    }
    return rep;
}

inline json fuzz_report(const GermSource &g, int r_max, int trials, int degree, std::uint64_t seed,
                        double timing_ms = 0)
{
    const MapJet f = g.to_map_jet();
    const MorinResult base = morin_classify(f, r_max);
    const auto runs = equivalence_fuzz(f, trials, degree, seed, r_max);
    json j = report_header("fuzz", timing_ms);
    j["input"] = input_to_json(g);
    j["r_max"] = r_max;
    j["seed"] = seed;
    j["trials"] = trials;
    j["degree"] = degree;
    j["baseline"] = verdict_to_json(base.verdict);
    json results = json::array();
    bool agree = true;
    for (const auto &r : runs) {
        results.push_back(verdict_to_json(r.verdict));
        agree = agree && r.verdict == base.verdict;
    }
    j["results"] = results;
    j["all_agree"] = agree;
    return j;
}

inline json form_report(const FormSpec &s, bool isotopy, int order, double timing_ms = 0)
{
    json j = report_header(isotopy ? "isotopy-form" : "normal-form", timing_ms);
    FormSpec spec = s;
    if (!isotopy) {
        spec.eps1 = spec.eps2 = 1;
    }
    j["spec"] = form_spec_to_json(spec);
    const MapJet f = isotopy ? isotopy_form(spec, order) : normal_form(spec, order);
    j["germ"] = input_to_json(germ_source_of(f));
    return j;
}

inline json d_invariant_report(const GermSource &g, int r, double timing_ms = 0)
{
    const MapJet f = g.to_map_jet();
    json j = report_header("d-invariant", timing_ms);
    j["input"] = input_to_json(g);
    j["r"] = r;
    const IsotopyReport iso = isotopy_report(f, r);
    j["d_sign"] = *iso.d_sign;
    j["isotopy"] = isotopy_to_json(iso);
    return j;
}

inline json table_report(int r_max, int a_max, double timing_ms = 0)
{
    json j = report_header("table", timing_ms);
    j["r_max"] = r_max;
    j["a_max"] = a_max;
    json cells = json::array();
    for (int r = 1; r <= r_max; ++r) {
        for (int a = 1; a <= a_max; ++a) {
            const IsotopyReport rep = isotopy_classify(r, a, false);
            cells.push_back({{"r", r},
                             {"a", a},
                             {"case", rep.case_id},
                             {"class_count", rep.class_count},
                             {"invariant", rep.invariant_label}});
        }
    }
    j["cells"] = cells;
    return j;
}

inline json witness_report(const Witness &w, double timing_ms = 0)
{
    json j = report_header("witness", timing_ms);
    j["from"] = form_spec_to_json(w.from);
    j["to"] = form_spec_to_json(w.to);
    json steps = json::array();
    for (const auto &s : w.steps) {
        steps.push_back({{"side", s.side == RotationStep::Side::Source ? "source" : "target"}, {"indices", s.indices}});
    }
    j["steps"] = steps;
    j["verified"] = verify_witness(w);
    return j;
}

inline json ruling_report(const RulingSource &src, double timing_ms = 0)
{
    const FramedCurve fc = src.to_framed_curve();
    const StrictionResult s = striction(fc);
    const RulingCheck c = ruling_morin1_check(fc);
    const std::vector<std::string> t{"t"};
    auto jets = [&](const std::vector<Jet> &v) {
        json a = json::array();
        for (const auto &e : v) {
            a.push_back(e.to_string(t));
        }
        return a;
    };
    json j = report_header("ruling", timing_ms);
    j["input"] = src.to_string();
    j["n"] = src.n;
    j["order"] = src.order;
    j["u"] = jets(s.u);
    j["sigma"] = jets(s.sigma);
    j["alpha"] = jets(s.alpha);
    std::vector<Rat> a0;
    for (const auto &a : s.alpha) {
        a0.push_back(a.constant_term());
    }
    j["alpha0"] = rat_list_to_json(a0);
    j["morin1_at_origin"] = s.morin1_at_origin;
    j["classifier"] = verdict_to_json(c.verdict);
    j["eta_lambda"] = rat_list_to_json(c.eta_lambda);
    j["alpha_delta"] = rat_list_to_json(c.alpha_delta);
    j["delta0"] = c.delta0.to_string();
    j["agree"] = c.agree();
    j["identity_holds"] = c.identity_holds();
    return j;
}

inline json error_report(const std::string &type, const std::string &message, double timing_ms = 0)
{
    json j = report_header("error", timing_ms);
    j["error"] = {{"type", type}, {"message", message}};
    return j;
}

// Reports compared without their timing field.
inline std::string stable_dump(json j)
{
    j.erase("timing_ms");
    return j.dump(2);
}

inline const json &report_schema()
{
    static const json s = json::parse(report_schema_text());
    return s;
}

// A validator for the subset of JSON Schema used by the report schema:
// $ref into $defs, type, const, enum, properties, required,
// additionalProperties: false, items, oneOf, minimum and pattern.
class SchemaValidator
{
public:
    explicit SchemaValidator(const json &root) : m_root(root) {}

    std::vector<std::string> validate(const json &doc) const
    {
        std::vector<std::string> errs;
        check(doc, m_root, "$", errs);
        return errs;
    }

private:
    const json &resolve(const json &s) const
    {
        if (!s.contains("$ref")) {
            return s;
        }
        const std::string ref = s.at("$ref").get<std::string>();
        const std::string prefix = "#/$defs/";
        if (ref.rfind(prefix, 0) != 0) {
            throw std::invalid_argument("SchemaValidator: unsupported $ref " + ref);
        }
        return resolve(m_root.at("$defs").at(ref.substr(prefix.size())));
    }

    static bool has_type(const json &v, const std::string &t)
    {
        if (t == "object") {
            return v.is_object();
        }
        if (t == "array") {
            return v.is_array();
        }
        if (t == "string") {
            return v.is_string();
        }
        if (t == "integer") {
            return v.is_number_integer();
        }
        if (t == "number") {
            return v.is_number();
        }
        if (t == "boolean") {
            return v.is_boolean();
        }
        if (t == "null") {
            return v.is_null();
        }
        return false;
    }

    void check(const json &v, const json &schema, const std::string &path, std::vector<std::string> &errs) const
    {
        const json &s = resolve(schema);
        if (s.contains("type")) {
            bool ok = false;
            if (s["type"].is_array()) {
                for (const auto &t : s["type"]) {
                    ok = ok || has_type(v, t.get<std::string>());
                }
            } else {
                ok = has_type(v, s["type"].get<std::string>());
            }
            if (!ok) {
                errs.push_back(path + ": expected type " + s["type"].dump());
                return;
            }
        }
        if (s.contains("const") && v != s["const"]) {
            errs.push_back(path + ": expected " + s["const"].dump());
        }
        if (s.contains("enum")) {
            bool found = false;
            for (const auto &e : s["enum"]) {
                found = found || e == v;
            }
            if (!found) {
                errs.push_back(path + ": value not in " + s["enum"].dump());
            }
        }
        if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
            errs.push_back(path + ": below minimum");
        }
        if (s.contains("pattern") && v.is_string()
            && !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>()))) {
            errs.push_back(path + ": does not match " + s["pattern"].get<std::string>());
        }
        if (v.is_object()) {
            if (s.contains("required")) {
                for (const auto &k : s["required"]) {
                    if (!v.contains(k.get<std::string>())) {
                        errs.push_back(path + ": missing " + k.get<std::string>());
                    }
                }
            }
            const json props = s.value("properties", json::object());
            for (const auto &[k, val] : v.items()) {
                if (props.contains(k)) {
                    check(val, props[k], path + "." + k, errs);
                } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
                    errs.push_back(path + ": unexpected property " + k);
                }
            }
        }
        if (v.is_array() && s.contains("items")) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                check(v[i], s["items"], path + "[" + std::to_string(i) + "]", errs);
            }
        }
        if (s.contains("oneOf")) {
            int matches = 0;
            for (const auto &alt : s["oneOf"]) {
                std::vector<std::string> sub;
                check(v, alt, path, sub);
                matches += sub.empty() ? 1 : 0;
            }
            if (matches != 1) {
                errs.push_back(path + ": matches " + std::to_string(matches) + " alternatives of oneOf");
            }
        }
    }

    const json &m_root;
};

inline std::vector<std::string> validate_report(const json &doc)
{
    return SchemaValidator(report_schema()).validate(doc);
}

} // namespace morin

#endif
